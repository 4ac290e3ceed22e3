#include "tfp/model.hpp"

#include <algorithm>

namespace tfp {

namespace {

Instance checked(Instance inst) {
    auto report = validate_instance(inst);
    if (!report.empty())
        throw InstanceError("invalid instance:\n" + to_string(report));
    return inst;
}

}  // namespace

Model::Model(Instance inst) : inst_(checked(std::move(inst))), graph_(inst_) {
    const std::size_t n = graph_.yard_count();
    demand_ = Demand(n, 0.0);
    is_shipment_ = PairTable<char>(n, 0);
    for (const Shipment& s : inst_.shipments) {
        const YardId i = yard(s.origin), j = yard(s.destination);
        demand_(i, j) = s.volume;
        is_shipment_(i, j) = 1;
    }
    for (YardId i = 0; i < n; ++i)
        for (YardId j = 0; j < n; ++j)
            if (is_shipment_(i, j))
                shipment_pairs_.push_back({i, j});

    train_size_ = PairTable<double>(n, inst_.params.train_size);
    for (const auto& o : inst_.params.train_size_overrides)
        train_size_(yard(o.service.from), yard(o.service.to)) = o.size;

    mandated_ = PairTable<char>(n, 0);
    forbidden_ = PairTable<char>(n, 0);
    for (const auto& p : inst_.mandated_services)
        mandated_(yard(p.from), yard(p.to)) = 1;
    for (const auto& p : inst_.forbidden_services)
        forbidden_(yard(p.from), yard(p.to)) = 1;

    const double inf = std::numeric_limits<double>::infinity();
    distance_ = PairTable<double>(n, inf);
    paths_ = PairTable<PathSet>(n, PathSet{});
    for (YardId i = 0; i < n; ++i) {
        distance_(i, i) = 0.0;
        for (YardId j = 0; j < n; ++j) {
            if (i == j)
                continue;
            auto first = graph_.shortest_path(i, j);
            if (!first) {
                paths_(i, j).service = {i, j};
                continue;
            }
            distance_(i, j) = first->total_length;
            paths_(i, j) = graph_.k_shortest_paths(
                i, j, inst_.params.max_paths, detour_cap(inst_.params, first->total_length));
            hostable_pairs_.push_back({i, j});
        }
    }

    // A mandated path always belongs to its pair's candidate set, even past
    // K or the detour cap.
    mandated_path_ = PairTable<int>(n, -1);
    for (const MandatedPath& mp : inst_.mandated_paths) {
        const YardId i = yard(mp.service.from), j = yard(mp.service.to);
        std::vector<LinkId> links;
        for (std::size_t k = 0; k + 1 < mp.yards.size(); ++k) {
            const YardId u = yard(mp.yards[k]), v = yard(mp.yards[k + 1]);
            std::optional<LinkId> best;
            for (LinkId l : graph_.out_links(u))
                if (graph_.link_head(l) == v &&
                    (!best || graph_.link_length(l) < graph_.link_length(*best)))
                    best = l;
            links.push_back(*best);
        }
        Path path = graph_.make_path({i, j}, links);
        PathSet& set = paths_(i, j);
        auto it = std::find(set.paths.begin(), set.paths.end(), path);
        if (it == set.paths.end()) {
            set.paths.push_back(path);
            std::sort(set.paths.begin(), set.paths.end(),
                      [&](const Path& a, const Path& b) { return graph_.path_less(a, b); });
            set.extra_lengths.clear();
            for (const Path& p : set.paths)
                set.extra_lengths.push_back(p.total_length - set.paths.front().total_length);
            it = std::find(set.paths.begin(), set.paths.end(), path);
        }
        mandated_path_(i, j) = static_cast<int>(it - set.paths.begin());
    }

    candidates_ = PairTable<std::vector<YardId>>(n, {});
    for (auto [i, j] : hostable_pairs_) {
        const double cap = detour_cap(inst_.params, distance_(i, j));
        for (YardId k = 0; k < n; ++k) {
            if (k == i || k == j || distance_(i, k) == inf || distance_(k, j) == inf)
                continue;
            const double extra = distance_(i, k) + distance_(k, j) - distance_(i, j);
            if (extra <= cap || same_length(extra, cap))
                candidates_(i, j).push_back(k);
        }
    }
}

std::optional<std::size_t> Model::mandated_path(YardId i, YardId j) const {
    const int r = mandated_path_(i, j);
    if (r < 0)
        return std::nullopt;
    return static_cast<std::size_t>(r);
}

std::size_t Model::default_path(YardId i, YardId j) const {
    return mandated_path(i, j).value_or(0);
}

bool Model::is_candidate(YardId i, YardId j, YardId k) const {
    const auto& c = candidates_(i, j);
    return std::binary_search(c.begin(), c.end(), k);
}

}  // namespace tfp
