#include "tfp/routing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace tfp {

bool same_length(double a, double b) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-9 * scale;
}

RoutingGraph::RoutingGraph(const Instance& inst) {
    for (const Yard& y : inst.yards)
        names_.push_back(y.id);
    std::vector<std::size_t> order(names_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return names_[a] < names_[b]; });
    name_rank_.resize(names_.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        name_rank_[order[r]] = r;

    out_.resize(names_.size());
    in_.resize(names_.size());
    for (const Link& l : inst.links) {
        const Arc arc{yard(l.from_yard), yard(l.to_yard), l.length};
        out_[arc.from].push_back(links_.size());
        in_[arc.to].push_back(links_.size());
        links_.push_back(arc);
    }
}

std::optional<YardId> RoutingGraph::find_yard(std::string_view name) const {
    for (YardId i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

YardId RoutingGraph::yard(std::string_view name) const {
    if (auto id = find_yard(name))
        return *id;
    throw RoutingError("unknown yard \"" + std::string(name) + "\"");
}

bool RoutingGraph::path_less(const Path& a, const Path& b) const {
    if (!same_length(a.total_length, b.total_length))
        return a.total_length < b.total_length;
    const std::size_t n = std::min(a.yards.size(), b.yards.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.yards[i] != b.yards[i])
            return name_rank_[a.yards[i]] < name_rank_[b.yards[i]];
    if (a.yards.size() != b.yards.size())
        return a.yards.size() < b.yards.size();
    return a.links < b.links;
}

Path RoutingGraph::make_path(ServicePair service, const std::vector<LinkId>& links) const {
    Path p;
    p.service = service;
    p.links = links;
    p.yards.push_back(service.from);
    for (LinkId l : links) {
        p.total_length += links_[l].length;
        p.yards.push_back(links_[l].to);
    }
    return p;
}

std::optional<Path> RoutingGraph::shortest_path(YardId from, YardId to,
                                                const std::vector<char>& excluded_yards,
                                                const std::vector<char>& excluded_links) const {
    auto yard_out = [&](YardId v) { return !excluded_yards.empty() && excluded_yards[v]; };
    auto link_out = [&](LinkId l) { return !excluded_links.empty() && excluded_links[l]; };
    if (from == to || yard_out(from) || yard_out(to))
        return std::nullopt;

    // Distances to the target over the reverse graph.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(names_.size(), inf);
    using Entry = std::pair<double, YardId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[to] = 0.0;
    heap.emplace(0.0, to);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v])
            continue;
        for (LinkId l : in_[v]) {
            const Arc& arc = links_[l];
            if (link_out(l) || yard_out(arc.from))
                continue;
            const double nd = d + arc.length;
            if (nd < dist[arc.from]) {
                dist[arc.from] = nd;
                heap.emplace(nd, arc.from);
            }
        }
    }
    if (dist[from] == inf)
        return std::nullopt;

    // Walk forward, always taking the smallest-named yard that stays on a
    // shortest route.
    std::vector<LinkId> chosen;
    std::vector<char> visited(names_.size(), 0);
    YardId u = from;
    visited[u] = 1;
    while (u != to) {
        std::optional<LinkId> best;
        for (LinkId l : out_[u]) {
            const Arc& arc = links_[l];
            if (link_out(l) || yard_out(arc.to) || visited[arc.to] || dist[arc.to] == inf)
                continue;
            if (!same_length(arc.length + dist[arc.to], dist[u]))
                continue;
            if (!best || name_rank_[arc.to] < name_rank_[links_[*best].to] ||
                (arc.to == links_[*best].to && l < *best))
                best = l;
        }
        if (!best)
            return std::nullopt;
        chosen.push_back(*best);
        u = links_[*best].to;
        visited[u] = 1;
    }
    return make_path({from, to}, chosen);
}

PathSet RoutingGraph::k_shortest_paths(YardId from, YardId to, std::size_t max_paths,
                                       double max_detour) const {
    PathSet result;
    result.service = {from, to};
    if (max_paths == 0)
        return result;
    auto first = shortest_path(from, to);
    if (!first)
        throw RoutingError("no route from " + names_[from] + " to " + names_[to]);

    const double bound = first->total_length + max_detour;
    auto within_bound = [&](double len) { return len <= bound || same_length(len, bound); };
    auto less = [this](const Path& a, const Path& b) { return path_less(a, b); };

    std::vector<Path> found{*first};
    std::set<Path, decltype(less)> candidates(less);
    std::set<std::vector<LinkId>> seen{first->links};

    // Yen's deviation scheme. Paths leave the candidate set in nondecreasing
    // length, so generation continues through every path tied with the K-th
    // one before the final ordering is applied.
    while (true) {
        const Path& prev = found.back();
        for (std::size_t i = 0; i < prev.links.size(); ++i) {
            const YardId spur = prev.yards[i];
            std::vector<char> ex_yards(names_.size(), 0);
            std::vector<char> ex_links(links_.size(), 0);
            for (std::size_t r = 0; r < i; ++r)
                ex_yards[prev.yards[r]] = 1;
            for (const Path& p : found)
                if (p.links.size() > i && std::equal(prev.links.begin(), prev.links.begin() + i,
                                                     p.links.begin()))
                    ex_links[p.links[i]] = 1;
            auto spur_path = shortest_path(spur, to, ex_yards, ex_links);
            if (!spur_path)
                continue;
            std::vector<LinkId> links(prev.links.begin(), prev.links.begin() + i);
            links.insert(links.end(), spur_path->links.begin(), spur_path->links.end());
            if (seen.insert(links).second)
                candidates.insert(make_path({from, to}, links));
        }
        if (candidates.empty())
            break;
        const Path& next = *candidates.begin();
        if (!within_bound(next.total_length))
            break;
        if (found.size() >= max_paths &&
            !same_length(next.total_length, found[max_paths - 1].total_length))
            break;
        found.push_back(next);
        candidates.erase(candidates.begin());
    }

    std::sort(found.begin(), found.end(), less);
    if (found.size() > max_paths)
        found.resize(max_paths);
    for (const Path& p : found) {
        result.extra_lengths.push_back(p.total_length - found.front().total_length);
        result.paths.push_back(p);
    }
    return result;
}

double detour_cap(const Params& params, double shortest_length) {
    return params.detour_cap ? *params.detour_cap : kDefaultDetourRatio * shortest_length;
}

Path shortest_path(const Instance& inst, std::string_view from, std::string_view to) {
    RoutingGraph g(inst);
    auto p = g.shortest_path(g.yard(from), g.yard(to));
    if (!p)
        throw RoutingError("no route from " + std::string(from) + " to " + std::string(to));
    return *p;
}

PathSet enumerate_paths(const Instance& inst, std::string_view from, std::string_view to) {
    RoutingGraph g(inst);
    const YardId i = g.yard(from), j = g.yard(to);
    auto first = g.shortest_path(i, j);
    if (!first)
        throw RoutingError("no route from " + std::string(from) + " to " + std::string(to));
    return g.k_shortest_paths(i, j, inst.params.max_paths,
                              detour_cap(inst.params, first->total_length));
}

}  // namespace tfp
