#include "tfp/flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace tfp {

const char* to_string(Constraint c) {
    switch (c) {
    case Constraint::Partition: return "partition";
    case Constraint::Support: return "support";
    case Constraint::Candidate: return "candidate";
    case Constraint::PathSelection: return "path-selection";
    case Constraint::Mandated: return "mandated";
    case Constraint::Forbidden: return "forbidden";
    case Constraint::MandatedPath: return "mandated-path";
    case Constraint::Acyclicity: return "acyclicity";
    }
    return "unknown";
}

PairTable<char> active_pairs(const Model& model, const Plan& plan) {
    PairTable<char> active(model.yard_count(), 0);
    std::vector<ServicePair> stack = model.shipment_pairs();
    for (ServicePair p : stack)
        active[p] = 1;
    while (!stack.empty()) {
        const ServicePair p = stack.back();
        stack.pop_back();
        if (auto k = plan.reclass_yard(p.from, p.to)) {
            const ServicePair next{*k, p.to};
            if (next.from != next.to && !active[next]) {
                active[next] = 1;
                stack.push_back(next);
            }
        }
    }
    return active;
}

namespace {

// First yard of a deferral cycle toward destination j, if any.
std::optional<YardId> deferral_cycle(const Plan& plan, YardId j) {
    const std::size_t n = plan.yard_count();
    // 0 = unseen, 1 = on the current walk, 2 = finished
    std::vector<char> state(n, 0);
    for (YardId start = 0; start < n; ++start) {
        if (state[start])
            continue;
        std::vector<YardId> walk;
        YardId u = start;
        while (true) {
            if (state[u] == 1)
                return u;
            if (state[u] == 2)
                break;
            state[u] = 1;
            walk.push_back(u);
            auto k = plan.reclass_yard(u, j);
            if (!k || *k == j || *k >= n)
                break;
            u = *k;
        }
        for (YardId w : walk)
            state[w] = 2;
    }
    return std::nullopt;
}

}  // namespace

std::vector<PlanViolation> check_structural_feasibility(const Model& model, const Plan& plan) {
    std::vector<PlanViolation> out;
    const std::size_t n = model.yard_count();
    if (plan.yard_count() != n) {
        out.push_back({Constraint::Partition, {0, 0}, "plan size does not match the instance"});
        return out;
    }
    const auto active = active_pairs(model, plan);
    auto name = [&](ServicePair p) { return pair_key(model, p); };

    for (YardId i = 0; i < n; ++i) {
        for (YardId j = 0; j < n; ++j) {
            const ServicePair p{i, j};
            const auto rank = plan.path_rank(i, j);
            const auto k = plan.reclass_yard(i, j);
            if (i == j) {
                if (rank || k)
                    out.push_back({Constraint::Partition, p, "decision on a diagonal pair"});
                continue;
            }
            if (rank && k)
                out.push_back({Constraint::Partition, p,
                               name(p) + " is both served directly and reclassified"});
            if (active[p] && !rank && !k)
                out.push_back({Constraint::Partition, p, name(p) + " carries cars but is not routed"});
            if (k) {
                if (*k >= n || !model.is_candidate(i, j, *k))
                    out.push_back({Constraint::Candidate, p,
                                   "reclassification yard is not a candidate for " + name(p)});
                else if (!plan.provides(i, *k))
                    out.push_back({Constraint::Support, p,
                                   name(p) + " reclassifies at " + model.yard_name(*k) +
                                       " but service " + name({i, *k}) + " is not provided"});
            }
            if (rank) {
                if (!model.hostable(i, j) || *rank >= model.paths(i, j).size())
                    out.push_back({Constraint::PathSelection, p, "invalid path rank for " + name(p)});
                else if (auto m = model.mandated_path(i, j); m && *m != *rank)
                    out.push_back({Constraint::MandatedPath, p,
                                   name(p) + " must run on its designated path"});
            }
            if (model.mandated(i, j) && !rank)
                out.push_back({Constraint::Mandated, p, "mandated service " + name(p) + " missing"});
            if (model.forbidden(i, j) && rank)
                out.push_back({Constraint::Forbidden, p, "forbidden service " + name(p) + " provided"});
        }
    }
    for (YardId j = 0; j < n; ++j)
        if (auto u = deferral_cycle(plan, j))
            out.push_back({Constraint::Acyclicity, {*u, j},
                           "reclassification cycle toward " + model.yard_name(j)});
    return out;
}

double track_occupancy(double cars, double cars_per_track) {
    if (cars <= 0.0)
        return 0.0;
    return std::max(cars, cars_per_track);
}

FlowState propagate_flows(const Model& model, const Plan& plan, FlowOptions opts) {
    return propagate_flows(model, plan, model.demand(), opts);
}

FlowState propagate_flows(const Model& model, const Plan& plan, const Demand& demand,
                          FlowOptions opts) {
    const std::size_t n = model.yard_count();
    FlowState fs;
    fs.f = PairTable<double>(n, 0.0);
    fs.D = PairTable<double>(n, 0.0);
    fs.yard_reclass.assign(n, 0.0);
    fs.yard_tracks.assign(n, 0.0);
    fs.link_trains.assign(model.link_count(), 0.0);

    // f(i,j) = N_ij + sum of f(u,j) over u handing (u,j) to i.
    std::vector<std::vector<YardId>> feeders(n);
    std::vector<char> state(n);
    for (YardId j = 0; j < n; ++j) {
        if (deferral_cycle(plan, j))
            throw FlowError("plan has a reclassification cycle toward " + model.yard_name(j));
        for (auto& v : feeders)
            v.clear();
        for (YardId u = 0; u < n; ++u)
            if (auto k = plan.reclass_yard(u, j); k && u != j)
                feeders[*k].push_back(u);
        std::fill(state.begin(), state.end(), 0);
        std::function<double(YardId)> volume = [&](YardId i) -> double {
            if (state[i])
                return fs.f(i, j);
            double total = demand(i, j);
            for (YardId u : feeders[i])
                total += volume(u);
            state[i] = 1;
            fs.f(i, j) = total;
            return total;
        };
        for (YardId i = 0; i < n; ++i)
            if (i != j)
                volume(i);
    }

    for (YardId i = 0; i < n; ++i)
        for (YardId j = 0; j < n; ++j) {
            if (i == j)
                continue;
            if (plan.provides(i, j))
                fs.D(i, j) += fs.f(i, j);
            if (auto k = plan.reclass_yard(i, j)) {
                fs.D(i, *k) += fs.f(i, j);
                fs.yard_reclass[*k] += fs.f(i, j);
            }
        }

    const double a = model.params().cars_per_track;
    for (YardId k = 0; k < n; ++k) {
        double occupied = 0.0;
        for (YardId j = 0; j < n; ++j)
            occupied += track_occupancy(fs.D(k, j), a);
        fs.yard_tracks[k] = occupied / a;
    }

    for (ServicePair s : plan.services()) {
        const double cars = fs.D[s];
        if (cars <= 0.0)
            continue;
        const double q = cars / model.train_size(s.from, s.to);
        const double trains =
            opts.trains == TrainCount::Whole ? std::ceil(q - 1e-9 * std::max(1.0, q)) : q;
        const auto& set = model.paths(s.from, s.to);
        const std::size_t rank = *plan.path_rank(s.from, s.to);
        if (rank >= set.size())
            throw FlowError("invalid path rank for " + pair_key(model, s));
        for (LinkId l : set.paths[rank].links)
            fs.link_trains[l] += trains;
    }
    return fs;
}

std::vector<ServicePair> strategy_chain(const Model& model, const Plan& plan, YardId i, YardId j) {
    std::vector<ServicePair> chain;
    YardId cur = i;
    while (auto k = plan.reclass_yard(cur, j)) {
        chain.push_back({cur, *k});
        cur = *k;
        if (chain.size() > model.yard_count())
            throw FlowError("reclassification cycle toward " + model.yard_name(j));
    }
    chain.push_back({cur, j});
    return chain;
}

std::vector<YardId> physical_route(const Model& model, const Plan& plan, YardId i, YardId j) {
    std::vector<YardId> route{i};
    for (ServicePair s : strategy_chain(model, plan, i, j)) {
        const std::size_t rank = plan.path_rank(s.from, s.to).value_or(model.default_path(s.from, s.to));
        const Path& p = model.paths(s.from, s.to).paths.at(rank);
        route.insert(route.end(), p.yards.begin() + 1, p.yards.end());
    }
    return route;
}

std::vector<std::vector<YardId>> enumerate_strategies(const Model& model,
                                                      const PairTable<char>& services, YardId i,
                                                      YardId j) {
    std::vector<std::vector<YardId>> out;
    std::vector<YardId> chain{i};
    std::vector<char> visited(model.yard_count(), 0);
    visited[i] = 1;
    std::function<void(YardId)> extend = [&](YardId cur) {
        if (services(cur, j)) {
            chain.push_back(j);
            out.push_back(chain);
            chain.pop_back();
        }
        for (YardId k : model.reclass_candidates(cur, j)) {
            if (visited[k] || !services(cur, k))
                continue;
            visited[k] = 1;
            chain.push_back(k);
            extend(k);
            chain.pop_back();
            visited[k] = 0;
        }
    };
    extend(i);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_strategies(const Model& model, const PairTable<char>& services, YardId i,
                             YardId j) {
    return enumerate_strategies(model, services, i, j).size();
}

}  // namespace tfp
