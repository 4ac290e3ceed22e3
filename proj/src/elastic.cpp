#include "tfp/elastic.hpp"

#include <algorithm>

namespace tfp {

double membership(double load, const CapacityBelt& belt) {
    if (load <= belt.lower)
        return 1.0;
    if (load > belt.upper)
        return 0.0;
    return (belt.upper - load) / (belt.upper - belt.lower);
}

const char* to_string(Resource r) {
    switch (r) {
    case Resource::YardReclass: return "yard_reclass";
    case Resource::YardTracks: return "yard_tracks";
    case Resource::Link: return "link";
    }
    return "unknown";
}

CostBreakdown operating_cost(const Model& model, const Plan& plan, const FlowState& fs) {
    CostBreakdown cb;
    const double lambda = model.params().lambda;
    for (ServicePair s : plan.services()) {
        cb.accumulation += model.yard_data(s.from).c * model.train_size(s.from, s.to);
        const std::size_t rank = *plan.path_rank(s.from, s.to);
        const double extra = model.paths(s.from, s.to).extra_lengths.at(rank);
        if (extra > 0.0)
            cb.detour += lambda * fs.D[s] * extra;
    }
    for (YardId k = 0; k < model.yard_count(); ++k)
        cb.reclassification += model.yard_data(k).tau * fs.yard_reclass[k];
    cb.Z = cb.accumulation + cb.reclassification + cb.detour;
    cb.total = cb.Z;
    return cb;
}

std::vector<CapacityViolation> rigid_check(const Model& model, const FlowState& fs) {
    std::vector<CapacityViolation> out;
    for (YardId k = 0; k < model.yard_count(); ++k) {
        const Yard& y = model.yard_data(k);
        const double reclass_cap = y.theta * y.reclass_belt.lower;
        if (fs.yard_reclass[k] > reclass_cap)
            out.push_back({Resource::YardReclass, k, fs.yard_reclass[k], reclass_cap});
        if (fs.yard_tracks[k] > y.track_belt.lower)
            out.push_back({Resource::YardTracks, k, fs.yard_tracks[k], y.track_belt.lower});
    }
    for (LinkId n = 0; n < model.link_count(); ++n) {
        const Link& l = model.link_data(n);
        const double cap = l.beta_n * l.capacity_belt.lower;
        if (fs.link_trains[n] > cap)
            out.push_back({Resource::Link, n, fs.link_trains[n], cap});
    }
    return out;
}

Penalties penalties(const Model& model, const FlowState& fs) {
    Penalties p;
    const double alpha = model.params().alpha;
    const double beta = model.params().beta;
    // Deficit is 1 - membership, computed directly from the load.
    auto charge = [&](double load, const CapacityBelt& belt, double& term) {
        double deficit = 0.0;
        if (load > belt.upper)
            deficit = 1.0;
        else if (load > belt.lower)
            deficit = (load - belt.lower) / (belt.upper - belt.lower);
        term += alpha * deficit + beta * std::max(0.0, load - belt.upper);
        return membership(load, belt);
    };
    for (YardId k = 0; k < model.yard_count(); ++k) {
        const Yard& y = model.yard_data(k);
        p.profile.reclass.push_back(charge(fs.yard_reclass[k], y.reclass_belt, p.G));
        p.profile.tracks.push_back(charge(fs.yard_tracks[k], y.track_belt, p.H));
    }
    for (LinkId n = 0; n < model.link_count(); ++n)
        p.profile.links.push_back(charge(fs.link_trains[n], model.link_data(n).capacity_belt, p.M));
    return p;
}

CostBreakdown total_cost(const Model& model, const Plan& plan, const FlowState& fs) {
    CostBreakdown cb = operating_cost(model, plan, fs);
    const Penalties p = penalties(model, fs);
    cb.G = p.G;
    cb.H = p.H;
    cb.M = p.M;
    cb.total = cb.Z + cb.G + cb.H + cb.M;
    return cb;
}

CostBreakdown total_cost(const Model& model, const Plan& plan, FlowOptions opts) {
    const auto violations = check_structural_feasibility(model, plan);
    if (!violations.empty())
        throw FlowError("plan is not structurally feasible: " +
                        std::string(to_string(violations.front().constraint)) + ": " +
                        violations.front().detail);
    return total_cost(model, plan, propagate_flows(model, plan, opts));
}

Instance rigidify(const Instance& inst) {
    Instance out = inst;
    for (Yard& y : out.yards) {
        const double reclass = y.theta * y.reclass_belt.lower;
        y.reclass_belt = {reclass, reclass};
        y.track_belt = {y.track_belt.lower, y.track_belt.lower};
    }
    for (Link& l : out.links) {
        const double cap = l.beta_n * l.capacity_belt.lower;
        l.capacity_belt = {cap, cap};
    }
    return out;
}

}  // namespace tfp
