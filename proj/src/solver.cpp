#include "tfp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace tfp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool cost_tie(double a, double b) {
    return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// --------------------------------------------------------------------------
// Exact enumeration

constexpr int kUndecided = -2;
constexpr int kDirect = -1;

// Enumerates commodity routings (direct or one reclassification yard per
// active pair), then every path assignment of the resulting services.
class ExactSearch {
public:
    using Visitor = std::function<void(const Plan&)>;

    explicit ExactSearch(const Model& model)
        : model_(model),
          n_(model.yard_count()),
          decision_(n_, kUndecided),
          active_(n_, 0),
          required_(n_, 0) {}

    // Visits structures only, reporting the number of path assignments each
    // would expand to. Returns false if the visitor asked to stop.
    void run(const std::function<bool(const Plan&, std::uint64_t)>& on_structure) {
        on_structure_ = on_structure;
        stopped_ = false;
        std::set<ServicePair> pending(model_.shipment_pairs().begin(),
                                      model_.shipment_pairs().end());
        for (ServicePair p : pending)
            active_[p] = 1;
        descend(pending);
    }

    // Expands a structure into every path assignment.
    void expand(const Plan& base, const Visitor& visit) const {
        std::vector<ServicePair> free;
        for (ServicePair s : base.services())
            if (!model_.mandated_path(s.from, s.to) && model_.paths(s.from, s.to).size() > 1)
                free.push_back(s);
        Plan plan = base;
        std::function<void(std::size_t)> assign = [&](std::size_t idx) {
            if (idx == free.size()) {
                visit(plan);
                return;
            }
            const ServicePair s = free[idx];
            for (std::size_t r = 0; r < model_.paths(s.from, s.to).size(); ++r) {
                plan.provide(s.from, s.to, r);
                assign(idx + 1);
            }
        };
        assign(0);
    }

    std::uint64_t assignments(const Plan& base) const {
        std::uint64_t count = 1;
        for (ServicePair s : base.services())
            if (!model_.mandated_path(s.from, s.to)) {
                const std::uint64_t k = model_.paths(s.from, s.to).size();
                count = count > std::numeric_limits<std::uint64_t>::max() / k
                            ? std::numeric_limits<std::uint64_t>::max()
                            : count * k;
            }
        return count;
    }

private:
    bool closes_cycle(YardId i, YardId j, YardId k) const {
        YardId u = k;
        for (std::size_t steps = 0; steps <= n_; ++steps) {
            if (u == i)
                return true;
            const int next = decision_(u, j);
            if (next < 0)
                return false;
            u = static_cast<YardId>(next);
        }
        return true;
    }

    void descend(std::set<ServicePair> pending) {
        if (stopped_)
            return;
        if (pending.empty()) {
            emit();
            return;
        }
        const ServicePair p = *pending.begin();
        pending.erase(pending.begin());
        const auto [i, j] = p;

        if (!model_.forbidden(i, j)) {
            decision_[p] = kDirect;
            descend(pending);
        }
        if (!model_.mandated(i, j) && required_[p] == 0) {
            for (YardId k : model_.reclass_candidates(i, j)) {
                if (model_.forbidden(i, k) || decision_(i, k) >= 0 || closes_cycle(i, j, k))
                    continue;
                decision_[p] = static_cast<int>(k);
                ++required_(i, k);
                const bool fresh = !active_(k, j);
                auto next = pending;
                if (fresh) {
                    active_(k, j) = 1;
                    next.insert({k, j});
                }
                descend(std::move(next));
                if (fresh)
                    active_(k, j) = 0;
                --required_(i, k);
            }
        }
        decision_[p] = kUndecided;
    }

    void emit() {
        Plan plan(n_);
        for (YardId i = 0; i < n_; ++i)
            for (YardId j = 0; j < n_; ++j) {
                const int d = decision_(i, j);
                const bool provided = d == kDirect || required_(i, j) > 0 || model_.mandated(i, j);
                if (provided)
                    plan.provide(i, j, model_.default_path(i, j));
                if (d >= 0)
                    plan.set_reclass(i, j, static_cast<YardId>(d));
            }
        if (!on_structure_(plan, assignments(plan)))
            stopped_ = true;
    }

    const Model& model_;
    std::size_t n_;
    PairTable<int> decision_;
    PairTable<char> active_;
    PairTable<int> required_;
    std::function<bool(const Plan&, std::uint64_t)> on_structure_;
    bool stopped_ = false;
};

// --------------------------------------------------------------------------
// Neighborhood

void collect_garbage(const Model& model, Plan& plan) {
    const auto active = active_pairs(model, plan);
    const std::size_t n = model.yard_count();
    for (YardId i = 0; i < n; ++i)
        for (YardId j = 0; j < n; ++j)
            if (!active(i, j) && plan.reclass_yard(i, j))
                plan.clear_reclass(i, j);
}

class Repair {
public:
    Repair(const Model& model, Plan& plan) : model_(model), plan_(plan) {}

    bool make_direct(YardId i, YardId j) {
        if (model_.forbidden(i, j))
            return false;
        plan_.clear_reclass(i, j);
        if (!plan_.provides(i, j))
            plan_.provide(i, j, model_.default_path(i, j));
        return true;
    }

    bool enable(YardId i, YardId k) {
        if (plan_.provides(i, k))
            return true;
        return make_direct(i, k);
    }

    // Cheapest hand-off yard for (i, j) among already provided services:
    // shortest i->k->j route, smallest index on ties.
    std::optional<YardId> best_handoff(YardId i, YardId j, std::optional<YardId> skip) const {
        std::optional<YardId> best;
        double best_len = 0.0;
        for (YardId k : model_.reclass_candidates(i, j)) {
            if ((skip && k == *skip) || !plan_.provides(i, k) || leads_back(i, j, k))
                continue;
            const double len = model_.distance(i, k) + model_.distance(k, j);
            if (!best || len < best_len) {
                best = k;
                best_len = len;
            }
        }
        return best;
    }

    // Commodities (i, d) handed to j via service (i, j), which is no longer
    // provided, are re-homed: direct if allowed, otherwise the cheapest
    // remaining hand-off.
    bool reroute_dependents(YardId i, YardId j) {
        for (YardId d = 0; d < model_.yard_count(); ++d) {
            if (plan_.reclass_yard(i, d) != j)
                continue;
            if (make_direct(i, d))
                continue;
            auto k = best_handoff(i, d, j);
            if (!k)
                return false;
            plan_.set_reclass(i, d, *k);
            if (!route(*k, d))
                return false;
        }
        return true;
    }

    // Gives a newly active commodity (k, j) a routing if it has none: direct
    // if allowed, otherwise the cheapest provided hand-off.
    bool route(YardId k, YardId j) {
        if (k == j || plan_.provides(k, j) || plan_.reclass_yard(k, j))
            return true;
        if (make_direct(k, j))
            return true;
        auto next = best_handoff(k, j, std::nullopt);
        if (!next)
            return false;
        plan_.set_reclass(k, j, *next);
        return true;
    }

private:
    bool leads_back(YardId i, YardId j, YardId k) const {
        YardId u = k;
        for (std::size_t steps = 0; steps <= model_.yard_count(); ++steps) {
            if (u == i)
                return true;
            auto next = plan_.reclass_yard(u, j);
            if (!next)
                return false;
            u = *next;
        }
        return true;
    }

    const Model& model_;
    Plan& plan_;
};

std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool toggle_service(const Model& model, Plan& plan, Rng& rng) {
    std::vector<ServicePair> pool;
    for (ServicePair p : model.hostable_pairs())
        if (!model.mandated(p.from, p.to) && !model.forbidden(p.from, p.to))
            pool.push_back(p);
    if (pool.empty())
        return false;
    const auto [i, j] = pool[pick(rng, pool.size())];
    Repair repair(model, plan);
    if (!plan.provides(i, j))
        return repair.make_direct(i, j);

    const bool carries = active_pairs(model, plan)(i, j) != 0;
    plan.withdraw(i, j);
    if (carries) {
        auto k = repair.best_handoff(i, j, std::nullopt);
        if (!k)
            return false;
        plan.set_reclass(i, j, *k);
        if (!repair.route(*k, j))
            return false;
    }
    return repair.reroute_dependents(i, j);
}

bool reassign_reclass(const Model& model, Plan& plan, Rng& rng) {
    const auto active = active_pairs(model, plan);
    std::vector<ServicePair> pool;
    for (YardId i = 0; i < model.yard_count(); ++i)
        for (YardId j = 0; j < model.yard_count(); ++j)
            if (active(i, j))
                pool.push_back({i, j});
    if (pool.empty())
        return false;
    const auto [i, j] = pool[pick(rng, pool.size())];
    const auto current = plan.reclass_yard(i, j);

    // -1 stands for "direct".
    std::vector<long> options;
    if (current)
        options.push_back(-1);
    for (YardId k : model.reclass_candidates(i, j))
        if (!current || k != *current)
            options.push_back(static_cast<long>(k));
    if (options.empty())
        return false;
    const long choice = options[pick(rng, options.size())];

    Repair repair(model, plan);
    if (choice < 0)
        return repair.make_direct(i, j);

    const YardId k = static_cast<YardId>(choice);
    const bool was_direct = plan.provides(i, j);
    if (was_direct) {
        if (model.mandated(i, j))
            return false;
        plan.withdraw(i, j);
    }
    plan.set_reclass(i, j, k);
    if (!repair.enable(i, k) || !repair.route(k, j))
        return false;
    return !was_direct || repair.reroute_dependents(i, j);
}

bool switch_path(const Model& model, Plan& plan, Rng& rng) {
    std::vector<ServicePair> pool;
    for (ServicePair s : plan.services())
        if (!model.mandated_path(s.from, s.to) && model.paths(s.from, s.to).size() > 1)
            pool.push_back(s);
    if (pool.empty())
        return false;
    const ServicePair s = pool[pick(rng, pool.size())];
    const std::size_t size = model.paths(s.from, s.to).size();
    const std::size_t current = *plan.path_rank(s.from, s.to);
    std::size_t next = pick(rng, size - 1);
    if (next >= current)
        ++next;
    plan.provide(s.from, s.to, next);
    return true;
}

}  // namespace

CapExceeded::CapExceeded(std::uint64_t estimate, std::uint64_t cap)
    : SolverError("exact search space holds at least " + std::to_string(estimate) +
                  " plans, above the cap of " + std::to_string(cap)),
      estimate_(estimate) {}

std::uint64_t exact_state_space(const Model& model, std::uint64_t stop_after) {
    std::uint64_t total = 0;
    ExactSearch search(model);
    search.run([&](const Plan&, std::uint64_t count) {
        total = count > std::numeric_limits<std::uint64_t>::max() - total
                    ? std::numeric_limits<std::uint64_t>::max()
                    : total + count;
        return total <= stop_after;
    });
    return total;
}

Solution solve_exact(const Model& model, const ExactLimits& limits) {
    const auto start = Clock::now();
    const std::uint64_t space = exact_state_space(model, limits.max_evaluations);
    if (space > limits.max_evaluations)
        throw CapExceeded(space, limits.max_evaluations);

    std::optional<Plan> best;
    double best_total = 0.0;
    std::uint64_t evaluated = 0;
    ExactSearch search(model);
    search.run([&](const Plan& base, std::uint64_t) {
        search.expand(base, [&](const Plan& plan) {
            ++evaluated;
            const double total = total_cost(model, plan, propagate_flows(model, plan)).total;
            if (!best || (!cost_tie(total, best_total) && total < best_total) ||
                (cost_tie(total, best_total) && encoding_less(plan, *best))) {
                best = plan;
                best_total = total;
            }
        });
        return true;
    });
    if (!best)
        throw SolverError("no structurally feasible plan exists");

    Solution sol;
    sol.plan = *best;
    sol.cost = total_cost(model, sol.plan);
    sol.solver_id = "exact";
    sol.iterations = evaluated;
    sol.wall_time = seconds_since(start);
    return sol;
}

Plan initial_plan(const Model& model) {
    const std::size_t n = model.yard_count();
    Plan plan(n);
    for (ServicePair p : model.hostable_pairs())
        if (model.mandated(p.from, p.to))
            plan.provide(p.from, p.to, model.default_path(p.from, p.to));
    auto ensure = [&](YardId i, YardId k) {
        if (!plan.provides(i, k))
            plan.provide(i, k, model.default_path(i, k));
    };
    PairTable<char> settled(n, 0);

    for (auto [origin, j] : model.shipment_pairs()) {
        if (settled(origin, j))
            continue;
        // Shortest chain of permitted legs from origin to j; a commodity that is
        // already routed keeps its routing.
        constexpr double kInf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(n, kInf);
        std::vector<long> prev(n, -1);
        std::vector<char> done(n, 0);
        double best = kInf;
        long last = -1;
        dist[origin] = 0.0;
        while (true) {
            long u = -1;
            for (YardId v = 0; v < n; ++v)
                if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u]))
                    u = static_cast<long>(v);
            if (u < 0)
                break;
            const YardId cur = static_cast<YardId>(u);
            done[cur] = 1;
            auto relax = [&](YardId k, double w) {
                if (!done[k] && dist[cur] + w < dist[k]) {
                    dist[k] = dist[cur] + w;
                    prev[k] = u;
                }
            };
            auto finish = [&](double w) {
                if (dist[cur] + w < best) {
                    best = dist[cur] + w;
                    last = u;
                }
            };
            if (plan.provides(cur, j)) {
                finish(0.0);
                continue;
            }
            if (settled(cur, j)) {
                if (auto k = plan.reclass_yard(cur, j))
                    relax(*k, model.distance(cur, *k));
                else
                    finish(0.0);
                continue;
            }
            if (!model.forbidden(cur, j))
                finish(model.distance(cur, j));
            for (YardId k : model.reclass_candidates(cur, j))
                if (!model.forbidden(cur, k) && model.hostable(cur, k) && !plan.reclass_yard(cur, k))
                    relax(k, model.distance(cur, k));
        }
        if (last < 0)
            throw SolverError("no permitted service chain for shipment pair " +
                              pair_key(model, {origin, j}));
        std::vector<YardId> chain;
        for (long v = last; v >= 0; v = prev[static_cast<YardId>(v)])
            chain.push_back(static_cast<YardId>(v));
        std::reverse(chain.begin(), chain.end());
        for (std::size_t s = 0; s < chain.size(); ++s) {
            const YardId u = chain[s];
            if (settled(u, j))
                break;
            settled(u, j) = 1;
            if (s + 1 < chain.size()) {
                plan.set_reclass(u, j, chain[s + 1]);
                ensure(u, chain[s + 1]);
            } else {
                ensure(u, j);
            }
        }
    }
    const auto violations = check_structural_feasibility(model, plan);
    if (!violations.empty())
        throw SolverError("initial plan is infeasible: " + violations.front().detail);
    return plan;
}

Plan neighbor(const Model& model, const Plan& plan, Rng& rng) {
    Plan next = plan;
    bool applied = false;
    switch (pick(rng, 3)) {
    case 0: applied = toggle_service(model, next, rng); break;
    case 1: applied = reassign_reclass(model, next, rng); break;
    default: applied = switch_path(model, next, rng); break;
    }
    if (!applied)
        return plan;
    collect_garbage(model, next);
    if (!check_structural_feasibility(model, next).empty())
        return plan;
    return next;
}

Solution solve_sa(const Model& model, const SAConfig& cfg, SAStats* stats) {
    if (!(cfg.cooling_ratio > 0.0 && cfg.cooling_ratio < 1.0))
        throw SolverError("cooling ratio must lie in (0, 1)");
    const auto start = Clock::now();
    Rng rng(cfg.seed);
    SAStats local;

    Plan current = initial_plan(model);
    double current_total = total_cost(model, current, propagate_flows(model, current)).total;
    Plan best = current;
    double best_total = current_total;

    double t0 = 1.0;
    if (cfg.initial_temperature) {
        t0 = *cfg.initial_temperature;
    } else {
        double uphill = 0.0;
        std::size_t count = 0;
        for (int s = 0; s < 200; ++s) {
            Plan probe = neighbor(model, current, rng);
            const double delta =
                total_cost(model, probe, propagate_flows(model, probe)).total - current_total;
            if (delta > 0.0) {
                uphill += delta;
                ++count;
            }
        }
        if (count > 0)
            t0 = -(uphill / static_cast<double>(count)) / std::log(0.8);
    }
    if (!(t0 > 0.0))
        throw SolverError("initial temperature must be positive");
    local.initial_temperature = t0;
    const double t_min = cfg.min_temperature.value_or(1e-3 * t0);
    const std::uint64_t epoch = cfg.epoch_length.value_or(
        100 * std::max<std::uint64_t>(1, model.shipment_pairs().size()));
    if (epoch == 0)
        throw SolverError("epoch length must be positive");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double t = t0;
    while (local.proposed < cfg.max_moves && t >= t_min) {
        for (std::uint64_t e = 0; e < epoch && local.proposed < cfg.max_moves; ++e) {
            ++local.proposed;
            Plan candidate = neighbor(model, current, rng);
            if (candidate == current)
                continue;
            const double total =
                total_cost(model, candidate, propagate_flows(model, candidate)).total;
            const double delta = total - current_total;
            if (delta > 0.0 && unit(rng) >= std::exp(-delta / t))
                continue;
            current = std::move(candidate);
            current_total = total;
            ++local.accepted;
            if (cfg.debug_check) {
                ++local.checked;
                if (!check_structural_feasibility(model, current).empty())
                    throw std::logic_error("annealing accepted a structurally infeasible plan");
            }
            if (current_total < best_total && !cost_tie(current_total, best_total)) {
                best = current;
                best_total = current_total;
            }
        }
        t *= cfg.cooling_ratio;
    }

    Solution sol;
    sol.plan = best;
    sol.cost = total_cost(model, best);
    sol.solver_id = "sa";
    sol.seed = cfg.seed;
    sol.iterations = local.proposed;
    sol.wall_time = seconds_since(start);
    if (stats)
        *stats = local;
    return sol;
}

Solution solve_sa_chains(const Model& model, const SAConfig& cfg, unsigned chains) {
    if (chains == 0)
        throw SolverError("at least one chain is required");
    std::vector<Solution> results(chains);
    std::vector<std::exception_ptr> errors(chains);
    {
        std::vector<std::jthread> workers;
        for (unsigned c = 0; c < chains; ++c)
            workers.emplace_back([&, c] {
                try {
                    SAConfig local = cfg;
                    local.seed = cfg.seed + c;
                    results[c] = solve_sa(model, local);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::size_t best = 0;
    for (std::size_t c = 1; c < results.size(); ++c)
        if (results[c].cost.total < results[best].cost.total &&
            !cost_tie(results[c].cost.total, results[best].cost.total))
            best = c;
    Solution out = results[best];
    out.iterations = 0;
    for (const auto& r : results)
        out.iterations += r.iterations;
    return out;
}

}  // namespace tfp
