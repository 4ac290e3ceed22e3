#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "tfp/solver.hpp"

namespace tfp::oracle {

namespace {

bool near(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

bool raw_less(const RawPath& a, const RawPath& b) {
    if (!near(a.length, b.length))
        return a.length < b.length;
    if (a.yards != b.yards)
        return a.yards < b.yards;
    return a.links < b.links;
}

}  // namespace

std::vector<RawPath> all_simple_paths(const Instance& inst, const std::string& from, const std::string& to) {
    std::vector<RawPath> out;
    RawPath cur;
    cur.yards.push_back(from);
    std::function<void(const std::string&)> dfs = [&](const std::string& at) {
        if (at == to) {
            out.push_back(cur);
            return;
        }
        for (std::size_t n = 0; n < inst.links.size(); ++n) {
            const Link& l = inst.links[n];
            if (l.from_yard != at)
                continue;
            if (std::find(cur.yards.begin(), cur.yards.end(), l.to_yard) != cur.yards.end())
                continue;
            cur.yards.push_back(l.to_yard);
            cur.links.push_back(n);
            cur.length += l.length;
            dfs(l.to_yard);
            cur.length -= l.length;
            cur.links.pop_back();
            cur.yards.pop_back();
        }
    };
    if (from != to)
        dfs(from);
    std::sort(out.begin(), out.end(), raw_less);
    return out;
}

double brute_distance(const Instance& inst, const std::string& from, const std::string& to) {
    const auto paths = all_simple_paths(inst, from, to);
    return paths.empty() ? std::numeric_limits<double>::infinity() : paths.front().length;
}

CarCounts simulate_cars(const Model& model, const Plan& plan, const Demand& demand) {
    const std::size_t n = model.yard_count();
    CarCounts c{PairTable<double>(n, 0.0), PairTable<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (YardId i = 0; i < n; ++i)
        for (YardId j = 0; j < n; ++j) {
            const double volume = demand(i, j);
            if (i == j || volume <= 0.0)
                continue;
            const double whole = std::floor(volume);
            const double part = volume - whole;
            auto move = [&](double weight) {
                YardId at = i;
                for (std::size_t hops = 0; hops <= n; ++hops) {
                    c.f(at, j) += weight;
                    if (auto k = plan.reclass_yard(at, j)) {
                        c.D(at, *k) += weight;
                        c.reclass[*k] += weight;
                        at = *k;
                        continue;
                    }
                    if (plan.provides(at, j))
                        c.D(at, j) += weight;
                    return;
                }
            };
            for (double car = 0; car < whole; ++car)
                move(1.0);
            if (part > 0.0)
                move(part);
        }
    return c;
}

std::vector<std::vector<YardId>> dfs_strategies(const Model& model, const PairTable<char>& services,
                                                YardId i, YardId j) {
    const Instance& inst = model.instance();
    const std::size_t n = model.yard_count();
    auto dist = [&](YardId a, YardId b) {
        return brute_distance(inst, model.yard_name(a), model.yard_name(b));
    };
    auto candidate = [&](YardId a, YardId b, YardId k) {
        if (k == a || k == b)
            return false;
        const double base = dist(a, b);
        const double cap = inst.params.detour_cap ? *inst.params.detour_cap : 0.4 * base;
        const double extra = dist(a, k) + dist(k, b) - base;
        return std::isfinite(extra) && (extra <= cap || near(extra, cap));
    };
    std::vector<std::vector<YardId>> out;
    std::vector<YardId> chain{i};
    std::function<void()> dfs = [&]() {
        const YardId at = chain.back();
        if (services(at, j)) {
            chain.push_back(j);
            out.push_back(chain);
            chain.pop_back();
        }
        for (YardId k = 0; k < n; ++k) {
            if (!services(at, k) || std::find(chain.begin(), chain.end(), k) != chain.end() ||
                !candidate(at, j, k))
                continue;
            chain.push_back(k);
            dfs();
            chain.pop_back();
        }
    };
    dfs();
    std::sort(out.begin(), out.end());
    return out;
}

void for_each_feasible_plan(const Model& model, bool vary_paths,
                            const std::function<void(const Plan&)>& visit) {
    const std::size_t n = model.yard_count();
    const auto& pairs = model.hostable_pairs();
    std::vector<std::vector<long>> x_options;
    for (ServicePair p : pairs) {
        std::vector<long> opts{-1};
        for (YardId k : model.reclass_candidates(p.from, p.to))
            opts.push_back(static_cast<long>(k));
        x_options.push_back(opts);
    }
    std::vector<std::size_t> xi_digit(pairs.size(), 0);
    Plan plan(n);

    std::function<void(std::size_t)> assign_paths = [&](std::size_t idx) {
        if (idx == pairs.size()) {
            visit(plan);
            return;
        }
        const ServicePair p = pairs[idx];
        if (!plan.provides(p.from, p.to) || !vary_paths) {
            assign_paths(idx + 1);
            return;
        }
        for (std::size_t r = 0; r < model.paths(p.from, p.to).size(); ++r) {
            plan.provide(p.from, p.to, r);
            assign_paths(idx + 1);
        }
        plan.provide(p.from, p.to, model.default_path(p.from, p.to));
    };

    std::function<void(std::size_t)> assign_y = [&](std::size_t idx) {
        if (idx == pairs.size()) {
            if (check_structural_feasibility(model, plan).empty())
                assign_paths(0);
            return;
        }
        const ServicePair p = pairs[idx];
        assign_y(idx + 1);
        if (!plan.reclass_yard(p.from, p.to)) {
            plan.provide(p.from, p.to, model.default_path(p.from, p.to));
            assign_y(idx + 1);
            plan.withdraw(p.from, p.to);
        }
    };

    std::function<void(std::size_t)> assign_x = [&](std::size_t idx) {
        if (idx == pairs.size()) {
            assign_y(0);
            return;
        }
        const ServicePair p = pairs[idx];
        for (long k : x_options[idx]) {
            if (k < 0)
                plan.clear_reclass(p.from, p.to);
            else
                plan.set_reclass(p.from, p.to, static_cast<YardId>(k));
            assign_x(idx + 1);
        }
        plan.clear_reclass(p.from, p.to);
    };
    assign_x(0);
}

std::pair<Plan, double> brute_force_optimum(const Model& model) {
    std::optional<Plan> best;
    double best_total = 0.0;
    for_each_feasible_plan(model, true, [&](const Plan& plan) {
        const double total = total_cost(model, plan, propagate_flows(model, plan)).total;
        if (!best || (total < best_total && !near(total, best_total)) ||
            (near(total, best_total) && encoding_less(plan, *best))) {
            best = plan;
            best_total = total;
        }
    });
    if (!best)
        throw std::runtime_error("no feasible plan");
    return {*best, best_total};
}

Instance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& opts) {
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto integer = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto chance = [&](double p) { return uniform(0.0, 1.0) < p; };

    Instance inst;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < opts.yards; ++k)
        names.push_back(std::string(1, static_cast<char>('A' + k)));
    for (const auto& id : names) {
        Yard y;
        y.id = id;
        y.c = integer(1, 4) * 0.5;
        y.tau = integer(1, 6);
        const double rl = opts.tight ? integer(1, 30) * 10.0 : 5000.0;
        y.reclass_belt = {rl, rl + (chance(0.2) ? 0.0 : integer(1, 15) * 10.0)};
        const double tl = opts.tight ? integer(1, 3) : 50.0;
        y.track_belt = {tl, tl + (chance(0.2) ? 0.0 : integer(1, 3))};
        y.theta = chance(0.3) ? 0.9 : 1.0;
        inst.yards.push_back(y);
    }
    std::vector<std::string> order = names;
    std::shuffle(order.begin(), order.end(), rng);
    auto add_link = [&](const std::string& a, const std::string& b) {
        for (const Link& l : inst.links)
            if (l.from_yard == a && l.to_yard == b)
                return;
        Link l;
        l.id = a + b;
        l.from_yard = a;
        l.to_yard = b;
        l.length = integer(5, 20) * 10.0;
        const double ll = opts.tight ? integer(1, 6) : 100.0;
        l.capacity_belt = {ll, ll + (chance(0.2) ? 0.0 : integer(1, 4))};
        inst.links.push_back(l);
    };
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        add_link(order[k], order[k + 1]);
        add_link(order[k + 1], order[k]);
    }
    for (const auto& a : names)
        for (const auto& b : names)
            if (a != b && chance(0.15))
                add_link(a, b);

    std::vector<NamedPair> all_pairs;
    for (const auto& a : names)
        for (const auto& b : names)
            if (a != b)
                all_pairs.push_back({a, b});
    std::shuffle(all_pairs.begin(), all_pairs.end(), rng);
    for (std::size_t s = 0; s < std::min(opts.shipments, all_pairs.size()); ++s)
        inst.shipments.push_back({all_pairs[s].from, all_pairs[s].to, static_cast<double>(integer(2, 30) * 10)});

    inst.params.train_size = integer(3, 8) * 10.0;
    inst.params.lambda = integer(0, 4) * 0.5;
    inst.params.cars_per_track = opts.tight ? 100.0 : 200.0;
    inst.params.max_paths = static_cast<std::size_t>(integer(1, 3));

    if (opts.constraints) {
        std::shuffle(all_pairs.begin(), all_pairs.end(), rng);
        if (chance(0.5))
            inst.mandated_services.push_back(all_pairs[0]);
        if (chance(0.6)) {
            inst.forbidden_services.push_back(all_pairs[1]);
            try {
                initial_plan(Model(inst));
            } catch (const std::exception&) {
                inst.forbidden_services.clear();
            }
        }
    }
    return inst;
}

Plan random_plan(const Model& model, std::mt19937_64& rng, int moves) {
    Plan plan = initial_plan(model);
    for (int m = 0; m < moves; ++m)
        plan = neighbor(model, plan, rng);
    return plan;
}

Instance line4() {
    Instance inst;
    const std::vector<std::string> names{"A", "B", "C", "D"};
    for (const auto& id : names)
        inst.yards.push_back(Yard{id, 1.0, 2.0, {500.0, 600.0}, {5.0, 6.0}, 1.0});
    for (std::size_t k = 0; k + 1 < names.size(); ++k) {
        inst.links.push_back(Link{names[k] + names[k + 1], names[k], names[k + 1], 100.0, {10.0, 12.0}, 1.0});
        inst.links.push_back(Link{names[k + 1] + names[k], names[k + 1], names[k], 100.0, {10.0, 12.0}, 1.0});
    }
    inst.shipments = {{"A", "D", 60.0}, {"A", "C", 40.0}, {"B", "D", 70.0}, {"D", "A", 30.0}, {"C", "A", 20.0}};
    inst.params.train_size = 50.0;
    inst.params.lambda = 1.0;
    return inst;
}

}  // namespace tfp::oracle
