#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tfp/fixtures.hpp"
#include "tfp/solver.hpp"

using namespace tfp;
using test::make_plan;

namespace {

bool same_cost(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

SAConfig quick(std::uint64_t seed) {
    SAConfig cfg;
    cfg.seed = seed;
    cfg.max_moves = 20'000;
    return cfg;
}

}  // namespace

TEST(Exact, SingleShipmentSingleService) {
    Instance inst;
    inst.yards = {Yard{"A", 1.5, 2, {100, 120}, {5, 6}, 1}, Yard{"B", 1, 2, {100, 120}, {5, 6}, 1}};
    inst.links = {Link{"AB", "A", "B", 10, {10, 12}, 1}};
    inst.shipments = {{"A", "B", 30}};
    inst.params.train_size = 40;
    const Model m(inst);
    const Solution s = solve_exact(m);
    EXPECT_TRUE(s.plan.provides(0, 1));
    EXPECT_EQ(s.cost.Z, 1.5 * 40);
    EXPECT_EQ(s.solver_id, "exact");
}

TEST(Exact, ThreeYardLineMatchesBruteForce) {
    const Model m(test::three_yard_line());
    const Solution s = solve_exact(m);
    const auto [plan, total] = oracle::brute_force_optimum(m);
    EXPECT_EQ(s.cost.total, total);
    EXPECT_EQ(s.plan, plan);
    // Reclassifying 10 cars at B (20) beats a third service (50).
    EXPECT_EQ(s.plan.reclass_yard(m.yard("A"), m.yard("C")), m.yard("B"));
    EXPECT_EQ(s.cost.Z, 120.0);
}

TEST(Exact, Fig1RigidRoutesAroundNarrowSection) {
    const Model m(rigidify(fixtures::fig1()));
    const Solution s = solve_exact(m);
    const auto route = physical_route(m, s.plan, m.yard("A"), m.yard("E"));
    std::vector<std::string> names;
    for (YardId y : route)
        names.push_back(m.yard_name(y));
    EXPECT_EQ(names, (std::vector<std::string>{"A", "B", "F", "D", "E"}));
    EXPECT_TRUE(rigid_check(m, propagate_flows(m, s.plan)).empty());
}

TEST(Exact, CapExceededReportsEstimate) {
    const Model m(fixtures::fig2());
    try {
        solve_exact(m, ExactLimits{3});
        FAIL() << "expected CapExceeded";
    } catch (const CapExceeded& e) {
        EXPECT_GT(e.estimate(), 3u);
    }
    EXPECT_EQ(exact_state_space(m, 1'000'000), solve_exact(m).iterations);
}

TEST(Exact, NoFeasiblePlan) {
    Instance inst = test::three_yard_line();
    inst.forbidden_services = {{"A", "C"}, {"A", "B"}};
    EXPECT_THROW(solve_exact(Model(inst)), SolverError);
}

TEST(ExactProperty, MatchesBruteForceOnThreeYardInstances) {
    std::mt19937_64 rng(3);
    oracle::RandomInstanceOptions opts;
    opts.yards = 3;
    opts.shipments = 2;
    for (int round = 0; round < 40; ++round) {
        const Model m(oracle::random_instance(rng, opts));
        const Solution s = solve_exact(m);
        const auto [plan, total] = oracle::brute_force_optimum(m);
        EXPECT_TRUE(same_cost(s.cost.total, total)) << s.cost.total << " vs " << total;
        EXPECT_TRUE(check_structural_feasibility(m, s.plan).empty());
    }
}

TEST(SA, MaxMovesZeroReturnsInitialPlan) {
    const Model m(fixtures::fig2());
    SAConfig cfg;
    cfg.max_moves = 0;
    const Solution s = solve_sa(m, cfg);
    EXPECT_EQ(s.plan, initial_plan(m));
    EXPECT_EQ(s.iterations, 0u);
}

TEST(SA, InitialPlanPrefersDirect) {
    const Model m(fixtures::fig1());
    const Plan p = initial_plan(m);
    for (ServicePair s : m.shipment_pairs())
        EXPECT_TRUE(p.provides(s.from, s.to));
}

TEST(SA, InitialPlanChainsAroundForbidden) {
    const Model m(fixtures::yard_c());
    const Plan p = initial_plan(m);
    EXPECT_TRUE(check_structural_feasibility(m, p).empty());
    EXPECT_EQ(p.reclass_yard(m.yard("A"), m.yard("E")), m.yard("C"));
    EXPECT_EQ(p.reclass_yard(m.yard("C"), m.yard("E")), m.yard("D"));
}

TEST(SA, Deterministic) {
    const Model m(fixtures::fig1());
    const Solution a = solve_sa(m, quick(4));
    const Solution b = solve_sa(m, quick(4));
    EXPECT_EQ(a.plan, b.plan);
    EXPECT_EQ(a.cost.total, b.cost.total);
    EXPECT_EQ(a.iterations, b.iterations);
    const Solution c1 = solve_sa_chains(m, quick(4), 3);
    const Solution c2 = solve_sa_chains(m, quick(4), 3);
    EXPECT_EQ(c1.plan, c2.plan);
    EXPECT_EQ(c1.seed, c2.seed);
}

TEST(SA, ChainsPickCheapestEarliest) {
    const Model m(oracle::line4());
    const Solution best = solve_sa_chains(m, quick(10), 3);
    double expect = 0.0;
    std::uint64_t seed = 0;
    for (std::uint64_t c = 0; c < 3; ++c) {
        const Solution s = solve_sa(m, quick(10 + c));
        if (c == 0 || (s.cost.total < expect && !same_cost(s.cost.total, expect))) {
            expect = s.cost.total;
            seed = s.seed;
        }
    }
    EXPECT_EQ(best.cost.total, expect);
    EXPECT_EQ(best.seed, seed);
}

TEST(SA, MandatedDirectFixesServices) {
    Instance inst = fixtures::fig1();
    for (const auto& s : inst.shipments)
        inst.mandated_services.push_back({s.origin, s.destination});
    const Model m(inst);
    const Solution s = solve_sa(m, quick(2));
    std::vector<ServicePair> expected = m.shipment_pairs();
    EXPECT_EQ(s.plan.services(), expected);
    EXPECT_TRUE(same_cost(s.cost.total, solve_exact(m).cost.total));
}

TEST(SA, ToggleOfMandatedDirectIsNoOp) {
    Instance inst = test::three_yard_line();
    inst.mandated_services = {{"A", "B"}, {"B", "C"}, {"A", "C"}};
    const Model m(inst);
    const Plan start = initial_plan(m);
    Rng rng(1);
    for (int k = 0; k < 500; ++k) {
        const Plan next = neighbor(m, start, rng);
        for (ServicePair p : m.shipment_pairs())
            EXPECT_TRUE(next.provides(p.from, p.to));
    }
}

TEST(SA, PathSwitchOnFig1) {
    Instance inst = fixtures::fig1();
    inst.shipments = {{"A", "E", 100.0}};
    inst.forbidden_services = {{"A", "B"}, {"A", "C"}, {"A", "D"}, {"A", "F"}};
    const Model m(inst);
    const YardId a = m.yard("A"), e = m.yard("E");
    Rng rng(3);
    Plan plan = initial_plan(m);
    std::set<std::size_t> ranks;
    for (int k = 0; k < 300; ++k) {
        plan = neighbor(m, plan, rng);
        if (plan.provides(a, e))
            ranks.insert(*plan.path_rank(a, e));
    }
    EXPECT_EQ(ranks, (std::set<std::size_t>{0, 1}));
}

TEST(SAProperty, NeighborsAreFeasible) {
    std::mt19937_64 gen(17);
    int moves = 0;
    for (int round = 0; round < 50; ++round) {
        const Model m(oracle::random_instance(gen));
        Rng rng(round);
        Plan plan = initial_plan(m);
        for (int k = 0; k < 200; ++k) {
            plan = neighbor(m, plan, rng);
            ASSERT_TRUE(check_structural_feasibility(m, plan).empty());
            ++moves;
        }
    }
    const Model fig2(fixtures::fig2());
    Rng rng(99);
    Plan plan = initial_plan(fig2);
    for (int k = 0; k < 2000; ++k, ++moves) {
        plan = neighbor(fig2, plan, rng);
        ASSERT_TRUE(check_structural_feasibility(fig2, plan).empty());
    }
    EXPECT_GE(moves, 10'000);
}

TEST(SAProperty, DebugCheckedRunsMatchExactOnSmallInstances) {
    std::mt19937_64 gen(23);
    for (int round = 0; round < 8; ++round) {
        const Model m(oracle::random_instance(gen));
        const double exact = solve_exact(m).cost.total;
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            SAConfig cfg = quick(seed);
            cfg.debug_check = true;
            SAStats stats;
            const Solution s = solve_sa(m, cfg, &stats);
            EXPECT_EQ(stats.checked, stats.accepted);
            EXPECT_GE(s.cost.total + 1e-9 * std::max(1.0, exact), exact);
            best = std::min(best, s.cost.total);
        }
        EXPECT_TRUE(same_cost(best, exact)) << "round " << round << ": " << best << " vs " << exact;
    }
}
