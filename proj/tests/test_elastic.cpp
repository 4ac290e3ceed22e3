#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tfp/fixtures.hpp"
#include "tfp/solver.hpp"

using namespace tfp;
using test::make_plan;

namespace {

Model single_yard(double load_cars, CapacityBelt belt) {
    Instance inst;
    inst.yards = {Yard{"A", 0, 0, {1e6, 1e6}, {1e6, 1e6}, 1}, Yard{"B", 0, 0, belt, {1e6, 1e6}, 1},
                  Yard{"C", 0, 0, {1e6, 1e6}, {1e6, 1e6}, 1}};
    inst.links = {Link{"AB", "A", "B", 10, {1e6, 1e6}, 1}, Link{"BC", "B", "C", 10, {1e6, 1e6}, 1}};
    inst.shipments = {{"A", "C", load_cars}};
    inst.params.train_size = 50;
    return Model(inst);
}

// Hand evaluation of one penalty term.
double hand_penalty(double load, CapacityBelt b, double alpha, double beta) {
    double deficit = 0.0;
    if (load > b.upper)
        deficit = 1.0;
    else if (load > b.lower)
        deficit = 1.0 - (b.upper - load) / (b.upper - b.lower);
    return alpha * deficit + beta * std::max(0.0, load - b.upper);
}

}  // namespace

TEST(Membership, Examples) {
    const CapacityBelt b{300, 400};
    EXPECT_EQ(membership(250, b), 1.0);
    EXPECT_EQ(membership(300, b), 1.0);
    EXPECT_EQ(membership(350, b), 0.5);
    EXPECT_EQ(membership(400, b), 0.0);
    EXPECT_EQ(membership(401, b), 0.0);
}

TEST(Membership, DegenerateBeltIsAStep) {
    const CapacityBelt b{300, 300};
    EXPECT_EQ(membership(300, b), 1.0);
    EXPECT_EQ(membership(300.0001, b), 0.0);
    EXPECT_EQ(membership(0, b), 1.0);
}

TEST(Cost, EmptyShipmentSet) {
    Instance inst = test::three_yard_line();
    inst.shipments.clear();
    const Model m(inst);
    const CostBreakdown c = total_cost(m, Plan(m.yard_count()));
    EXPECT_EQ(c.total, 0.0);
    EXPECT_EQ(c.Z, 0.0);
    EXPECT_EQ(c.G + c.H + c.M, 0.0);
}

TEST(Cost, ThreeYardLineTerms) {
    const Model m(test::three_yard_line());
    const Plan plan = make_plan(m, {{"A", "B"}, {"B", "C"}}, {{"A", "C", "B"}});
    const CostBreakdown c = total_cost(m, plan);
    EXPECT_EQ(c.accumulation, 100.0);
    EXPECT_EQ(c.reclassification, 20.0);
    EXPECT_EQ(c.detour, 0.0);
    EXPECT_EQ(c.Z, 120.0);
    EXPECT_EQ(c.total, 120.0);
}

TEST(Cost, Fig1DetourOn550Path) {
    const Model m(fixtures::fig1());
    Plan plan = make_plan(m, {{"A", "E"}, {"B", "C"}, {"B", "E"}});
    plan.provide(m.yard("A"), m.yard("E"), 1);
    const CostBreakdown c = operating_cost(m, plan, propagate_flows(m, plan));
    EXPECT_EQ(c.detour, 100.0 * 30.0);
}

TEST(Cost, InfeasiblePlanThrows) {
    const Model m(test::three_yard_line());
    const Plan plan = make_plan(m, {{"B", "C"}}, {{"A", "C", "B"}});
    EXPECT_THROW(total_cost(m, plan), FlowError);
}

TEST(Rigid, YardCBounds) {
    Instance inst = fixtures::yard_c();
    const Model m(inst);
    FlowState fs = propagate_flows(m, make_plan(m, {{"A", "C"}, {"C", "D"}, {"D", "E"}},
                                                 {{"A", "E", "C"}, {"C", "E", "D"}}));
    const YardId c = m.yard("C");
    fs.yard_reclass.assign(m.yard_count(), 0.0);
    fs.yard_reclass[c] = 300.0;
    EXPECT_TRUE(rigid_check(m, fs).empty());
    fs.yard_reclass[c] = 400.0;
    const auto v = rigid_check(m, fs);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].resource, Resource::YardReclass);
    EXPECT_EQ(v[0].index, c);
    EXPECT_EQ(v[0].bound, 300.0);
}

TEST(Rigid, ZeroFlowNoViolations) {
    const Model m(fixtures::yard_c());
    EXPECT_TRUE(rigid_check(m, propagate_flows(m, Plan(m.yard_count()), Demand(m.yard_count(), 0.0))).empty());
}

TEST(Rigid, RigidifyCollapsesBelts) {
    Instance inst = fixtures::fig1();
    inst.yards[0].theta = 0.8;
    inst.links[0].beta_n = 0.5;
    const Instance r = rigidify(inst);
    EXPECT_EQ(r.yards[0].reclass_belt, (CapacityBelt{4000, 4000}));
    EXPECT_EQ(r.yards[0].track_belt, (CapacityBelt{50, 50}));
    EXPECT_EQ(r.links[0].capacity_belt, (CapacityBelt{10, 10}));
}

TEST(Penalty, BelowLowerIsFree) {
    const Model m = single_yard(100, {300, 400});
    const Plan plan = make_plan(m, {{"A", "B"}, {"B", "C"}}, {{"A", "C", "B"}});
    const Penalties p = penalties(m, propagate_flows(m, plan));
    EXPECT_EQ(p.G + p.H + p.M, 0.0);
    for (double d : p.profile.reclass)
        EXPECT_EQ(d, 1.0);
}

TEST(Penalty, RampAndOverflow) {
    const Model m350 = single_yard(350, {300, 400});
    const Plan plan = make_plan(m350, {{"A", "B"}, {"B", "C"}}, {{"A", "C", "B"}});
    EXPECT_EQ(penalties(m350, propagate_flows(m350, plan)).G, 750.0);
    const Model m500 = single_yard(500, {300, 400});
    const Penalties p = penalties(m500, propagate_flows(m500, plan));
    EXPECT_EQ(p.G, 1500.0 + 1500.0 * 100.0);
    EXPECT_EQ(p.profile.reclass[m500.yard("B")], 0.0);
}

TEST(Penalty, AmpleCapacityTotalEqualsZ) {
    const Model m(fixtures::fig2());
    const Plan plan = initial_plan(m);
    const CostBreakdown c = total_cost(m, plan);
    EXPECT_EQ(c.total, c.Z);
}

TEST(Penalty, YardCOverflowWithDegenerateBelt) {
    // Yard D receives both blocks for reclassification under this plan.
    Instance inst = fixtures::yard_c();
    inst.shipments[0].volume = 200;
    inst.yards[3].reclass_belt = {300, 300};
    const Model m(inst);
    const Plan plan = make_plan(m, {{"A", "C"}, {"C", "D"}, {"D", "E"}}, {{"A", "E", "C"}, {"C", "E", "D"}});
    const FlowState fs = propagate_flows(m, plan);
    EXPECT_EQ(fs.yard_reclass[m.yard("D")], 400.0);
    const Penalties p = penalties(m, fs);
    EXPECT_EQ(p.G, 151500.0);
    const CostBreakdown c = total_cost(m, plan);
    EXPECT_EQ(c.total, c.Z + 151500.0);
}

TEST(PenaltyProperty, MatchesHandEvaluation) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        const Model m(oracle::random_instance(rng));
        const Plan plan = oracle::random_plan(m, rng);
        const FlowState fs = propagate_flows(m, plan);
        const Penalties p = penalties(m, fs);
        const double a = m.params().alpha, b = m.params().beta;
        double g = 0, h = 0, mm = 0;
        for (YardId k = 0; k < m.yard_count(); ++k) {
            g += hand_penalty(fs.yard_reclass[k], m.yard_data(k).reclass_belt, a, b);
            h += hand_penalty(fs.yard_tracks[k], m.yard_data(k).track_belt, a, b);
        }
        for (LinkId n = 0; n < m.link_count(); ++n)
            mm += hand_penalty(fs.link_trains[n], m.link_data(n).capacity_belt, a, b);
        EXPECT_NEAR(p.G, g, 1e-9 * std::max(1.0, g));
        EXPECT_NEAR(p.H, h, 1e-9 * std::max(1.0, h));
        EXPECT_NEAR(p.M, mm, 1e-9 * std::max(1.0, mm));
    }
}

TEST(PenaltyProperty, WideningUpperNeverIncreases) {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 100; ++round) {
        const Instance inst = oracle::random_instance(rng);
        const Model m(inst);
        const Plan plan = oracle::random_plan(m, rng);
        const CostBreakdown base = total_cost(m, plan);
        auto widen = [&](auto mutate) {
            Instance w = inst;
            mutate(w);
            const Model mw(w);
            const CostBreakdown c = total_cost(mw, plan);
            EXPECT_LE(c.G, base.G);
            EXPECT_LE(c.H, base.H);
            EXPECT_LE(c.M, base.M);
            EXPECT_LE(c.total, base.total);
        };
        for (std::size_t k = 0; k < inst.yards.size(); ++k) {
            widen([&](Instance& w) { w.yards[k].reclass_belt.upper *= 1.1; });
            widen([&](Instance& w) { w.yards[k].track_belt.upper *= 1.1; });
        }
        for (std::size_t n = 0; n < inst.links.size(); ++n)
            widen([&](Instance& w) { w.links[n].capacity_belt.upper *= 1.1; });
    }
}
