#ifndef TFP_TESTS_ORACLES_HPP
#define TFP_TESTS_ORACLES_HPP

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tfp/elastic.hpp"

namespace tfp::oracle {

struct RawPath {
    std::vector<std::string> yards;
    std::vector<std::size_t> links;
    double length = 0.0;
};

// Every loopless route by exhaustive depth-first search, ordered by length,
// then yard names, then link indices.
std::vector<RawPath> all_simple_paths(const Instance& inst, const std::string& from,
                                      const std::string& to);

// Shortest route length by exhaustive search; infinity when unreachable.
double brute_distance(const Instance& inst, const std::string& from, const std::string& to);

struct CarCounts {
    PairTable<double> f;
    PairTable<double> D;
    std::vector<double> reclass;
};

// Moves every car individually along its strategy chain.
CarCounts simulate_cars(const Model& model, const Plan& plan, const Demand& demand);

// Strategy chains i -> j over `services` by depth-first search, with hand-off
// candidates recomputed from brute-force distances.
std::vector<std::vector<YardId>> dfs_strategies(const Model& model, const PairTable<char>& services,
                                                YardId i, YardId j);

// Every plan whose decisions pass the structural check, with all optional
// services and path ranks varied. Only practical for three or four yards.
void for_each_feasible_plan(const Model& model, bool vary_paths,
                            const std::function<void(const Plan&)>& visit);

// Minimum total cost over for_each_feasible_plan; ties to the smaller encoding.
std::pair<Plan, double> brute_force_optimum(const Model& model);

struct RandomInstanceOptions {
    std::size_t yards = 4;
    std::size_t shipments = 3;
    bool constraints = true;  // sprinkle mandated and forbidden services
    bool tight = true;        // belts low enough to make penalties bite
};

Instance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& opts = {});

// A random structurally feasible plan reached by random neighbor moves.
Plan random_plan(const Model& model, std::mt19937_64& rng, int moves = 20);

// 4-yard line A-B-C-D with both directions and shipments on several pairs.
Instance line4();

}  // namespace tfp::oracle

#endif  // TFP_TESTS_ORACLES_HPP
