#ifndef TFP_FLOW_HPP
#define TFP_FLOW_HPP

#include <string>
#include <vector>

#include "tfp/plan.hpp"

namespace tfp {

enum class Constraint {
    Partition,      // one of direct / reclassified per commodity
    Support,        // x(i,j) = k needs service (i,k)
    Candidate,      // k must belong to P(i,j)
    PathSelection,  // service must have a valid path rank
    Mandated,       // y = 1 on mandated services
    Forbidden,      // y = 0 on forbidden services
    MandatedPath,   // designated path chosen
    Acyclicity,     // no deferral cycle toward a destination
};

const char* to_string(Constraint c);

struct PlanViolation {
    Constraint constraint;
    ServicePair pair;
    std::string detail;
};

class FlowError : public std::runtime_error {
public:
    explicit FlowError(const std::string& what) : std::runtime_error(what) {}
};

// Pairs whose commodity must be routed: shipment pairs plus every pair a
// reclassification hands cars to, transitively.
PairTable<char> active_pairs(const Model& model, const Plan& plan);

std::vector<PlanViolation> check_structural_feasibility(const Model& model, const Plan& plan);

enum class TrainCount { Whole, Fractional };

struct FlowOptions {
    TrainCount trains = TrainCount::Whole;
};

struct FlowState {
    PairTable<double> f;  // commodity volume held at i bound for j
    PairTable<double> D;  // cars riding service (i, j)
    std::vector<double> yard_reclass;  // F_k, cars/day
    std::vector<double> yard_tracks;   // T_k, tracks
    std::vector<double> link_trains;   // R_n, trains/day
};

// Block occupancy of one outbound service: 0 for an empty block, otherwise at
// least one full track's worth of cars.
double track_occupancy(double cars, double cars_per_track);

FlowState propagate_flows(const Model& model, const Plan& plan, FlowOptions opts = {});
FlowState propagate_flows(const Model& model, const Plan& plan, const Demand& demand,
                          FlowOptions opts = {});

// Services shipment (i, j) rides, in order.
std::vector<ServicePair> strategy_chain(const Model& model, const Plan& plan, YardId i, YardId j);

// Yard sequence the cars of (i, j) physically traverse.
std::vector<YardId> physical_route(const Model& model, const Plan& plan, YardId i, YardId j);

// All loopless service chains i -> ... -> j over the given services in which
// every intermediate hand-off yard k is a reclassification candidate of the
// commodity (current, j). Chains are returned as yard sequences, ordered
// lexicographically by yard index.
std::vector<std::vector<YardId>> enumerate_strategies(const Model& model,
                                                      const PairTable<char>& services, YardId i,
                                                      YardId j);
std::size_t count_strategies(const Model& model, const PairTable<char>& services, YardId i,
                             YardId j);

}  // namespace tfp

#endif  // TFP_FLOW_HPP
