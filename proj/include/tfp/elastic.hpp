#ifndef TFP_ELASTIC_HPP
#define TFP_ELASTIC_HPP

#include <string>
#include <vector>

#include "tfp/flow.hpp"

namespace tfp {

// Satisfaction degree of a load against its belt: 1 up to the lower bound, a
// linear ramp down to 0 at the upper bound, 0 beyond. A degenerate belt is a
// step at its single bound.
double membership(double load, const CapacityBelt& belt);

struct CostBreakdown {
    double accumulation = 0.0;     // sum of c_i * m_ij over provided services
    double reclassification = 0.0; // sum of tau_k * F_k
    double detour = 0.0;           // lambda * D_ij * extra length of the chosen path
    double Z = 0.0;
    double G = 0.0;  // yard reclassification penalty
    double H = 0.0;  // yard track penalty
    double M = 0.0;  // link penalty
    double total = 0.0;
};

struct SatisfactionProfile {
    std::vector<double> reclass;  // per yard
    std::vector<double> tracks;   // per yard
    std::vector<double> links;    // per link
};

struct Penalties {
    double G = 0.0;
    double H = 0.0;
    double M = 0.0;
    SatisfactionProfile profile;
};

// Fills the Z fields only.
CostBreakdown operating_cost(const Model& model, const Plan& plan, const FlowState& fs);

enum class Resource { YardReclass, YardTracks, Link };

const char* to_string(Resource r);

struct CapacityViolation {
    Resource resource;
    std::size_t index;  // yard or link
    double load;
    double bound;
};

// Hard checks with the belt lower bound as the capacity: link trains against
// beta_n * lower, reclassified cars against theta * lower, occupied tracks
// against lower.
std::vector<CapacityViolation> rigid_check(const Model& model, const FlowState& fs);

Penalties penalties(const Model& model, const FlowState& fs);

// Z + G + H + M, the search objective. Throws FlowError when the plan is not
// structurally feasible.
CostBreakdown total_cost(const Model& model, const Plan& plan, FlowOptions opts = {});
CostBreakdown total_cost(const Model& model, const Plan& plan, const FlowState& fs);

// Rigid mode as degenerate belts: every belt collapses to the bound that
// rigid_check enforces, so the penalties act as hard constraints.
Instance rigidify(const Instance& inst);

}  // namespace tfp

#endif  // TFP_ELASTIC_HPP
