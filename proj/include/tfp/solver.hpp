#ifndef TFP_SOLVER_HPP
#define TFP_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "tfp/elastic.hpp"

namespace tfp {

using Rng = std::mt19937_64;

struct Solution {
    Plan plan;
    CostBreakdown cost;
    std::string solver_id;
    std::uint64_t seed = 0;
    std::uint64_t iterations = 0;  // plans evaluated (exact) or moves proposed (sa)
    double wall_time = 0.0;        // seconds
};

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

class CapExceeded : public SolverError {
public:
    CapExceeded(std::uint64_t estimate, std::uint64_t cap);
    std::uint64_t estimate() const { return estimate_; }

private:
    std::uint64_t estimate_;
};

struct ExactLimits {
    std::uint64_t max_evaluations = 5'000'000;
};

// Number of complete plans solve_exact would evaluate, stopping the count once
// it passes `stop_after`.
std::uint64_t exact_state_space(const Model& model, std::uint64_t stop_after);

// Global minimizer of total_cost over all structurally feasible plans that
// provide no unused optional service. Ties go to the smaller plan encoding.
// Throws CapExceeded when the plan count exceeds the limit.
Solution solve_exact(const Model& model, const ExactLimits& limits = {});

struct SAConfig {
    // Unset: chosen so that about 80% of uphill moves in a 200-move
    // calibration prefix would be accepted.
    std::optional<double> initial_temperature;
    double cooling_ratio = 0.95;
    // Unset: 100 moves per shipment.
    std::optional<std::uint64_t> epoch_length;
    // Unset: 1e-3 times the initial temperature.
    std::optional<double> min_temperature;
    std::uint64_t max_moves = 100'000;
    std::uint64_t seed = 1;
    // Re-check structural feasibility of every accepted state.
    bool debug_check = false;
};

struct SAStats {
    std::uint64_t proposed = 0;
    std::uint64_t accepted = 0;
    std::uint64_t checked = 0;
    double initial_temperature = 0.0;
};

// Mandated services on their default paths; every shipment then rides the
// shortest chain of permitted legs, which is a direct service whenever that
// is allowed. Throws SolverError if some shipment has no permitted chain.
Plan initial_plan(const Model& model);

// One random move (toggle a service, reassign a reclassification yard, or
// switch a service path) followed by repair. Returns the input plan when the
// move cannot be repaired into a structurally feasible plan.
Plan neighbor(const Model& model, const Plan& plan, Rng& rng);

Solution solve_sa(const Model& model, const SAConfig& cfg, SAStats* stats = nullptr);

// Independent chains seeded cfg.seed, cfg.seed + 1, ...; the cheapest result
// wins, earlier chains on ties.
Solution solve_sa_chains(const Model& model, const SAConfig& cfg, unsigned chains);

}  // namespace tfp

#endif  // TFP_SOLVER_HPP
