#ifndef TFP_STRESS_HPP
#define TFP_STRESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tfp/elastic.hpp"

namespace tfp {

enum class VolumeKind { Fixed, Uniform, TwoPoint };

struct VolumeDistribution {
    std::string origin;
    std::string destination;
    VolumeKind kind = VolumeKind::Fixed;
    double value = 0.0;            // fixed
    std::int64_t lo = 0, hi = 0;   // uniform integer [lo, hi]
    double first = 0.0, second = 0.0;
    double p = 0.5;                // probability of `first`
};

// Shipments without an entry keep their nominal volume every day.
struct StressSpec {
    std::uint64_t days = 1;
    std::uint64_t seed = 1;
    std::vector<VolumeDistribution> distributions;
};

class StressError : public std::runtime_error {
public:
    explicit StressError(const std::string& what) : std::runtime_error(what) {}
};

// {"days": N, "seed": S, "distributions": [{"origin", "destination", "type":
// "fixed" | "uniform" | "two_point", "value" | "lo","hi" | "values","p"}]}
StressSpec parse_stress_spec(std::string_view text);
StressSpec load_stress_spec(const std::filesystem::path& file);

struct StressDay {
    Demand demand;
    SatisfactionProfile profile;
    double G = 0.0, H = 0.0, M = 0.0;
};

struct ResourceStats {
    double below_one = 0.0;  // fraction of days with degree < 1
    double at_zero = 0.0;    // fraction of days with degree = 0
    double mean = 0.0;
    double min = 1.0;
};

struct StressReport {
    std::vector<StressDay> days;
    std::vector<ResourceStats> reclass;  // per yard
    std::vector<ResourceStats> tracks;   // per yard
    std::vector<ResourceStats> links;    // per link
};

// Daily volumes for one day; day d draws from its own generator seeded with
// (seed, d). Two-point and uniform draws are whole cars.
Demand sample_demand(const Model& model, const StressSpec& spec, std::uint64_t day);

// Throws StressError for an invalid spec and FlowError for a structurally
// infeasible plan.
StressReport stress(const Model& model, const Plan& plan, const StressSpec& spec);

}  // namespace tfp

#endif  // TFP_STRESS_HPP
