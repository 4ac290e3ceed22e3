#ifndef TFP_REPORT_HPP
#define TFP_REPORT_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tfp/solver.hpp"
#include "tfp/stress.hpp"

namespace tfp {

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

nlohmann::json cost_json(const CostBreakdown& cost);
nlohmann::json plan_json(const Model& model, const Plan& plan);
nlohmann::json loads_json(const Model& model, const FlowState& fs);
nlohmann::json profile_json(const Model& model, const SatisfactionProfile& profile);
nlohmann::json violations_json(const Model& model, const std::vector<CapacityViolation>& v);

// Timing is left out so that documents are reproducible.
nlohmann::json solution_json(const Model& model, const Solution& sol);
nlohmann::json evaluation_json(const Model& model, const Plan& plan, bool rigid);
nlohmann::json stress_json(const Model& model, const StressSpec& spec, const StressReport& report);

std::string services_csv(const Model& model, const Plan& plan, const FlowState& fs);
std::string chains_csv(const Model& model, const Plan& plan);
std::string loads_csv(const Model& model, const FlowState& fs);
std::string degrees_csv(const Model& model, const SatisfactionProfile& profile);
std::string stress_days_csv(const Model& model, const StressReport& report);
std::string paths_csv(const Model& model);

// Writes services, chains, loads and degrees tables for a plan.
void write_plan_tables(const std::filesystem::path& dir, const Model& model, const Plan& plan);
void write_text(const std::filesystem::path& file, const std::string& text);

}  // namespace tfp

#endif  // TFP_REPORT_HPP
