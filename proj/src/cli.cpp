#include "tfp/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "tfp/fixtures.hpp"
#include "tfp/report.hpp"

namespace tfp {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string instance;
    std::string plan;
    std::string spec;
    std::string out_dir;
    std::string solver = "exact";
    std::string fixture;
    std::uint64_t seed = 1;
    unsigned chains = 1;
    std::uint64_t max_moves = 100'000;
    std::uint64_t max_evaluations = 5'000'000;
    std::optional<std::uint64_t> days;
    bool rigid = false;
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Model build_model(const Options& o) {
    Instance inst = load_instance(o.instance);
    if (o.rigid)
        inst = rigidify(inst);
    return Model(std::move(inst));
}

// Writes a document to <out>/<name> or, without --out, to the output stream.
void emit(const Options& o, std::ostream& out, const std::string& name, const std::string& text) {
    if (o.out_dir.empty()) {
        out << text;
        return;
    }
    fs::create_directories(o.out_dir);
    write_text(fs::path(o.out_dir) / name, text);
}

std::string document(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void require_rigid_feasible(const Options& o, const Model& model, const Plan& plan) {
    if (!o.rigid)
        return;
    const auto v = rigid_check(model, propagate_flows(model, plan));
    if (!v.empty())
        throw DomainError("plan violates " + std::to_string(v.size()) + " hard capacity limit(s)");
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(o.instance);
    const ValidationReport report = validate_instance(inst);
    if (!report.empty()) {
        err << to_string(report);
        return kExitDomain;
    }
    out << "OK\n";
    return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const Model model = build_model(o);
    Solution sol;
    if (o.solver == "exact") {
        sol = solve_exact(model, ExactLimits{o.max_evaluations});
    } else {
        SAConfig cfg;
        cfg.seed = o.seed;
        cfg.max_moves = o.max_moves;
        sol = solve_sa_chains(model, cfg, o.chains);
    }
    err << "solved in " << std::fixed << std::setprecision(3) << sol.wall_time << " s\n";
    emit(o, out, "solution.json", document(solution_json(model, sol)));
    if (!o.out_dir.empty()) {
        write_text(fs::path(o.out_dir) / "plan.json", serialize_plan(sol.plan, model));
        write_plan_tables(o.out_dir, model, sol.plan);
    }
    require_rigid_feasible(o, model, sol.plan);
    return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream&) {
    const Model model = build_model(o);
    const Plan plan = load_plan(o.plan, model);
    const auto violations = check_structural_feasibility(model, plan);
    if (!violations.empty()) {
        std::string msg = "plan is not structurally feasible:";
        for (const auto& v : violations)
            msg += "\n  " + std::string(to_string(v.constraint)) + ": " + v.detail;
        throw DomainError(msg);
    }
    emit(o, out, "evaluation.json", document(evaluation_json(model, plan, o.rigid)));
    if (!o.out_dir.empty())
        write_plan_tables(o.out_dir, model, plan);
    require_rigid_feasible(o, model, plan);
    return kExitOk;
}

int cmd_stress(const Options& o, std::ostream& out, std::ostream&) {
    const Model model = build_model(o);
    const Plan plan = load_plan(o.plan, model);
    StressSpec spec = load_stress_spec(o.spec);
    if (o.days)
        spec.days = *o.days;
    const StressReport report = stress(model, plan, spec);
    emit(o, out, "stress.json", document(stress_json(model, spec, report)));
    if (!o.out_dir.empty())
        write_text(fs::path(o.out_dir) / "stress_days.csv", stress_days_csv(model, report));
    return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream&) {
    if (!o.fixture.empty()) {
        const auto all = fixtures::canonical_instances();
        const auto it = all.find(o.fixture);
        if (it == all.end())
            throw DomainError("unknown fixture \"" + o.fixture + "\"");
        emit(o, out, o.fixture + ".json", serialize_instance(it->second) + "\n");
        return kExitOk;
    }
    if (o.instance.empty())
        throw CLI::RequiredError("an instance file or --fixture");
    const Model model = build_model(o);
    emit(o, out, "paths.csv", paths_csv(model));
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Train formation planning with elastic capacities"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Check an instance document");
    validate->add_option("instance", o.instance, "Instance file")->required();

    auto* solve = app.add_subcommand("solve", "Find a plan");
    solve->add_option("instance", o.instance, "Instance file")->required();
    solve->add_option("--solver", o.solver, "exact or sa")
        ->check(CLI::IsMember({"exact", "sa"}))
        ->capture_default_str();
    solve->add_option("--seed", o.seed, "Annealing seed")->capture_default_str();
    solve->add_option("--chains", o.chains, "Independent annealing chains")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    solve->add_option("--max-moves", o.max_moves, "Moves per chain")->capture_default_str();
    solve->add_option("--max-evaluations", o.max_evaluations, "Exact search cap")
        ->capture_default_str();
    solve->add_flag("--rigid", o.rigid, "Hard capacities");
    solve->add_option("--out", o.out_dir, "Output directory");

    auto* evaluate = app.add_subcommand("evaluate", "Cost a fixed plan");
    evaluate->add_option("instance", o.instance, "Instance file")->required();
    evaluate->add_option("--plan", o.plan, "Plan file")->required();
    evaluate->add_flag("--rigid", o.rigid, "Hard capacities");
    evaluate->add_option("--out", o.out_dir, "Output directory");

    auto* stress_cmd = app.add_subcommand("stress", "Evaluate a plan under fluctuating volumes");
    stress_cmd->add_option("instance", o.instance, "Instance file")->required();
    stress_cmd->add_option("--plan", o.plan, "Plan file")->required();
    stress_cmd->add_option("--spec", o.spec, "Stress spec file")->required();
    stress_cmd->add_option("--days", o.days, "Override the day count")->check(CLI::PositiveNumber);
    stress_cmd->add_flag("--rigid", o.rigid, "Hard capacities");
    stress_cmd->add_option("--out", o.out_dir, "Output directory");

    auto* report = app.add_subcommand("report", "Dump candidate paths or a built-in fixture");
    report->add_option("instance", o.instance, "Instance file");
    report->add_option("--fixture", o.fixture, "fig1, fig2 or yardC");
    report->add_option("--out", o.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        const auto* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << e.what() << "\n" << failed->help();
        return kExitUsage;
    }

    try {
        if (*validate)
            return cmd_validate(o, out, err);
        if (*solve)
            return cmd_solve(o, out, err);
        if (*evaluate)
            return cmd_evaluate(o, out, err);
        if (*stress_cmd)
            return cmd_stress(o, out, err);
        return cmd_report(o, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace tfp
