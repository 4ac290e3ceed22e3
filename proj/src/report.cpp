#include "tfp/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tfp {

using nlohmann::json;

std::string format_number(double v) {
    if (v == 0.0)
        return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string yard_sequence(const Model& model, const std::vector<YardId>& yards) {
    std::string out;
    for (std::size_t k = 0; k < yards.size(); ++k) {
        if (k)
            out += '-';
        out += model.yard_name(yards[k]);
    }
    return out;
}

const std::string& link_name(const Model& model, LinkId n) { return model.link_data(n).id; }

double trains_on(const Model& model, ServicePair s, double cars) {
    if (cars <= 0.0)
        return 0.0;
    const double q = cars / model.train_size(s.from, s.to);
    return std::ceil(q - 1e-9 * std::max(1.0, q));
}

}  // namespace

json cost_json(const CostBreakdown& c) {
    return {{"accumulation", c.accumulation}, {"reclassification", c.reclassification},
            {"detour", c.detour},             {"Z", c.Z},
            {"G", c.G},                       {"H", c.H},
            {"M", c.M},                       {"total", c.total}};
}

json plan_json(const Model& model, const Plan& plan) { return json::parse(serialize_plan(plan, model)); }

json loads_json(const Model& model, const FlowState& fs) {
    json reclass = json::object(), tracks = json::object(), links = json::object();
    for (YardId k = 0; k < model.yard_count(); ++k) {
        reclass[model.yard_name(k)] = fs.yard_reclass[k];
        tracks[model.yard_name(k)] = fs.yard_tracks[k];
    }
    for (LinkId n = 0; n < model.link_count(); ++n)
        links[link_name(model, n)] = fs.link_trains[n];
    return {{"yard_reclass", reclass}, {"yard_tracks", tracks}, {"link_trains", links}};
}

json profile_json(const Model& model, const SatisfactionProfile& p) {
    json reclass = json::object(), tracks = json::object(), links = json::object();
    for (YardId k = 0; k < model.yard_count(); ++k) {
        reclass[model.yard_name(k)] = p.reclass[k];
        tracks[model.yard_name(k)] = p.tracks[k];
    }
    for (LinkId n = 0; n < model.link_count(); ++n)
        links[link_name(model, n)] = p.links[n];
    return {{"yard_reclass", reclass}, {"yard_tracks", tracks}, {"link_trains", links}};
}

json violations_json(const Model& model, const std::vector<CapacityViolation>& v) {
    json out = json::array();
    for (const auto& c : v)
        out.push_back({{"resource", to_string(c.resource)},
                       {"id", c.resource == Resource::Link ? link_name(model, c.index)
                                                           : model.yard_name(c.index)},
                       {"load", c.load},
                       {"capacity", c.bound}});
    return out;
}

json solution_json(const Model& model, const Solution& sol) {
    const FlowState fs = propagate_flows(model, sol.plan);
    const Penalties p = penalties(model, fs);
    json doc = {{"solver", sol.solver_id},
                {"iterations", sol.iterations},
                {"cost", cost_json(sol.cost)},
                {"plan", plan_json(model, sol.plan)},
                {"loads", loads_json(model, fs)},
                {"degrees", profile_json(model, p.profile)}};
    if (sol.solver_id == "sa")
        doc["seed"] = sol.seed;
    return doc;
}

json evaluation_json(const Model& model, const Plan& plan, bool rigid) {
    const FlowState fs = propagate_flows(model, plan);
    const Penalties p = penalties(model, fs);
    json doc = {{"mode", rigid ? "rigid" : "elastic"},
                {"cost", cost_json(total_cost(model, plan, fs))},
                {"plan", plan_json(model, plan)},
                {"loads", loads_json(model, fs)},
                {"degrees", profile_json(model, p.profile)}};
    if (rigid)
        doc["capacity_violations"] = violations_json(model, rigid_check(model, fs));
    return doc;
}

json stress_json(const Model& model, const StressSpec& spec, const StressReport& report) {
    auto stats = [&](const std::vector<ResourceStats>& v, auto name) {
        json out = json::object();
        for (std::size_t r = 0; r < v.size(); ++r)
            out[name(r)] = {{"fraction_below_one", v[r].below_one},
                            {"fraction_zero", v[r].at_zero},
                            {"mean_degree", v[r].mean},
                            {"min_degree", v[r].min}};
        return out;
    };
    auto yard = [&](std::size_t r) { return model.yard_name(r); };
    auto link = [&](std::size_t r) { return link_name(model, r); };
    double g = 0.0, h = 0.0, m = 0.0;
    for (const auto& d : report.days) {
        g += d.G;
        h += d.H;
        m += d.M;
    }
    const double days = static_cast<double>(report.days.size());
    return {{"days", spec.days},
            {"seed", spec.seed},
            {"mean_penalty", {{"G", g / days}, {"H", h / days}, {"M", m / days}}},
            {"yard_reclass", stats(report.reclass, yard)},
            {"yard_tracks", stats(report.tracks, yard)},
            {"link_trains", stats(report.links, link)}};
}

std::string services_csv(const Model& model, const Plan& plan, const FlowState& fs) {
    std::ostringstream out;
    out << "from,to,path_rank,path,length,extra_length,cars,trains\n";
    for (ServicePair s : plan.services()) {
        const std::size_t rank = *plan.path_rank(s.from, s.to);
        const auto& set = model.paths(s.from, s.to);
        const Path& p = set.paths.at(rank);
        out << model.yard_name(s.from) << ',' << model.yard_name(s.to) << ',' << rank << ','
            << yard_sequence(model, p.yards) << ',' << format_number(p.total_length) << ','
            << format_number(set.extra_lengths.at(rank)) << ',' << format_number(fs.D[s]) << ','
            << format_number(trains_on(model, s, fs.D[s])) << '\n';
    }
    return out.str();
}

std::string chains_csv(const Model& model, const Plan& plan) {
    std::ostringstream out;
    out << "origin,destination,volume,chain,route\n";
    for (ServicePair p : model.shipment_pairs()) {
        std::vector<YardId> chain{p.from};
        for (ServicePair s : strategy_chain(model, plan, p.from, p.to))
            chain.push_back(s.to);
        out << model.yard_name(p.from) << ',' << model.yard_name(p.to) << ','
            << format_number(model.demand()[p]) << ',' << yard_sequence(model, chain) << ','
            << yard_sequence(model, physical_route(model, plan, p.from, p.to)) << '\n';
    }
    return out.str();
}

std::string loads_csv(const Model& model, const FlowState& fs) {
    std::ostringstream out;
    out << "resource,id,load,lower,upper\n";
    for (YardId k = 0; k < model.yard_count(); ++k) {
        const Yard& y = model.yard_data(k);
        out << "yard_reclass," << y.id << ',' << format_number(fs.yard_reclass[k]) << ','
            << format_number(y.reclass_belt.lower) << ',' << format_number(y.reclass_belt.upper) << '\n';
    }
    for (YardId k = 0; k < model.yard_count(); ++k) {
        const Yard& y = model.yard_data(k);
        out << "yard_tracks," << y.id << ',' << format_number(fs.yard_tracks[k]) << ','
            << format_number(y.track_belt.lower) << ',' << format_number(y.track_belt.upper) << '\n';
    }
    for (LinkId n = 0; n < model.link_count(); ++n) {
        const Link& l = model.link_data(n);
        out << "link_trains," << l.id << ',' << format_number(fs.link_trains[n]) << ','
            << format_number(l.capacity_belt.lower) << ',' << format_number(l.capacity_belt.upper) << '\n';
    }
    return out.str();
}

std::string degrees_csv(const Model& model, const SatisfactionProfile& p) {
    std::ostringstream out;
    out << "resource,id,degree\n";
    for (YardId k = 0; k < model.yard_count(); ++k)
        out << "yard_reclass," << model.yard_name(k) << ',' << format_number(p.reclass[k]) << '\n';
    for (YardId k = 0; k < model.yard_count(); ++k)
        out << "yard_tracks," << model.yard_name(k) << ',' << format_number(p.tracks[k]) << '\n';
    for (LinkId n = 0; n < model.link_count(); ++n)
        out << "link_trains," << link_name(model, n) << ',' << format_number(p.links[n]) << '\n';
    return out.str();
}

std::string stress_days_csv(const Model& model, const StressReport& report) {
    std::ostringstream out;
    out << "day,G,H,M";
    for (ServicePair p : model.shipment_pairs())
        out << ",N:" << pair_key(model, p);
    for (YardId k = 0; k < model.yard_count(); ++k)
        out << ",reclass:" << model.yard_name(k);
    for (YardId k = 0; k < model.yard_count(); ++k)
        out << ",tracks:" << model.yard_name(k);
    for (LinkId n = 0; n < model.link_count(); ++n)
        out << ",link:" << link_name(model, n);
    out << '\n';
    for (std::size_t d = 0; d < report.days.size(); ++d) {
        const StressDay& day = report.days[d];
        out << d << ',' << format_number(day.G) << ',' << format_number(day.H) << ','
            << format_number(day.M);
        for (ServicePair p : model.shipment_pairs())
            out << ',' << format_number(day.demand[p]);
        for (double v : day.profile.reclass)
            out << ',' << format_number(v);
        for (double v : day.profile.tracks)
            out << ',' << format_number(v);
        for (double v : day.profile.links)
            out << ',' << format_number(v);
        out << '\n';
    }
    return out.str();
}

std::string paths_csv(const Model& model) {
    std::ostringstream out;
    out << "from,to,rank,path,length,extra_length\n";
    for (ServicePair s : model.hostable_pairs()) {
        const auto& set = model.paths(s.from, s.to);
        for (std::size_t r = 0; r < set.size(); ++r)
            out << model.yard_name(s.from) << ',' << model.yard_name(s.to) << ',' << r << ','
                << yard_sequence(model, set.paths[r].yards) << ','
                << format_number(set.paths[r].total_length) << ','
                << format_number(set.extra_lengths[r]) << '\n';
    }
    return out.str();
}

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    out << text;
}

void write_plan_tables(const std::filesystem::path& dir, const Model& model, const Plan& plan) {
    const FlowState fs = propagate_flows(model, plan);
    const Penalties p = penalties(model, fs);
    write_text(dir / "services.csv", services_csv(model, plan, fs));
    write_text(dir / "chains.csv", chains_csv(model, plan));
    write_text(dir / "loads.csv", loads_csv(model, fs));
    write_text(dir / "degrees.csv", degrees_csv(model, p.profile));
}

}  // namespace tfp
