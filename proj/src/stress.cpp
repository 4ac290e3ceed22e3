#include "tfp/stress.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tfp {

using nlohmann::json;

namespace {

double whole_cars(double v) { return std::floor(v + 0.5); }

double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw StressError(where + ": missing numeric field '" + key + "'");
    return obj[key].get<double>();
}

std::uint64_t count_field(const json& doc, const char* key) {
    if (!doc.contains(key))
        throw StressError(std::string("missing field '") + key + "'");
    const json& v = doc[key];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw StressError(std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw StressError(where + ": unknown field '" + key + "'");
}

VolumeDistribution parse_distribution(const json& d, std::size_t index) {
    const std::string where = "distributions[" + std::to_string(index) + "]";
    if (!d.is_object())
        throw StressError(where + ": expected an object");
    VolumeDistribution out;
    for (const char* key : {"origin", "destination", "type"})
        if (!d.contains(key) || !d[key].is_string())
            throw StressError(where + ": missing string field '" + key + "'");
    out.origin = d["origin"].get<std::string>();
    out.destination = d["destination"].get<std::string>();
    const std::string type = d["type"].get<std::string>();
    if (type == "fixed") {
        check_keys(d, {"origin", "destination", "type", "value"}, where);
        out.kind = VolumeKind::Fixed;
        out.value = number_field(d, "value", where);
        if (out.value < 0.0)
            throw StressError(where + ": volume must be non-negative");
    } else if (type == "uniform") {
        check_keys(d, {"origin", "destination", "type", "lo", "hi"}, where);
        out.kind = VolumeKind::Uniform;
        for (const char* key : {"lo", "hi"})
            if (!d.contains(key) || !d[key].is_number_integer())
                throw StressError(where + ": field '" + key + "' must be an integer");
        out.lo = d["lo"].get<std::int64_t>();
        out.hi = d["hi"].get<std::int64_t>();
        if (out.lo > out.hi)
            throw StressError(where + ": lo exceeds hi");
        if (out.lo < 0)
            throw StressError(where + ": volume must be non-negative");
    } else if (type == "two_point") {
        check_keys(d, {"origin", "destination", "type", "values", "p"}, where);
        out.kind = VolumeKind::TwoPoint;
        if (!d.contains("values") || !d["values"].is_array() || d["values"].size() != 2 ||
            !d["values"][0].is_number() || !d["values"][1].is_number())
            throw StressError(where + ": 'values' must hold two numbers");
        out.first = d["values"][0].get<double>();
        out.second = d["values"][1].get<double>();
        out.p = number_field(d, "p", where);
        if (!(out.p >= 0.0 && out.p <= 1.0))
            throw StressError(where + ": probability must lie in [0, 1]");
        if (out.first < 0.0 || out.second < 0.0)
            throw StressError(where + ": volume must be non-negative");
    } else {
        throw StressError(where + ": unknown distribution type \"" + type + "\"");
    }
    return out;
}

void validate(const Model& model, const StressSpec& spec) {
    if (spec.days < 1)
        throw StressError("days must be at least 1");
    std::set<ServicePair> seen;
    for (const auto& d : spec.distributions) {
        const auto i = model.graph().find_yard(d.origin);
        const auto j = model.graph().find_yard(d.destination);
        const std::string key = d.origin + "->" + d.destination;
        if (!i || !j || !model.is_shipment(*i, *j))
            throw StressError("distribution for " + key + " does not match a shipment");
        if (!seen.insert({*i, *j}).second)
            throw StressError("duplicate distribution for " + key);
        if (d.kind == VolumeKind::TwoPoint && !(d.p >= 0.0 && d.p <= 1.0))
            throw StressError("probability must lie in [0, 1] for " + key);
        if (d.kind == VolumeKind::Uniform && d.lo > d.hi)
            throw StressError("lo exceeds hi for " + key);
    }
}

void accumulate(std::vector<ResourceStats>& stats, const std::vector<double>& degrees) {
    if (stats.empty())
        stats.resize(degrees.size());
    for (std::size_t r = 0; r < degrees.size(); ++r) {
        ResourceStats& s = stats[r];
        const double d = degrees[r];
        s.below_one += d < 1.0 ? 1.0 : 0.0;
        s.at_zero += d == 0.0 ? 1.0 : 0.0;
        s.mean += d;
        s.min = std::min(s.min, d);
    }
}

void normalize(std::vector<ResourceStats>& stats, double days) {
    for (ResourceStats& s : stats) {
        s.below_one /= days;
        s.at_zero /= days;
        s.mean /= days;
    }
}

}  // namespace

StressSpec parse_stress_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw StressError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw StressError("stress spec must be an object");
    check_keys(doc, {"days", "seed", "distributions"}, "stress spec");
    StressSpec spec;
    spec.days = count_field(doc, "days");
    if (spec.days < 1)
        throw StressError("days must be at least 1");
    spec.seed = count_field(doc, "seed");
    if (doc.contains("distributions")) {
        if (!doc["distributions"].is_array())
            throw StressError("distributions must be an array");
        for (std::size_t k = 0; k < doc["distributions"].size(); ++k)
            spec.distributions.push_back(parse_distribution(doc["distributions"][k], k));
    }
    return spec;
}

StressSpec load_stress_spec(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw StressError("cannot open " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_stress_spec(buf.str());
}

Demand sample_demand(const Model& model, const StressSpec& spec, std::uint64_t day) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(day), static_cast<std::uint32_t>(day >> 32)};
    std::mt19937_64 rng(seq);
    Demand demand = model.demand();
    for (const auto& d : spec.distributions) {
        const ServicePair p{model.yard(d.origin), model.yard(d.destination)};
        switch (d.kind) {
        case VolumeKind::Fixed:
            demand[p] = d.value;
            break;
        case VolumeKind::Uniform:
            demand[p] = static_cast<double>(std::uniform_int_distribution<std::int64_t>(d.lo, d.hi)(rng));
            break;
        case VolumeKind::TwoPoint: {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            demand[p] = whole_cars(u < d.p ? d.first : d.second);
            break;
        }
        }
    }
    return demand;
}

StressReport stress(const Model& model, const Plan& plan, const StressSpec& spec) {
    validate(model, spec);
    const auto violations = check_structural_feasibility(model, plan);
    if (!violations.empty())
        throw FlowError("plan is not structurally feasible: " + violations.front().detail);

    StressReport report;
    report.days.reserve(spec.days);
    for (std::uint64_t day = 0; day < spec.days; ++day) {
        StressDay out;
        out.demand = sample_demand(model, spec, day);
        const FlowState fs = propagate_flows(model, plan, out.demand);
        Penalties p = penalties(model, fs);
        out.G = p.G;
        out.H = p.H;
        out.M = p.M;
        out.profile = std::move(p.profile);
        accumulate(report.reclass, out.profile.reclass);
        accumulate(report.tracks, out.profile.tracks);
        accumulate(report.links, out.profile.links);
        report.days.push_back(std::move(out));
    }
    const double days = static_cast<double>(spec.days);
    normalize(report.reclass, days);
    normalize(report.tracks, days);
    normalize(report.links, days);
    return report;
}

}  // namespace tfp
