#include "tfp/plan.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tfp {

using nlohmann::json;

std::vector<ServicePair> Plan::services() const {
    std::vector<ServicePair> out;
    const std::size_t n = yard_count();
    for (YardId i = 0; i < n; ++i)
        for (YardId j = 0; j < n; ++j)
            if (provides(i, j))
                out.push_back({i, j});
    return out;
}

bool encoding_less(const Plan& a, const Plan& b) {
    if (a.path_rank_.cells() != b.path_rank_.cells())
        return a.path_rank_.cells() < b.path_rank_.cells();
    return a.reclass_.cells() < b.reclass_.cells();
}

std::string pair_key(const Model& model, ServicePair p) {
    return model.yard_name(p.from) + "->" + model.yard_name(p.to);
}

namespace {

ServicePair key_pair(const Model& model, const std::string& key) {
    const auto pos = key.find("->");
    if (pos == std::string::npos)
        throw PlanError("pair key \"" + key + "\" is not of the form i->j");
    const auto from = model.graph().find_yard(key.substr(0, pos));
    const auto to = model.graph().find_yard(key.substr(pos + 2));
    if (!from || !to)
        throw PlanError("pair key \"" + key + "\" names an unknown yard");
    return {*from, *to};
}

YardId yard_of(const Model& model, const json& j) {
    if (!j.is_string())
        throw PlanError("expected a yard id string");
    auto id = model.graph().find_yard(j.get<std::string>());
    if (!id)
        throw PlanError("unknown yard \"" + j.get<std::string>() + "\"");
    return *id;
}

}  // namespace

Plan parse_plan(std::string_view text, const Model& model) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw PlanError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw PlanError("plan document must be an object");
    for (const auto& [key, value] : doc.items())
        if (key != "y" && key != "x" && key != "xi")
            throw PlanError("unknown field '" + key + "'");

    Plan plan(model.yard_count());
    if (doc.contains("y")) {
        if (!doc["y"].is_array())
            throw PlanError("y must be an array of pairs");
        for (const json& p : doc["y"]) {
            if (!p.is_array() || p.size() != 2)
                throw PlanError("y entries must be [from, to] pairs");
            const YardId i = yard_of(model, p[0]), j = yard_of(model, p[1]);
            if (i == j || !model.hostable(i, j))
                throw PlanError("service " + pair_key(model, {i, j}) + " cannot be routed");
            plan.provide(i, j, model.default_path(i, j));
        }
    }
    if (doc.contains("xi")) {
        if (!doc["xi"].is_object())
            throw PlanError("xi must be an object");
        for (const auto& [key, value] : doc["xi"].items()) {
            const ServicePair p = key_pair(model, key);
            if (!plan.provides(p.from, p.to))
                throw PlanError("xi set for " + key + " which is not in y");
            if (!value.is_number_integer() || value.get<long long>() < 0)
                throw PlanError("xi rank for " + key + " must be a nonnegative integer");
            plan.provide(p.from, p.to, value.get<std::size_t>());
        }
    }
    if (doc.contains("x")) {
        if (!doc["x"].is_object())
            throw PlanError("x must be an object");
        for (const auto& [key, value] : doc["x"].items()) {
            const ServicePair p = key_pair(model, key);
            plan.set_reclass(p.from, p.to, yard_of(model, value));
        }
    }
    return plan;
}

std::string serialize_plan(const Plan& plan, const Model& model) {
    json y = json::array();
    json xi = json::object();
    json x = json::object();
    const std::size_t n = model.yard_count();
    for (YardId i = 0; i < n; ++i)
        for (YardId j = 0; j < n; ++j) {
            if (auto r = plan.path_rank(i, j)) {
                y.push_back({model.yard_name(i), model.yard_name(j)});
                xi[pair_key(model, {i, j})] = *r;
            }
            if (auto k = plan.reclass_yard(i, j))
                x[pair_key(model, {i, j})] = model.yard_name(*k);
        }
    json doc;
    doc["y"] = y;
    doc["x"] = x;
    doc["xi"] = xi;
    return doc.dump(2) + "\n";
}

Plan load_plan(const std::filesystem::path& file, const Model& model) {
    std::ifstream in(file);
    if (!in)
        throw PlanError("cannot open " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_plan(ss.str(), model);
}

}  // namespace tfp
