#include "tfp/instance.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tfp {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Schema helpers

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw InstanceError("schema: " + where + ": " + what);
}

void require_object(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
    if (!j.is_object())
        schema_error(where, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (auto a : allowed)
            known = known || key == a;
        if (!known)
            schema_error(where, "unknown field '" + key + "'");
    }
}

const json& field(const json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        schema_error(where, std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number())
        schema_error(where, "expected a number");
    return j.get<double>();
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string())
        schema_error(where, "expected a string");
    return j.get<std::string>();
}

CapacityBelt belt(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        schema_error(where, "expected a [lower, upper] pair");
    return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

NamedPair pair(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        schema_error(where, "expected a [from, to] pair");
    return {text(j[0], where + "[0]"), text(j[1], where + "[1]")};
}

std::vector<NamedPair> pair_list(const json& j, const std::string& where) {
    if (!j.is_array())
        schema_error(where, "expected an array");
    std::vector<NamedPair> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(pair(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

const json& array_field(const json& j, const std::string& where, const char* key) {
    const json& a = field(j, where, key);
    if (!a.is_array())
        schema_error(where + "." + key, "expected an array");
    return a;
}

std::string at(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

Params parse_params(const json& j) {
    const std::string where = "params";
    require_object(j, where,
                   {"train_size", "lambda", "cars_per_track", "alpha", "beta", "K", "detour_cap"});
    Params p;
    const json& ts = field(j, where, "train_size");
    if (ts.is_object()) {
        require_object(ts, "params.train_size", {"default", "overrides"});
        p.train_size = number(field(ts, "params.train_size", "default"), "params.train_size.default");
        if (ts.contains("overrides")) {
            const json& ov = ts["overrides"];
            if (!ov.is_array())
                schema_error("params.train_size.overrides", "expected an array");
            for (std::size_t i = 0; i < ov.size(); ++i) {
                const std::string w = at("params.train_size.overrides", i);
                require_object(ov[i], w, {"service", "size"});
                p.train_size_overrides.push_back(
                    {pair(field(ov[i], w, "service"), w + ".service"),
                     number(field(ov[i], w, "size"), w + ".size")});
            }
        }
    } else {
        p.train_size = number(ts, "params.train_size");
    }
    p.lambda = number(field(j, where, "lambda"), "params.lambda");
    if (j.contains("cars_per_track"))
        p.cars_per_track = number(j["cars_per_track"], "params.cars_per_track");
    if (j.contains("alpha"))
        p.alpha = number(j["alpha"], "params.alpha");
    if (j.contains("beta"))
        p.beta = number(j["beta"], "params.beta");
    if (j.contains("K")) {
        if (!j["K"].is_number_integer() || j["K"].get<long long>() < 0)
            schema_error("params.K", "expected a nonnegative integer");
        p.max_paths = j["K"].get<std::size_t>();
    }
    if (j.contains("detour_cap") && !j["detour_cap"].is_null())
        p.detour_cap = number(j["detour_cap"], "params.detour_cap");
    return p;
}

json belt_json(const CapacityBelt& b) { return json::array({b.lower, b.upper}); }
json pair_json(const NamedPair& p) { return json::array({p.from, p.to}); }

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check_belt(ValidationReport& out, const std::string& where, const CapacityBelt& b) {
    if (!finite_nonneg(b.lower) || !finite_nonneg(b.upper))
        out.push_back({where, "belt bounds must be finite and nonnegative"});
    if (b.lower > b.upper)
        out.push_back({where, "belt lower exceeds upper"});
}

}  // namespace

std::string to_string(const ValidationReport& report) {
    std::ostringstream os;
    for (const auto& v : report)
        os << v.location << ": " << v.message << '\n';
    return os.str();
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport out;
    std::map<std::string, std::size_t> yard_pos;

    for (std::size_t i = 0; i < inst.yards.size(); ++i) {
        const Yard& y = inst.yards[i];
        const std::string where = "yards[" + y.id + "]";
        if (y.id.empty())
            out.push_back({at("yards", i), "empty yard id"});
        if (y.id.find("->") != std::string::npos)
            out.push_back({where, "yard id must not contain '->'"});
        if (!yard_pos.emplace(y.id, i).second)
            out.push_back({where, "duplicate yard id"});
        if (!finite_nonneg(y.c))
            out.push_back({where + ".c", "must be >= 0"});
        if (!finite_nonneg(y.tau))
            out.push_back({where + ".tau", "must be >= 0"});
        if (!(y.theta > 0.0 && y.theta <= 1.0))
            out.push_back({where + ".theta", "must lie in (0, 1]"});
        check_belt(out, where + ".reclass_belt", y.reclass_belt);
        check_belt(out, where + ".track_belt", y.track_belt);
    }

    auto known = [&](const std::string& id) { return yard_pos.count(id) != 0; };
    auto check_pair = [&](const std::string& where, const NamedPair& p) {
        bool ok = true;
        for (const auto* id : {&p.from, &p.to}) {
            if (!known(*id)) {
                out.push_back({where, "unknown yard \"" + *id + "\""});
                ok = false;
            }
        }
        if (p.from == p.to) {
            out.push_back({where, "pair must join two distinct yards"});
            ok = false;
        }
        return ok;
    };

    std::set<std::string> link_ids;
    std::vector<std::vector<std::size_t>> adj(inst.yards.size());
    for (std::size_t i = 0; i < inst.links.size(); ++i) {
        const Link& l = inst.links[i];
        const std::string where = "links[" + l.id + "]";
        if (!link_ids.insert(l.id).second)
            out.push_back({where, "duplicate link id"});
        if (check_pair(where, {l.from_yard, l.to_yard}))
            adj[yard_pos[l.from_yard]].push_back(yard_pos[l.to_yard]);
        if (!(std::isfinite(l.length) && l.length > 0.0))
            out.push_back({where + ".length", "must be > 0"});
        if (!(l.beta_n > 0.0 && l.beta_n <= 1.0))
            out.push_back({where + ".beta_n", "must lie in (0, 1]"});
        check_belt(out, where + ".capacity_belt", l.capacity_belt);
    }

    auto reachable = [&](const std::string& from, const std::string& to) {
        std::vector<char> seen(inst.yards.size(), 0);
        std::queue<std::size_t> q;
        q.push(yard_pos[from]);
        seen[yard_pos[from]] = 1;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            if (u == yard_pos[to])
                return true;
            for (auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
        return false;
    };

    std::set<NamedPair> shipment_pairs;
    for (std::size_t i = 0; i < inst.shipments.size(); ++i) {
        const Shipment& s = inst.shipments[i];
        const std::string where = at("shipments", i);
        const NamedPair p{s.origin, s.destination};
        if (!finite_nonneg(s.volume))
            out.push_back({where + ".volume", "must be >= 0"});
        if (!check_pair(where, p))
            continue;
        if (!shipment_pairs.insert(p).second)
            out.push_back({where, "duplicate shipment " + p.from + "->" + p.to});
        if (!reachable(p.from, p.to))
            out.push_back({where, "destination unreachable: " + p.from + "->" + p.to});
    }

    const Params& pr = inst.params;
    if (!(std::isfinite(pr.train_size) && pr.train_size > 0.0))
        out.push_back({"params.train_size", "must be > 0"});
    for (std::size_t i = 0; i < pr.train_size_overrides.size(); ++i) {
        const auto& o = pr.train_size_overrides[i];
        const std::string where = at("params.train_size.overrides", i);
        check_pair(where, o.service);
        if (!(std::isfinite(o.size) && o.size > 0.0))
            out.push_back({where + ".size", "must be > 0"});
    }
    if (!finite_nonneg(pr.lambda))
        out.push_back({"params.lambda", "must be >= 0"});
    if (!(std::isfinite(pr.cars_per_track) && pr.cars_per_track > 0.0))
        out.push_back({"params.cars_per_track", "must be > 0"});
    if (!finite_nonneg(pr.alpha))
        out.push_back({"params.alpha", "must be >= 0"});
    if (!finite_nonneg(pr.beta))
        out.push_back({"params.beta", "must be >= 0"});
    if (pr.max_paths < 1)
        out.push_back({"params.K", "must be >= 1"});
    if (pr.detour_cap && !finite_nonneg(*pr.detour_cap))
        out.push_back({"params.detour_cap", "must be >= 0"});

    std::set<NamedPair> mandated, forbidden;
    for (std::size_t i = 0; i < inst.mandated_services.size(); ++i) {
        const auto& p = inst.mandated_services[i];
        const std::string where = at("mandated_services", i);
        if (!check_pair(where, p))
            continue;
        mandated.insert(p);
        if (!reachable(p.from, p.to))
            out.push_back({where, "mandated service cannot be routed: " + p.from + "->" + p.to});
    }
    for (std::size_t i = 0; i < inst.forbidden_services.size(); ++i) {
        const auto& p = inst.forbidden_services[i];
        if (check_pair(at("forbidden_services", i), p))
            forbidden.insert(p);
    }
    for (const auto& p : mandated)
        if (forbidden.count(p))
            out.push_back({"mandated_services", "service " + p.from + "->" + p.to +
                                                    " is both mandated and forbidden"});

    std::set<NamedPair> path_mandates;
    for (std::size_t i = 0; i < inst.mandated_paths.size(); ++i) {
        const auto& mp = inst.mandated_paths[i];
        const std::string where = at("mandated_paths", i);
        if (!check_pair(where, mp.service))
            continue;
        if (!path_mandates.insert(mp.service).second)
            out.push_back({where, "duplicate path mandate"});
        if (forbidden.count(mp.service))
            out.push_back({where, "path mandated for a forbidden service"});
        const auto& ys = mp.yards;
        if (ys.size() < 2 || ys.front() != mp.service.from || ys.back() != mp.service.to) {
            out.push_back({where, "path must start at the service origin and end at its destination"});
            continue;
        }
        std::set<std::string> seen;
        for (std::size_t k = 0; k < ys.size(); ++k) {
            if (!known(ys[k])) {
                out.push_back({where, "unknown yard \"" + ys[k] + "\""});
                break;
            }
            if (!seen.insert(ys[k]).second) {
                out.push_back({where, "path revisits yard " + ys[k]});
                break;
            }
            if (k + 1 < ys.size()) {
                bool linked = false;
                for (const Link& l : inst.links)
                    linked = linked || (l.from_yard == ys[k] && l.to_yard == ys[k + 1]);
                if (!linked && known(ys[k + 1])) {
                    out.push_back({where, "no link " + ys[k] + "->" + ys[k + 1]});
                    break;
                }
            }
        }
    }
    return out;
}

Instance parse_instance(std::string_view text_doc) {
    json doc;
    try {
        doc = json::parse(text_doc);
    } catch (const json::parse_error& e) {
        throw InstanceError(std::string("malformed JSON: ") + e.what());
    }
    require_object(doc, "instance",
                   {"yards", "links", "shipments", "params", "mandated_services",
                    "forbidden_services", "mandated_paths"});

    Instance inst;
    const json& yards = array_field(doc, "instance", "yards");
    for (std::size_t i = 0; i < yards.size(); ++i) {
        const std::string w = at("yards", i);
        const json& y = yards[i];
        require_object(y, w, {"id", "c", "tau", "reclass_belt", "track_belt", "theta"});
        Yard yard;
        yard.id = text(field(y, w, "id"), w + ".id");
        yard.c = number(field(y, w, "c"), w + ".c");
        yard.tau = number(field(y, w, "tau"), w + ".tau");
        yard.reclass_belt = belt(field(y, w, "reclass_belt"), w + ".reclass_belt");
        yard.track_belt = belt(field(y, w, "track_belt"), w + ".track_belt");
        if (y.contains("theta"))
            yard.theta = number(y["theta"], w + ".theta");
        inst.yards.push_back(std::move(yard));
    }

    const json& links = array_field(doc, "instance", "links");
    for (std::size_t i = 0; i < links.size(); ++i) {
        const std::string w = at("links", i);
        const json& l = links[i];
        require_object(l, w, {"id", "from_yard", "to_yard", "length", "capacity_belt", "beta_n"});
        Link link;
        link.id = text(field(l, w, "id"), w + ".id");
        link.from_yard = text(field(l, w, "from_yard"), w + ".from_yard");
        link.to_yard = text(field(l, w, "to_yard"), w + ".to_yard");
        link.length = number(field(l, w, "length"), w + ".length");
        link.capacity_belt = belt(field(l, w, "capacity_belt"), w + ".capacity_belt");
        if (l.contains("beta_n"))
            link.beta_n = number(l["beta_n"], w + ".beta_n");
        inst.links.push_back(std::move(link));
    }

    const json& ships = array_field(doc, "instance", "shipments");
    for (std::size_t i = 0; i < ships.size(); ++i) {
        const std::string w = at("shipments", i);
        const json& s = ships[i];
        require_object(s, w, {"origin", "destination", "volume"});
        inst.shipments.push_back({text(field(s, w, "origin"), w + ".origin"),
                                  text(field(s, w, "destination"), w + ".destination"),
                                  number(field(s, w, "volume"), w + ".volume")});
    }

    inst.params = parse_params(field(doc, "instance", "params"));
    if (doc.contains("mandated_services"))
        inst.mandated_services = pair_list(doc["mandated_services"], "mandated_services");
    if (doc.contains("forbidden_services"))
        inst.forbidden_services = pair_list(doc["forbidden_services"], "forbidden_services");
    if (doc.contains("mandated_paths")) {
        const json& mps = doc["mandated_paths"];
        if (!mps.is_array())
            schema_error("mandated_paths", "expected an array");
        for (std::size_t i = 0; i < mps.size(); ++i) {
            const std::string w = at("mandated_paths", i);
            require_object(mps[i], w, {"service", "path"});
            MandatedPath mp;
            mp.service = pair(field(mps[i], w, "service"), w + ".service");
            const json& path = field(mps[i], w, "path");
            if (!path.is_array())
                schema_error(w + ".path", "expected an array of yard ids");
            for (std::size_t k = 0; k < path.size(); ++k)
                mp.yards.push_back(text(path[k], at(w + ".path", k)));
            inst.mandated_paths.push_back(std::move(mp));
        }
    }

    auto report = validate_instance(inst);
    if (!report.empty())
        throw InstanceError("invalid instance:\n" + to_string(report));
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    json doc;
    json yards = json::array();
    for (const Yard& y : inst.yards)
        yards.push_back({{"id", y.id},
                         {"c", y.c},
                         {"tau", y.tau},
                         {"reclass_belt", belt_json(y.reclass_belt)},
                         {"track_belt", belt_json(y.track_belt)},
                         {"theta", y.theta}});
    json links = json::array();
    for (const Link& l : inst.links)
        links.push_back({{"id", l.id},
                         {"from_yard", l.from_yard},
                         {"to_yard", l.to_yard},
                         {"length", l.length},
                         {"capacity_belt", belt_json(l.capacity_belt)},
                         {"beta_n", l.beta_n}});
    json ships = json::array();
    for (const Shipment& s : inst.shipments)
        ships.push_back({{"origin", s.origin}, {"destination", s.destination}, {"volume", s.volume}});

    const Params& p = inst.params;
    json params;
    if (p.train_size_overrides.empty()) {
        params["train_size"] = p.train_size;
    } else {
        json ov = json::array();
        for (const auto& o : p.train_size_overrides)
            ov.push_back({{"service", pair_json(o.service)}, {"size", o.size}});
        params["train_size"] = {{"default", p.train_size}, {"overrides", ov}};
    }
    params["lambda"] = p.lambda;
    params["cars_per_track"] = p.cars_per_track;
    params["alpha"] = p.alpha;
    params["beta"] = p.beta;
    params["K"] = p.max_paths;
    params["detour_cap"] = p.detour_cap ? json(*p.detour_cap) : json(nullptr);

    auto pairs = [](const std::vector<NamedPair>& v) {
        json a = json::array();
        for (const auto& p : v)
            a.push_back(pair_json(p));
        return a;
    };
    json mps = json::array();
    for (const auto& mp : inst.mandated_paths)
        mps.push_back({{"service", pair_json(mp.service)}, {"path", mp.yards}});

    doc["yards"] = yards;
    doc["links"] = links;
    doc["shipments"] = ships;
    doc["params"] = params;
    doc["mandated_services"] = pairs(inst.mandated_services);
    doc["forbidden_services"] = pairs(inst.forbidden_services);
    doc["mandated_paths"] = mps;
    return doc.dump(2) + "\n";
}

Instance load_instance(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw InstanceError("cannot open " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

}  // namespace tfp
