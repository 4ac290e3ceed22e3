#include "tfp/fixtures.hpp"

namespace tfp::fixtures {

namespace {

const CapacityBelt kAmpleReclass{5000.0, 6000.0};
const CapacityBelt kAmpleTracks{50.0, 60.0};
const CapacityBelt kAmpleLink{20.0, 24.0};

Yard yard(std::string id, CapacityBelt reclass = kAmpleReclass) {
    return Yard{std::move(id), kAccumulation, kReclassCost, reclass, kAmpleTracks, 1.0};
}

Link link(std::string from, std::string to, double length, CapacityBelt belt = kAmpleLink) {
    std::string id = from + to;
    return Link{std::move(id), std::move(from), std::move(to), length, belt, 1.0};
}

Params default_params() {
    Params p;
    p.train_size = kTrainSize;
    p.lambda = kLambda;
    return p;
}

// A-B-C-D-E with 100 km sections in both directions.
std::vector<Link> line_links(bool both_directions) {
    const std::vector<std::string> names{"A", "B", "C", "D", "E"};
    std::vector<Link> out;
    for (std::size_t i = 0; i + 1 < names.size(); ++i) {
        out.push_back(link(names[i], names[i + 1], 100.0));
        if (both_directions)
            out.push_back(link(names[i + 1], names[i], 100.0));
    }
    return out;
}

}  // namespace

Instance fig1() {
    Instance inst;
    for (const char* id : {"A", "B", "C", "D", "E", "F"})
        inst.yards.push_back(yard(id));
    const CapacityBelt narrow{4.0, 4.0};   // 200 cars at 50 cars per train
    const CapacityBelt wide{20.0, 20.0};   // 1000 cars
    inst.links = {
        link("A", "B", 100.0, wide),  link("B", "C", 140.0, narrow), link("C", "D", 140.0, narrow),
        link("D", "E", 140.0, wide),  link("B", "F", 170.0, wide),   link("F", "D", 140.0, wide),
    };
    inst.shipments = {{"A", "E", 100.0}, {"B", "C", 200.0}, {"B", "E", 100.0}};
    inst.params = default_params();
    return inst;
}

std::vector<NamedPair> fig2_service_network() {
    return {
        {"A", "B"}, {"B", "A"}, {"B", "C"}, {"C", "B"}, {"C", "D"}, {"D", "C"}, {"D", "E"}, {"E", "D"},
        {"A", "C"}, {"B", "D"}, {"B", "E"}, {"C", "A"}, {"D", "B"}, {"E", "C"},
    };
}

Instance fig2() {
    Instance inst;
    for (const char* id : {"A", "B", "C", "D", "E"})
        inst.yards.push_back(yard(id));
    inst.links = line_links(true);
    inst.shipments = {{"A", "E", 100.0}, {"B", "E", 150.0}, {"A", "C", 150.0}, {"D", "B", 150.0}};
    inst.params = default_params();
    auto services = fig2_service_network();
    inst.mandated_services.assign(services.begin(), services.begin() + 8);
    inst.forbidden_services = {{"A", "D"}, {"A", "E"}, {"C", "E"}, {"D", "A"}, {"E", "A"}, {"E", "B"}};
    return inst;
}

Instance yard_c() {
    Instance inst;
    for (const char* id : {"A", "B", "C", "D", "E"})
        inst.yards.push_back(id == std::string("C") ? yard(id, {300.0, 350.0}) : yard(id));
    inst.links = line_links(false);
    inst.shipments = {{"A", "E", 100.0}, {"C", "E", 200.0}};
    inst.params = default_params();
    inst.forbidden_services = {{"A", "B"}, {"A", "D"}, {"A", "E"}, {"B", "C"},
                               {"B", "D"}, {"B", "E"}, {"C", "E"}};
    return inst;
}

std::map<std::string, Instance> canonical_instances() {
    return {{"fig1", fig1()}, {"fig2", fig2()}, {"yardC", yard_c()}};
}

}  // namespace tfp::fixtures
