#ifndef TFP_TESTS_HELPERS_HPP
#define TFP_TESTS_HELPERS_HPP

#include <initializer_list>
#include <string>
#include <utility>

#include "tfp/model.hpp"
#include "tfp/plan.hpp"

namespace tfp::test {

struct Reclass {
    const char* from;
    const char* to;
    const char* via;
};

// Services on their default paths plus reclassification choices, by name.
inline Plan make_plan(const Model& model, std::initializer_list<std::pair<const char*, const char*>> services,
                      std::initializer_list<Reclass> reclass = {}) {
    Plan plan(model.yard_count());
    for (auto [a, b] : services) {
        const YardId i = model.yard(a), j = model.yard(b);
        plan.provide(i, j, model.default_path(i, j));
    }
    for (const Reclass& r : reclass)
        plan.set_reclass(model.yard(r.from), model.yard(r.to), model.yard(r.via));
    return plan;
}

// Line A-B-C, 100 km sections forward only, N_AC = 10, N_AB = 5, N_BC = 7.
inline Instance three_yard_line() {
    Instance inst;
    for (const char* id : {"A", "B", "C"})
        inst.yards.push_back(Yard{id, 1.0, 2.0, {1000.0, 1200.0}, {10.0, 12.0}, 1.0});
    inst.links = {Link{"AB", "A", "B", 100.0, {10.0, 12.0}, 1.0}, Link{"BC", "B", "C", 100.0, {10.0, 12.0}, 1.0}};
    inst.shipments = {{"A", "C", 10.0}, {"A", "B", 5.0}, {"B", "C", 7.0}};
    inst.params.train_size = 50.0;
    inst.params.lambda = 0.0;
    return inst;
}

}  // namespace tfp::test

#endif  // TFP_TESTS_HELPERS_HPP
