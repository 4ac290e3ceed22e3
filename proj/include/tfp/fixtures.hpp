#ifndef TFP_FIXTURES_HPP
#define TFP_FIXTURES_HPP

#include <map>
#include <string>
#include <vector>

#include "tfp/instance.hpp"

namespace tfp::fixtures {

// Costs shared by every fixture. None of these values come from a measured
// network; they are documented placeholders.
inline constexpr double kAccumulation = 1.0;
inline constexpr double kReclassCost = 2.0;
inline constexpr double kTrainSize = 50.0;
inline constexpr double kLambda = 1.0;

// Six-yard network with two B-D corridors. B->C->D carries 4 trains (200 cars)
// per day, the other sections 20 trains (1000 cars). A->E is 520 km through C
// and 550 km through F.
Instance fig1();

// Line A-B-C-D-E (100 km sections, both directions) whose service network is
// the 8 local services (mandated) plus 6 direct ones; every other pair is
// forbidden.
Instance fig2();

// The 14 services of fig2: locals first, then the direct services.
std::vector<NamedPair> fig2_service_network();

// Line A-B-C-D-E with N_AE = 100, N_CE = 200 and yard C's reclassification
// belt at [300, 350]. Only A->C, C->D and D->E may be provided, so both
// shipments travel through C and D.
Instance yard_c();

// {"fig1", "fig2", "yardC"}
std::map<std::string, Instance> canonical_instances();

}  // namespace tfp::fixtures

#endif  // TFP_FIXTURES_HPP
