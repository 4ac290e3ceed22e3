#ifndef TFP_INSTANCE_HPP
#define TFP_INSTANCE_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tfp {

inline constexpr double kDefaultCarsPerTrack = 200.0;
inline constexpr double kDefaultPenaltyFactor = 1500.0;
inline constexpr std::size_t kDefaultMaxPaths = 5;
inline constexpr double kDefaultDetourRatio = 0.4;

// Interval between the guaranteed and the maximal elastic capacity of a
// resource. lower == upper is a rigid bound.
struct CapacityBelt {
    double lower = 0.0;
    double upper = 0.0;

    bool degenerate() const { return lower == upper; }
    bool operator==(const CapacityBelt&) const = default;
};

struct Yard {
    std::string id;
    double c = 0.0;    // accumulation parameter
    double tau = 0.0;  // reclassification cost per car
    CapacityBelt reclass_belt;  // cars/day
    CapacityBelt track_belt;    // tracks
    double theta = 1.0;         // rigid-mode utilization

    bool operator==(const Yard&) const = default;
};

// Directed section between two yards.
struct Link {
    std::string id;
    std::string from_yard;
    std::string to_yard;
    double length = 0.0;          // km
    CapacityBelt capacity_belt;   // trains/day
    double beta_n = 1.0;          // rigid-mode utilization

    bool operator==(const Link&) const = default;
};

struct Shipment {
    std::string origin;
    std::string destination;
    double volume = 0.0;  // cars/day

    bool operator==(const Shipment&) const = default;
};

// An ordered yard pair by name, used for services and path mandates.
struct NamedPair {
    std::string from;
    std::string to;

    auto operator<=>(const NamedPair&) const = default;
};

struct TrainSizeOverride {
    NamedPair service;
    double size = 0.0;

    bool operator==(const TrainSizeOverride&) const = default;
};

struct MandatedPath {
    NamedPair service;
    std::vector<std::string> yards;

    bool operator==(const MandatedPath&) const = default;
};

struct Params {
    double train_size = 0.0;  // default cars per train
    std::vector<TrainSizeOverride> train_size_overrides;
    double lambda = 0.0;  // detour cost per car-km
    double cars_per_track = kDefaultCarsPerTrack;
    double alpha = kDefaultPenaltyFactor;
    double beta = kDefaultPenaltyFactor;
    std::size_t max_paths = kDefaultMaxPaths;
    // Absolute extra km accepted over the shortest path. When unset the cap
    // is kDefaultDetourRatio times the shortest length of the pair.
    std::optional<double> detour_cap;

    bool operator==(const Params&) const = default;
};

struct Instance {
    std::vector<Yard> yards;
    std::vector<Link> links;
    std::vector<Shipment> shipments;
    Params params;
    std::vector<NamedPair> mandated_services;
    std::vector<NamedPair> forbidden_services;
    std::vector<MandatedPath> mandated_paths;

    bool operator==(const Instance&) const = default;
};

struct Violation {
    std::string location;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

std::string to_string(const ValidationReport& report);

// Raised for malformed or semantically invalid instance documents.
class InstanceError : public std::runtime_error {
public:
    explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

// Lists every violated invariant. Empty iff the instance is valid.
ValidationReport validate_instance(const Instance& inst);

// Parses the JSON instance document and validates it. Throws InstanceError.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Instance load_instance(const std::filesystem::path& file);

}  // namespace tfp

#endif  // TFP_INSTANCE_HPP
