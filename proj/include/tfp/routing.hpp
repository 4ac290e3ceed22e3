#ifndef TFP_ROUTING_HPP
#define TFP_ROUTING_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tfp/instance.hpp"

namespace tfp {

using YardId = std::size_t;
using LinkId = std::size_t;

struct ServicePair {
    YardId from = 0;
    YardId to = 0;

    auto operator<=>(const ServicePair&) const = default;
};

// A loopless physical route between two yards.
struct Path {
    ServicePair service;
    std::vector<LinkId> links;
    std::vector<YardId> yards;  // links.size() + 1 entries
    double total_length = 0.0;

    bool operator==(const Path&) const = default;
};

// Candidate routes of one service, shortest first.
struct PathSet {
    ServicePair service;
    std::vector<Path> paths;
    std::vector<double> extra_lengths;  // total_length - paths[0].total_length

    std::size_t shortest_index() const { return 0; }
    std::size_t size() const { return paths.size(); }
};

class RoutingError : public std::runtime_error {
public:
    explicit RoutingError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kUnlimitedPaths = std::numeric_limits<std::size_t>::max();
inline constexpr double kUnlimitedDetour = std::numeric_limits<double>::infinity();

// Lengths closer than this (relative) are treated as ties.
bool same_length(double a, double b);

// Index-based view of the physical network. Paths are ordered by length, then
// by the yard-name sequence, then by link index.
class RoutingGraph {
public:
    explicit RoutingGraph(const Instance& inst);

    std::size_t yard_count() const { return names_.size(); }
    std::size_t link_count() const { return links_.size(); }
    std::optional<YardId> find_yard(std::string_view name) const;
    YardId yard(std::string_view name) const;  // throws RoutingError
    const std::string& yard_name(YardId id) const { return names_[id]; }
    double link_length(LinkId n) const { return links_[n].length; }
    YardId link_head(LinkId n) const { return links_[n].to; }
    YardId link_tail(LinkId n) const { return links_[n].from; }
    const std::vector<LinkId>& out_links(YardId u) const { return out_[u]; }

    // Strict total order used for every tie-break between paths.
    bool path_less(const Path& a, const Path& b) const;

    // Lexicographically smallest among minimum-length loopless paths that
    // avoid the excluded yards and links.
    std::optional<Path> shortest_path(YardId from, YardId to,
                                      const std::vector<char>& excluded_yards = {},
                                      const std::vector<char>& excluded_links = {}) const;

    // The max_paths shortest loopless paths whose extra length over the
    // shortest one is within max_detour.
    PathSet k_shortest_paths(YardId from, YardId to, std::size_t max_paths,
                             double max_detour) const;

    Path make_path(ServicePair service, const std::vector<LinkId>& links) const;

private:
    struct Arc {
        YardId from;
        YardId to;
        double length;
    };

    std::vector<std::string> names_;
    std::vector<std::size_t> name_rank_;
    std::vector<Arc> links_;
    std::vector<std::vector<LinkId>> out_;
    std::vector<std::vector<LinkId>> in_;
};

// Detour cap for a pair whose shortest route has the given length.
double detour_cap(const Params& params, double shortest_length);

Path shortest_path(const Instance& inst, std::string_view from, std::string_view to);
PathSet enumerate_paths(const Instance& inst, std::string_view from, std::string_view to);

inline int arc_incidence(const Path& p, LinkId n) {
    for (LinkId l : p.links)
        if (l == n)
            return 1;
    return 0;
}

}  // namespace tfp

#endif  // TFP_ROUTING_HPP
