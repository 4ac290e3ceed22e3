#ifndef TFP_MODEL_HPP
#define TFP_MODEL_HPP

#include <memory>
#include <optional>
#include <vector>

#include "tfp/instance.hpp"
#include "tfp/routing.hpp"

namespace tfp {

// Square yard-by-yard table stored row-major.
template <typename T>
class PairTable {
public:
    PairTable() = default;
    PairTable(std::size_t n, T fill) : n_(n), cells_(n * n, fill) {}

    std::size_t size() const { return n_; }
    T& operator()(YardId i, YardId j) { return cells_[i * n_ + j]; }
    const T& operator()(YardId i, YardId j) const { return cells_[i * n_ + j]; }
    T& operator[](ServicePair p) { return (*this)(p.from, p.to); }
    const T& operator[](ServicePair p) const { return (*this)(p.from, p.to); }
    const std::vector<T>& cells() const { return cells_; }

    bool operator==(const PairTable&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<T> cells_;
};

// Shipment volumes N_ij by yard pair.
using Demand = PairTable<double>;

// A validated instance compiled to index form, with all candidate paths and
// reclassification candidates precomputed. Immutable after construction.
class Model {
public:
    // Throws InstanceError if the instance is invalid.
    explicit Model(Instance inst);

    const Instance& instance() const { return inst_; }
    const RoutingGraph& graph() const { return graph_; }
    std::size_t yard_count() const { return graph_.yard_count(); }
    std::size_t link_count() const { return graph_.link_count(); }
    YardId yard(std::string_view name) const { return graph_.yard(name); }
    const std::string& yard_name(YardId id) const { return graph_.yard_name(id); }
    const Yard& yard_data(YardId id) const { return inst_.yards[id]; }
    const Link& link_data(LinkId n) const { return inst_.links[n]; }
    const Params& params() const { return inst_.params; }

    const Demand& demand() const { return demand_; }
    // Shipment pairs in ascending index order.
    const std::vector<ServicePair>& shipment_pairs() const { return shipment_pairs_; }
    bool is_shipment(YardId i, YardId j) const { return is_shipment_(i, j) != 0; }

    double train_size(YardId i, YardId j) const { return train_size_(i, j); }
    bool mandated(YardId i, YardId j) const { return mandated_(i, j) != 0; }
    bool forbidden(YardId i, YardId j) const { return forbidden_(i, j) != 0; }
    // Rank of the mandated path in paths(i, j), if one is mandated.
    std::optional<std::size_t> mandated_path(YardId i, YardId j) const;

    // A service can be provided on (i, j) iff j is reachable from i.
    bool hostable(YardId i, YardId j) const { return i != j && !paths_(i, j).paths.empty(); }
    const std::vector<ServicePair>& hostable_pairs() const { return hostable_pairs_; }
    double distance(YardId i, YardId j) const { return distance_(i, j); }
    const PathSet& paths(YardId i, YardId j) const { return paths_(i, j); }
    // Path rank a newly provided service starts on.
    std::size_t default_path(YardId i, YardId j) const;

    // P(i, j): yards k outside {i, j} with a route i->k->j whose length is
    // within the pair's detour cap of the shortest i->j route.
    const std::vector<YardId>& reclass_candidates(YardId i, YardId j) const {
        return candidates_(i, j);
    }
    bool is_candidate(YardId i, YardId j, YardId k) const;

private:
    Instance inst_;
    RoutingGraph graph_;
    Demand demand_;
    PairTable<char> is_shipment_;
    std::vector<ServicePair> shipment_pairs_;
    PairTable<double> train_size_;
    PairTable<char> mandated_;
    PairTable<char> forbidden_;
    PairTable<int> mandated_path_;
    PairTable<double> distance_;
    PairTable<PathSet> paths_;
    std::vector<ServicePair> hostable_pairs_;
    PairTable<std::vector<YardId>> candidates_;
};

}  // namespace tfp

#endif  // TFP_MODEL_HPP
