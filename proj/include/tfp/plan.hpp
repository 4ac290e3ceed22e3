#ifndef TFP_PLAN_HPP
#define TFP_PLAN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfp/model.hpp"

namespace tfp {

// One assignment of the decision variables.
//
// A provided service (y_ij = 1) always carries its path rank (xi_ij), so the
// two are set and cleared together. The reclassification choice (x_ij^k) is
// at most one yard per pair.
class Plan {
public:
    Plan() = default;
    explicit Plan(std::size_t yard_count)
        : path_rank_(yard_count, -1), reclass_(yard_count, -1) {}

    std::size_t yard_count() const { return path_rank_.size(); }

    bool provides(YardId i, YardId j) const { return path_rank_(i, j) >= 0; }
    std::optional<std::size_t> path_rank(YardId i, YardId j) const {
        const int r = path_rank_(i, j);
        return r < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(r));
    }
    std::optional<YardId> reclass_yard(YardId i, YardId j) const {
        const int k = reclass_(i, j);
        return k < 0 ? std::nullopt : std::optional<YardId>(static_cast<YardId>(k));
    }

    void provide(YardId i, YardId j, std::size_t rank) { path_rank_(i, j) = static_cast<int>(rank); }
    void withdraw(YardId i, YardId j) { path_rank_(i, j) = -1; }
    void set_reclass(YardId i, YardId j, YardId k) { reclass_(i, j) = static_cast<int>(k); }
    void clear_reclass(YardId i, YardId j) { reclass_(i, j) = -1; }

    std::vector<ServicePair> services() const;

    bool operator==(const Plan&) const = default;
    // Lexicographic order on the encoding (path ranks, then reclass yards).
    friend bool encoding_less(const Plan& a, const Plan& b);

private:
    PairTable<int> path_rank_;
    PairTable<int> reclass_;
};

class PlanError : public std::runtime_error {
public:
    explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

// Plan documents: {"y": [[i, j], ...], "x": {"i->j": k}, "xi": {"i->j": rank}}.
// A service listed in y without an xi entry runs on its default path.
Plan parse_plan(std::string_view text, const Model& model);
std::string serialize_plan(const Plan& plan, const Model& model);
Plan load_plan(const std::filesystem::path& file, const Model& model);

std::string pair_key(const Model& model, ServicePair p);

}  // namespace tfp

#endif  // TFP_PLAN_HPP
