#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cpecs/core.hpp"

namespace cpecs {

/// Optimal sample allocation: choose integers y_i >= 1 with sum y_i <= k minimizing
/// sum_i n_i^2 theta_i / y_i, where theta_i is the within-group variance.
struct OsaSpec {
    std::vector<std::int64_t> group_sizes;  // n_i >= 1
    std::int64_t budget = 0;                // k >= m

    std::size_t size() const { return group_sizes.size(); }
};

void validate(const OsaSpec& spec);

/// sum_i n_i^2 theta_i / y_i.
double osa_objective(const OsaSpec& spec, const ParameterVector& theta, const Decision& y);

/// Intermediate quantities of the greedy, exposed for testing.
struct GreedyOsaScratch {
    double normalizer = 0.0;           // Z = 1 / sum_j n_j sqrt(theta_j); 0 when undefined
    std::vector<double> alpha;         // real-valued optimum Z n_i sqrt(theta_i) k
    std::vector<double> slack;         // delta_i in [0,1)
    std::vector<std::int64_t> base;    // y^(0)
};

struct GreedyOsaResult {
    Decision allocation;
    GreedyOsaScratch scratch;
    std::uint64_t increments = 0;      // unit increments applied on top of the base vector
    std::uint64_t greedy_rounds = 0;   // iterations of the tie-group loop
};

/// Exact integral OSA optimum; among optima the lexicographically first one.
GreedyOsaResult greedy_osa_detailed(const OsaSpec& spec, const ParameterVector& theta);
Decision greedy_osa(const OsaSpec& spec, const ParameterVector& theta);

/// Reward-sign wrapper: maximizes -sum n_i^2 theta_i / y_i.
Decision osa_maximizer(const OsaSpec& spec, const ParameterVector& theta);

/// OSA as an OracleSpec. Membership is y_i >= 1 integral with sum <= k; the enumerator
/// visits only allocations that spend the whole budget, in lexicographic order.
class OsaOracle final : public OracleSpec {
public:
    explicit OsaOracle(OsaSpec spec);

    const OsaSpec& spec() const { return spec_; }

    std::string_view name() const override { return "osa"; }
    std::size_t arm_count() const override { return spec_.size(); }
    double reward_term(std::size_t arm, double theta, double y) const override;
    bool contains(const Decision& y) const override;
    Decision maximize(const ParameterVector& theta) const override;
    std::optional<std::uint64_t> enumeration_size() const override;
    void enumerate(const std::function<void(const Decision&)>& visit) const override;
    std::optional<Orientation> bi_monotone() const override { return Orientation::OwnNonDecreasing; }

private:
    OsaSpec spec_;
};

std::shared_ptr<const OracleSpec> make_osa_oracle(OsaSpec spec);

}  // namespace cpecs
