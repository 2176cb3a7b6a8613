#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "cpecs/core.hpp"

namespace cpecs {

/// Subsets of exactly k out of m arms, reward sum_i theta_i y_i. k = 1 is best-arm identification.
struct TopKSpec {
    std::size_t m = 0;
    std::size_t k = 1;
};

/// Selects the k largest components; equal components go to the smaller index.
Decision top_k_maximizer(const TopKSpec& spec, const ParameterVector& theta);

class TopKOracle final : public OracleSpec {
public:
    explicit TopKOracle(TopKSpec spec);

    const TopKSpec& spec() const { return spec_; }

    std::string_view name() const override { return spec_.k == 1 ? "best-arm" : "top-k"; }
    std::size_t arm_count() const override { return spec_.m; }
    double reward_term(std::size_t, double theta, double y) const override { return theta * y; }
    bool contains(const Decision& y) const override;
    Decision maximize(const ParameterVector& theta) const override;
    double maximize_component(std::span<const double> theta, std::size_t arm) const override;
    std::optional<std::uint64_t> enumeration_size() const override;
    void enumerate(const std::function<void(const Decision&)>& visit) const override;
    std::optional<Orientation> bi_monotone() const override { return Orientation::OwnNonDecreasing; }
    bool binary_class() const override { return true; }
    /// One-in-one-out exchanges suffice for fixed-cardinality classes.
    std::optional<int> width() const override { return 2; }

private:
    TopKSpec spec_;
};

std::shared_ptr<const OracleSpec> make_best_arm_oracle(std::size_t m);
std::shared_ptr<const OracleSpec> make_top_k_oracle(std::size_t m, std::size_t k);

// ---------------------------------------------------------------------------
// Water resource planning: maximize sum theta_i y_i - f_i(y_i)
// subject to sum y_i >= b and 0 <= y_i <= c_i, with y on a uniform grid.

enum class DerivativeTrend { Increasing, Decreasing, Constant, Unknown };

struct CostFunction {
    std::function<double(double)> value;
    DerivativeTrend derivative_trend = DerivativeTrend::Unknown;

    /// f(y) = quad * y^2 + lin * y.
    static CostFunction quadratic(double quad, double lin = 0.0);
    static CostFunction zero() { return quadratic(0.0, 0.0); }
};

struct WaterSpec {
    std::vector<double> caps;     // c_i, pounds
    double requirement = 0.0;     // b, pounds
    double grid_step = 1.0;       // spacing of allowed y_i values
    std::vector<CostFunction> costs;

    std::size_t size() const { return caps.size(); }
};

/// Throws UsageError on malformed specs and DomainError when sum c_i < b.
void validate(const WaterSpec& spec);

/// Exact grid optimum by dynamic programming over the outstanding requirement;
/// the lexicographically smallest optimum is returned.
Decision water_maximizer(const WaterSpec& spec, const ParameterVector& theta);

/// Conservative bi-monotonicity check: every cost derivative moves in the same strict
/// direction, and a 5-point-per-axis sweep over theta finds the requirement tight and
/// each phi_i moving with theta_i and against theta_j.
bool water_bi_monotone(const WaterSpec& spec);

class WaterOracle final : public OracleSpec {
public:
    explicit WaterOracle(WaterSpec spec);

    const WaterSpec& spec() const { return spec_; }

    std::string_view name() const override { return "water"; }
    std::size_t arm_count() const override { return spec_.size(); }
    double reward_term(std::size_t arm, double theta, double y) const override;
    bool contains(const Decision& y) const override;
    Decision maximize(const ParameterVector& theta) const override;
    std::optional<std::uint64_t> enumeration_size() const override;
    void enumerate(const std::function<void(const Decision&)>& visit) const override;
    std::optional<Orientation> bi_monotone() const override;

private:
    WaterSpec spec_;
    bool bi_monotone_;
};

}  // namespace cpecs
