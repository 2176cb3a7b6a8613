#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpecs {

/// Relative tolerance under which two objective values count as a tie.
inline constexpr double kTieTolerance = 1e-12;

/// |a - b| <= kTieTolerance * max(1, |a|, |b|).
bool ties(double a, double b);

/// Correctly rounded sum of `terms`, independent of their order.
double exact_sum(std::span<const double> terms);

/// A point in [0,1]^m: a true parameter vector, an estimate, or a box corner.
class ParameterVector {
public:
    ParameterVector() = default;
    explicit ParameterVector(std::vector<double> values);
    ParameterVector(std::initializer_list<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

private:
    std::vector<double> values_;
};

/// A decision vector y. Binary, integral and grid-valued classes all store reals;
/// each OracleSpec decides membership.
struct Decision {
    std::vector<double> values;

    Decision() = default;
    explicit Decision(std::vector<double> v) : values(std::move(v)) {}
    Decision(std::initializer_list<double> v) : values(v) {}

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    friend bool operator==(const Decision&, const Decision&) = default;
};

bool lexicographically_less(const Decision& a, const Decision& b);
std::string to_string(const Decision& y);

/// Axis-aligned box intersected with [0,1]^m.
class ConfidenceBox {
public:
    ConfidenceBox(std::vector<double> lower, std::vector<double> upper);

    std::size_t size() const { return lower_.size(); }
    double lower(std::size_t i) const { return lower_[i]; }
    double upper(std::size_t i) const { return upper_[i]; }
    std::span<const double> lower_bounds() const { return lower_; }
    std::span<const double> upper_bounds() const { return upper_; }

    ParameterVector lower_corner() const;
    ParameterVector upper_corner() const;
    /// (lower on every coordinate except `arm`, upper on `arm`).
    ParameterVector raised_corner(std::size_t arm) const;
    /// (upper on every coordinate except `arm`, lower on `arm`).
    ParameterVector lowered_corner(std::size_t arm) const;

    bool contains(const ParameterVector& theta) const;
    bool degenerate() const { return lower_ == upper_; }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Direction of bi-monotonicity: how phi_i responds to its own parameter.
/// The response to every other parameter is the opposite.
enum class Orientation { OwnNonDecreasing, OwnNonIncreasing };

/// A CPE-CS problem description: separable reward terms, a decision class and a
/// deterministic tie-breaking maximizer phi.
///
/// Implementations must be immutable after construction; `maximize` must return
/// bit-identical decisions for bit-identical inputs.
class OracleSpec {
public:
    virtual ~OracleSpec() = default;

    virtual std::string_view name() const = 0;
    virtual std::size_t arm_count() const = 0;
    /// r_i(theta_i, y_i).
    virtual double reward_term(std::size_t arm, double theta, double y) const = 0;
    virtual bool contains(const Decision& y) const = 0;
    /// The leading optimal solution phi(theta).
    virtual Decision maximize(const ParameterVector& theta) const = 0;
    /// phi_arm(theta) for a point already known to lie in [0,1]^m. Oracles override this
    /// when one component is cheaper than the full decision.
    virtual double maximize_component(std::span<const double> theta, std::size_t arm) const;

    /// Number of decisions `enumerate` visits, or nullopt when the class is not enumerable.
    virtual std::optional<std::uint64_t> enumeration_size() const { return std::nullopt; }
    virtual void enumerate(const std::function<void(const Decision&)>& visit) const;

    /// Set when phi is bi-monotone (two-corner candidate test is exact).
    virtual std::optional<Orientation> bi_monotone() const { return std::nullopt; }
    /// True for CPE-L style classes of binary vectors with linear reward.
    virtual bool binary_class() const { return false; }
    /// Analytic width of the decision class, where known.
    virtual std::optional<int> width() const { return std::nullopt; }
};

/// r(theta; y) = sum_i r_i(theta_i, y_i).
double reward(const OracleSpec& spec, const ParameterVector& theta, const Decision& y);

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

/// Exhaustive maximizer over the enumerated class. Ties (within kTieTolerance) go to
/// the lexicographically smallest decision.
Decision brute_force_maximizer(const OracleSpec& spec, const ParameterVector& theta,
                               std::uint64_t limit = kDefaultEnumerationLimit);

/// Every enumerated decision whose reward ties the maximum, in lexicographic order.
std::vector<Decision> all_maximizers(const OracleSpec& spec, const ParameterVector& theta,
                                     std::uint64_t limit = kDefaultEnumerationLimit);

}  // namespace cpecs
