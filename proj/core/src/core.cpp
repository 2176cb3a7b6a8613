#include "cpecs/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cpecs/errors.hpp"

namespace cpecs {

bool ties(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= kTieTolerance * scale;
}

// Shewchuk's partials algorithm with the final half-way correction, as in
// Python's math.fsum. Terms are assumed finite.
double exact_sum(std::span<const double> terms) {
    std::vector<double> partials;
    for (double x : terms) {
        std::size_t kept = 0;
        for (std::size_t j = 0; j < partials.size(); ++j) {
            double y = partials[j];
            if (std::abs(x) < std::abs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials[kept++] = lo;
            x = hi;
        }
        partials.resize(kept);
        partials.push_back(x);
    }
    if (partials.empty()) return 0.0;

    std::size_t n = partials.size();
    double hi = partials[--n];
    double lo = 0.0;
    while (n > 0) {
        const double x = hi;
        const double y = partials[--n];
        hi = x + y;
        lo = y - (hi - x);
        if (lo != 0.0) break;
    }
    if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        if (y == x - hi) hi = x;
    }
    return hi;
}

ParameterVector::ParameterVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw UsageError("parameter vector must have at least one component");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            std::ostringstream msg;
            msg << "parameter component " << i << " = " << v << " is outside [0,1]";
            throw DomainError(msg.str());
        }
    }
}

ParameterVector::ParameterVector(std::initializer_list<double> values)
    : ParameterVector(std::vector<double>(values)) {}

bool lexicographically_less(const Decision& a, const Decision& b) {
    return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(),
                                        b.values.end());
}

std::string to_string(const Decision& y) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i) out << ", ";
        out << y[i];
    }
    out << ')';
    return out.str();
}

ConfidenceBox::ConfidenceBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size() || lower_.empty())
        throw UsageError("confidence box bounds must be non-empty and of equal length");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!(0.0 <= lower_[i] && lower_[i] <= upper_[i] && upper_[i] <= 1.0)) {
            std::ostringstream msg;
            msg << "confidence box coordinate " << i << " has invalid bounds [" << lower_[i]
                << ", " << upper_[i] << "]";
            throw DomainError(msg.str());
        }
    }
}

ParameterVector ConfidenceBox::lower_corner() const { return ParameterVector(lower_); }
ParameterVector ConfidenceBox::upper_corner() const { return ParameterVector(upper_); }

ParameterVector ConfidenceBox::raised_corner(std::size_t arm) const {
    std::vector<double> v = lower_;
    v.at(arm) = upper_[arm];
    return ParameterVector(std::move(v));
}

ParameterVector ConfidenceBox::lowered_corner(std::size_t arm) const {
    std::vector<double> v = upper_;
    v.at(arm) = lower_[arm];
    return ParameterVector(std::move(v));
}

bool ConfidenceBox::contains(const ParameterVector& theta) const {
    if (theta.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (theta[i] < lower_[i] || theta[i] > upper_[i]) return false;
    return true;
}

double OracleSpec::maximize_component(std::span<const double> theta, std::size_t arm) const {
    return maximize(ParameterVector(std::vector<double>(theta.begin(), theta.end())))[arm];
}

void OracleSpec::enumerate(const std::function<void(const Decision&)>&) const {
    throw CapacityError(std::string(name()) + ": decision class is not enumerable");
}

double reward(const OracleSpec& spec, const ParameterVector& theta, const Decision& y) {
    const std::size_t m = spec.arm_count();
    if (theta.size() != m || y.size() != m) {
        std::ostringstream msg;
        msg << "reward: expected " << m << " components, got theta=" << theta.size()
            << " y=" << y.size();
        throw UsageError(msg.str());
    }
    if (!spec.contains(y))
        throw DomainError("reward: decision " + to_string(y) + " is not in the decision class");
    std::vector<double> terms(m);
    for (std::size_t i = 0; i < m; ++i) terms[i] = spec.reward_term(i, theta[i], y[i]);
    return exact_sum(terms);
}

namespace {

void check_enumerable(const OracleSpec& spec, const ParameterVector& theta, std::uint64_t limit) {
    if (theta.size() != spec.arm_count())
        throw UsageError("brute force: parameter dimension does not match arm count");
    const auto count = spec.enumeration_size();
    if (!count) throw CapacityError(std::string(spec.name()) + ": decision class is not enumerable");
    if (*count > limit) {
        std::ostringstream msg;
        msg << spec.name() << ": decision class has " << *count << " elements, limit is " << limit;
        throw CapacityError(msg.str());
    }
}

}  // namespace

Decision brute_force_maximizer(const OracleSpec& spec, const ParameterVector& theta,
                               std::uint64_t limit) {
    check_enumerable(spec, theta, limit);
    std::optional<Decision> best;
    double best_reward = 0.0;
    spec.enumerate([&](const Decision& y) {
        const double r = reward(spec, theta, y);
        if (!best) {
            best = y;
            best_reward = r;
        } else if (ties(r, best_reward)) {
            if (lexicographically_less(y, *best)) best = y;
            best_reward = std::max(best_reward, r);
        } else if (r > best_reward) {
            best = y;
            best_reward = r;
        }
    });
    if (!best) throw DomainError(std::string(spec.name()) + ": decision class is empty");
    return *best;
}

std::vector<Decision> all_maximizers(const OracleSpec& spec, const ParameterVector& theta,
                                     std::uint64_t limit) {
    check_enumerable(spec, theta, limit);
    double best_reward = -std::numeric_limits<double>::infinity();
    spec.enumerate([&](const Decision& y) { best_reward = std::max(best_reward, reward(spec, theta, y)); });
    std::vector<Decision> out;
    spec.enumerate([&](const Decision& y) {
        if (ties(reward(spec, theta, y), best_reward)) out.push_back(y);
    });
    std::sort(out.begin(), out.end(), lexicographically_less);
    return out;
}

}  // namespace cpecs
