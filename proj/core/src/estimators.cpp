#include "cpecs/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cpecs/errors.hpp"

namespace cpecs {

int tau(EstimatorKind kind) { return kind == EstimatorKind::Mean ? 1 : 2; }

std::string_view to_string(EstimatorKind kind) {
    return kind == EstimatorKind::Mean ? "mean" : "variance";
}

EstimatorKind parse_estimator_kind(std::string_view text) {
    if (text == "mean") return EstimatorKind::Mean;
    if (text == "variance") return EstimatorKind::Variance;
    throw UsageError("unknown estimator kind '" + std::string(text) + "' (expected mean|variance)");
}

namespace {

double finish(EstimatorKind kind, std::uint64_t count, double sum, double sum_squares, bool constant) {
    const double s = static_cast<double>(count);
    if (kind == EstimatorKind::Mean) return std::clamp(sum / s, 0.0, 1.0);
    if (constant) return 0.0;
    const double v = (sum_squares - sum * sum / s) / (s - 1.0);
    // Cancellation can push an all-equal sample slightly negative.
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace

double estimate(EstimatorKind kind, std::span<const double> samples) {
    if (samples.size() < static_cast<std::size_t>(tau(kind))) {
        std::ostringstream msg;
        msg << to_string(kind) << " estimator needs at least " << tau(kind) << " samples, got "
            << samples.size();
        throw UsageError(msg.str());
    }
    RunningEstimator acc;
    for (double x : samples) acc.add(x);
    return acc.value(kind);
}

void RunningEstimator::add(double sample) {
    if (!(sample >= 0.0 && sample <= 1.0)) {
        std::ostringstream msg;
        msg << "sample " << sample << " is outside [0,1]";
        throw DomainError(msg.str());
    }
    if (count_ == 0) {
        min_ = max_ = sample;
    } else {
        min_ = std::min(min_, sample);
        max_ = std::max(max_, sample);
    }
    ++count_;
    sum_ += sample;
    sum_squares_ += sample * sample;
}

double RunningEstimator::value(EstimatorKind kind) const {
    if (count_ < static_cast<std::uint64_t>(tau(kind)))
        throw UsageError("estimator queried before tau samples were observed");
    return finish(kind, count_, sum_, sum_squares_, min_ == max_);
}

double confidence_radius(std::uint64_t t, std::uint64_t pulls, int tau, double delta) {
    if (tau < 1 || t < 1) throw UsageError("confidence radius: t and tau must be positive");
    if (pulls < static_cast<std::uint64_t>(tau))
        throw UsageError("confidence radius: pull count below tau");
    if (!(delta > 0.0 && delta < 1.0)) throw UsageError("confidence radius: delta must lie in (0,1)");
    return radius_from_log(radius_log_term(t, tau, delta), pulls);
}

double radius_log_term(std::uint64_t t, int tau, double delta) {
    const double td = static_cast<double>(t);
    const double arg = 4.0 * td * td * td / (static_cast<double>(tau) * delta);
    if (!(arg > 0.0)) throw InternalError("confidence radius: nonpositive log argument");
    return std::log(arg);
}

double radius_from_log(double log_term, std::uint64_t pulls) {
    return std::sqrt(log_term / (2.0 * static_cast<double>(pulls)));
}

ConfidenceBox clamp_box(std::span<const double> estimates, std::span<const double> radii,
                        double upper_cap) {
    if (estimates.size() != radii.size())
        throw UsageError("clamp_box: estimates and radii differ in length");
    std::vector<double> lower(estimates.size()), upper(estimates.size());
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        lower[i] = std::clamp(estimates[i] - radii[i], 0.0, upper_cap);
        upper[i] = std::clamp(estimates[i] + radii[i], 0.0, upper_cap);
    }
    return ConfidenceBox(std::move(lower), std::move(upper));
}

}  // namespace cpecs
