#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "cpecs/core.hpp"

namespace cpecs {

/// Which statistic of an arm is the unknown parameter.
enum class EstimatorKind { Mean, Variance };

/// Initialization pulls per arm: 1 for the mean, 2 for the variance.
int tau(EstimatorKind kind);

std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(std::string_view text);

/// Unbiased estimate from samples in [0,1]. Variance estimates are clamped into [0,1].
double estimate(EstimatorKind kind, std::span<const double> samples);

/// sqrt( ln(4 t^3 / (tau delta)) / (2 pulls) ), natural log.
double confidence_radius(std::uint64_t t, std::uint64_t pulls, int tau, double delta);

/// The two halves of confidence_radius, for callers that refresh many arms at one t.
double radius_log_term(std::uint64_t t, int tau, double delta);
double radius_from_log(double log_term, std::uint64_t pulls);

/// Per-coordinate [estimate - radius, estimate + radius] clipped to [0, upper_cap].
/// upper_cap defaults to 1; 0.25 is the tighter ceiling for variances of [0,1] variables.
ConfidenceBox clamp_box(std::span<const double> estimates, std::span<const double> radii,
                        double upper_cap = 1.0);

/// Streaming form of `estimate`: keeps sum and sum of squares so each pull is O(1).
/// Produces the same value as `estimate` on the same sample sequence.
class RunningEstimator {
public:
    void add(double sample);
    std::uint64_t count() const { return count_; }
    double value(EstimatorKind kind) const;

private:
    std::uint64_t count_ = 0;
    double sum_ = 0.0;
    double sum_squares_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

}  // namespace cpecs
