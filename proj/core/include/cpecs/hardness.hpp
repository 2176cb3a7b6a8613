#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cpecs/core.hpp"

namespace cpecs {

/// Lattice estimate of the consistent optimality radii Lambda_i.
///
/// For each arm the true value lies in [lower[i], upper[i]] under the assumption that the
/// flip region { theta : phi_i(theta) != phi_i(theta*) } is reached by some lattice point
/// within one step of its nearest point (true for the polyhedral decision regions of the
/// shipped oracles). upper - lower = epsilon.
struct LambdaEstimate {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> never_flips;  // phi_i constant on [0,1]^m; both brackets set to 1
    double epsilon = 0.01;
};

inline constexpr double kDefaultLatticeStep = 0.01;
/// 201^4: a full m = 4 lattice at step 0.01.
inline constexpr std::uint64_t kDefaultLatticeCapacity = 1'632'240'801ULL;

/// Searches L-infinity shells of growing radius around theta* on a lattice of spacing
/// `epsilon`, clipped to [0,1]^m. Throws CapacityError when the clipped lattice has more
/// than `capacity` points.
LambdaEstimate compute_lambda(const OracleSpec& spec, const ParameterVector& theta_star,
                              double epsilon = kDefaultLatticeStep,
                              std::uint64_t capacity = kDefaultLatticeCapacity);

/// Reward gaps Delta_i for binary (CPE-L) classes, by enumeration. An arm whose value is
/// the same in every decision gets +infinity. Throws DomainError if y* is not unique.
std::vector<double> compute_gaps_cpel(const OracleSpec& spec, const ParameterVector& theta_star);

/// 2m + 12 H ln(24 H) + 4 H ln(4 / (tau delta)).
double thm1_bound(double h_lambda, std::size_t m, int tau, double delta);

struct HardnessReport {
    LambdaEstimate lambda;
    double h_lambda = 0.0;        // sum 1 / Lambda_i^2, upper brackets
    double h_lambda_lower = 0.0;  // same with lower brackets (conservative side)
    double h_uniform = 0.0;       // m / min Lambda_i^2, upper brackets
    std::optional<std::vector<double>> gaps;
    std::optional<double> h_delta;
    std::optional<int> width;
};

HardnessReport compute_hardness(const OracleSpec& spec, const ParameterVector& theta_star,
                                double epsilon = kDefaultLatticeStep,
                                std::uint64_t capacity = kDefaultLatticeCapacity);

}  // namespace cpecs
