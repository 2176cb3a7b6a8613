#include "cpecs/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cpecs/errors.hpp"

namespace cpecs {

namespace {

struct Axis {
    long long lo;  // most negative step count that stays inside [0,1]
    long long hi;
};

}  // namespace

LambdaEstimate compute_lambda(const OracleSpec& spec, const ParameterVector& theta_star,
                              double epsilon, std::uint64_t capacity) {
    const std::size_t m = spec.arm_count();
    if (theta_star.size() != m) throw UsageError("compute_lambda: dimension mismatch");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw UsageError("compute_lambda: epsilon must lie in (0,1]");

    std::vector<Axis> axes(m);
    long double points = 1.0L;
    long long max_shell = 0;
    for (std::size_t d = 0; d < m; ++d) {
        axes[d].lo = -static_cast<long long>(std::floor(theta_star[d] / epsilon + 1e-9));
        axes[d].hi = static_cast<long long>(std::floor((1.0 - theta_star[d]) / epsilon + 1e-9));
        points *= static_cast<long double>(axes[d].hi - axes[d].lo + 1);
        max_shell = std::max({max_shell, -axes[d].lo, axes[d].hi});
    }
    if (points > static_cast<long double>(capacity)) {
        std::ostringstream msg;
        msg << "compute_lambda: lattice of " << static_cast<double>(points) << " points exceeds capacity "
            << capacity << " (m = " << m << ", epsilon = " << epsilon << ")";
        throw CapacityError(msg.str());
    }

    const Decision reference = spec.maximize(theta_star);
    std::vector<long long> flip_shell(m, -1);
    std::size_t unresolved = m;

    std::vector<long long> z(m);
    std::vector<double> theta(m);
    auto evaluate = [&](long long shell) {
        for (std::size_t d = 0; d < m; ++d)
            theta[d] = std::clamp(theta_star[d] + static_cast<double>(z[d]) * epsilon, 0.0, 1.0);
        const Decision y = spec.maximize(ParameterVector(theta));
        for (std::size_t i = 0; i < m; ++i) {
            if (flip_shell[i] < 0 && y[i] != reference[i]) {
                flip_shell[i] = shell;
                --unresolved;
            }
        }
    };

    for (long long s = 1; s <= max_shell && unresolved > 0; ++s) {
        // The shell ||z||_inf = s is split by the first coordinate d with |z_d| = s.
        for (std::size_t d = 0; d < m && unresolved > 0; ++d) {
            for (long long face : {-s, s}) {
                if (face < axes[d].lo || face > axes[d].hi) continue;
                std::vector<long long> from(m), to(m);
                for (std::size_t j = 0; j < m; ++j) {
                    const long long reach = j < d ? s - 1 : s;
                    from[j] = std::max(axes[j].lo, -reach);
                    to[j] = std::min(axes[j].hi, reach);
                }
                from[d] = to[d] = face;
                z = from;
                while (true) {
                    evaluate(s);
                    if (unresolved == 0) break;
                    std::size_t j = 0;
                    while (j < m && ++z[j] > to[j]) {
                        z[j] = from[j];
                        ++j;
                    }
                    if (j == m) break;
                }
                if (unresolved == 0) break;
            }
        }
    }

    LambdaEstimate out;
    out.epsilon = epsilon;
    out.lower.resize(m);
    out.upper.resize(m);
    out.never_flips.assign(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (flip_shell[i] < 0) {
            out.never_flips[i] = true;
            out.lower[i] = out.upper[i] = 1.0;
        } else {
            out.lower[i] = static_cast<double>(flip_shell[i] - 1) * epsilon;
            out.upper[i] = static_cast<double>(flip_shell[i]) * epsilon;
        }
    }
    return out;
}

std::vector<double> compute_gaps_cpel(const OracleSpec& spec, const ParameterVector& theta_star) {
    if (!spec.binary_class())
        throw UsageError(std::string(spec.name()) + ": reward gaps are defined for binary decision classes only");
    const auto optima = all_maximizers(spec, theta_star);
    if (optima.size() != 1) {
        std::ostringstream msg;
        msg << "reward gaps: optimal decision is not unique (" << optima.size() << " maximizers)";
        throw DomainError(msg.str());
    }
    const Decision& best = optima.front();
    const double best_reward = reward(spec, theta_star, best);
    const std::size_t m = spec.arm_count();
    std::vector<double> rival(m, -std::numeric_limits<double>::infinity());
    spec.enumerate([&](const Decision& y) {
        const double r = reward(spec, theta_star, y);
        for (std::size_t i = 0; i < m; ++i)
            if (y[i] != best[i]) rival[i] = std::max(rival[i], r);
    });
    std::vector<double> gaps(m);
    for (std::size_t i = 0; i < m; ++i) gaps[i] = best_reward - rival[i];
    return gaps;
}

double thm1_bound(double h_lambda, std::size_t m, int tau, double delta) {
    if (!(h_lambda > 0.0)) throw UsageError("thm1_bound: H must be positive");
    if (tau < 1) throw UsageError("thm1_bound: tau must be positive");
    if (!(delta > 0.0)) throw UsageError("thm1_bound: delta must be positive");
    const double h = h_lambda;
    return 2.0 * static_cast<double>(m) + 12.0 * h * std::log(24.0 * h) +
           4.0 * h * std::log(4.0 / (static_cast<double>(tau) * delta));
}

HardnessReport compute_hardness(const OracleSpec& spec, const ParameterVector& theta_star,
                                double epsilon, std::uint64_t capacity) {
    HardnessReport report;
    report.lambda = compute_lambda(spec, theta_star, epsilon, capacity);
    double min_upper = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spec.arm_count(); ++i) {
        const double up = report.lambda.upper[i];
        const double lo = report.lambda.lower[i];
        report.h_lambda += 1.0 / (up * up);
        report.h_lambda_lower += lo > 0.0 ? 1.0 / (lo * lo) : std::numeric_limits<double>::infinity();
        min_upper = std::min(min_upper, up);
    }
    report.h_uniform = static_cast<double>(spec.arm_count()) / (min_upper * min_upper);
    if (spec.binary_class() && spec.enumeration_size()) {
        report.gaps = compute_gaps_cpel(spec, theta_star);
        double h = 0.0;
        for (double g : *report.gaps)
            if (std::isfinite(g)) h += 1.0 / (g * g);
        report.h_delta = h;
        report.width = spec.width();
    }
    return report;
}

}  // namespace cpecs
