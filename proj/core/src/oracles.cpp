#include "cpecs/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cpecs/errors.hpp"

namespace cpecs {

// ---------------------------------------------------------------------------
// top-k

Decision top_k_maximizer(const TopKSpec& spec, const ParameterVector& theta) {
    if (theta.size() != spec.m) throw UsageError("top-k: parameter dimension does not match m");
    std::vector<double> y(spec.m, 0.0);
    if (spec.k == 1) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < spec.m; ++i)
            if (theta[i] > theta[best]) best = i;
        y[best] = 1.0;
        return Decision(std::move(y));
    }
    // (-theta_i, i) is a total order, so a partial sort matches a stable sort on -theta.
    std::vector<std::size_t> order(spec.m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.k), order.end(),
                      [&](std::size_t a, std::size_t b) { return theta[a] > theta[b] || (theta[a] == theta[b] && a < b); });
    for (std::size_t r = 0; r < spec.k; ++r) y[order[r]] = 1.0;
    return Decision(std::move(y));
}

TopKOracle::TopKOracle(TopKSpec spec) : spec_(spec) {
    if (spec_.m < 1) throw UsageError("top-k: need at least one arm");
    if (spec_.k < 1 || spec_.k > spec_.m) throw UsageError("top-k: k must satisfy 1 <= k <= m");
}

bool TopKOracle::contains(const Decision& y) const {
    if (y.size() != spec_.m) return false;
    std::size_t ones = 0;
    for (double v : y.values) {
        if (v == 1.0) ++ones;
        else if (v != 0.0) return false;
    }
    return ones == spec_.k;
}

Decision TopKOracle::maximize(const ParameterVector& theta) const {
    return top_k_maximizer(spec_, theta);
}

double TopKOracle::maximize_component(std::span<const double> theta, std::size_t arm) const {
    // Arm is selected iff fewer than k arms precede it in the (-theta_j, j) order.
    std::size_t ahead = 0;
    for (std::size_t j = 0; j < spec_.m; ++j)
        if (theta[j] > theta[arm] || (theta[j] == theta[arm] && j < arm)) ++ahead;
    return ahead < spec_.k ? 1.0 : 0.0;
}

std::optional<std::uint64_t> TopKOracle::enumeration_size() const {
    // C(m, k), saturating.
    long double c = 1.0L;
    for (std::size_t i = 1; i <= spec_.k; ++i)
        c = c * static_cast<long double>(spec_.m - spec_.k + i) / static_cast<long double>(i);
    if (c > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(c)));
}

void TopKOracle::enumerate(const std::function<void(const Decision&)>& visit) const {
    // Lexicographic order over the indicator vectors, via a descending bitmask permutation.
    std::vector<double> y(spec_.m, 0.0);
    std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(spec_.k), 1.0);
    std::sort(y.begin(), y.end());
    do {
        visit(Decision(y));
    } while (std::next_permutation(y.begin(), y.end()));
}

std::shared_ptr<const OracleSpec> make_best_arm_oracle(std::size_t m) {
    return std::make_shared<TopKOracle>(TopKSpec{m, 1});
}

std::shared_ptr<const OracleSpec> make_top_k_oracle(std::size_t m, std::size_t k) {
    return std::make_shared<TopKOracle>(TopKSpec{m, k});
}

// ---------------------------------------------------------------------------
// water planning

CostFunction CostFunction::quadratic(double quad, double lin) {
    DerivativeTrend trend = DerivativeTrend::Constant;
    if (quad > 0.0) trend = DerivativeTrend::Increasing;
    else if (quad < 0.0) trend = DerivativeTrend::Decreasing;
    return {[quad, lin](double y) { return quad * y * y + lin * y; }, trend};
}

namespace {

constexpr double kGridSlack = 1e-9;

long long grid_count(double value, double step) {
    const double ratio = value / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > kGridSlack * std::max(1.0, std::abs(ratio))) return -1;
    return static_cast<long long>(rounded);
}

struct WaterGrid {
    std::vector<long long> cap_units;
    long long requirement_units = 0;
};

WaterGrid grid_of(const WaterSpec& spec) {
    WaterGrid g;
    for (double c : spec.caps) g.cap_units.push_back(grid_count(c, spec.grid_step));
    g.requirement_units = grid_count(spec.requirement, spec.grid_step);
    return g;
}

}  // namespace

void validate(const WaterSpec& spec) {
    if (spec.caps.empty()) throw UsageError("water: need at least one source");
    if (spec.costs.size() != spec.caps.size())
        throw UsageError("water: one cost function per source is required");
    if (!(spec.grid_step > 0.0)) throw UsageError("water: grid_step must be positive");
    if (!(spec.requirement >= 0.0)) throw UsageError("water: requirement b must be nonnegative");
    for (std::size_t i = 0; i < spec.caps.size(); ++i) {
        if (!(spec.caps[i] >= 0.0)) throw UsageError("water: caps must be nonnegative");
        if (grid_count(spec.caps[i], spec.grid_step) < 0) {
            std::ostringstream msg;
            msg << "water: cap c_" << i << " = " << spec.caps[i] << " is not a multiple of the grid step";
            throw UsageError(msg.str());
        }
        if (!spec.costs[i].value) throw UsageError("water: cost function missing");
    }
    if (grid_count(spec.requirement, spec.grid_step) < 0)
        throw UsageError("water: requirement b is not a multiple of the grid step");
    const double total = std::accumulate(spec.caps.begin(), spec.caps.end(), 0.0);
    if (total + kGridSlack * std::max(1.0, total) < spec.requirement)
        throw DomainError("water: infeasible, sum of caps is below the requirement b");
}

Decision water_maximizer(const WaterSpec& spec, const ParameterVector& theta) {
    validate(spec);
    const std::size_t m = spec.size();
    if (theta.size() != m) throw UsageError("water: parameter dimension does not match source count");
    const WaterGrid grid = grid_of(spec);
    const long long need = grid.requirement_units;
    const double step = spec.grid_step;
    constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

    auto term = [&](std::size_t i, long long units) {
        const double y = static_cast<double>(units) * step;
        return theta[i] * y - spec.costs[i].value(y);
    };

    // best[i][r]: best total of sources i..m-1 when r more units are still required.
    std::vector<std::vector<double>> best(m + 1, std::vector<double>(need + 1, kInfeasible));
    best[m][0] = 0.0;
    for (std::size_t i = m; i-- > 0;) {
        for (long long r = 0; r <= need; ++r) {
            double v = kInfeasible;
            for (long long g = 0; g <= grid.cap_units[i]; ++g) {
                const double tail = best[i + 1][std::max(0LL, r - g)];
                if (tail == kInfeasible) continue;
                v = std::max(v, term(i, g) + tail);
            }
            best[i][r] = v;
        }
    }
    if (best[0][need] == kInfeasible) throw DomainError("water: infeasible instance");

    // Forward pass: smallest grid value whose continuation ties the optimum.
    std::vector<double> y(m);
    long long r = need;
    for (std::size_t i = 0; i < m; ++i) {
        const double target = best[i][r];
        long long chosen = -1;
        for (long long g = 0; g <= grid.cap_units[i]; ++g) {
            const double tail = best[i + 1][std::max(0LL, r - g)];
            if (tail == kInfeasible) continue;
            if (ties(term(i, g) + tail, target)) {
                chosen = g;
                break;
            }
        }
        if (chosen < 0) throw InternalError("water: dynamic program reconstruction failed");
        y[i] = static_cast<double>(chosen) * step;
        r = std::max(0LL, r - chosen);
    }
    return Decision(std::move(y));
}

bool water_bi_monotone(const WaterSpec& spec) {
    validate(spec);
    const std::size_t m = spec.size();
    const DerivativeTrend first = spec.costs.front().derivative_trend;
    if (first != DerivativeTrend::Increasing && first != DerivativeTrend::Decreasing) return false;
    for (const auto& c : spec.costs)
        if (c.derivative_trend != first) return false;
    if (m > 8) return false;  // sweep would be too large to be a cheap check

    constexpr int kLevels = 5;
    std::size_t points = 1;
    for (std::size_t i = 0; i < m; ++i) points *= kLevels;

    auto decode = [&](std::size_t index) {
        std::vector<int> level(m);
        for (std::size_t i = 0; i < m; ++i) {
            level[i] = static_cast<int>(index % kLevels);
            index /= kLevels;
        }
        return level;
    };
    auto theta_of = [&](const std::vector<int>& level) {
        std::vector<double> t(m);
        for (std::size_t i = 0; i < m; ++i) t[i] = level[i] / double(kLevels - 1);
        return ParameterVector(std::move(t));
    };

    std::vector<Decision> phi(points);
    for (std::size_t p = 0; p < points; ++p) {
        phi[p] = water_maximizer(spec, theta_of(decode(p)));
        const double total = std::accumulate(phi[p].values.begin(), phi[p].values.end(), 0.0);
        if (std::abs(total - spec.requirement) > kGridSlack * std::max(1.0, spec.requirement) + 1e-9)
            return false;
    }
    std::size_t stride = 1;
    for (std::size_t i = 0; i < m; ++i, stride *= kLevels) {
        for (std::size_t p = 0; p < points; ++p) {
            if (decode(p)[i] == kLevels - 1) continue;
            const Decision& lo = phi[p];
            const Decision& hi = phi[p + stride];
            if (hi[i] < lo[i]) return false;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i && hi[j] > lo[j]) return false;
        }
    }
    return true;
}

WaterOracle::WaterOracle(WaterSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    bi_monotone_ = water_bi_monotone(spec_);
}

double WaterOracle::reward_term(std::size_t arm, double theta, double y) const {
    return theta * y - spec_.costs.at(arm).value(y);
}

bool WaterOracle::contains(const Decision& y) const {
    if (y.size() != spec_.size()) return false;
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const long long units = grid_count(y[i], spec_.grid_step);
        if (units < 0 || y[i] < 0.0 || y[i] > spec_.caps[i] + kGridSlack) return false;
        total += y[i];
    }
    return total + kGridSlack * std::max(1.0, total) >= spec_.requirement;
}

Decision WaterOracle::maximize(const ParameterVector& theta) const {
    return water_maximizer(spec_, theta);
}

std::optional<std::uint64_t> WaterOracle::enumeration_size() const {
    const WaterGrid grid = grid_of(spec_);
    long double count = 1.0L;
    for (long long c : grid.cap_units) count *= static_cast<long double>(c + 1);
    if (count > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(count);
}

void WaterOracle::enumerate(const std::function<void(const Decision&)>& visit) const {
    const WaterGrid grid = grid_of(spec_);
    const std::size_t m = spec_.size();
    std::vector<long long> units(m, 0);
    std::vector<double> y(m, 0.0);
    // Odometer with the last coordinate fastest: lexicographic order.
    while (true) {
        long long total = 0;
        for (std::size_t i = 0; i < m; ++i) {
            y[i] = static_cast<double>(units[i]) * spec_.grid_step;
            total += units[i];
        }
        if (total >= grid.requirement_units) visit(Decision(y));
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (units[i] < grid.cap_units[i]) {
                ++units[i];
                break;
            }
            units[i] = 0;
            if (i == 0) return;
        }
    }
}

std::optional<Orientation> WaterOracle::bi_monotone() const {
    if (!bi_monotone_) return std::nullopt;
    return Orientation::OwnNonDecreasing;
}

}  // namespace cpecs
