#include "cpecs/osa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "cpecs/errors.hpp"

namespace cpecs {

void validate(const OsaSpec& spec) {
    if (spec.group_sizes.empty()) throw UsageError("osa: need at least one group");
    for (auto n : spec.group_sizes)
        if (n < 1) throw UsageError("osa: group sizes must be positive");
    if (spec.budget < static_cast<std::int64_t>(spec.size())) {
        std::ostringstream msg;
        msg << "osa: budget k = " << spec.budget << " is below the group count m = " << spec.size();
        throw DomainError(msg.str());
    }
}

double osa_objective(const OsaSpec& spec, const ParameterVector& theta, const Decision& y) {
    if (theta.size() != spec.size() || y.size() != spec.size())
        throw UsageError("osa: dimension mismatch");
    std::vector<double> terms(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double n = static_cast<double>(spec.group_sizes[i]);
        terms[i] = n * n * theta[i] / y[i];
    }
    return exact_sum(terms);
}

namespace {

// Marginal gains are compared relative to their own magnitude: mathematically equal
// gains computed along different floating-point paths must land in the same tie group.
bool marginal_ties(double a, double b) {
    return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

struct Head {
    double gain;
    std::size_t arm;
};

// Max-heap on gain; equal gains pop the larger index first.
struct HeadOrder {
    bool operator()(const Head& a, const Head& b) const {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.arm < b.arm;
    }
};

}  // namespace

GreedyOsaResult greedy_osa_detailed(const OsaSpec& spec, const ParameterVector& theta) {
    validate(spec);
    const std::size_t m = spec.size();
    if (theta.size() != m) throw UsageError("osa: parameter dimension does not match group count");
    const std::int64_t k = spec.budget;

    std::vector<double> weight(m);    // a_i = n_i sqrt(theta_i)
    std::vector<double> weight_sq(m); // a_i^2 = n_i^2 theta_i
    double weight_total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double n = static_cast<double>(spec.group_sizes[i]);
        weight[i] = n * std::sqrt(theta[i]);
        weight_sq[i] = n * n * theta[i];
        weight_total += weight[i];
    }

    GreedyOsaResult result;
    GreedyOsaScratch& s = result.scratch;
    s.alpha.assign(m, 0.0);
    s.slack.assign(m, 0.0);
    s.base.assign(m, 1);

    if (weight_total == 0.0) {
        // Every allocation is optimal; the lexicographically first full-budget one
        // keeps all groups at one sample and gives the rest to the last group.
        std::vector<double> y(m, 1.0);
        y.back() = static_cast<double>(k - static_cast<std::int64_t>(m) + 1);
        result.allocation = Decision(std::move(y));
        return result;
    }

    // Groups with theta_i = 0 keep one sample in every optimum; the real-valued optimum
    // spreads what is left over the others.
    std::int64_t zeros = 0;
    for (double w : weight) zeros += w == 0.0 ? 1 : 0;
    const double spread = static_cast<double>(k - zeros);
    s.normalizer = 1.0 / weight_total;
    for (std::size_t i = 0; i < m; ++i) {
        if (weight[i] == 0.0) continue;
        const double a = s.normalizer * weight[i] * spread;
        s.alpha[i] = a;
        const double up = std::ceil(a);
        s.slack[i] = (up * (up - 1.0) >= a * a) ? 0.0 : up - a;
    }
    double slack_total = 0.0;
    for (double d : s.slack) slack_total += d;

    std::int64_t used = 0;
    for (std::size_t i = 0; i < m; ++i) {
        // Rounded down with a hair of margin: a lower base is always safe.
        const double raw = s.alpha[i] - (slack_total - s.slack[i]) - 1e-9;
        s.base[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(raw)));
        used += s.base[i];
    }
    if (used > k) throw InternalError("osa: base vector exceeds the budget");

    std::vector<std::int64_t> y(s.base);
    auto gain = [&](std::size_t i) {
        const double l = static_cast<double>(y[i]);
        return weight_sq[i] / l - weight_sq[i] / (l + 1.0);
    };

    std::priority_queue<Head, std::vector<Head>, HeadOrder> heads;
    for (std::size_t i = 0; i < m; ++i) heads.push({gain(i), i});

    std::int64_t remaining = k - used;
    std::vector<std::size_t> group;
    while (remaining > 0) {
        ++result.greedy_rounds;
        group.clear();
        const double top = heads.top().gain;
        while (!heads.empty() && marginal_ties(heads.top().gain, top)) {
            group.push_back(heads.top().arm);
            heads.pop();
        }
        if (static_cast<std::int64_t>(group.size()) >= remaining) {
            // Final step: the largest indices receive the last units.
            std::sort(group.begin(), group.end(), std::greater<>());
            for (std::int64_t r = 0; r < remaining; ++r) ++y[group[r]];
            result.increments += static_cast<std::uint64_t>(remaining);
            remaining = 0;
            break;
        }
        for (std::size_t i : group) {
            ++y[i];
            heads.push({gain(i), i});
        }
        result.increments += group.size();
        remaining -= static_cast<std::int64_t>(group.size());
    }

    std::vector<double> out(y.begin(), y.end());
    result.allocation = Decision(std::move(out));
    return result;
}

Decision greedy_osa(const OsaSpec& spec, const ParameterVector& theta) {
    return greedy_osa_detailed(spec, theta).allocation;
}

Decision osa_maximizer(const OsaSpec& spec, const ParameterVector& theta) {
    return greedy_osa(spec, theta);
}

OsaOracle::OsaOracle(OsaSpec spec) : spec_(std::move(spec)) { validate(spec_); }

double OsaOracle::reward_term(std::size_t arm, double theta, double y) const {
    const double n = static_cast<double>(spec_.group_sizes.at(arm));
    return -(n * n * theta / y);
}

bool OsaOracle::contains(const Decision& y) const {
    if (y.size() != spec_.size()) return false;
    double total = 0.0;
    for (double v : y.values) {
        if (v < 1.0 || v != std::floor(v)) return false;
        total += v;
    }
    return total <= static_cast<double>(spec_.budget);
}

Decision OsaOracle::maximize(const ParameterVector& theta) const { return greedy_osa(spec_, theta); }

std::optional<std::uint64_t> OsaOracle::enumeration_size() const {
    // Compositions of k into m positive parts: C(k-1, m-1).
    const std::uint64_t n = static_cast<std::uint64_t>(spec_.budget - 1);
    const std::uint64_t r = spec_.size() - 1;
    long double c = 1.0L;
    for (std::uint64_t i = 1; i <= r; ++i)
        c = c * static_cast<long double>(n - r + i) / static_cast<long double>(i);
    if (c > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(c)));
}

void OsaOracle::enumerate(const std::function<void(const Decision&)>& visit) const {
    const std::size_t m = spec_.size();
    std::vector<double> y(m, 1.0);
    auto rec = [&](auto& self, std::size_t i, std::int64_t left) -> void {
        if (i + 1 == m) {
            y[i] = static_cast<double>(left);
            visit(Decision(y));
            return;
        }
        const std::int64_t reserve = static_cast<std::int64_t>(m - i - 1);
        for (std::int64_t v = 1; v <= left - reserve; ++v) {
            y[i] = static_cast<double>(v);
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, spec_.budget);
}

std::shared_ptr<const OracleSpec> make_osa_oracle(OsaSpec spec) {
    return std::make_shared<OsaOracle>(std::move(spec));
}

}  // namespace cpecs
