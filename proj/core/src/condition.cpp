#include "cpecs/condition.hpp"

#include <charconv>
#include <iostream>
#include <sstream>

#include "cpecs/errors.hpp"

namespace cpecs {

std::string to_string(const ConditionStrategy& strategy) {
    switch (strategy.kind) {
        case ConditionStrategy::Kind::BiMonotone: return "bi-monotone";
        case ConditionStrategy::Kind::CornerEnumeration: return "corners";
        case ConditionStrategy::Kind::GridScan: return "grid:" + std::to_string(strategy.resolution);
    }
    return "?";
}

ConditionStrategy parse_strategy(std::string_view text) {
    if (text == "bi-monotone") return ConditionStrategy::bi_monotone();
    if (text == "corners") return ConditionStrategy::corners();
    if (text == "grid") return ConditionStrategy::grid();
    if (text.starts_with("grid:")) {
        const auto digits = text.substr(5);
        std::size_t points = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), points);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && points >= 2)
            return ConditionStrategy::grid(points);
    }
    throw UsageError("unknown condition strategy '" + std::string(text) +
                     "' (expected bi-monotone|corners|grid|grid:<points>)");
}

ConditionStrategy default_strategy(const OracleSpec& spec) {
    if (spec.bi_monotone()) return ConditionStrategy::bi_monotone();
    if (spec.arm_count() <= kMaxCornerArms) return ConditionStrategy::corners();
    std::cerr << "warning: " << spec.name() << " with " << spec.arm_count()
              << " arms is neither bi-monotone nor small enough for corner enumeration; "
                 "falling back to a grid scan, which may stop early\n";
    return ConditionStrategy::grid();
}

namespace {

void check_box(const OracleSpec& spec, const ConfidenceBox& box) {
    if (box.size() != spec.arm_count())
        throw UsageError("candidate test: box dimension does not match arm count");
}

// Evaluates phi on every point of a lattice given by one value list per axis and records,
// per arm, whether more than one value of phi_i was seen.
std::vector<bool> scan_lattice(const OracleSpec& spec, const std::vector<std::vector<double>>& axes) {
    const std::size_t m = axes.size();
    std::vector<std::size_t> index(m, 0);
    std::vector<double> point(m);
    std::vector<bool> varies(m, false);
    Decision first;
    bool have_first = false;
    while (true) {
        for (std::size_t i = 0; i < m; ++i) point[i] = axes[i][index[i]];
        const Decision y = spec.maximize(ParameterVector(point));
        if (!have_first) {
            first = y;
            have_first = true;
        } else {
            for (std::size_t i = 0; i < m; ++i)
                if (y[i] != first[i]) varies[i] = true;
        }
        std::size_t d = 0;
        while (d < m && ++index[d] == axes[d].size()) index[d++] = 0;
        if (d == m) break;
    }
    return varies;
}

std::vector<std::vector<double>> corner_axes(const ConfidenceBox& box) {
    if (box.size() > kMaxCornerArms) {
        std::ostringstream msg;
        msg << "corner enumeration supports at most " << kMaxCornerArms << " arms, got " << box.size();
        throw CapacityError(msg.str());
    }
    std::vector<std::vector<double>> axes(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        axes[i].push_back(box.lower(i));
        if (box.upper(i) != box.lower(i)) axes[i].push_back(box.upper(i));
    }
    return axes;
}

std::vector<std::vector<double>> grid_axes(const ConfidenceBox& box, std::size_t points) {
    if (points < 2) throw UsageError("grid scan needs at least two points per axis");
    double total = 1.0;
    for (std::size_t i = 0; i < box.size(); ++i) total *= static_cast<double>(points);
    if (total > static_cast<double>(kMaxGridPoints))
        throw CapacityError("grid scan lattice exceeds " + std::to_string(kMaxGridPoints) + " points");
    std::vector<std::vector<double>> axes(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        const double lo = box.lower(i), hi = box.upper(i);
        if (lo == hi) {
            axes[i].push_back(lo);
            continue;
        }
        for (std::size_t j = 0; j < points; ++j) {
            const double v = (j + 1 == points)
                                 ? hi
                                 : lo + (hi - lo) * static_cast<double>(j) / double(points - 1);
            axes[i].push_back(v);
        }
    }
    return axes;
}

bool two_corner_test(const OracleSpec& spec, const ConfidenceBox& box, std::size_t arm,
                     std::vector<double>& point) {
    const auto lo = box.lower_bounds();
    const auto hi = box.upper_bounds();
    point.assign(lo.begin(), lo.end());
    point[arm] = hi[arm];
    const double raised = spec.maximize_component(point, arm);
    point.assign(hi.begin(), hi.end());
    point[arm] = lo[arm];
    const double lowered = spec.maximize_component(point, arm);
    return raised != lowered;
}

void require_bi_monotone(const OracleSpec& spec) {
    if (!spec.bi_monotone())
        throw UsageError(std::string(spec.name()) +
                         ": bi-monotone candidate test requested on an oracle that is not bi-monotone");
}

}  // namespace

bool arm_is_candidate(const ConditionStrategy& strategy, const OracleSpec& spec,
                      const ConfidenceBox& box, std::size_t arm) {
    check_box(spec, box);
    if (arm >= spec.arm_count()) throw UsageError("candidate test: arm index out of range");
    switch (strategy.kind) {
        case ConditionStrategy::Kind::BiMonotone: {
            require_bi_monotone(spec);
            std::vector<double> point;
            return two_corner_test(spec, box, arm, point);
        }
        case ConditionStrategy::Kind::CornerEnumeration:
            return scan_lattice(spec, corner_axes(box))[arm];
        case ConditionStrategy::Kind::GridScan:
            return scan_lattice(spec, grid_axes(box, strategy.resolution))[arm];
    }
    throw InternalError("unhandled condition strategy");
}

std::vector<bool> candidate_set(const ConditionStrategy& strategy, const OracleSpec& spec,
                                const ConfidenceBox& box) {
    check_box(spec, box);
    switch (strategy.kind) {
        case ConditionStrategy::Kind::BiMonotone: {
            require_bi_monotone(spec);
            std::vector<bool> out(spec.arm_count());
            std::vector<double> point;
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = two_corner_test(spec, box, i, point);
            return out;
        }
        case ConditionStrategy::Kind::CornerEnumeration:
            return scan_lattice(spec, corner_axes(box));
        case ConditionStrategy::Kind::GridScan:
            return scan_lattice(spec, grid_axes(box, strategy.resolution));
    }
    throw InternalError("unhandled condition strategy");
}

}  // namespace cpecs
