#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cpecs/core.hpp"

namespace cpecs {

/// How to decide whether phi_i is constant over a confidence box.
///
/// BiMonotone is exact for bi-monotone oracles and costs two oracle calls per arm.
/// CornerEnumeration evaluates phi at all 2^m corners: exact when every phi_i attains its
/// extremes at corners, otherwise a heuristic. GridScan evaluates a uniform lattice that
/// includes the corners; it is a heuristic meant for audits and tests.
struct ConditionStrategy {
    enum class Kind { BiMonotone, CornerEnumeration, GridScan };

    Kind kind = Kind::BiMonotone;
    std::size_t resolution = 21;  // GridScan points per axis

    static ConditionStrategy bi_monotone() { return {Kind::BiMonotone, 0}; }
    static ConditionStrategy corners() { return {Kind::CornerEnumeration, 0}; }
    static ConditionStrategy grid(std::size_t points_per_axis = 21) {
        return {Kind::GridScan, points_per_axis};
    }

    friend bool operator==(const ConditionStrategy&, const ConditionStrategy&) = default;
};

inline constexpr std::size_t kMaxCornerArms = 20;
inline constexpr std::uint64_t kMaxGridPoints = 10'000'000;

std::string to_string(const ConditionStrategy& strategy);
/// Accepts "bi-monotone", "corners", "grid" and "grid:<points>".
ConditionStrategy parse_strategy(std::string_view text);

/// BiMonotone when the oracle declares it, else CornerEnumeration up to kMaxCornerArms
/// arms, else GridScan (with a warning on stderr).
ConditionStrategy default_strategy(const OracleSpec& spec);

/// Whether max_{theta in box} phi_i(theta) != min_{theta in box} phi_i(theta).
bool arm_is_candidate(const ConditionStrategy& strategy, const OracleSpec& spec,
                      const ConfidenceBox& box, std::size_t arm);

/// The candidate flag for every arm. Corner and grid strategies share oracle calls
/// across arms.
std::vector<bool> candidate_set(const ConditionStrategy& strategy, const OracleSpec& spec,
                                const ConfidenceBox& box);

}  // namespace cpecs
