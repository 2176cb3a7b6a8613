#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "cpecs/condition.hpp"
#include "cpecs/core.hpp"
#include "cpecs/sim.hpp"

namespace cpecs {

/// Which arm is pulled when the candidate set is non-empty.
enum class SelectionRule {
    Adaptive,  // largest radius among candidates (COCI)
    Uniform,   // largest radius among all arms (round-robin ablation)
};

struct CociConfig {
    double delta = 0.05;
    ConditionStrategy strategy = ConditionStrategy::bi_monotone();
    std::uint64_t seed = 0;
    /// 0 selects the default: 10x the sample-complexity bound when h_lambda is set,
    /// otherwise kDefaultMaxRounds.
    std::uint64_t max_rounds = 0;
    /// Consistent optimality hardness of the instance, when known; enables bound_value.
    std::optional<double> h_lambda;
    bool keep_trace = false;
    /// Clip variance boxes at 0.25 instead of 1.
    bool cap_variance = false;
};

inline constexpr std::uint64_t kDefaultMaxRounds = 1'000'000;

/// One pull. For the initialization pulls (t < tau m) estimates and radii are empty;
/// from t = tau m on they hold the values after the round's update.
struct RoundRecord {
    std::uint64_t t = 0;
    std::size_t arm = 0;
    double observation = 0.0;
    std::vector<double> estimates;
    std::vector<double> radii;
    std::size_t candidates = 0;  // |C_t|; 0 during initialization
};

struct Trace {
    std::size_t arm_count = 0;
    int tau = 1;
    std::vector<RoundRecord> rounds;
    std::vector<std::vector<double>> samples;  // per-arm observation sequences
};

struct RunResult {
    Decision output;
    std::uint64_t rounds = 0;
    std::vector<std::uint64_t> pulls;
    bool converged = false;
    std::optional<bool> correct;
    std::optional<double> bound_value;
    /// Whether every estimate stayed within its radius of the truth at every round t >= tau m.
    bool xi_held = false;
    std::optional<Trace> trace;
};

RunResult run_engine(const ProblemInstance& instance, const CociConfig& config, SelectionRule rule);

inline RunResult run_coci(const ProblemInstance& instance, const CociConfig& config) {
    return run_engine(instance, config, SelectionRule::Adaptive);
}

inline RunResult run_uniform(const ProblemInstance& instance, const CociConfig& config) {
    return run_engine(instance, config, SelectionRule::Uniform);
}

/// True iff |estimate_i - truth_i| <= radius_i for every arm at every round t >= tau m.
/// Throws UsageError on a trace that is empty or has gaps.
bool audit_xi(const Trace& trace, const ParameterVector& truth);

/// One JSON object per line: t, arm, observation, estimates, radii, candidates.
void write_trace_jsonl(const Trace& trace, std::ostream& out);

}  // namespace cpecs
