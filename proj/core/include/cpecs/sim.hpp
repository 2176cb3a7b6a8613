#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cpecs/core.hpp"
#include "cpecs/estimators.hpp"

namespace cpecs {

struct Bernoulli {
    double p;
};
struct PointMass {
    double value;
};
struct DiscreteSupport {
    std::vector<double> values;
    std::vector<double> probabilities;
};
/// Beta(a, b) on [0,1].
struct ScaledBeta {
    double a;
    double b;
};

/// A distribution supported on [0,1].
class ArmModel {
public:
    using Variant = std::variant<Bernoulli, PointMass, DiscreteSupport, ScaledBeta>;

    explicit ArmModel(Variant model);

    static ArmModel bernoulli(double p) { return ArmModel(Bernoulli{p}); }
    static ArmModel point_mass(double v) { return ArmModel(PointMass{v}); }
    static ArmModel discrete(std::vector<double> values, std::vector<double> probabilities) {
        return ArmModel(DiscreteSupport{std::move(values), std::move(probabilities)});
    }
    static ArmModel beta(double a, double b) { return ArmModel(ScaledBeta{a, b}); }

    const Variant& model() const { return model_; }
    double mean() const;
    double variance() const;
    double parameter(EstimatorKind kind) const {
        return kind == EstimatorKind::Mean ? mean() : variance();
    }
    std::string describe() const;

    /// One i.i.d. draw; deterministic given the generator state.
    double sample(std::mt19937_64& rng) const;

private:
    Variant model_;
};

inline double sample(const ArmModel& model, std::mt19937_64& rng) { return model.sample(rng); }

/// Bernoulli(p) with p(1-p) = target_var, p = (1 - sqrt(1 - 4 target_var)) / 2.
ArmModel arm_for_variance(double target_var);

// Seeding scheme. Every stream is an mt19937_64 seeded with a SplitMix64-derived word:
//   trial seed   = splitmix64(master_seed ^ splitmix64(trial_index + 1))
//   arm sub-seed = splitmix64(run_seed    ^ splitmix64(0x9e3779b97f4a7c15 * (arm + 1)))
// Adding trials or arms never perturbs existing streams.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);
std::uint64_t arm_stream_seed(std::uint64_t run_seed, std::size_t arm);

/// Independent per-arm sample streams: the j-th draw of an arm does not depend on when
/// it is requested or on what other arms were pulled.
class ArmStreams {
public:
    ArmStreams(const std::vector<ArmModel>& arms, std::uint64_t run_seed);
    double draw(std::size_t arm);

private:
    std::vector<ArmModel> arms_;
    std::vector<std::mt19937_64> engines_;
};

/// A complete CPE-CS instance: oracle, true parameters, estimator and arm distributions.
struct ProblemInstance {
    std::shared_ptr<const OracleSpec> oracle;
    ParameterVector true_params;
    EstimatorKind kind = EstimatorKind::Mean;
    std::vector<ArmModel> arms;
    Decision optimal;  // phi(true_params)

    std::size_t arm_count() const { return arms.size(); }
};

inline constexpr double kInstanceTolerance = 1e-12;
inline constexpr std::uint64_t kUniquenessCheckLimit = 1'000'000;

/// Validates dimensions, arm parameters against theta*, and (for enumerable classes up to
/// kUniquenessCheckLimit decisions) uniqueness of the optimum.
ProblemInstance make_instance(std::shared_ptr<const OracleSpec> oracle, ParameterVector truth,
                              EstimatorKind kind, std::vector<ArmModel> arms);

/// Default arms: Bernoulli(theta_i) for means, arm_for_variance(theta_i) for variances.
ProblemInstance make_instance(std::shared_ptr<const OracleSpec> oracle, ParameterVector truth,
                              EstimatorKind kind);

ProblemInstance make_best_arm_instance(ParameterVector truth);
ProblemInstance make_top_k_instance(ParameterVector truth, std::size_t k);
ProblemInstance make_osa_instance(ParameterVector variances, std::vector<std::int64_t> group_sizes,
                                  std::int64_t budget);

}  // namespace cpecs
