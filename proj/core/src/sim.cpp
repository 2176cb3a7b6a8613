#include "cpecs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cpecs/errors.hpp"
#include "cpecs/oracles.hpp"
#include "cpecs/osa.hpp"

namespace cpecs {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

// 53 random bits mapped to [0,1).
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ArmModel::ArmModel(Variant model) : model_(std::move(model)) {
    std::visit(Overloaded{
                   [](const Bernoulli& b) {
                       if (!in_unit(b.p)) throw DomainError("bernoulli: p must lie in [0,1]");
                   },
                   [](const PointMass& p) {
                       if (!in_unit(p.value)) throw DomainError("point mass: value must lie in [0,1]");
                   },
                   [](const DiscreteSupport& d) {
                       if (d.values.empty() || d.values.size() != d.probabilities.size())
                           throw UsageError("discrete: values and probabilities must be non-empty and of equal length");
                       double total = 0.0;
                       for (std::size_t i = 0; i < d.values.size(); ++i) {
                           if (!in_unit(d.values[i])) throw DomainError("discrete: support must lie in [0,1]");
                           if (!(d.probabilities[i] >= 0.0)) throw DomainError("discrete: negative probability");
                           total += d.probabilities[i];
                       }
                       if (std::abs(total - 1.0) > 1e-12)
                           throw DomainError("discrete: probabilities must sum to 1");
                   },
                   [](const ScaledBeta& b) {
                       if (!(b.a > 0.0 && b.b > 0.0)) throw DomainError("beta: shape parameters must be positive");
                   },
               },
               model_);
}

double ArmModel::mean() const {
    return std::visit(Overloaded{
                          [](const Bernoulli& b) { return b.p; },
                          [](const PointMass& p) { return p.value; },
                          [](const DiscreteSupport& d) {
                              double m = 0.0;
                              for (std::size_t i = 0; i < d.values.size(); ++i)
                                  m += d.values[i] * d.probabilities[i];
                              return m;
                          },
                          [](const ScaledBeta& b) { return b.a / (b.a + b.b); },
                      },
                      model_);
}

double ArmModel::variance() const {
    return std::visit(Overloaded{
                          [](const Bernoulli& b) { return b.p * (1.0 - b.p); },
                          [](const PointMass&) { return 0.0; },
                          [this](const DiscreteSupport& d) {
                              const double mu = mean();
                              double v = 0.0;
                              for (std::size_t i = 0; i < d.values.size(); ++i)
                                  v += (d.values[i] - mu) * (d.values[i] - mu) * d.probabilities[i];
                              return v;
                          },
                          [](const ScaledBeta& b) {
                              const double s = b.a + b.b;
                              return b.a * b.b / (s * s * (s + 1.0));
                          },
                      },
                      model_);
}

std::string ArmModel::describe() const {
    std::ostringstream out;
    std::visit(Overloaded{
                   [&](const Bernoulli& b) { out << "Bernoulli(" << b.p << ")"; },
                   [&](const PointMass& p) { out << "PointMass(" << p.value << ")"; },
                   [&](const DiscreteSupport& d) { out << "Discrete(" << d.values.size() << " atoms)"; },
                   [&](const ScaledBeta& b) { out << "Beta(" << b.a << ", " << b.b << ")"; },
               },
               model_);
    return out.str();
}

double ArmModel::sample(std::mt19937_64& rng) const {
    return std::visit(Overloaded{
                          [&](const Bernoulli& b) { return unit_uniform(rng) < b.p ? 1.0 : 0.0; },
                          [](const PointMass& p) { return p.value; },
                          [&](const DiscreteSupport& d) {
                              const double u = unit_uniform(rng);
                              double acc = 0.0;
                              for (std::size_t i = 0; i < d.values.size(); ++i) {
                                  acc += d.probabilities[i];
                                  if (u < acc) return d.values[i];
                              }
                              return d.values.back();
                          },
                          [&](const ScaledBeta& b) {
                              std::gamma_distribution<double> ga(b.a, 1.0), gb(b.b, 1.0);
                              const double x = ga(rng);
                              const double y = gb(rng);
                              const double s = x + y;
                              return s > 0.0 ? std::clamp(x / s, 0.0, 1.0) : 0.5;
                          },
                      },
                      model_);
}

ArmModel arm_for_variance(double target_var) {
    if (!(target_var >= 0.0 && target_var <= 0.25))
        throw DomainError("arm_for_variance: a [0,1] Bernoulli variance must lie in [0, 0.25]");
    const double p = (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * target_var))) / 2.0;
    return ArmModel::bernoulli(p);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return splitmix64(master_seed ^ splitmix64(trial_index + 1));
}

std::uint64_t arm_stream_seed(std::uint64_t run_seed, std::size_t arm) {
    return splitmix64(run_seed ^ splitmix64(0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(arm) + 1)));
}

ArmStreams::ArmStreams(const std::vector<ArmModel>& arms, std::uint64_t run_seed) : arms_(arms) {
    engines_.reserve(arms.size());
    for (std::size_t i = 0; i < arms.size(); ++i) engines_.emplace_back(arm_stream_seed(run_seed, i));
}

double ArmStreams::draw(std::size_t arm) { return arms_[arm].sample(engines_[arm]); }

ProblemInstance make_instance(std::shared_ptr<const OracleSpec> oracle, ParameterVector truth,
                              EstimatorKind kind, std::vector<ArmModel> arms) {
    if (!oracle) throw UsageError("instance: oracle is required");
    const std::size_t m = oracle->arm_count();
    if (truth.size() != m || arms.size() != m) {
        std::ostringstream msg;
        msg << "instance: oracle has " << m << " arms but theta* has " << truth.size()
            << " components and " << arms.size() << " arm models were given";
        throw UsageError(msg.str());
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double p = arms[i].parameter(kind);
        if (std::abs(p - truth[i]) > kInstanceTolerance) {
            std::ostringstream msg;
            msg << "instance: arm " << i << " (" << arms[i].describe() << ") has " << to_string(kind)
                << " " << p << " but theta*_" << i << " = " << truth[i];
            throw DomainError(msg.str());
        }
    }
    const auto count = oracle->enumeration_size();
    if (count && *count <= kUniquenessCheckLimit) {
        const auto optima = all_maximizers(*oracle, truth, kUniquenessCheckLimit);
        if (optima.size() != 1) {
            std::ostringstream msg;
            msg << "instance: the optimal decision under theta* is not unique (" << optima.size()
                << " maximizers, e.g. " << to_string(optima.front()) << " and " << to_string(optima.back())
                << ")";
            throw DomainError(msg.str());
        }
    }
    Decision optimal = oracle->maximize(truth);
    return ProblemInstance{std::move(oracle), std::move(truth), kind, std::move(arms), std::move(optimal)};
}

ProblemInstance make_instance(std::shared_ptr<const OracleSpec> oracle, ParameterVector truth,
                              EstimatorKind kind) {
    std::vector<ArmModel> arms;
    for (double v : truth.values())
        arms.push_back(kind == EstimatorKind::Mean ? ArmModel::bernoulli(v) : arm_for_variance(v));
    return make_instance(std::move(oracle), std::move(truth), kind, std::move(arms));
}

ProblemInstance make_best_arm_instance(ParameterVector truth) {
    auto oracle = make_best_arm_oracle(truth.size());
    return make_instance(std::move(oracle), std::move(truth), EstimatorKind::Mean);
}

ProblemInstance make_top_k_instance(ParameterVector truth, std::size_t k) {
    auto oracle = make_top_k_oracle(truth.size(), k);
    return make_instance(std::move(oracle), std::move(truth), EstimatorKind::Mean);
}

ProblemInstance make_osa_instance(ParameterVector variances, std::vector<std::int64_t> group_sizes,
                                  std::int64_t budget) {
    auto oracle = make_osa_oracle(OsaSpec{std::move(group_sizes), budget});
    return make_instance(std::move(oracle), std::move(variances), EstimatorKind::Variance);
}

}  // namespace cpecs
