#include "cpecs/coci.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpecs/errors.hpp"
#include "cpecs/estimators.hpp"
#include "cpecs/hardness.hpp"

namespace cpecs {

namespace {

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

class Engine {
public:
    Engine(const ProblemInstance& instance, const CociConfig& config, SelectionRule rule)
        : instance_(instance),
          config_(config),
          rule_(rule),
          m_(instance.arm_count()),
          tau_(cpecs::tau(instance.kind)),
          streams_(instance.arms, config.seed),
          acc_(m_),
          estimates_(m_),
          radii_(m_) {}

    RunResult run() {
        if (!(config_.delta > 0.0 && config_.delta < 1.0)) throw UsageError("delta must lie in (0,1)");
        if (!instance_.oracle || instance_.oracle->arm_count() != m_)
            throw UsageError("instance oracle does not match its arm models");

        RunResult result;
        const std::uint64_t init_rounds = static_cast<std::uint64_t>(tau_) * m_;
        if (config_.h_lambda)
            result.bound_value = thm1_bound(*config_.h_lambda, m_, tau_, config_.delta);
        std::uint64_t max_rounds = config_.max_rounds;
        if (max_rounds == 0) {
            max_rounds = result.bound_value
                             ? static_cast<std::uint64_t>(std::ceil(10.0 * *result.bound_value))
                             : kDefaultMaxRounds;
        }
        max_rounds = std::max(max_rounds, init_rounds);

        if (config_.keep_trace) {
            trace_.emplace();
            trace_->arm_count = m_;
            trace_->tau = tau_;
            trace_->samples.assign(m_, {});
        }

        // Initialization: tau pulls per arm, arm by arm.
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            for (int r = 0; r < tau_; ++r) {
                ++t;
                const double x = pull(i);
                if (trace_ && t < init_rounds) trace_->rounds.push_back({t, i, x, {}, {}, 0});
                if (t == init_rounds) {
                    refresh(t);
                    record(t, i, x, 0);
                }
            }
        }
        xi_held_ = inside_truth();

        bool converged = false;
        while (true) {
            const ConfidenceBox box = current_box();
            const std::vector<bool> candidates = candidate_set(config_.strategy, *instance_.oracle, box);
            const std::size_t count = static_cast<std::size_t>(std::count(candidates.begin(), candidates.end(), true));
            if (count == 0) {
                result.output = instance_.oracle->maximize(box.lower_corner());
                converged = true;
                break;
            }
            if (t >= max_rounds) {
                result.output = instance_.oracle->maximize(ParameterVector(estimates_));
                break;
            }
            const std::size_t j = select(candidates);
            ++t;
            const double x = pull(j);
            refresh(t);
            xi_held_ = xi_held_ && inside_truth();
            record(t, j, x, count);
        }

        result.rounds = t;
        result.pulls.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) result.pulls[i] = acc_[i].count();
        result.converged = converged;
        result.correct = result.output == instance_.optimal;
        result.xi_held = xi_held_;
        result.trace = std::move(trace_);
        return result;
    }

private:
    double pull(std::size_t arm) {
        const double x = streams_.draw(arm);
        acc_[arm].add(x);
        if (trace_) trace_->samples[arm].push_back(x);
        return x;
    }

    // Radii depend on t, so every arm is refreshed every round.
    void refresh(std::uint64_t t) {
        const double log_term = radius_log_term(t, tau_, config_.delta);
        for (std::size_t i = 0; i < m_; ++i) {
            estimates_[i] = acc_[i].value(instance_.kind);
            radii_[i] = radius_from_log(log_term, acc_[i].count());
        }
    }

    ConfidenceBox current_box() const {
        const double cap = (config_.cap_variance && instance_.kind == EstimatorKind::Variance) ? 0.25 : 1.0;
        return clamp_box(estimates_, radii_, cap);
    }

    std::size_t select(const std::vector<bool>& candidates) const {
        std::size_t best = m_;
        for (std::size_t i = 0; i < m_; ++i) {
            if (rule_ == SelectionRule::Adaptive && !candidates[i]) continue;
            if (best == m_ || radii_[i] > radii_[best]) best = i;
        }
        return best;
    }

    bool inside_truth() const {
        for (std::size_t i = 0; i < m_; ++i)
            if (std::abs(estimates_[i] - instance_.true_params[i]) > radii_[i]) return false;
        return true;
    }

    void record(std::uint64_t t, std::size_t arm, double x, std::size_t candidates) {
        if (trace_) trace_->rounds.push_back({t, arm, x, estimates_, radii_, candidates});
    }

    const ProblemInstance& instance_;
    const CociConfig& config_;
    SelectionRule rule_;
    std::size_t m_;
    int tau_;
    ArmStreams streams_;
    std::vector<RunningEstimator> acc_;
    std::vector<double> estimates_;
    std::vector<double> radii_;
    bool xi_held_ = true;
    std::optional<Trace> trace_;
};

}  // namespace

RunResult run_engine(const ProblemInstance& instance, const CociConfig& config, SelectionRule rule) {
    return Engine(instance, config, rule).run();
}

bool audit_xi(const Trace& trace, const ParameterVector& truth) {
    if (trace.rounds.empty()) throw UsageError("audit_xi: empty trace");
    if (truth.size() != trace.arm_count) throw UsageError("audit_xi: truth dimension mismatch");
    const std::uint64_t init_rounds = static_cast<std::uint64_t>(trace.tau) * trace.arm_count;
    for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
        if (trace.rounds[k].t != k + 1) throw UsageError("audit_xi: trace is truncated or out of order");
    }
    if (trace.rounds.size() < init_rounds) throw UsageError("audit_xi: trace ends before initialization");
    for (const auto& rec : trace.rounds) {
        if (rec.t < init_rounds) continue;
        if (rec.estimates.size() != trace.arm_count || rec.radii.size() != trace.arm_count)
            throw UsageError("audit_xi: trace record is missing estimates or radii");
        for (std::size_t i = 0; i < trace.arm_count; ++i)
            if (std::abs(rec.estimates[i] - truth[i]) > rec.radii[i]) return false;
    }
    return true;
}

void write_trace_jsonl(const Trace& trace, std::ostream& out) {
    auto list = [&](const std::vector<double>& v) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_double(v[i]);
        out << ']';
    };
    for (const auto& rec : trace.rounds) {
        out << "{\"t\":" << rec.t << ",\"arm\":" << rec.arm << ",\"observation\":" << format_double(rec.observation)
            << ",\"estimates\":";
        list(rec.estimates);
        out << ",\"radii\":";
        list(rec.radii);
        out << ",\"candidates\":" << rec.candidates << "}\n";
    }
}

}  // namespace cpecs
