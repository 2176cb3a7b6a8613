#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpecs/coci.hpp"
#include "cpecs/condition.hpp"
#include "cpecs/errors.hpp"
#include "cpecs/hardness.hpp"
#include "cpecs/sim.hpp"

namespace cpecs {

/// A configuration file problem. `what()` starts with the JSON path of the offending field.
class ConfigError : public UsageError {
public:
    ConfigError(const std::string& path, const std::string& message)
        : UsageError(path + ": " + message), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

enum class Mode { Coci, Uniform, Both };
enum class OutputFormat { Csv, JsonLines };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);
std::string_view to_string(OutputFormat format);
OutputFormat parse_format(std::string_view text);

/// Parsed experiment description. See README.md for the file schema.
struct ExperimentConfig {
    std::string application;  // best-arm | top-k | osa | water
    ProblemInstance instance;
    double delta = 0.05;
    ConditionStrategy strategy;
    Mode mode = Mode::Coci;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t max_rounds = 0;  // 0: engine default
    std::size_t workers = 1;
    bool compute_hardness = true;
    double hardness_epsilon = kDefaultLatticeStep;
    bool cap_variance = false;
    std::string output_path = "results";
    OutputFormat format = OutputFormat::Csv;
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::Coci;  // Coci or Uniform
    std::uint64_t rounds = 0;
    bool correct = false;
    bool xi_held = false;
    bool converged = true;  // not serialized
    std::optional<double> bound_value;
    bool bound_satisfied = false;
    std::vector<std::uint64_t> pulls;
    double wall_ms = 0.0;

    /// Equality ignoring wall-clock time.
    bool same_outcome(const TrialRecord& other) const;
};

struct ModeSummary {
    std::uint64_t trials = 0;
    double error_rate = 0.0;
    double rounds_mean = 0.0;
    double rounds_median = 0.0;
    double rounds_p95 = 0.0;
    std::vector<double> pulls_mean;
    double xi_frequency = 0.0;
    std::uint64_t bound_violations = 0;         // rounds > bound, any trial
    std::uint64_t bound_violations_given_xi = 0;
    std::uint64_t not_converged = 0;
};

struct ExperimentSummary {
    std::string application;
    std::size_t arm_count = 0;
    double delta = 0.0;
    std::uint64_t master_seed = 0;
    std::optional<HardnessReport> hardness;
    std::optional<ModeSummary> coci;
    std::optional<ModeSummary> uniform;
    /// mean rounds(COCI) / mean rounds(uniform), for mode = both.
    std::optional<double> paired_round_ratio;
    /// mean over trials of rounds(COCI) / rounds(uniform), for mode = both.
    std::optional<double> paired_ratio_mean;
};

struct ExperimentResult {
    std::vector<TrialRecord> records;  // ordered by (trial, mode)
    ExperimentSummary summary;
};

/// Runs every trial (on `config.workers` threads) and aggregates in trial order.
ExperimentResult run_experiment(const ExperimentConfig& config);

ModeSummary summarize(const std::vector<TrialRecord>& records, Mode mode, std::size_t arm_count);

std::string format_trials_csv(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> parse_trials_csv(std::string_view text);
std::string format_trials_jsonl(const std::vector<TrialRecord>& records);
std::string format_summary_json(const ExperimentSummary& summary);
std::string format_hardness_json(const HardnessReport& report);

struct EmittedFiles {
    std::filesystem::path trials;
    std::filesystem::path summary;
};

/// Writes trials.csv or trials.jsonl plus summary.json into `directory` (created if missing).
/// Throws std::runtime_error naming the path on I/O failure.
EmittedFiles emit_results(const ExperimentResult& result, const std::filesystem::path& directory,
                          OutputFormat format);

}  // namespace cpecs
