#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpecs/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::string> strategy;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::size_t> workers;
};

void apply(const Overrides& o, cpecs::ExperimentConfig& cfg) {
    if (o.trials) {
        if (*o.trials < 1) throw cpecs::ConfigError("--trials", "must be at least 1");
        cfg.trials = *o.trials;
    }
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.mode) cfg.mode = cpecs::parse_mode(*o.mode);
    if (o.strategy) {
        cfg.strategy = *o.strategy == "auto" ? cpecs::default_strategy(*cfg.instance.oracle)
                                             : cpecs::parse_strategy(*o.strategy);
        if (cfg.strategy.kind == cpecs::ConditionStrategy::Kind::BiMonotone && !cfg.instance.oracle->bi_monotone())
            throw cpecs::ConfigError("--strategy", "the oracle is not bi-monotone");
    }
    if (o.out) cfg.output_path = *o.out;
    if (o.format) cfg.format = cpecs::parse_format(*o.format);
    if (o.workers) {
        if (*o.workers < 1) throw cpecs::ConfigError("--workers", "must be at least 1");
        cfg.workers = *o.workers;
    }
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        double v = 0.0;
        const char* first = item.data();
        const char* last = item.data() + item.size();
        while (first < last && *first == ' ') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) throw cpecs::ConfigError("--theta", "bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int cmd_run(const std::string& path, const Overrides& o, const std::string& trace_path) {
    auto cfg = cpecs::load_config(path);
    apply(o, cfg);
    const auto result = cpecs::run_experiment(cfg);
    const auto files = cpecs::emit_results(result, cfg.output_path, cfg.format);

    if (!trace_path.empty()) {
        cpecs::CociConfig run;
        run.delta = cfg.delta;
        run.strategy = cfg.strategy;
        run.seed = cpecs::trial_seed(cfg.master_seed, 0);
        run.max_rounds = cfg.max_rounds;
        run.cap_variance = cfg.cap_variance;
        run.keep_trace = true;
        const auto traced = cfg.mode == cpecs::Mode::Uniform ? cpecs::run_uniform(cfg.instance, run)
                                                             : cpecs::run_coci(cfg.instance, run);
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot open " + trace_path + " for writing");
        cpecs::write_trace_jsonl(*traced.trace, out);
    }

    const auto& s = result.summary;
    auto line = [](const char* name, const cpecs::ModeSummary& m) {
        std::cout << name << ": trials=" << m.trials << " error_rate=" << m.error_rate
                  << " rounds_mean=" << m.rounds_mean << " rounds_median=" << m.rounds_median
                  << " rounds_p95=" << m.rounds_p95 << " xi=" << m.xi_frequency
                  << " bound_violations=" << m.bound_violations << '\n';
    };
    if (s.coci) line("coci", *s.coci);
    if (s.uniform) line("uniform", *s.uniform);
    if (s.paired_round_ratio) std::cout << "paired_round_ratio: " << *s.paired_round_ratio << '\n';
    std::cout << "wrote " << files.trials.string() << " and " << files.summary.string() << '\n';
    return 0;
}

int cmd_hardness(const std::string& path, double epsilon) {
    const auto cfg = cpecs::load_config(path);
    const double eps = epsilon > 0.0 ? epsilon : cfg.hardness_epsilon;
    const auto report = cpecs::compute_hardness(*cfg.instance.oracle, cfg.instance.true_params, eps);
    std::cout << cpecs::format_hardness_json(report);
    return 0;
}

int cmd_oracle(const std::string& path, const std::string& theta_text) {
    const auto cfg = cpecs::load_config(path);
    const auto values = parse_vector(theta_text);
    if (values.size() != cfg.instance.arm_count())
        throw cpecs::ConfigError("--theta", "expected " + std::to_string(cfg.instance.arm_count()) + " values");
    const cpecs::ParameterVector theta(values);
    const auto y = cfg.instance.oracle->maximize(theta);
    std::cout << "decision: " << cpecs::to_string(y) << '\n';
    std::cout << "reward: " << cpecs::reward(*cfg.instance.oracle, theta, y) << '\n';
    return 0;
}

int cmd_validate(const std::string& path) {
    const auto cfg = cpecs::load_config(path);
    std::cout << "ok: " << cfg.application << ", m=" << cfg.instance.arm_count()
              << ", estimator=" << cpecs::to_string(cfg.instance.kind)
              << ", strategy=" << cpecs::to_string(cfg.strategy) << ", mode=" << cpecs::to_string(cfg.mode)
              << ", trials=" << cfg.trials << ", optimum=" << cpecs::to_string(cfg.instance.optimal) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cpecs: adaptive sampling experiment runner"};
    app.require_subcommand(1);

    std::string config;
    Overrides o;
    std::string trace_path;
    double epsilon = 0.0;
    std::string theta;

    auto* run = app.add_subcommand("run", "run a trial batch and write result files");
    run->add_option("config", config, "experiment config (JSON)")->required();
    run->add_option("--trials", o.trials, "number of trials");
    run->add_option("--seed", o.seed, "master seed");
    run->add_option("--mode", o.mode, "coci | uniform | both");
    run->add_option("--strategy", o.strategy, "bi-monotone | corners | grid[:N] | auto");
    run->add_option("--out", o.out, "output directory");
    run->add_option("--format", o.format, "csv | jsonl");
    run->add_option("--workers", o.workers, "worker threads");
    run->add_option("--trace", trace_path, "also write a per-round trace of trial 0 (JSON lines)");

    auto* hardness = app.add_subcommand("hardness", "print the hardness report as JSON");
    hardness->add_option("config", config, "experiment config (JSON)")->required();
    hardness->add_option("--epsilon", epsilon, "lattice step (default: config or 0.01)");

    auto* oracle = app.add_subcommand("oracle", "evaluate the maximization oracle at one point");
    oracle->add_option("config", config, "experiment config (JSON)")->required();
    oracle->add_option("--theta", theta, "comma-separated parameter vector")->required();

    auto* validate = app.add_subcommand("validate", "parse and check a config");
    validate->add_option("config", config, "experiment config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) return cmd_run(config, o, trace_path);
        if (*hardness) return cmd_hardness(config, epsilon);
        if (*oracle) return cmd_oracle(config, theta);
        if (*validate) return cmd_validate(config);
    } catch (const cpecs::UsageError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const cpecs::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
