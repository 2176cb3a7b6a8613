#include "cpecs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cpecs/oracles.hpp"
#include "cpecs/osa.hpp"

namespace cpecs {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::Coci: return "coci";
        case Mode::Uniform: return "uniform";
        case Mode::Both: return "both";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    if (text == "coci") return Mode::Coci;
    if (text == "uniform") return Mode::Uniform;
    if (text == "both") return Mode::Both;
    throw UsageError("unknown mode '" + std::string(text) + "' (expected coci|uniform|both)");
}

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "jsonl";
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "jsonl" || text == "json-lines") return OutputFormat::JsonLines;
    throw UsageError("unknown output format '" + std::string(text) + "' (expected csv|jsonl)");
}

// ---------------------------------------------------------------------------
// config parsing

namespace {

class Reader {
public:
    Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail("expected an object");
    }

    [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path_, message); }
    std::string at(std::string_view key) const { return path_ + "." + std::string(key); }

    bool has(std::string_view key) const {
        seen_.insert(std::string(key));
        return node_.contains(key);
    }

    const Json& raw(std::string_view key) const {
        seen_.insert(std::string(key));
        if (!node_.contains(key)) throw ConfigError(at(key), "required field is missing");
        return node_.at(key);
    }

    double number(std::string_view key) const {
        const Json& v = raw(key);
        if (!v.is_number()) throw ConfigError(at(key), "expected a number");
        return v.get<double>();
    }

    double number(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

    std::uint64_t count(std::string_view key) const {
        const Json& v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ConfigError(at(key), "expected a nonnegative integer");
        return v.get<std::uint64_t>();
    }

    std::uint64_t count(std::string_view key, std::uint64_t fallback) const {
        return has(key) ? count(key) : fallback;
    }

    std::string text(std::string_view key) const {
        const Json& v = raw(key);
        if (!v.is_string()) throw ConfigError(at(key), "expected a string");
        return v.get<std::string>();
    }

    std::string text(std::string_view key, std::string fallback) const {
        return has(key) ? text(key) : fallback;
    }

    bool flag(std::string_view key, bool fallback) const {
        if (!has(key)) return fallback;
        const Json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(std::string_view key) const {
        const Json& v = raw(key);
        if (!v.is_array()) throw ConfigError(at(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    std::vector<std::int64_t> integers(std::string_view key) const {
        const Json& v = raw(key);
        if (!v.is_array()) throw ConfigError(at(key), "expected an array of integers");
        std::vector<std::int64_t> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer())
                throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected an integer");
            out.push_back(v[i].get<std::int64_t>());
        }
        return out;
    }

    void reject_unknown() const {
        for (const auto& item : node_.items())
            if (!seen_.count(item.key())) throw ConfigError(at(item.key()), "unknown field");
    }

private:
    const Json& node_;
    std::string path_;
    mutable std::set<std::string> seen_;
};

template <class F>
auto rethrow_at(const std::string& path, F&& build) -> decltype(build()) {
    try {
        return build();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
}

ArmModel parse_arm(const Json& node, const std::string& path) {
    Reader r(node, path);
    const std::string type = r.text("type");
    ArmModel model = rethrow_at(path, [&]() -> ArmModel {
        if (type == "bernoulli") return ArmModel::bernoulli(r.number("p"));
        if (type == "point-mass") return ArmModel::point_mass(r.number("value"));
        if (type == "discrete") return ArmModel::discrete(r.numbers("values"), r.numbers("probabilities"));
        if (type == "beta") return ArmModel::beta(r.number("a"), r.number("b"));
        throw ConfigError(r.at("type"), "unknown arm type '" + type + "' (expected bernoulli|point-mass|discrete|beta)");
    });
    r.reject_unknown();
    return model;
}

std::shared_ptr<const OracleSpec> parse_oracle(const Reader& r, const std::string& application,
                                               std::size_t m, const std::string& path) {
    if (application == "best-arm") return rethrow_at(path, [&] { return make_best_arm_oracle(m); });
    if (application == "top-k") {
        const std::uint64_t k = r.count("k");
        return rethrow_at(r.at("k"), [&] { return make_top_k_oracle(m, k); });
    }
    if (application == "osa") {
        OsaSpec spec{r.integers("group_sizes"), static_cast<std::int64_t>(r.count("budget"))};
        if (spec.size() != m)
            throw ConfigError(r.at("group_sizes"), "expected " + std::to_string(m) + " group sizes");
        return rethrow_at(path, [&] { return make_osa_oracle(std::move(spec)); });
    }
    if (application == "water") {
        WaterSpec spec;
        spec.caps = r.numbers("caps");
        spec.requirement = r.number("requirement");
        spec.grid_step = r.number("grid_step");
        const Json& costs = r.raw("costs");
        if (!costs.is_array()) throw ConfigError(r.at("costs"), "expected an array");
        for (std::size_t i = 0; i < costs.size(); ++i) {
            Reader c(costs[i], r.at("costs") + "[" + std::to_string(i) + "]");
            spec.costs.push_back(CostFunction::quadratic(c.number("quadratic", 0.0), c.number("linear", 0.0)));
            c.reject_unknown();
        }
        if (spec.caps.size() != m) throw ConfigError(r.at("caps"), "expected " + std::to_string(m) + " caps");
        return rethrow_at(path, [&] { return std::make_shared<WaterOracle>(std::move(spec)); });
    }
    throw ConfigError(r.at("application"),
                      "unknown application '" + application + "' (expected best-arm|top-k|osa|water)");
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ConfigError("$", std::string("malformed JSON: ") + e.what());
    }
    Reader top(root, "$");
    ExperimentConfig cfg;

    Reader inst(top.raw("instance"), "$.instance");
    cfg.application = inst.text("application");
    const EstimatorKind kind = rethrow_at(top.at("estimator"), [&] {
        return parse_estimator_kind(top.text("estimator", cfg.application == "osa" ? "variance" : "mean"));
    });

    std::optional<std::vector<ArmModel>> arms;
    if (inst.has("arms")) {
        const Json& list = inst.raw("arms");
        if (!list.is_array() || list.empty()) throw ConfigError(inst.at("arms"), "expected a non-empty array");
        arms.emplace();
        for (std::size_t i = 0; i < list.size(); ++i)
            arms->push_back(parse_arm(list[i], inst.at("arms") + "[" + std::to_string(i) + "]"));
    }
    std::vector<double> theta;
    if (inst.has("theta")) {
        theta = inst.numbers("theta");
    } else if (arms) {
        for (const auto& a : *arms) theta.push_back(a.parameter(kind));
    } else {
        throw ConfigError(inst.at("theta"), "required field is missing (or give arms)");
    }
    if (theta.empty()) throw ConfigError(inst.at("theta"), "need at least one arm");
    if (arms && arms->size() != theta.size())
        throw ConfigError(inst.at("arms"), "expected " + std::to_string(theta.size()) + " arm models");

    auto oracle = parse_oracle(inst, cfg.application, theta.size(), "$.instance");
    ParameterVector truth = rethrow_at(inst.at("theta"), [&] { return ParameterVector(theta); });
    cfg.instance = rethrow_at("$.instance", [&] {
        return arms ? make_instance(oracle, truth, kind, *arms) : make_instance(oracle, truth, kind);
    });
    inst.reject_unknown();

    cfg.delta = top.number("delta", 0.05);
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError(top.at("delta"), "must lie in (0,1)");
    const std::string strategy = top.text("strategy", "auto");
    cfg.strategy = strategy == "auto" ? default_strategy(*cfg.instance.oracle)
                                      : rethrow_at(top.at("strategy"), [&] { return parse_strategy(strategy); });
    if (cfg.strategy.kind == ConditionStrategy::Kind::BiMonotone && !cfg.instance.oracle->bi_monotone())
        throw ConfigError(top.at("strategy"), "bi-monotone strategy requested but the oracle is not bi-monotone");
    cfg.mode = rethrow_at(top.at("mode"), [&] { return parse_mode(top.text("mode", "coci")); });
    cfg.trials = top.count("trials", 1);
    if (cfg.trials < 1) throw ConfigError(top.at("trials"), "must be at least 1");
    cfg.master_seed = top.count("master_seed", 0);
    cfg.max_rounds = top.count("max_rounds", 0);
    cfg.workers = static_cast<std::size_t>(top.count("workers", 1));
    if (cfg.workers < 1) throw ConfigError(top.at("workers"), "must be at least 1");
    cfg.cap_variance = top.flag("cap_variance", false);

    if (top.has("hardness")) {
        Reader h(top.raw("hardness"), top.at("hardness"));
        cfg.compute_hardness = h.flag("compute", true);
        cfg.hardness_epsilon = h.number("epsilon", kDefaultLatticeStep);
        if (!(cfg.hardness_epsilon > 0.0 && cfg.hardness_epsilon <= 1.0))
            throw ConfigError(h.at("epsilon"), "must lie in (0,1]");
        h.reject_unknown();
    }
    if (top.has("output")) {
        Reader o(top.raw("output"), top.at("output"));
        cfg.output_path = o.text("path", cfg.output_path);
        cfg.format = rethrow_at(o.at("format"), [&] { return parse_format(o.text("format", "csv")); });
        o.reject_unknown();
    }
    top.reject_unknown();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

// ---------------------------------------------------------------------------
// running

bool TrialRecord::same_outcome(const TrialRecord& o) const {
    return trial == o.trial && seed == o.seed && mode == o.mode && rounds == o.rounds && correct == o.correct &&
           xi_held == o.xi_held && bound_value == o.bound_value && bound_satisfied == o.bound_satisfied &&
           pulls == o.pulls;
}

namespace {

TrialRecord run_trial(const ExperimentConfig& cfg, const CociConfig& base, std::uint64_t index, Mode mode) {
    CociConfig run = base;
    run.seed = trial_seed(cfg.master_seed, index);
    const auto start = std::chrono::steady_clock::now();
    const RunResult r = mode == Mode::Coci ? run_coci(cfg.instance, run) : run_uniform(cfg.instance, run);
    const auto stop = std::chrono::steady_clock::now();

    TrialRecord rec;
    rec.trial = index;
    rec.seed = run.seed;
    rec.mode = mode;
    rec.rounds = r.rounds;
    rec.correct = r.correct.value_or(false);
    rec.xi_held = r.xi_held;
    rec.converged = r.converged;
    rec.bound_value = r.bound_value;
    rec.bound_satisfied = r.bound_value && static_cast<double>(r.rounds) <= *r.bound_value;
    rec.pulls = r.pulls;
    rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return rec;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

ModeSummary summarize(const std::vector<TrialRecord>& records, Mode mode, std::size_t arm_count) {
    ModeSummary s;
    std::vector<double> rounds;
    s.pulls_mean.assign(arm_count, 0.0);
    std::uint64_t errors = 0, xi = 0;
    for (const auto& r : records) {
        if (r.mode != mode) continue;
        ++s.trials;
        rounds.push_back(static_cast<double>(r.rounds));
        if (!r.correct) ++errors;
        if (r.xi_held) ++xi;
        if (!r.converged) ++s.not_converged;
        const bool violated = r.bound_value && static_cast<double>(r.rounds) > *r.bound_value;
        if (violated) ++s.bound_violations;
        if (violated && r.xi_held) ++s.bound_violations_given_xi;
        for (std::size_t i = 0; i < arm_count && i < r.pulls.size(); ++i)
            s.pulls_mean[i] += static_cast<double>(r.pulls[i]);
    }
    if (s.trials == 0) return s;
    const double n = static_cast<double>(s.trials);
    s.error_rate = static_cast<double>(errors) / n;
    s.xi_frequency = static_cast<double>(xi) / n;
    for (double& p : s.pulls_mean) p /= n;
    s.rounds_mean = mean_of(rounds);
    std::sort(rounds.begin(), rounds.end());
    const std::size_t k = rounds.size();
    s.rounds_median = k % 2 ? rounds[k / 2] : 0.5 * (rounds[k / 2 - 1] + rounds[k / 2]);
    const std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(k)));
    s.rounds_p95 = rounds[std::max<std::size_t>(rank, 1) - 1];
    return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    ExperimentSummary& summary = result.summary;
    summary.application = cfg.application;
    summary.arm_count = cfg.instance.arm_count();
    summary.delta = cfg.delta;
    summary.master_seed = cfg.master_seed;

    CociConfig base;
    base.delta = cfg.delta;
    base.strategy = cfg.strategy;
    base.max_rounds = cfg.max_rounds;
    base.cap_variance = cfg.cap_variance;
    if (cfg.compute_hardness) {
        try {
            summary.hardness = compute_hardness(*cfg.instance.oracle, cfg.instance.true_params, cfg.hardness_epsilon);
            base.h_lambda = summary.hardness->h_lambda;
        } catch (const CapacityError& e) {
            std::cerr << "warning: hardness not computed: " << e.what() << '\n';
        }
    }

    std::vector<Mode> modes;
    if (cfg.mode != Mode::Uniform) modes.push_back(Mode::Coci);
    if (cfg.mode != Mode::Coci) modes.push_back(Mode::Uniform);

    std::vector<std::vector<TrialRecord>> per_trial(cfg.trials);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        while (true) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= cfg.trials) return;
            try {
                for (Mode mode : modes) per_trial[i].push_back(run_trial(cfg, base, i, mode));
            } catch (...) {
                std::lock_guard<std::mutex> guard(failure_lock);
                if (!failure) failure = std::current_exception();
                next.store(cfg.trials);
                return;
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::uint64_t>(cfg.workers, cfg.trials));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& recs : per_trial)
        for (auto& r : recs) result.records.push_back(std::move(r));

    const std::size_t m = summary.arm_count;
    if (cfg.mode != Mode::Uniform) summary.coci = summarize(result.records, Mode::Coci, m);
    if (cfg.mode != Mode::Coci) summary.uniform = summarize(result.records, Mode::Uniform, m);
    if (cfg.mode == Mode::Both) {
        summary.paired_round_ratio = summary.coci->rounds_mean / summary.uniform->rounds_mean;
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < result.records.size(); k += 2)
            acc += static_cast<double>(result.records[k].rounds) / static_cast<double>(result.records[k + 1].rounds);
        summary.paired_ratio_mean = acc / static_cast<double>(cfg.trials);
    }
    return result;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string wall(double ms) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, ms, std::chars_format::fixed, 3);
    return std::string(buf, ptr);
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class T>
T parse_number(const std::string& field, const char* column) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw UsageError(std::string("trials csv: bad value '") + field + "' in column " + column);
    return value;
}

bool parse_bool(const std::string& field, const char* column) {
    if (field == "true") return true;
    if (field == "false") return false;
    throw UsageError(std::string("trials csv: bad boolean '") + field + "' in column " + column);
}

OrderedJson mode_json(const ModeSummary& s) {
    OrderedJson j;
    j["trials"] = s.trials;
    j["error_rate"] = s.error_rate;
    j["rounds_mean"] = s.rounds_mean;
    j["rounds_median"] = s.rounds_median;
    j["rounds_p95"] = s.rounds_p95;
    j["pulls_mean"] = s.pulls_mean;
    j["xi_frequency"] = s.xi_frequency;
    j["bound_violations"] = s.bound_violations;
    j["bound_violations_given_xi"] = s.bound_violations_given_xi;
    j["not_converged"] = s.not_converged;
    return j;
}

OrderedJson hardness_object(const HardnessReport& h) {
    OrderedJson j;
    j["epsilon"] = h.lambda.epsilon;
    j["lambda_lower"] = h.lambda.lower;
    j["lambda_upper"] = h.lambda.upper;
    std::vector<bool> never(h.lambda.never_flips.begin(), h.lambda.never_flips.end());
    j["never_flips"] = never;
    j["h_lambda"] = h.h_lambda;
    j["h_lambda_lower"] = h.h_lambda_lower;
    j["h_uniform"] = h.h_uniform;
    if (h.gaps) {
        OrderedJson gaps = OrderedJson::array();
        for (double g : *h.gaps) gaps.push_back(std::isfinite(g) ? OrderedJson(g) : OrderedJson(nullptr));
        j["gaps"] = gaps;
        j["h_delta"] = *h.h_delta;
    }
    if (h.width) j["width"] = *h.width;
    return j;
}

}  // namespace

std::string format_trials_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    const std::size_t m = records.empty() ? 0 : records.front().pulls.size();
    out << "trial,seed,mode,rounds,correct,xi_held,bound_value,bound_satisfied";
    for (std::size_t i = 0; i < m; ++i) out << ",pulls_" << i;
    out << ",wall_ms\n";
    for (const auto& r : records) {
        out << r.trial << ',' << r.seed << ',' << to_string(r.mode) << ',' << r.rounds << ','
            << (r.correct ? "true" : "false") << ',' << (r.xi_held ? "true" : "false") << ','
            << (r.bound_value ? shortest(*r.bound_value) : "") << ',' << (r.bound_satisfied ? "true" : "false");
        for (auto p : r.pulls) out << ',' << p;
        out << ',' << wall(r.wall_ms) << '\n';
    }
    return out.str();
}

std::vector<TrialRecord> parse_trials_csv(std::string_view text) {
    std::vector<TrialRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw UsageError("trials csv: missing header");
    const auto header = split(line, ',');
    if (header.size() < 9 || header[0] != "trial" || header.back() != "wall_ms")
        throw UsageError("trials csv: unexpected header");
    const std::size_t m = header.size() - 9;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != header.size()) throw UsageError("trials csv: row has the wrong number of fields");
        TrialRecord r;
        r.trial = parse_number<std::uint64_t>(f[0], "trial");
        r.seed = parse_number<std::uint64_t>(f[1], "seed");
        r.mode = parse_mode(f[2]);
        r.rounds = parse_number<std::uint64_t>(f[3], "rounds");
        r.correct = parse_bool(f[4], "correct");
        r.xi_held = parse_bool(f[5], "xi_held");
        if (!f[6].empty()) r.bound_value = parse_number<double>(f[6], "bound_value");
        r.bound_satisfied = parse_bool(f[7], "bound_satisfied");
        for (std::size_t i = 0; i < m; ++i) r.pulls.push_back(parse_number<std::uint64_t>(f[8 + i], "pulls"));
        r.wall_ms = parse_number<double>(f[8 + m], "wall_ms");
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_trials_jsonl(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        OrderedJson j;
        j["trial"] = r.trial;
        j["seed"] = r.seed;
        j["mode"] = std::string(to_string(r.mode));
        j["rounds"] = r.rounds;
        j["correct"] = r.correct;
        j["xi_held"] = r.xi_held;
        j["bound_value"] = r.bound_value ? OrderedJson(*r.bound_value) : OrderedJson(nullptr);
        j["bound_satisfied"] = r.bound_satisfied;
        for (std::size_t i = 0; i < r.pulls.size(); ++i) j["pulls_" + std::to_string(i)] = r.pulls[i];
        j["wall_ms"] = std::round(r.wall_ms * 1000.0) / 1000.0;
        out << j.dump() << '\n';
    }
    return out.str();
}

std::string format_hardness_json(const HardnessReport& report) { return hardness_object(report).dump(2) + "\n"; }

std::string format_summary_json(const ExperimentSummary& s) {
    OrderedJson j;
    j["application"] = s.application;
    j["arm_count"] = s.arm_count;
    j["delta"] = s.delta;
    j["master_seed"] = s.master_seed;
    j["hardness"] = s.hardness ? hardness_object(*s.hardness) : OrderedJson(nullptr);
    if (s.coci) j["coci"] = mode_json(*s.coci);
    if (s.uniform) j["uniform"] = mode_json(*s.uniform);
    if (s.paired_round_ratio) j["paired_round_ratio"] = *s.paired_round_ratio;
    if (s.paired_ratio_mean) j["paired_ratio_mean"] = *s.paired_ratio_mean;
    return j.dump(2) + "\n";
}

EmittedFiles emit_results(const ExperimentResult& result, const std::filesystem::path& directory,
                          OutputFormat format) {
    if (result.records.empty()) throw UsageError("emit_results: no trial records");
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + directory.string() + ": " + ec.message());

    EmittedFiles files;
    files.trials = directory / (format == OutputFormat::Csv ? "trials.csv" : "trials.jsonl");
    files.summary = directory / "summary.json";
    auto write = [](const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << content;
        out.close();
        if (!out) throw std::runtime_error("failed writing " + path.string());
    };
    write(files.trials, format == OutputFormat::Csv ? format_trials_csv(result.records)
                                                    : format_trials_jsonl(result.records));
    write(files.summary, format_summary_json(result.summary));
    return files;
}

}  // namespace cpecs
