#include <doctest.h>

#include <numeric>
#include <sstream>

#include "cpecs/coci.hpp"
#include "cpecs/errors.hpp"
#include "cpecs/estimators.hpp"
#include "cpecs/hardness.hpp"
#include "cpecs/oracles.hpp"
#include "cpecs/osa.hpp"

using namespace cpecs;

namespace {

CociConfig config(std::uint64_t seed, double delta = 0.05, bool trace = true) {
    CociConfig c;
    c.delta = delta;
    c.seed = seed;
    c.keep_trace = trace;
    return c;
}

std::uint64_t total(const std::vector<std::uint64_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

}  // namespace

TEST_CASE("a single arm stops after initialization") {
    const auto mean = make_instance(make_best_arm_oracle(1), ParameterVector{0.4}, EstimatorKind::Mean);
    const auto r = run_coci(mean, config(1));
    CHECK(r.rounds == 1);
    CHECK(r.output == Decision{1});
    CHECK(r.converged);
    CHECK(*r.correct);

    const auto var = make_osa_instance(ParameterVector{0.2}, {3}, 4);
    const auto v = run_coci(var, config(1));
    CHECK(v.rounds == 2);
    CHECK(v.output == Decision{4});
    CHECK(run_uniform(var, config(1)).rounds == 2);
}

TEST_CASE("seeded regression run") {
    const auto inst = make_best_arm_instance(ParameterVector{0.9, 0.1});
    const auto r = run_coci(inst, config(42, 0.05, false));
    CHECK(r.output == Decision{1, 0});
    CHECK(*r.correct);
    CHECK(r.converged);
    CHECK(r.rounds == 103);
    CHECK(r.pulls == std::vector<std::uint64_t>{52, 51});
}

TEST_CASE("point-mass arms stop once the radii clear the separation") {
    const auto inst = make_instance(make_best_arm_oracle(2), ParameterVector{0.7, 0.4}, EstimatorKind::Mean,
                                    {ArmModel::point_mass(0.7), ArmModel::point_mass(0.4)});
    const double delta = 0.1;
    std::uint64_t t = 2, a = 1, b = 1;
    while (confidence_radius(t, a, 1, delta) + confidence_radius(t, b, 1, delta) > 0.3) {
        const double ra = confidence_radius(t, a, 1, delta), rb = confidence_radius(t, b, 1, delta);
        if (ra >= rb) ++a;
        else ++b;
        ++t;
    }
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto r = run_coci(inst, config(seed, delta));
        CHECK(r.rounds == t);
        CHECK(r.pulls == std::vector<std::uint64_t>{a, b});
        CHECK(r.output == Decision{1, 0});
        CHECK(r.xi_held);
        CHECK(audit_xi(*r.trace, inst.true_params));
    }
}

TEST_CASE("uniform sampling cycles through the arms in index order") {
    const auto inst = make_best_arm_instance(ParameterVector{0.6, 0.5, 0.4});
    const auto r = run_uniform(inst, config(5));
    REQUIRE(r.trace);
    const auto& rounds = r.trace->rounds;
    REQUIRE(rounds.size() == r.rounds);
    for (std::size_t k = 0; k < rounds.size(); ++k) CHECK(rounds[k].arm == k % 3);
    CHECK(*r.correct);
}

TEST_CASE("symmetric instance: adaptive and uniform pull counts stay within m") {
    const auto inst = make_best_arm_instance(ParameterVector{0.7, 0.3});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = run_coci(inst, config(seed, 0.05, false));
        const auto u = run_uniform(inst, config(seed, 0.05, false));
        for (std::size_t i = 0; i < 2; ++i) {
            const auto d = a.pulls[i] > u.pulls[i] ? a.pulls[i] - u.pulls[i] : u.pulls[i] - a.pulls[i];
            CHECK(d <= 2);
        }
    }
}

TEST_CASE("accounting, determinism and trace consistency") {
    const auto inst = make_top_k_instance(ParameterVector{0.8, 0.6, 0.4, 0.2}, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = run_coci(inst, config(seed));
        const auto again = run_coci(inst, config(seed));
        CHECK(r.output == again.output);
        CHECK(r.rounds == again.rounds);
        CHECK(r.pulls == again.pulls);
        CHECK(r.xi_held == again.xi_held);
        CHECK(total(r.pulls) == r.rounds);
        REQUIRE(r.trace);
        CHECK(r.trace->rounds.size() == r.rounds);
        for (std::size_t k = 0; k < r.trace->rounds.size(); ++k) CHECK(r.trace->rounds[k].t == k + 1);
        std::vector<std::uint64_t> from_samples;
        for (const auto& s : r.trace->samples) from_samples.push_back(s.size());
        CHECK(from_samples == r.pulls);
        CHECK(audit_xi(*r.trace, inst.true_params) == r.xi_held);
        std::ostringstream out;
        write_trace_jsonl(*r.trace, out);
        const std::string text = out.str();
        CHECK(static_cast<std::uint64_t>(std::count(text.begin(), text.end(), '\n')) == r.rounds);
        CHECK(text.rfind("{\"t\":1,", 0) == 0);
    }
}

TEST_CASE("stopping box has a single decision on the grid") {
    const std::vector<ProblemInstance> instances{
        make_best_arm_instance(ParameterVector{0.8, 0.5, 0.2}),
        make_top_k_instance(ParameterVector{0.8, 0.5, 0.2}, 2),
        make_osa_instance(ParameterVector{0.22, 0.25, 0.03}, {4, 1, 1}, 10),
    };
    for (const auto& inst : instances) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto r = run_coci(inst, config(seed));
            REQUIRE(r.converged);
            const auto& last = r.trace->rounds.back();
            const auto box = clamp_box(last.estimates, last.radii);
            const auto c = candidate_set(ConditionStrategy::grid(21), *inst.oracle, box);
            CHECK(std::find(c.begin(), c.end(), true) == c.end());
            CHECK(inst.oracle->maximize(box.upper_corner()) == r.output);
        }
    }
}

TEST_CASE("arms with small radius relative to lambda are never pulled") {
    const auto inst = make_best_arm_instance(ParameterVector{0.8, 0.5, 0.2});
    const auto lambda = compute_lambda(*inst.oracle, inst.true_params);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = run_coci(inst, config(seed));
        if (!r.xi_held) continue;
        const auto& rounds = r.trace->rounds;
        const std::size_t init = 3;
        for (std::size_t k = init; k < rounds.size(); ++k) {
            const auto& previous = rounds[k - 1];
            const std::size_t j = rounds[k].arm;
            REQUIRE(previous.radii[j] >= lambda.lower[j] / 2);
        }
    }
}

TEST_CASE("budget exhaustion is reported") {
    const auto inst = make_best_arm_instance(ParameterVector{0.51, 0.49});
    CociConfig c = config(3);
    c.max_rounds = 10;
    const auto r = run_coci(inst, c);
    CHECK_FALSE(r.converged);
    CHECK(r.rounds == 10);
    CHECK(total(r.pulls) == 10);
    CHECK(r.output == inst.oracle->maximize(ParameterVector(r.trace->rounds.back().estimates)));
}

TEST_CASE("bound value is reported when hardness is given") {
    const auto inst = make_best_arm_instance(ParameterVector{0.8, 0.2});
    CociConfig c = config(3, 0.05, false);
    CHECK_FALSE(run_coci(inst, c).bound_value);
    c.h_lambda = 20.0;
    const auto r = run_coci(inst, c);
    REQUIRE(r.bound_value);
    CHECK(*r.bound_value == thm1_bound(20.0, 2, 1, 0.05));
}

TEST_CASE("engine errors") {
    const auto inst = make_best_arm_instance(ParameterVector{0.8, 0.2});
    CHECK_THROWS_AS(run_coci(inst, config(1, 0.0)), UsageError);
    CHECK_THROWS_AS(run_coci(inst, config(1, 1.0)), UsageError);
}

TEST_CASE("audit of the confidence event") {
    const auto inst = make_instance(make_best_arm_oracle(2), ParameterVector{0.7, 0.4}, EstimatorKind::Mean,
                                    {ArmModel::point_mass(0.7), ArmModel::point_mass(0.4)});
    const auto r = run_coci(inst, config(9));
    CHECK(audit_xi(*r.trace, inst.true_params));

    Trace tiny = *r.trace;
    for (auto& rec : tiny.rounds)
        for (double& rad : rec.radii) rad = 1e-9;
    CHECK_FALSE(audit_xi(tiny, ParameterVector{0.71, 0.4}));

    Trace cut = *r.trace;
    cut.rounds.erase(cut.rounds.begin() + 1);
    CHECK_THROWS_AS(audit_xi(cut, inst.true_params), UsageError);
    Trace empty = *r.trace;
    empty.rounds.clear();
    CHECK_THROWS_AS(audit_xi(empty, inst.true_params), UsageError);
}
