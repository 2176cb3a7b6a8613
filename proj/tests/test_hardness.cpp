#include <doctest.h>

#include <cmath>
#include <random>

#include "cpecs/errors.hpp"
#include "cpecs/hardness.hpp"
#include "cpecs/oracles.hpp"
#include "cpecs/osa.hpp"

using namespace cpecs;

TEST_CASE("lambda examples") {
    const auto a = compute_lambda(*make_best_arm_oracle(2), ParameterVector{0.8, 0.2});
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a.lower[i] == doctest::Approx(0.30));
        CHECK(a.upper[i] == doctest::Approx(0.31));
        CHECK_FALSE(a.never_flips[i]);
    }
    const auto b = compute_lambda(*make_best_arm_oracle(3), ParameterVector{0.9, 0.5, 0.1});
    CHECK(b.lower[1] == doctest::Approx(0.20));
    CHECK(b.upper[1] == doctest::Approx(0.21));
    CHECK(b.lower[2] == doctest::Approx(0.40));
    CHECK(b.upper[2] == doctest::Approx(0.41));
    CHECK(b.upper[0] - b.lower[0] == doctest::Approx(0.01));

    const auto c = compute_lambda(*make_best_arm_oracle(1), ParameterVector{0.4});
    CHECK(c.never_flips[0]);
    CHECK(c.lower[0] == 1.0);
    CHECK(c.upper[0] == 1.0);
}

TEST_CASE("lambda of the three-arm fixture") {
    const auto l = compute_lambda(*make_best_arm_oracle(3), ParameterVector{0.8, 0.5, 0.2});
    CHECK(l.lower[0] == doctest::Approx(0.15));
    CHECK(l.upper[0] == doctest::Approx(0.16));
    CHECK(l.lower[1] == doctest::Approx(0.15));
    CHECK(l.lower[2] == doctest::Approx(0.30));
}

TEST_CASE("lambda capacity and errors") {
    CHECK_THROWS_AS(compute_lambda(*make_best_arm_oracle(5), ParameterVector{0.5, 0.4, 0.3, 0.2, 0.1}),
                    CapacityError);
    CHECK_THROWS_AS(compute_lambda(*make_best_arm_oracle(2), ParameterVector{0.5}), UsageError);
    CHECK_THROWS_AS(compute_lambda(*make_best_arm_oracle(2), ParameterVector{0.5, 0.1}, 0.0), UsageError);
    CHECK_NOTHROW(compute_lambda(*make_best_arm_oracle(5), ParameterVector{0.5, 0.4, 0.3, 0.2, 0.1}, 0.05));
}

TEST_CASE("gap examples") {
    const auto a = compute_gaps_cpel(*make_best_arm_oracle(2), ParameterVector{0.8, 0.2});
    CHECK(a[0] == doctest::Approx(0.6));
    CHECK(a[1] == doctest::Approx(0.6));
    const auto b = compute_gaps_cpel(*make_top_k_oracle(3, 2), ParameterVector{0.9, 0.8, 0.1});
    CHECK(b[0] == doctest::Approx(0.8));
    CHECK(b[1] == doctest::Approx(0.7));
    CHECK(b[2] == doctest::Approx(0.7));
    CHECK_THROWS_AS(compute_gaps_cpel(*make_best_arm_oracle(3), ParameterVector{0.5, 0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(compute_gaps_cpel(*make_osa_oracle({{1, 1}, 4}), ParameterVector{0.5, 0.2}), UsageError);
    const auto c = compute_gaps_cpel(*make_top_k_oracle(2, 2), ParameterVector{0.5, 0.2});
    CHECK(std::isinf(c[0]));
}

TEST_CASE("bound examples") {
    CHECK(thm1_bound(1, 1, 1, 1) == doctest::Approx(45.681823408654914).epsilon(1e-14));
    CHECK(thm1_bound(1, 1, 1, 1) == doctest::Approx(45.68).epsilon(1e-4));
    CHECK(thm1_bound(2, 3, 1, 0.1) > thm1_bound(1, 3, 1, 0.1));
    CHECK(thm1_bound(2, 3, 1, 0.01) > thm1_bound(2, 3, 1, 0.1));
    CHECK(thm1_bound(5, 6, 2, 0.05) - thm1_bound(5, 3, 2, 0.05) == doctest::Approx(6));
    CHECK(thm1_bound(5, 8, 2, 0.05) - thm1_bound(5, 4, 2, 0.05) == doctest::Approx(8));
    CHECK_THROWS_AS(thm1_bound(0, 1, 1, 0.1), UsageError);
}

TEST_CASE("hardness report relations") {
    const auto r = compute_hardness(*make_best_arm_oracle(3), ParameterVector{0.8, 0.5, 0.2});
    CHECK(r.h_lambda <= r.h_uniform);
    CHECK(r.h_lambda <= r.h_lambda_lower);
    CHECK(r.h_lambda == doctest::Approx(2 / (0.16 * 0.16) + 1 / (0.31 * 0.31)));
    REQUIRE(r.gaps);
    CHECK(*r.width == 2);
    CHECK(*r.h_delta == doctest::Approx(2 / 0.09 + 1 / 0.36));

    const auto osa = compute_hardness(*make_osa_oracle({{1, 1}, 6}), ParameterVector{0.25, 0.04});
    CHECK_FALSE(osa.gaps);
    CHECK_FALSE(osa.width);
    for (double l : osa.lambda.lower) CHECK(l >= 0.0);
}

TEST_CASE("no flip strictly inside the lambda radius") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<std::pair<std::shared_ptr<const OracleSpec>, ParameterVector>> cases{
        {make_best_arm_oracle(3), ParameterVector{0.8, 0.5, 0.2}},
        {make_top_k_oracle(4, 2), ParameterVector{0.8, 0.6, 0.4, 0.2}},
        {make_osa_oracle({{1, 1, 1}, 10}), ParameterVector{0.24, 0.09, 0.01}},
    };
    for (const auto& [spec, star] : cases) {
        const auto lambda = compute_lambda(*spec, star);
        const Decision ref = spec->maximize(star);
        const std::size_t m = spec->arm_count();
        for (std::size_t i = 0; i < m; ++i) {
            const double r = lambda.upper[i] - lambda.epsilon;
            if (r <= 0) continue;
            for (int draw = 0; draw < 1000; ++draw) {
                std::vector<double> theta(m);
                for (std::size_t j = 0; j < m; ++j)
                    theta[j] = std::clamp(star[j] + (2 * u(rng) - 1) * r * 0.999, 0.0, 1.0);
                REQUIRE(spec->maximize(ParameterVector(theta))[i] == ref[i]);
            }
        }
    }
}

TEST_CASE("lambda dominates half the gap on random top-k instances") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> arms(2, 4);
    int done = 0;
    while (done < 50) {
        const std::size_t m = static_cast<std::size_t>(arms(rng));
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, m - 1)(rng);
        std::vector<double> theta(m);
        for (double& v : theta) v = std::round(u(rng) * 100) / 100;
        auto spec = make_top_k_oracle(m, k);
        if (all_maximizers(*spec, ParameterVector(theta)).size() != 1) continue;
        const double eps = 0.01;
        const auto lambda = compute_lambda(*spec, ParameterVector(theta), eps);
        const auto gaps = compute_gaps_cpel(*spec, ParameterVector(theta));
        double h_lambda = 0, h_delta = 0;
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(lambda.upper[i] + eps >= gaps[i] / 2);
            h_lambda += 1 / (lambda.upper[i] * lambda.upper[i]);
            h_delta += 1 / (gaps[i] * gaps[i]);
        }
        CHECK(h_lambda <= h_delta * 4 * (1 + 1e-9));
        ++done;
    }
}
