#include <doctest.h>

#include <cmath>
#include <set>

#include "cpecs/errors.hpp"
#include "cpecs/oracles.hpp"
#include "cpecs/sim.hpp"

using namespace cpecs;

TEST_CASE("sample examples") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample(ArmModel::point_mass(0.3), rng) == 0.3);
        CHECK(sample(ArmModel::bernoulli(0.0), rng) == 0.0);
        CHECK(sample(ArmModel::bernoulli(1.0), rng) == 1.0);
    }
    const auto coin = ArmModel::bernoulli(0.5);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += coin.sample(rng);
    CHECK(std::abs(sum / n - 0.5) <= 3 * 0.5 / std::sqrt(n));
}

TEST_CASE("samples stay in the unit interval") {
    std::mt19937_64 rng(2);
    for (const auto& model : {ArmModel::beta(0.5, 0.5), ArmModel::beta(2, 5),
                              ArmModel::discrete({0.0, 0.25, 1.0}, {0.2, 0.3, 0.5})}) {
        for (int i = 0; i < 10000; ++i) {
            const double x = model.sample(rng);
            REQUIRE(x >= 0.0);
            REQUIRE(x <= 1.0);
        }
    }
}

TEST_CASE("model moments") {
    CHECK(ArmModel::bernoulli(0.3).mean() == 0.3);
    CHECK(ArmModel::bernoulli(0.3).variance() == doctest::Approx(0.21));
    CHECK(ArmModel::point_mass(0.7).variance() == 0.0);
    CHECK(ArmModel::beta(2, 2).mean() == doctest::Approx(0.5));
    CHECK(ArmModel::beta(2, 2).variance() == doctest::Approx(0.05));
    const auto d = ArmModel::discrete({0.0, 1.0}, {0.5, 0.5});
    CHECK(d.mean() == 0.5);
    CHECK(d.variance() == 0.25);
    CHECK(d.parameter(EstimatorKind::Variance) == 0.25);
    CHECK_FALSE(d.describe().empty());
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(ArmModel::bernoulli(1.2), DomainError);
    CHECK_THROWS_AS(ArmModel::point_mass(-0.1), DomainError);
    CHECK_THROWS_AS(ArmModel::discrete({0.1, 0.2}, {0.5, 0.4}), DomainError);
    CHECK_THROWS_AS(ArmModel::discrete({0.1, 1.2}, {0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(ArmModel::discrete({0.1}, {0.5, 0.5}), UsageError);
    CHECK_THROWS_AS(ArmModel::beta(0, 1), DomainError);
    CHECK_NOTHROW(ArmModel::discrete({0.1, 0.2, 0.3}, {0.1, 0.2, 0.7}));
}

TEST_CASE("arm for variance") {
    CHECK(std::get<Bernoulli>(arm_for_variance(0.25).model()).p == doctest::Approx(0.5));
    CHECK(std::get<Bernoulli>(arm_for_variance(0.0).model()).p == 0.0);
    CHECK(std::get<Bernoulli>(arm_for_variance(0.21).model()).p == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(arm_for_variance(0.3), DomainError);
    CHECK_THROWS_AS(arm_for_variance(-0.01), DomainError);
    for (double v = 0.0; v <= 0.25; v += 0.01)
        CHECK(std::abs(arm_for_variance(v).variance() - v) <= 1e-12);
}

TEST_CASE("seeding") {
    CHECK(trial_seed(7, 0) != trial_seed(7, 1));
    CHECK(trial_seed(7, 3) == trial_seed(7, 3));
    CHECK(trial_seed(7, 3) != trial_seed(8, 3));
    std::set<std::uint64_t> seen;
    for (std::size_t arm = 0; arm < 100; ++arm) seen.insert(arm_stream_seed(12345, arm));
    CHECK(seen.size() == 100);
}

TEST_CASE("arm streams do not depend on pull order") {
    const std::vector<ArmModel> arms{ArmModel::bernoulli(0.3), ArmModel::beta(2, 3), ArmModel::bernoulli(0.8)};
    ArmStreams a(arms, 99), b(arms, 99);
    std::vector<std::vector<double>> seq_a(3), seq_b(3);
    for (int r = 0; r < 50; ++r)
        for (std::size_t i = 0; i < 3; ++i) seq_a[i].push_back(a.draw(i));
    for (std::size_t i = 3; i-- > 0;)
        for (int r = 0; r < 50; ++r) seq_b[i].push_back(b.draw(i));
    CHECK(seq_a == seq_b);

    ArmStreams c(arms, 100);
    bool differs = false;
    for (int r = 0; r < 50; ++r) differs = differs || c.draw(1) != seq_a[1][static_cast<std::size_t>(r)];
    CHECK(differs);
}

TEST_CASE("instance construction checks parameters and uniqueness") {
    const auto best = make_best_arm_oracle(2);
    CHECK_NOTHROW(make_instance(best, ParameterVector{0.8, 0.2}, EstimatorKind::Mean));
    CHECK_THROWS_AS(make_instance(best, ParameterVector{0.5, 0.5}, EstimatorKind::Mean), DomainError);
    CHECK_THROWS_AS(make_instance(best, ParameterVector{0.8, 0.2}, EstimatorKind::Mean,
                                  {ArmModel::bernoulli(0.8), ArmModel::bernoulli(0.3)}),
                    DomainError);
    CHECK_THROWS_AS(make_instance(best, ParameterVector{0.8, 0.2}, EstimatorKind::Mean, {ArmModel::bernoulli(0.8)}),
                    UsageError);
    CHECK_THROWS_AS(make_instance(nullptr, ParameterVector{0.8, 0.2}, EstimatorKind::Mean), UsageError);

    const auto inst = make_osa_instance(ParameterVector{0.21, 0.09, 0.01}, {1, 1, 1}, 10);
    CHECK(inst.kind == EstimatorKind::Variance);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(inst.arms[i].variance() - inst.true_params[i]) <= 1e-12);
    CHECK(inst.optimal == inst.oracle->maximize(inst.true_params));

    const auto top = make_top_k_instance(ParameterVector{0.8, 0.6, 0.4, 0.2}, 2);
    CHECK(top.optimal == Decision{1, 1, 0, 0});
    CHECK(make_best_arm_instance(ParameterVector{0.2, 0.9}).optimal == Decision{0, 1});
}
