#include "pepgrad/bounds.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pepgrad;
using doctest::Approx;

namespace {
SmoothProblemSpec spec(double L, double delta) { return SmoothProblemSpec::make(L, delta); }
}  // namespace

TEST_CASE("per_step_weight") {
    CHECK(per_step_weight(1, 1) == 3.0);
    CHECK(per_step_weight(2 / std::sqrt(3.0), 1) == Approx(oracle::kWeightOptimal).epsilon(1e-14));
    CHECK(per_step_weight(0.5, 2) == 1.5);
    // Branches: t(4 - Lt) below 1/L, -L^2 t^3 + 4t above.
    CHECK(per_step_weight(0.3, 1) == Approx(0.3 * 3.7));
    CHECK(per_step_weight(1.4, 1) == Approx(-1.4 * 1.4 * 1.4 + 5.6));
}

TEST_CASE("bound_main") {
    CHECK(bound_main(spec(1, 2), StepSchedule::constant(1, 4)) ==
          Approx(oracle::kFourUnitStepsBound).epsilon(1e-14));
    CHECK(bound_main(spec(2, 4), StepSchedule::constant(0.5, 3)) ==
          Approx(oracle::kThreeHalfStepsBound).epsilon(1e-14));
    CHECK(bound_main(spec(1, 0), StepSchedule({0.2, 1.5})) == 0.0);
    CHECK_THROWS_AS(bound_main(spec(1, 1), StepSchedule({0.5, 1.8})), RegimeError);
    CHECK_THROWS_AS(bound_main(spec(1, 1), StepSchedule({std::sqrt(3.0)})), RegimeError);
}

TEST_CASE("bound_taylor") {
    CHECK(bound_taylor(spec(1, 1), 3) == Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(bound_taylor(spec(1, 0), 5) == 0.0);
    const double taylor = bound_taylor(spec(1, 1), 10);
    const double main = bound_main(spec(1, 1), StepSchedule::constant(1, 10));
    CHECK(taylor == Approx(std::sqrt(4.0 / 30)));
    CHECK(main == Approx(std::sqrt(4.0 / 32)));
    CHECK(main < taylor);
}

TEST_CASE("bound_drori") {
    CHECK(bound_drori(spec(1, 2), StepSchedule::constant(1, 4)) == Approx(std::sqrt(8.0 / 12)));
    CHECK(bound_main(spec(1, 2), StepSchedule::constant(1, 4)) <
          bound_drori(spec(1, 2), StepSchedule::constant(1, 4)));
    CHECK(bound_drori(spec(2, 4), StepSchedule::constant(0.5, 3)) ==
          Approx(oracle::kDroriThreeHalfSteps).epsilon(1e-14));
    CHECK_THROWS_AS(bound_drori(spec(1, 1), StepSchedule({1.01})), RegimeError);
}

TEST_CASE("bound_nesterov") {
    CHECK(bound_nesterov(spec(1, 2), StepSchedule::constant(1, 4)) == Approx(std::sqrt(0.8)));
    CHECK(bound_nesterov(spec(1, 1), StepSchedule::constant(1, 1)) == Approx(1.0));
    CHECK(bound_nesterov(spec(1, 0), StepSchedule::constant(0.5, 2)) == 0.0);
    CHECK_THROWS_AS(bound_nesterov(spec(1, 1), StepSchedule({2.0})), RegimeError);
}

TEST_CASE("bound_conjecture") {
    CHECK(bound_conjecture(spec(1, 2), StepSchedule::constant(1, 4)).value ==
          Approx(bound_drori(spec(1, 2), StepSchedule::constant(1, 4))));
    CHECK(bound_conjecture(spec(1, 1), StepSchedule::constant(1.9, 1)).value ==
          Approx(oracle::kConjecture19).epsilon(1e-13));
    CHECK(bound_conjecture(spec(1, 0), StepSchedule::constant(1.5, 1)).value == 0.0);
    CHECK(ConjecturedBound::tag == "CONJECTURE");
    CHECK_THROWS_AS(bound_conjecture(spec(1, 1), StepSchedule({2.5})), RegimeError);
}

TEST_CASE("bound_b3") {
    CHECK(bound_b3(spec(1, 1), 1) == Approx(oracle::kB3N1).epsilon(1e-14));
    CHECK(bound_b3(spec(1, 0), 7) == 0.0);
    for (int N = 1; N <= 30; ++N) {
        for (double L : {0.5, 1.0, 3.0}) {
            const auto s = spec(L, 1.7);
            CHECK(std::abs(bound_b3(s, N) - bound_main(s, StepSchedule::constant(optimal_step(L), N))) <=
                  kTolEq);
        }
    }
    const double N = 1e7;
    CHECK(N * std::pow(bound_b3(spec(1, 1), static_cast<int>(N)), 2) ==
          Approx(oracle::kB3Limit).epsilon(1e-6));
}

TEST_CASE("optimal_step") {
    CHECK(optimal_step(1) == Approx(oracle::kOptimalStep).epsilon(1e-15));
    CHECK(optimal_step(2) == Approx(oracle::kOptimalStep / 2).epsilon(1e-15));
    const double t = oracle::grid_argmin_main_bound(1.0, 100000);
    CHECK(std::abs(t - optimal_step(1)) <= std::sqrt(3.0) / 100001.0);
}

TEST_CASE("dominance over random schedules") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const double L = std::uniform_real_distribution<double>(0.1, 10)(rng);
        const double delta = std::uniform_real_distribution<double>(0.01, 10)(rng);
        const int N = 1 + trial % 12;
        const auto s = spec(L, delta);

        const StepSchedule main_regime(oracle::uniform_steps(rng, N, 1e-3 / L, 1.7320 / L));
        CHECK(bound_main(s, main_regime) <= bound_nesterov(s, main_regime) + 1e-12);

        const StepSchedule unit_regime(oracle::uniform_steps(rng, N, 1e-3 / L, 1.0 / L));
        CHECK(bound_main(s, unit_regime) < bound_drori(s, unit_regime));
    }
}

TEST_CASE("consistency, asymptotics and scale covariance") {
    for (int N = 1; N <= 20; ++N) {
        const double b = bound_main(spec(1, 1), StepSchedule::constant(1, N));
        CHECK(b == Approx(std::sqrt(4.0 / (3 * N + 2))).epsilon(1e-15));
        CHECK(b * std::sqrt(3.0 * N + 2) == Approx(2.0).epsilon(1e-14));
    }
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto t = oracle::uniform_steps(rng, 5, 0.05, 1.7);
        for (double c : {2.0, 10.0}) {
            std::vector<double> tc = t;
            for (auto& v : tc) v /= c;
            CHECK(bound_main(spec(c, 1.3), StepSchedule(tc)) ==
                  Approx(std::sqrt(c) * bound_main(spec(1, 1.3), StepSchedule(t))).epsilon(1e-13));
        }
    }
}

TEST_CASE("per_step_weight is strictly concave on (0, sqrt(3)/L)") {
    for (double L : {0.5, 1.0, 4.0}) {
        const double h = 1e-3 / L;
        for (double t = 2 * h; t < std::sqrt(3.0) / L - 2 * h; t += 0.01 / L) {
            const double second = per_step_weight(t + h, L) - 2 * per_step_weight(t, L) +
                                  per_step_weight(t - h, L);
            CHECK(second < 0.0);
        }
    }
}

TEST_CASE("bound_report regimes") {
    const auto unit = bound_report(spec(1, 2), StepSchedule::constant(1, 4));
    CHECK(unit.regime == RegimeClass::UnitOrBelow);
    REQUIRE(unit.main);
    REQUIRE(unit.drori);
    REQUIRE(unit.taylor);
    REQUIRE(unit.nesterov);
    REQUIRE(unit.conjecture);
    CHECK(*unit.taylor == Approx(std::sqrt(8.0 / 12)));

    const auto conj = bound_report(spec(1, 1), StepSchedule::constant(1.9, 1));
    CHECK(conj.regime == RegimeClass::Conjecture);
    CHECK_FALSE(conj.main);
    CHECK_FALSE(conj.drori);
    CHECK_FALSE(conj.taylor);
    REQUIRE(conj.conjecture);
    CHECK(conj.conjecture->value == Approx(oracle::kConjecture19));

    const auto out = bound_report(spec(1, 1), StepSchedule::constant(2.0, 1));
    CHECK(out.regime == RegimeClass::Outside);
    CHECK_FALSE(out.nesterov);
    CHECK_FALSE(out.conjecture);

    const auto zero = bound_report(spec(1, 0), StepSchedule::constant(1, 1));
    CHECK(*zero.main == 0.0);
    CHECK(*zero.nesterov == 0.0);
    CHECK(*zero.drori == 0.0);
    CHECK(*zero.taylor == 0.0);
    CHECK(zero.conjecture->value == 0.0);
}
