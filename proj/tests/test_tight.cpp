#include "pepgrad/bounds.hpp"
#include "pepgrad/interp.hpp"
#include "pepgrad/tight.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using namespace pepgrad;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("four unit steps with L = 1, delta = 2") {
    const auto spec = SmoothProblemSpec::make(1, 2);
    const auto inst = build_tight_instance(spec, StepSchedule::constant(1, 4));
    CHECK(inst.U == Approx(oracle::kFourUnitStepsBound).epsilon(1e-14));
    REQUIRE(inst.l.size() == 6);
    for (int i = 0; i < 5; ++i) CHECK(inst.l[i] == Approx(oracle::kFourUnitStepsBreaks[i]).epsilon(1e-13));
    CHECK(inst.l[5] == 0.0);
    CHECK(inst.x1 == inst.l[0]);
    REQUIRE(inst.f.segments().size() == 10);
    // Junction points in ascending order: mid(5), l_5, mid(4), l_4, ..., mid(1).
    const auto& segs = inst.f.segments();
    for (int i = 0; i < 5; ++i) {
        CHECK(segs[2 * i].hi == Approx(oracle::kFourUnitStepsMids[4 - i]).epsilon(1e-13));
    }
    CHECK(segs.front().lo == -kInf);
    CHECK(segs.back().hi == kInf);

    const auto run = run_gd(inst.f, inst.x1, inst.schedule);
    REQUIRE(run.trajectory.size() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(run.trajectory[k].x(0) == Approx(oracle::kFourUnitStepsBreaks[k]).epsilon(1e-12));
        CHECK(run.trajectory[k].g(0) == Approx(inst.U).epsilon(1e-12));
        CHECK(run.trajectory[k].f == Approx(inst.f_values[k]).epsilon(1e-12));
    }
    CHECK(inst.f_values[0] == Approx(2.0).epsilon(1e-14));
    CHECK(attainment_check(spec, StepSchedule::constant(1, 4)).exact);
}

TEST_CASE("three half steps with L = 2, delta = 4") {
    const auto spec = SmoothProblemSpec::make(2, 4);
    const auto inst = build_tight_instance(spec, StepSchedule::constant(0.5, 3));
    for (int i = 0; i < 4; ++i) CHECK(inst.l[i] == Approx(oracle::kThreeHalfStepsBreaks[i]).epsilon(1e-13));
    const auto res = attainment_check(spec, StepSchedule::constant(0.5, 3));
    CHECK(res.exact);
    CHECK(res.bound == Approx(oracle::kThreeHalfStepsBound).epsilon(1e-14));
}

TEST_CASE("structure on random schedules") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const double L = 0.5 + 0.25 * (trial % 8);
        const int N = 1 + trial % 7;
        const auto spec = SmoothProblemSpec::make(L, 0.5 + trial % 4, trial % 3 - 1.0);
        const StepSchedule s(oracle::uniform_steps(rng, N, 0.05 / L, 1.0 / L));
        const auto inst = build_tight_instance(spec, s);
        const double scale = std::max(1.0, inst.U);

        // f* attained at 0 with zero derivative.
        const auto at0 = inst.f.evaluate(0.0);
        CHECK(at0.value == Approx(spec.f_star).epsilon(1e-12));
        CHECK(std::abs(at0.derivative) <= 1e-12);

        // C^1 across every junction, both sides evaluated on their own formula.
        const auto& segs = inst.f.segments();
        for (std::size_t k = 1; k < segs.size(); ++k) {
            const auto left = inst.f.evaluate_segment(k - 1, segs[k].lo);
            const auto right = inst.f.evaluate_segment(k, segs[k].lo);
            CHECK(std::abs(left.value - right.value) <= 1e-10 * scale);
            CHECK(std::abs(left.derivative - right.derivative) <= 1e-10 * scale);
        }

        // Derivative equals U at every iterate and f(x1) - f* = delta.
        for (int i = 0; i <= N; ++i) {
            CHECK(inst.f.evaluate(inst.l[i]).derivative == Approx(inst.U).epsilon(1e-11));
        }
        CHECK(inst.f.evaluate(inst.x1).value - spec.f_star == Approx(spec.delta).epsilon(1e-12));

        // Curvature bounds on a dense grid via second differences.
        const double h = 1e-3 * inst.x1;
        for (int p = 1; p < 200; ++p) {
            const double x = -0.2 * inst.x1 + 1.4 * inst.x1 * p / 200.0;
            const double d2 = (inst.f.evaluate(x + h).derivative - inst.f.evaluate(x - h).derivative) / (2 * h);
            CHECK(std::abs(d2) <= L * (1 + 1e-9));
        }
        CHECK(attainment_check(spec, s).exact);
        CHECK(check_interpolation(export_triples(inst), 1e-10).ok);
    }
}

TEST_CASE("half-open ownership at junctions") {
    PiecewiseQuadratic f(1.0, {{-kInf, 0.0, 0.5, 0.0, 0.0}, {0.0, kInf, -0.5, 0.0, 0.0}});
    CHECK(f.evaluate(0.0).value == 0.0);
    CHECK(f.evaluate(1.0).value == -0.5);
    CHECK(f.evaluate(-1.0).value == 0.5);
    CHECK(evaluate(f, 2.0).derivative == -2.0);
}

TEST_CASE("piecewise quadratic validation") {
    CHECK_THROWS_AS(PiecewiseQuadratic(1.0, {{-kInf, 0.0, 0.5, 0, 0}, {0.0, kInf, 0.5, 1, 0}}),
                    InvalidArgument);
    CHECK_THROWS_AS(PiecewiseQuadratic(1.0, {{-kInf, kInf, 0.6, 0, 0}}), InvalidArgument);
    CHECK_THROWS_AS(PiecewiseQuadratic(1.0, {{-kInf, 0.0, 0.5, 0, 0}}), InvalidArgument);
    CHECK_THROWS_AS(PiecewiseQuadratic(1.0, {{-kInf, 0.0, 0, 0, 0}, {1.0, kInf, 0, 0, 0}}),
                    InvalidArgument);
}

TEST_CASE("regime and argument checks") {
    CHECK_THROWS_AS(build_tight_instance(SmoothProblemSpec::make(1, 1), StepSchedule::constant(1.1, 2)),
                    RegimeError);
    CHECK_THROWS_AS(build_tight_instance(SmoothProblemSpec::make(1, 0), StepSchedule::constant(1, 2)),
                    InvalidArgument);
}

TEST_CASE("run_gd with a vector oracle") {
    const Oracle quad = [](const Eigen::VectorXd& x) { return OracleValue{0.5 * x.squaredNorm(), x}; };
    const auto run = run_gd(quad, Eigen::Vector2d(1, 1), StepSchedule::constant(0.5, 3));
    REQUIRE(run.trajectory.size() == 4);
    CHECK(run.trajectory[3].x(0) == Approx(0.125));
    CHECK(run.argmin_index == 4);
    CHECK(run.min_grad_norm == Approx(0.125 * std::sqrt(2.0)));

    const Oracle flat = [](const Eigen::VectorXd& x) { return OracleValue{0.0, Eigen::VectorXd::Zero(x.size())}; };
    CHECK(run_gd(flat, Eigen::Vector2d(1, 1), StepSchedule::constant(0.5, 3)).argmin_index == 1);

    const Oracle throwing = [](const Eigen::VectorXd&) -> OracleValue { throw std::runtime_error("boom"); };
    CHECK_THROWS_AS(run_gd(throwing, Eigen::Vector2d(1, 1), StepSchedule::constant(0.5, 1)), OracleError);
    const Oracle nan = [](const Eigen::VectorXd& x) { return OracleValue{std::nan(""), x}; };
    CHECK_THROWS_AS(run_gd(nan, Eigen::Vector2d(1, 1), StepSchedule::constant(0.5, 1)), OracleError);
    const Oracle short_grad = [](const Eigen::VectorXd&) { return OracleValue{0.0, Eigen::VectorXd::Zero(1)}; };
    CHECK_THROWS_AS(run_gd(short_grad, Eigen::Vector2d(1, 1), StepSchedule::constant(0.5, 1)), OracleError);
}
