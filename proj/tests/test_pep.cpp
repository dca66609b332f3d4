#include "pepgrad/pep.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace pepgrad;
using doctest::Approx;

namespace {

Eigen::MatrixXd random_vectors(std::mt19937_64& rng, int dim, int count) {
    std::normal_distribution<double> n(0, 1);
    return Eigen::MatrixXd::NullaryExpr(dim, count, [&] { return n(rng); });
}

}  // namespace

TEST_CASE("pair constraint quadratic form for (2, 1), t = 1/L = 1") {
    // Expanding the condition on x^2 = -g^1, x^1 = 0 by hand:
    //   |g1|^2 - |g2 - g1|^2/2 + |g2|^2/4 = g1^2/2 + g1.g2 - g2^2/4.
    const auto c = build_pair_constraint(2, 1, StepSchedule({1.0}), 1.0);
    Eigen::Matrix2d expected;
    expected << 0.5, 0.5, 0.5, -0.25;
    CHECK((c.A - expected).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(c.f_coeff(0) == -1.0);
    CHECK(c.f_coeff(1) == 1.0);
    CHECK(c.ell_coeff == 0.0);

    const auto mirrored = build_pair_constraint(1, 2, StepSchedule({1.0}), 1.0);
    CHECK((mirrored.A - c.A).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("A matrices are exactly symmetric") {
    const StepSchedule s({0.3, 1.2, 0.7});
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            if (i == j) continue;
            const auto c = build_pair_constraint(i, j, s, 1.7);
            CHECK(c.A == c.A.transpose());
        }
    }
}

TEST_CASE("Gram-form evaluation matches direct evaluation on vectors") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> L_dist(0.3, 4.0);
    for (int N = 1; N <= 5; ++N) {
        const double L = L_dist(rng);
        const StepSchedule s(oracle::uniform_steps(rng, N, 0.05 / L, 1.9 / L));
        const PepProgram prog = assemble_pep(SmoothProblemSpec::make(L, 1.0), s);
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::MatrixXd V = random_vectors(rng, N + 3, N + 1);
            const Eigen::MatrixXd G = V.transpose() * V;
            const Eigen::VectorXd f = Eigen::VectorXd::Random(N + 1);
            for (const auto& c : prog.constraints) {
                if (c.kind != ConstraintKind::Pair) continue;
                const double direct = oracle::pair_value(c.i, c.j, V, f, s.values(), L);
                const double gram = c.value(G, f, 0.0, 0.0);
                CHECK(std::abs(gram - direct) <= 1e-12 * std::max(1.0, std::abs(direct)) * 10);
            }
        }
    }
}

TEST_CASE("assemble_pep counts, order and non-pair families") {
    CHECK(assemble_pep(SmoothProblemSpec::make(1, 1), StepSchedule::constant(1, 1)).constraints.size() == 7);
    const PepProgram prog = assemble_pep(SmoothProblemSpec::make(2, 3, 0.5), StepSchedule::constant(0.5, 4));
    CHECK(prog.constraints.size() == 31);
    CHECK(prog.gram_dim == 5);
    CHECK(pep_constraint_count(4) == 31);

    int expect_i = 1, expect_j = 2;
    for (std::size_t r = 0; r < 20; ++r) {
        const auto& c = prog.constraints[r];
        CHECK(c.kind == ConstraintKind::Pair);
        CHECK(c.i == expect_i);
        CHECK(c.j == expect_j);
        CHECK(prog.pair_index(c.i, c.j) == r);
        ++expect_j;
        if (expect_j == expect_i) ++expect_j;
        if (expect_j > 5) {
            ++expect_i;
            expect_j = expect_i == 1 ? 2 : 1;
        }
    }
    for (int k = 1; k <= 5; ++k) {
        const auto& c = prog.constraints[prog.stationarity_index(k)];
        CHECK(c.kind == ConstraintKind::Stationarity);
        CHECK(c.f_coeff(k - 1) == 1.0);
        CHECK(c.f_coeff.sum() == 1.0);
        CHECK(c.fstar_coeff == -1.0);
        CHECK(c.A(k - 1, k - 1) == -0.25);  // -1/(2L) with L = 2
        CHECK(c.A.cwiseAbs().sum() == 0.25);

        const auto& link = prog.constraints[prog.link_index(k)];
        CHECK(link.kind == ConstraintKind::Link);
        CHECK(link.A(k - 1, k - 1) == 1.0);
        CHECK(link.ell_coeff == -1.0);
    }
    const auto& gap = prog.constraints[prog.gap_index()];
    CHECK(gap.kind == ConstraintKind::Gap);
    CHECK(gap.const_coeff == 3.0);
    CHECK(gap.fstar_coeff == 1.0);
    CHECK(gap.f_coeff(0) == -1.0);

    CHECK_THROWS_AS(build_pair_constraint(1, 1, StepSchedule({1.0}), 1), IndexError);
    CHECK_THROWS_AS(build_pair_constraint(0, 1, StepSchedule({1.0}), 1), IndexError);
    CHECK_THROWS_AS(build_pair_constraint(1, 3, StepSchedule({1.0}), 1), IndexError);
}

TEST_CASE("gradient descent on L-smooth convex quadratics is feasible") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 40; ++trial) {
        const int N = 1 + trial % 5;
        const int n = N + 2;
        const double L = 0.5 + 3 * u(rng);
        const Eigen::VectorXd eig = Eigen::VectorXd::NullaryExpr(n, [&] { return L * (0.05 + 0.95 * u(rng)); });
        const StepSchedule s(oracle::uniform_steps(rng, N, 0.1 / L, 1.9 / L));

        // f(x) = 0.5 sum eig_i x_i^2, f* = 0; delta taken as f(x1) plus slack.
        Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(n, [&] { return 2 * u(rng) - 1; });
        Eigen::MatrixXd V(n, N + 1);
        Eigen::VectorXd f(N + 1);
        for (int k = 0; k <= N; ++k) {
            V.col(k) = eig.cwiseProduct(x);
            f(k) = 0.5 * x.dot(eig.cwiseProduct(x));
            if (k < N) x -= s.t(k + 1) * V.col(k);
        }
        const Eigen::MatrixXd G = V.transpose() * V;
        const double ell = G.diagonal().minCoeff();
        const PepProgram prog = assemble_pep(SmoothProblemSpec::make(L, f(0) + 0.1), s);
        for (const auto& c : prog.constraints) CHECK(c.value(G, f, 0.0, ell) >= -kTolEq);
    }
}
