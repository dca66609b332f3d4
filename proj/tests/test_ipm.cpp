#include "pepgrad/core.hpp"
#include "pepgrad/ipm.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace pepgrad;
using doctest::Approx;

namespace {

// min <C, X> s.t. tr X = 1, X psd; optimum is the smallest eigenvalue of C.
ConeProgram min_eigenvalue_program(const Eigen::MatrixXd& C) {
    ConeProgram p;
    p.Cs = C;
    p.cl = Eigen::VectorXd(0);
    p.As = {Eigen::MatrixXd::Identity(C.rows(), C.cols())};
    p.Al = Eigen::MatrixXd(1, 0);
    p.b = Eigen::VectorXd::Ones(1);
    return p;
}

}  // namespace

TEST_CASE("smallest eigenvalue as an SDP") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0, 1);
    for (int dim = 1; dim <= 6; ++dim) {
        Eigen::MatrixXd C = Eigen::MatrixXd::NullaryExpr(dim, dim, [&] { return n(rng); });
        C = (C + C.transpose()).eval();
        const double lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(C).eigenvalues()(0);
        const auto sol = solve_cone(min_eigenvalue_program(C));
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.primal_obj == Approx(lambda).epsilon(1e-6));
        CHECK(sol.dual_obj == Approx(lambda).epsilon(1e-6));
        CHECK(sol.y(0) == Approx(lambda).epsilon(1e-6));
    }
}

TEST_CASE("linear program in the orthant block") {
    // min -x1 - 2 x2 s.t. x1 + x2 + s = 1: optimum -2 at x2 = 1.
    ConeProgram p;
    p.Cs = Eigen::MatrixXd::Zero(1, 1);
    p.cl = Eigen::Vector3d(-1, -2, 0);
    p.As = {Eigen::MatrixXd::Zero(1, 1)};
    p.Al = Eigen::RowVector3d(1, 1, 1);
    p.b = Eigen::VectorXd::Ones(1);
    const auto sol = solve_cone(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal_obj == Approx(-2).epsilon(1e-6));
    CHECK(sol.x(1) == Approx(1).epsilon(1e-5));
}

TEST_CASE("mixed block: maximise t with t <= X11, tr X = 2") {
    ConeProgram p;
    p.Cs = Eigen::MatrixXd::Zero(2, 2);
    p.cl = Eigen::Vector2d(-1, 0);  // variables t, slack
    Eigen::MatrixXd E11 = Eigen::MatrixXd::Zero(2, 2);
    E11(0, 0) = 1;
    p.As = {Eigen::MatrixXd::Identity(2, 2), E11};
    p.Al = Eigen::MatrixXd(2, 2);
    p.Al << 0, 0, -1, -1;  // X11 - t - s = 0
    p.b = Eigen::Vector2d(2, 0);
    const auto sol = solve_cone(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal_obj == Approx(-2).epsilon(1e-6));
    CHECK(sol.primal_obj - sol.dual_obj == Approx(0).epsilon(1e-6));
    CHECK(sol.primal_infeas <= 1e-7);
    CHECK(sol.dual_infeas <= 1e-7);
}

TEST_CASE("iteration cap and validation") {
    Eigen::MatrixXd C(2, 2);
    C << 1, 2, 2, -1;
    IpmOptions opts;
    opts.max_iter = 1;
    CHECK(solve_cone(min_eigenvalue_program(C), opts).status == SolveStatus::MaxIter);

    auto bad = min_eigenvalue_program(C);
    bad.b = Eigen::VectorXd::Ones(2);
    CHECK_THROWS_AS(solve_cone(bad), DimensionMismatch);

    CHECK(solve_status_from_string(to_string(SolveStatus::NumericalTrouble)) ==
          SolveStatus::NumericalTrouble);
    CHECK_THROWS_AS(solve_status_from_string("nope"), InvalidArgument);
}
