#include "pepgrad/ipm.hpp"

#include "pepgrad/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pepgrad {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kDivergence = 1e12;

MatrixXd sym(const MatrixXd& M) { return 0.5 * (M + M.transpose()); }

// Largest alpha with X + alpha dX psd (infinity when dX is psd itself).
double max_step_psd(const MatrixXd& X, const MatrixXd& dX) {
    if (X.rows() == 0) return std::numeric_limits<double>::infinity();
    Eigen::LLT<MatrixXd> llt(X);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatrixXd Linv = llt.matrixL().solve(MatrixXd::Identity(X.rows(), X.cols()));
    const MatrixXd W = sym(Linv * dX * Linv.transpose());
    const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(W, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double max_step_lp(const VectorXd& x, const VectorXd& dx) {
    double alpha = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (dx(k) < 0.0) alpha = std::min(alpha, -x(k) / dx(k));
    }
    return alpha;
}

class Solver {
public:
    Solver(const ConeProgram& prog, const IpmOptions& opt) : prog_(prog), opt_(opt) {}

    ConeSolution run();

private:
    struct Direction {
        MatrixXd dX, dZ;
        VectorXd dx, dz, dy;
    };

    VectorXd apply_A(const MatrixXd& X, const VectorXd& x) const {
        VectorXd out = prog_.Al * x;
        for (int r = 0; r < prog_.num_rows(); ++r) out(r) += prog_.As[r].cwiseProduct(X).sum();
        return out;
    }

    MatrixXd apply_AT_psd(const VectorXd& y) const {
        MatrixXd out = MatrixXd::Zero(prog_.psd_dim(), prog_.psd_dim());
        for (int r = 0; r < prog_.num_rows(); ++r) out += y(r) * prog_.As[r];
        return out;
    }

    bool factor_schur();
    Direction direction(double sigma_mu, const Direction* predictor) const;

    const ConeProgram& prog_;
    IpmOptions opt_;

    MatrixXd X_, Z_, Zinv_;
    VectorXd x_, z_, y_;
    VectorXd rp_;
    MatrixXd Rd_;
    VectorXd rd_;
    Eigen::LLT<MatrixXd> schur_;
};

bool Solver::factor_schur() {
    const int m = prog_.num_rows();
    MatrixXd M(m, m);
    for (int j = 0; j < m; ++j) {
        const MatrixXd W = X_ * prog_.As[j] * Zinv_;
        for (int i = 0; i <= j; ++i) {
            M(i, j) = prog_.As[i].cwiseProduct(W).sum();
            M(j, i) = M(i, j);
        }
    }
    const VectorXd d = x_.cwiseQuotient(z_);
    M.noalias() += prog_.Al * d.asDiagonal() * prog_.Al.transpose();
    schur_.compute(M);
    if (schur_.info() == Eigen::Success) return true;

    // Near the optimum the Schur matrix can lose definiteness to round-off.
    const double shift = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    schur_.compute(M + shift * MatrixXd::Identity(m, m));
    return schur_.info() == Eigen::Success;
}

Solver::Direction Solver::direction(double sigma_mu, const Direction* predictor) const {
    const int n = prog_.psd_dim();
    MatrixXd Rc = sigma_mu * MatrixXd::Identity(n, n) - X_ * Z_;
    VectorXd rc = VectorXd::Constant(x_.size(), sigma_mu) - x_.cwiseProduct(z_);
    if (predictor != nullptr) {
        Rc -= predictor->dX * predictor->dZ;
        rc -= predictor->dx.cwiseProduct(predictor->dz);
    }

    const MatrixXd Ds = sym((Rc - X_ * Rd_) * Zinv_);
    const VectorXd dl = (rc - x_.cwiseProduct(rd_)).cwiseQuotient(z_);

    Direction d;
    d.dy = schur_.solve(rp_ - apply_A(Ds, dl));
    d.dZ = Rd_ - apply_AT_psd(d.dy);
    d.dz = rd_ - prog_.Al.transpose() * d.dy;
    d.dX = sym((Rc - X_ * d.dZ) * Zinv_);
    d.dx = (rc - x_.cwiseProduct(d.dz)).cwiseQuotient(z_);
    return d;
}

ConeSolution Solver::run() {
    const int n = prog_.psd_dim();
    const int p = prog_.lp_dim();
    const int m = prog_.num_rows();
    const double nu = n + p;
    const double s0 = opt_.initial_scale;

    X_ = s0 * MatrixXd::Identity(n, n);
    Z_ = s0 * MatrixXd::Identity(n, n);
    x_ = VectorXd::Constant(p, s0);
    z_ = VectorXd::Constant(p, s0);
    y_ = VectorXd::Zero(m);

    const double b_norm = 1.0 + prog_.b.norm();
    const double c_norm = 1.0 + std::sqrt(prog_.Cs.squaredNorm() + prog_.cl.squaredNorm());

    ConeSolution sol;
    sol.status = SolveStatus::MaxIter;
    for (int it = 0;; ++it) {
        rp_ = prog_.b - apply_A(X_, x_);
        Rd_ = prog_.Cs - apply_AT_psd(y_) - Z_;
        rd_ = prog_.cl - prog_.Al.transpose() * y_;
        rd_ -= z_;

        sol.iterations = it;
        sol.primal_obj = prog_.Cs.cwiseProduct(X_).sum() + prog_.cl.dot(x_);
        sol.dual_obj = prog_.b.dot(y_);
        sol.primal_infeas = rp_.norm() / b_norm;
        sol.dual_infeas = std::sqrt(Rd_.squaredNorm() + rd_.squaredNorm()) / c_norm;

        if (sol.primal_infeas <= opt_.feas_tol && sol.dual_infeas <= opt_.feas_tol &&
            std::abs(sol.primal_obj - sol.dual_obj) <= opt_.gap_tol) {
            sol.status = SolveStatus::Optimal;
            break;
        }
        if (X_.norm() + x_.norm() > kDivergence || y_.norm() > kDivergence) {
            sol.status = SolveStatus::Infeasible;
            break;
        }
        if (it >= opt_.max_iter) break;

        Eigen::LLT<MatrixXd> zllt(Z_);
        if (zllt.info() != Eigen::Success) {
            sol.status = SolveStatus::NumericalTrouble;
            break;
        }
        Zinv_ = zllt.solve(MatrixXd::Identity(n, n));
        if (!factor_schur()) {
            sol.status = SolveStatus::NumericalTrouble;
            break;
        }

        const double mu = (X_.cwiseProduct(Z_).sum() + x_.dot(z_)) / nu;

        // Predictor (affine scaling) step.
        const Direction aff = direction(0.0, nullptr);
        const double ap = std::min({1.0, max_step_psd(X_, aff.dX), max_step_lp(x_, aff.dx)});
        const double ad = std::min({1.0, max_step_psd(Z_, aff.dZ), max_step_lp(z_, aff.dz)});
        const double mu_aff = ((X_ + ap * aff.dX).cwiseProduct(Z_ + ad * aff.dZ).sum() +
                               (x_ + ap * aff.dx).dot(z_ + ad * aff.dz)) / nu;
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        // Corrector step.
        const Direction d = direction(sigma * mu, &aff);
        const double tau = opt_.step_fraction;
        const double step_p =
            std::min({1.0, tau * max_step_psd(X_, d.dX), tau * max_step_lp(x_, d.dx)});
        const double step_d =
            std::min({1.0, tau * max_step_psd(Z_, d.dZ), tau * max_step_lp(z_, d.dz)});
        if (!(step_p > 0.0 && step_d > 0.0) || !d.dy.allFinite()) {
            sol.status = SolveStatus::NumericalTrouble;
            break;
        }

        X_ = sym(X_ + step_p * d.dX);
        x_ += step_p * d.dx;
        Z_ = sym(Z_ + step_d * d.dZ);
        z_ += step_d * d.dz;
        y_ += step_d * d.dy;
    }

    sol.X = X_;
    sol.x = x_;
    sol.Z = Z_;
    sol.z = z_;
    sol.y = y_;
    return sol;
}

}  // namespace

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::MaxIter: return "MaxIter";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::NumericalTrouble: return "NumericalTrouble";
    }
    return "?";
}

SolveStatus solve_status_from_string(std::string_view s) {
    for (auto st : {SolveStatus::Optimal, SolveStatus::MaxIter, SolveStatus::Infeasible,
                    SolveStatus::NumericalTrouble}) {
        if (to_string(st) == s) return st;
    }
    throw InvalidArgument("unknown solver status '" + std::string(s) + "'");
}

void ConeProgram::validate() const {
    const int n = psd_dim();
    const int m = num_rows();
    if (Cs.cols() != n) throw DimensionMismatch("Cs must be square");
    if (static_cast<int>(As.size()) != m) throw DimensionMismatch("need one As per row");
    for (const auto& A : As) {
        if (A.rows() != n || A.cols() != n) throw DimensionMismatch("As has the wrong size");
    }
    if (Al.rows() != m || Al.cols() != lp_dim()) throw DimensionMismatch("Al has the wrong size");
}

ConeSolution solve_cone(const ConeProgram& program, const IpmOptions& options) {
    program.validate();
    return Solver(program, options).run();
}

}  // namespace pepgrad
