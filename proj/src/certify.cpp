#include "pepgrad/certify.hpp"

#include "pepgrad/bounds.hpp"
#include "pepgrad/pep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pepgrad {

namespace {

constexpr double kRegimeMargin = 1e-12;

void accumulate(AggregatedIdentity& acc, double weight, const QuadraticConstraint& c) {
    acc.A_total += weight * c.A;
    acc.f_coeffs += weight * c.f_coeff;
    acc.fstar_coeff += weight * c.fstar_coeff;
    acc.ell_coeff += weight * c.ell_coeff;
    acc.const_coeff += weight * c.const_coeff;
}

}  // namespace

Certificate build_certificate(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    if (!(spec.delta > 0.0)) throw InvalidArgument("certificate needs delta > 0");
    const double L = spec.L;
    for (double t : schedule.steps()) {
        if (!(t <= std::numbers::sqrt3 / L - kRegimeMargin)) {
            throw RegimeError("certificate requires every step in (0, sqrt(3)/L)");
        }
    }

    const int N = schedule.size();
    Certificate cert;
    cert.U = std::pow(bound_main(spec, schedule), 2);
    cert.B = cert.U / spec.delta;
    const double B = cert.B;

    cert.alpha.resize(N);
    cert.sigma.resize(N + 1);
    double sigma_sum = 0.0;
    for (int k = 1; k <= N; ++k) {
        const double t = schedule.t(k);
        const double prev = k > 1 ? schedule.t(k - 1) : 0.0;
        cert.alpha(k - 1) = 0.5 * B * std::max(2.0, t * L + 1.0);
        cert.sigma(k - 1) =
            0.25 * B * std::min(-L * t * t + 3.0 * t + prev, -L * L * t * t * t + 3.0 * t + prev);
        sigma_sum += cert.sigma(k - 1);
    }
    cert.sigma(N) = 1.0 - sigma_sum;
    return cert;
}

AggregatedIdentity aggregate_identity(const Certificate& cert, const SmoothProblemSpec& spec,
                                      const StepSchedule& schedule) {
    const int N = schedule.size();
    const double L = spec.L;
    AggregatedIdentity acc;
    acc.A_total = Eigen::MatrixXd::Zero(N + 1, N + 1);
    acc.f_coeffs = Eigen::VectorXd::Zero(N + 1);

    // Objective term ell - U.
    acc.ell_coeff = 1.0;
    acc.const_coeff = -cert.U;

    for (int k = 1; k <= N + 1; ++k) {
        accumulate(acc, cert.sigma(k - 1), build_link_constraint(k, N));
    }
    accumulate(acc, cert.B, build_gap_constraint(N, spec.delta));
    accumulate(acc, cert.B, build_stationarity_constraint(N + 1, N, L));
    for (int k = 1; k <= N; ++k) {
        accumulate(acc, cert.alpha(k - 1), build_pair_constraint(k, k + 1, schedule, L));
        accumulate(acc, cert.alpha(k - 1) - cert.B, build_pair_constraint(k + 1, k, schedule, L));
    }
    return acc;
}

Eigen::MatrixXd expected_residual_matrix(const Certificate& cert, const SmoothProblemSpec& spec,
                                         const StepSchedule& schedule) {
    const int N = schedule.size();
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int k = 1; k <= N; ++k) {
        const double t = schedule.t(k);
        if (t >= 1.0 / spec.L) continue;
        const double c = 0.25 * cert.B * (1.0 / spec.L - t);
        Q(k - 1, k - 1) += c;
        Q(k, k) += c;
        Q(k - 1, k) -= c;
        Q(k, k - 1) -= c;
    }
    return -Q;
}

CertificateReport verify_certificate(const Certificate& cert, const SmoothProblemSpec& spec,
                                     const StepSchedule& schedule, double q_tol) {
    const int N = schedule.size();
    if (cert.alpha.size() != N || cert.sigma.size() != N + 1) {
        throw DimensionMismatch("certificate does not match the schedule length");
    }
    CertificateReport report;
    report.certified_bound = std::sqrt(std::max(cert.U, 0.0));

    // Signs are checked exactly: on the admissible regime the closed forms
    // are nonnegative, so a negative entry means the regime was left.
    report.multipliers_nonneg = cert.B >= 0.0 && cert.sigma.minCoeff() >= 0.0 &&
                                cert.alpha.minCoeff() >= 0.0 &&
                                (cert.alpha.array() - cert.B).minCoeff() >= 0.0;
    report.sigma_sums_to_one = std::abs(cert.sigma.sum() - 1.0) <= q_tol;

    const AggregatedIdentity agg = aggregate_identity(cert, spec, schedule);
    const double lin_scale = std::max(1.0, cert.B);
    report.linear_terms_vanish = agg.f_coeffs.cwiseAbs().maxCoeff() <= q_tol * lin_scale &&
                                 std::abs(agg.fstar_coeff) <= q_tol * lin_scale &&
                                 std::abs(agg.ell_coeff) <= q_tol &&
                                 std::abs(agg.const_coeff) <= q_tol * std::max(1.0, cert.U);

    const Eigen::MatrixXd expected = expected_residual_matrix(cert, spec, schedule);
    const double quad_scale = std::max(1.0, cert.B / spec.L);
    report.quadratic_matches_Q =
        (agg.A_total - expected).cwiseAbs().maxCoeff() <= q_tol * quad_scale;

    const Eigen::MatrixXd sym = 0.5 * (agg.A_total + agg.A_total.transpose());
    const double max_eig =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .maxCoeff();
    report.residual_nsd = max_eig <= q_tol * quad_scale;
    return report;
}

}  // namespace pepgrad
