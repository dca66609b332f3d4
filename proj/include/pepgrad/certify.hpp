#pragma once

// Closed-form dual multipliers for the main bound and a numerical replay of
// the identity they satisfy: the multiplier-weighted sum of the program's
// constraints, plus the objective gap ell - U, collapses to a negative
// semidefinite quadratic form in the gradients.

#include "pepgrad/core.hpp"

namespace pepgrad {

/// U is the squared main bound and B = U / delta; alpha_k multiplies the
/// consecutive pair (k, k+1), alpha_k - B the pair (k+1, k), sigma_k the
/// link constraints, and B both the gap and the last stationarity constraint.
struct Certificate {
    double U = 0.0;
    double B = 0.0;
    Eigen::VectorXd alpha;  // length N
    Eigen::VectorXd sigma;  // length N+1
};

/// Requires every t_k in (0, sqrt(3)/L) (with 1e-12 margin) and delta > 0.
Certificate build_certificate(const SmoothProblemSpec& spec, const StepSchedule& schedule);

/// Coefficients of the aggregated form, same layout as a QuadraticConstraint.
struct AggregatedIdentity {
    Eigen::MatrixXd A_total;
    Eigen::VectorXd f_coeffs;
    double fstar_coeff = 0.0;
    double ell_coeff = 0.0;
    double const_coeff = 0.0;
};

AggregatedIdentity aggregate_identity(const Certificate& cert, const SmoothProblemSpec& spec,
                                      const StepSchedule& schedule);

/// Gram-form matrix of -sum_k Q_k, where Q_k = (B/4)(1/L - t_k)||g^k - g^{k+1}||^2
/// for t_k < 1/L and zero otherwise.
Eigen::MatrixXd expected_residual_matrix(const Certificate& cert, const SmoothProblemSpec& spec,
                                         const StepSchedule& schedule);

struct CertificateReport {
    bool multipliers_nonneg = false;
    bool sigma_sums_to_one = false;
    bool linear_terms_vanish = false;
    bool quadratic_matches_Q = false;
    bool residual_nsd = false;
    double certified_bound = 0.0;

    bool verified() const {
        return multipliers_nonneg && sigma_sums_to_one && linear_terms_vanish &&
               quadratic_matches_Q && residual_nsd;
    }
    bool operator==(const CertificateReport&) const = default;
};

CertificateReport verify_certificate(const Certificate& cert, const SmoothProblemSpec& spec,
                                     const StepSchedule& schedule, double q_tol = 1e-10);

}  // namespace pepgrad
