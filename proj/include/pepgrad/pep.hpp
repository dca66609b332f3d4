#pragma once

// Performance-estimation program for N steps of the fixed-step gradient
// method. Gradients g^1..g^{N+1} enter only through their Gram matrix G, the
// iterates being eliminated via x^i = x^1 - sum_{k<i} t_k g^k.

#include "pepgrad/core.hpp"

#include <string_view>
#include <vector>

namespace pepgrad {

enum class ConstraintKind { Pair, Stationarity, Gap, Link };

std::string_view to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(std::string_view s);

/// f_coeff . f + fstar_coeff * f* + const_coeff + ell_coeff * ell + tr(A G) >= 0.
struct QuadraticConstraint {
    ConstraintKind kind = ConstraintKind::Pair;
    int i = 0;  // 1-based; pair (i, j), or k for stationarity/link; 0 for gap
    int j = 0;
    Eigen::MatrixXd A;
    Eigen::VectorXd f_coeff;
    double fstar_coeff = 0.0;
    double const_coeff = 0.0;
    double ell_coeff = 0.0;

    /// Evaluates the left-hand side at a point of the lifted program.
    double value(const Eigen::MatrixXd& G, const Eigen::VectorXd& f, double f_star,
                 double ell) const;
};

/// Interpolation condition for the ordered pair (i, j), 1 <= i != j <= N+1.
QuadraticConstraint build_pair_constraint(int i, int j, const StepSchedule& schedule, double L);
/// f^k - G_kk/(2L) - f* >= 0.
QuadraticConstraint build_stationarity_constraint(int k, int N, double L);
/// f* - f^1 + delta >= 0.
QuadraticConstraint build_gap_constraint(int N, double delta);
/// G_kk - ell >= 0.
QuadraticConstraint build_link_constraint(int k, int N);

/// The lifted program: maximise ell subject to `constraints` and G PSD.
/// Constraint order is fixed: pairs (i, j) lexicographic, stationarity
/// k = 1..N+1, the gap constraint, then links k = 1..N+1.
struct PepProgram {
    SmoothProblemSpec spec;
    StepSchedule schedule;
    int N = 0;
    int gram_dim = 0;
    std::vector<QuadraticConstraint> constraints;

    /// Position of a constraint in the frozen order.
    std::size_t pair_index(int i, int j) const;
    std::size_t stationarity_index(int k) const;
    std::size_t gap_index() const;
    std::size_t link_index(int k) const;
};

PepProgram assemble_pep(const SmoothProblemSpec& spec, const StepSchedule& schedule);

/// Number of constraints for N steps: (N+1)N + (N+1) + 1 + (N+1).
std::size_t pep_constraint_count(int N);

}  // namespace pepgrad
