#pragma once

// Primal-dual interior-point method for small dense conic programs with one
// PSD block and one nonnegative orthant:
//
//   min  <Cs, X> + cl . x   s.t.  <As_r, X> + Al_r . x = b_r,  X psd, x >= 0
//   max  b . y              s.t.  Cs - sum_r y_r As_r = Z psd,  cl - Al^T y = z >= 0
//
// Search directions are HKM with a Mehrotra predictor-corrector; primal and
// dual step lengths are taken separately with fraction-to-boundary 0.98.

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace pepgrad {

struct ConeProgram {
    Eigen::MatrixXd Cs;               // n x n, symmetric
    Eigen::VectorXd cl;               // p
    std::vector<Eigen::MatrixXd> As;  // m matrices, n x n symmetric
    Eigen::MatrixXd Al;               // m x p
    Eigen::VectorXd b;                // m

    int psd_dim() const { return static_cast<int>(Cs.rows()); }
    int lp_dim() const { return static_cast<int>(cl.size()); }
    int num_rows() const { return static_cast<int>(b.size()); }
    void validate() const;
};

enum class SolveStatus { Optimal, MaxIter, Infeasible, NumericalTrouble };

std::string_view to_string(SolveStatus s);
SolveStatus solve_status_from_string(std::string_view s);

struct IpmOptions {
    double gap_tol = 1e-7;   // absolute |primal - dual| objective
    double feas_tol = 1e-7;  // relative primal and dual residual norms
    int max_iter = 200;
    double step_fraction = 0.98;
    double initial_scale = 1.0;  // X0 = Z0 = initial_scale * I
};

struct ConeSolution {
    SolveStatus status = SolveStatus::MaxIter;
    Eigen::MatrixXd X, Z;
    Eigen::VectorXd x, z, y;
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double primal_infeas = 0.0;
    double dual_infeas = 0.0;
    int iterations = 0;
};

ConeSolution solve_cone(const ConeProgram& program, const IpmOptions& options = {});

}  // namespace pepgrad
