#pragma once

// Solves the lifted performance-estimation program.

#include "pepgrad/ipm.hpp"
#include "pepgrad/pep.hpp"

#include <vector>

namespace pepgrad {

struct SdpOptions {
    double gap_tol = 1e-7;
    double feas_tol = 1e-7;
    int max_iter = 200;
};

/// Optimal point of a PepProgram. ell is the squared worst-case minimum
/// gradient norm; duals follow the program's constraint order.
struct SdpSolution {
    SolveStatus status = SolveStatus::MaxIter;
    double ell = 0.0;
    Eigen::MatrixXd G;
    Eigen::VectorXd f;
    Eigen::VectorXd duals;
    double gap = 0.0;  // primal minus dual objective, in the program's own units
    int iterations = 0;

    double sqrt_ell() const { return std::sqrt(std::max(ell, 0.0)); }
};

/// Largest Gram dimension accepted by solve().
inline constexpr int kMaxGramDim = 64;

/// Solves the program after rescaling it to L = 1, delta = 1, f* = 0; the
/// result is mapped back exactly (ell and G scale with L*delta, f with delta).
SdpSolution solve(const PepProgram& program, const SdpOptions& options = {});

/// Vectors v^1..v^{N+1} whose pairwise inner products reproduce G.
/// Eigenvalues below rank_tol are dropped; the vectors have dimension
/// max(1, rank). Throws NotPsd if G has an eigenvalue below -rank_tol.
std::vector<Eigen::VectorXd> extract_gram_vectors(const Eigen::MatrixXd& G,
                                                  double rank_tol = 1e-8);

}  // namespace pepgrad
