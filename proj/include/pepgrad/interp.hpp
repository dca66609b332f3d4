#pragma once

// L-smooth interpolation conditions on finite sets of (x, g, f) triples.

#include "pepgrad/core.hpp"

#include <vector>

namespace pepgrad {

/// Triples sharing one ambient dimension, together with the smoothness constant.
struct TripleSet {
    double L = 1.0;
    std::vector<IterateTriple> triples;

    /// Throws InvalidArgument / DimensionMismatch when malformed.
    void validate() const;
    int size() const { return static_cast<int>(triples.size()); }
    int dim() const { return triples.empty() ? 0 : triples.front().dim(); }
};

/// f_a - f_b - <g_b, x_a - x_b> - ||g_a - g_b||^2 / (2L)
///   + (L/4) ||x_a - x_b - (g_a - g_b)/L||^2.
/// Nonnegative iff the ordered pair (a, b) satisfies the interpolation condition.
double interp_residual(const IterateTriple& a, const IterateTriple& b, double L);

struct Violation {
    int i = 0;  // 1-based
    int j = 0;  // 1-based
    double residual = 0.0;
};

struct InterpolationReport {
    bool ok = true;
    std::vector<Violation> violations;  // ascending residual
};

/// Checks every ordered pair i != j; a pair fails when its residual < -tol.
InterpolationReport check_interpolation(const TripleSet& set, double tol = kTolEq);

struct ExtensionMinimum {
    double f_min = 0.0;
    Eigen::VectorXd x_min;
    int witness_index = 0;  // 1-based, lowest index among ties
};

/// Minimum of the minimal L-smooth extension through the triples:
/// f_min = min_i f_i - ||g_i||^2/(2L), attained at x_i - g_i/L.
/// Throws NotInterpolable when check_interpolation(set, tol) fails.
ExtensionMinimum extension_minimum(const TripleSet& set, double tol = kTolEq);

/// Descent lemma: f(x - g/L) <= f - ||g||^2/(2L) (+ tol).
bool descent_lemma_check(const IterateTriple& triple, double f_at_step, double L,
                         double tol = kTolEq);

}  // namespace pepgrad
