#include "pepgrad/interp.hpp"

#include <algorithm>
#include <cmath>

namespace pepgrad {

void TripleSet::validate() const {
    if (!(std::isfinite(L) && L > 0.0)) throw InvalidArgument("L must be positive");
    if (triples.empty()) throw InvalidArgument("triple set is empty");
    const int n = triples.front().dim();
    for (const auto& t : triples) {
        t.validate();
        if (t.dim() != n) throw DimensionMismatch("triples have different dimensions");
    }
}

double interp_residual(const IterateTriple& a, const IterateTriple& b, double L) {
    a.validate();
    b.validate();
    if (a.dim() != b.dim()) throw DimensionMismatch("triples have different dimensions");
    const Eigen::VectorXd dx = a.x - b.x;
    const Eigen::VectorXd dg = a.g - b.g;
    return a.f - b.f - b.g.dot(dx) - dg.squaredNorm() / (2.0 * L) +
           0.25 * L * (dx - dg / L).squaredNorm();
}

InterpolationReport check_interpolation(const TripleSet& set, double tol) {
    set.validate();
    InterpolationReport report;
    const int m = set.size();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const double r = interp_residual(set.triples[i], set.triples[j], set.L);
            if (r < -tol) report.violations.push_back({i + 1, j + 1, r});
        }
    }
    std::ranges::stable_sort(report.violations, {}, &Violation::residual);
    report.ok = report.violations.empty();
    return report;
}

ExtensionMinimum extension_minimum(const TripleSet& set, double tol) {
    const auto report = check_interpolation(set, tol);
    if (!report.ok) {
        const auto& v = report.violations.front();
        throw NotInterpolable("pair (" + std::to_string(v.i) + ", " + std::to_string(v.j) +
                              ") violates the interpolation condition");
    }
    ExtensionMinimum best;
    for (int i = 0; i < set.size(); ++i) {
        const auto& t = set.triples[i];
        const double value = t.f - t.g.squaredNorm() / (2.0 * set.L);
        if (best.witness_index == 0 || value < best.f_min) {
            best.f_min = value;
            best.witness_index = i + 1;
            best.x_min = t.x - t.g / set.L;
        }
    }
    return best;
}

bool descent_lemma_check(const IterateTriple& triple, double f_at_step, double L, double tol) {
    triple.validate();
    return f_at_step <= triple.f - triple.g.squaredNorm() / (2.0 * L) + tol;
}

}  // namespace pepgrad
