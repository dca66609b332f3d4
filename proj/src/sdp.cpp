#include "pepgrad/sdp.hpp"

#include <cmath>
#include <string>

namespace pepgrad {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Variable layout of the orthant block: f^1..f^{N+1}, ell, then one slack
// per constraint. f and ell may be taken nonnegative because f* = 0 after
// normalisation and stationarity forces f^k >= G_kk/2 >= 0.
ConeProgram to_cone(const PepProgram& prog) {
    const int n = prog.gram_dim;
    const int m = static_cast<int>(prog.constraints.size());
    const int ell = n;
    const int p = n + 1 + m;

    ConeProgram cone;
    cone.Cs = MatrixXd::Zero(n, n);
    cone.cl = VectorXd::Zero(p);
    cone.cl(ell) = -1.0;  // maximise ell
    cone.Al = MatrixXd::Zero(m, p);
    cone.b.resize(m);
    cone.As.reserve(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        const auto& c = prog.constraints[static_cast<std::size_t>(r)];
        cone.As.push_back(c.A);
        cone.Al.row(r).head(n) = c.f_coeff.transpose();
        cone.Al(r, ell) = c.ell_coeff;
        cone.Al(r, n + 1 + r) = -1.0;
        cone.b(r) = -(c.const_coeff + c.fstar_coeff * prog.spec.f_star);
    }
    return cone;
}

bool certified(const PepProgram& prog, const SdpSolution& s, const SdpOptions& options) {
    if (!(s.gap <= options.gap_tol)) return false;
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<MatrixXd>(s.G, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (min_eig < -kTolEq) return false;
    for (const auto& c : prog.constraints) {
        if (c.value(s.G, s.f, prog.spec.f_star, s.ell) < -options.feas_tol) return false;
    }
    return s.duals.minCoeff() >= -kTolEq;
}

}  // namespace

SdpSolution solve(const PepProgram& program, const SdpOptions& options) {
    if (program.gram_dim < 2 || program.gram_dim > kMaxGramDim) {
        throw InvalidArgument("gram_dim must lie in 2.." + std::to_string(kMaxGramDim));
    }
    const auto& spec = program.spec;
    spec.validate();

    std::vector<double> scaled_steps;
    for (double t : program.schedule.steps()) scaled_steps.push_back(t * spec.L);
    const PepProgram unit =
        assemble_pep(SmoothProblemSpec{1.0, 1.0, 0.0}, StepSchedule(std::move(scaled_steps)));

    IpmOptions ipm;
    ipm.gap_tol = options.gap_tol;
    ipm.feas_tol = options.feas_tol;
    ipm.max_iter = options.max_iter;
    const ConeSolution cone = solve_cone(to_cone(unit), ipm);

    const int n = unit.gram_dim;
    SdpSolution unit_sol;
    unit_sol.status = cone.status;
    unit_sol.iterations = cone.iterations;
    unit_sol.G = cone.X;
    unit_sol.f = cone.x.head(n);
    unit_sol.ell = cone.x(n);
    unit_sol.duals = cone.y;
    unit_sol.gap = cone.primal_obj - cone.dual_obj;
    if (unit_sol.status == SolveStatus::Optimal && !certified(unit, unit_sol, options)) {
        unit_sol.status = SolveStatus::NumericalTrouble;
    }

    // Undo the normalisation. Pair, stationarity and gap rows scale with
    // delta, link rows and the objective with L*delta.
    const double s = spec.L * spec.delta;
    SdpSolution sol = unit_sol;
    sol.ell = s * unit_sol.ell;
    sol.G = s * unit_sol.G;
    sol.f = (spec.delta * unit_sol.f).array() + spec.f_star;
    sol.gap = s * unit_sol.gap;
    for (int k = 1; k <= program.N + 1; ++k) {
        sol.duals(static_cast<Eigen::Index>(unit.link_index(k))) /= spec.L;
    }
    sol.duals *= spec.L;
    return sol;
}

std::vector<Eigen::VectorXd> extract_gram_vectors(const Eigen::MatrixXd& G, double rank_tol) {
    if (G.rows() != G.cols()) throw DimensionMismatch("Gram matrix must be square");
    if (G.size() > 0 && (G - G.transpose()).cwiseAbs().maxCoeff() >
                            1e-12 * std::max(1.0, G.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("Gram matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (G + G.transpose()));
    const VectorXd& lambda = eig.eigenvalues();
    if (G.rows() > 0 && lambda(0) < -rank_tol) {
        throw NotPsd("Gram matrix has eigenvalue " + std::to_string(lambda(0)));
    }
    std::vector<Eigen::Index> kept;
    for (Eigen::Index c = 0; c < lambda.size(); ++c) {
        if (lambda(c) > rank_tol) kept.push_back(c);
    }
    const auto dim = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(kept.size()));
    std::vector<Eigen::VectorXd> vectors(static_cast<std::size_t>(G.rows()),
                                         Eigen::VectorXd::Zero(dim));
    for (Eigen::Index i = 0; i < G.rows(); ++i) {
        for (std::size_t c = 0; c < kept.size(); ++c) {
            vectors[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(c)) =
                eig.eigenvectors()(i, kept[c]) * std::sqrt(lambda(kept[c]));
        }
    }
    return vectors;
}

}  // namespace pepgrad
