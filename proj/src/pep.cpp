#include "pepgrad/pep.hpp"

#include <string>

namespace pepgrad {

namespace {

void check_index(int k, int N, const char* what) {
    if (k < 1 || k > N + 1) {
        throw IndexError(std::string(what) + " index " + std::to_string(k) +
                         " outside 1.." + std::to_string(N + 1));
    }
}

Eigen::VectorXd unit(int k, int dim) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(k - 1) = 1.0;
    return e;
}

// Coefficients of x^m in the gradient basis, with x^1 = 0.
Eigen::VectorXd iterate_coeffs(int m, const StepSchedule& schedule) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(schedule.size() + 1);
    for (int k = 1; k < m; ++k) c(k - 1) = -schedule.t(k);
    return c;
}

QuadraticConstraint blank(ConstraintKind kind, int N) {
    QuadraticConstraint c;
    c.kind = kind;
    c.A = Eigen::MatrixXd::Zero(N + 1, N + 1);
    c.f_coeff = Eigen::VectorXd::Zero(N + 1);
    return c;
}

}  // namespace

std::string_view to_string(ConstraintKind kind) {
    switch (kind) {
        case ConstraintKind::Pair: return "pair";
        case ConstraintKind::Stationarity: return "stationarity";
        case ConstraintKind::Gap: return "gap";
        case ConstraintKind::Link: return "link";
    }
    return "?";
}

ConstraintKind constraint_kind_from_string(std::string_view s) {
    if (s == "pair") return ConstraintKind::Pair;
    if (s == "stationarity") return ConstraintKind::Stationarity;
    if (s == "gap") return ConstraintKind::Gap;
    if (s == "link") return ConstraintKind::Link;
    throw InvalidArgument("unknown constraint kind '" + std::string(s) + "'");
}

double QuadraticConstraint::value(const Eigen::MatrixXd& G, const Eigen::VectorXd& f,
                                  double f_star, double ell) const {
    if (G.rows() != A.rows() || G.cols() != A.cols() || f.size() != f_coeff.size()) {
        throw DimensionMismatch("constraint evaluated at a point of the wrong size");
    }
    return f_coeff.dot(f) + fstar_coeff * f_star + const_coeff + ell_coeff * ell +
           (A.cwiseProduct(G)).sum();
}

QuadraticConstraint build_pair_constraint(int i, int j, const StepSchedule& schedule, double L) {
    const int N = schedule.size();
    check_index(i, N, "pair");
    check_index(j, N, "pair");
    if (i == j) throw IndexError("pair constraint needs i != j");

    auto c = blank(ConstraintKind::Pair, N);
    c.i = i;
    c.j = j;
    c.f_coeff(i - 1) = 1.0;
    c.f_coeff(j - 1) = -1.0;

    // Accumulate each term as an outer product of gradient-basis coefficients:
    //   -<g^j, x^i - x^j> - ||g^i - g^j||^2/(2L) + (L/4)||x^i - x^j - (g^i - g^j)/L||^2
    const Eigen::VectorXd dx = iterate_coeffs(i, schedule) - iterate_coeffs(j, schedule);
    const Eigen::VectorXd dg = unit(i, N + 1) - unit(j, N + 1);
    const Eigen::VectorXd u = dx - dg / L;
    Eigen::MatrixXd A = -unit(j, N + 1) * dx.transpose();
    A -= dg * dg.transpose() / (2.0 * L);
    A += 0.25 * L * u * u.transpose();
    c.A = 0.5 * (A + A.transpose());
    return c;
}

QuadraticConstraint build_stationarity_constraint(int k, int N, double L) {
    check_index(k, N, "stationarity");
    auto c = blank(ConstraintKind::Stationarity, N);
    c.i = k;
    c.f_coeff(k - 1) = 1.0;
    c.fstar_coeff = -1.0;
    c.A(k - 1, k - 1) = -1.0 / (2.0 * L);
    return c;
}

QuadraticConstraint build_gap_constraint(int N, double delta) {
    auto c = blank(ConstraintKind::Gap, N);
    c.f_coeff(0) = -1.0;
    c.fstar_coeff = 1.0;
    c.const_coeff = delta;
    return c;
}

QuadraticConstraint build_link_constraint(int k, int N) {
    check_index(k, N, "link");
    auto c = blank(ConstraintKind::Link, N);
    c.i = k;
    c.A(k - 1, k - 1) = 1.0;
    c.ell_coeff = -1.0;
    return c;
}

std::size_t pep_constraint_count(int N) {
    const auto n = static_cast<std::size_t>(N);
    return (n + 1) * n + (n + 1) + 1 + (n + 1);
}

std::size_t PepProgram::pair_index(int i, int j) const {
    check_index(i, N, "pair");
    check_index(j, N, "pair");
    if (i == j) throw IndexError("pair constraint needs i != j");
    // Row i holds N entries (every j != i).
    const auto row = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(N);
    return row + static_cast<std::size_t>(j < i ? j - 1 : j - 2);
}

std::size_t PepProgram::stationarity_index(int k) const {
    check_index(k, N, "stationarity");
    return static_cast<std::size_t>((N + 1) * N + (k - 1));
}

std::size_t PepProgram::gap_index() const {
    return static_cast<std::size_t>((N + 1) * N + (N + 1));
}

std::size_t PepProgram::link_index(int k) const {
    check_index(k, N, "link");
    return gap_index() + static_cast<std::size_t>(k);
}

PepProgram assemble_pep(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    PepProgram program;
    program.spec = spec;
    program.schedule = schedule;
    program.N = schedule.size();
    program.gram_dim = program.N + 1;
    const int N = program.N;

    program.constraints.reserve(pep_constraint_count(N));
    for (int i = 1; i <= N + 1; ++i) {
        for (int j = 1; j <= N + 1; ++j) {
            if (i != j) program.constraints.push_back(build_pair_constraint(i, j, schedule, spec.L));
        }
    }
    for (int k = 1; k <= N + 1; ++k) {
        program.constraints.push_back(build_stationarity_constraint(k, N, spec.L));
    }
    program.constraints.push_back(build_gap_constraint(N, spec.delta));
    for (int k = 1; k <= N + 1; ++k) {
        program.constraints.push_back(build_link_constraint(k, N));
    }
    return program;
}

}  // namespace pepgrad
