#pragma once

// Univariate worst-case function for the fixed-step gradient method with
// steps in (0, 1/L]: a C^1 piecewise quadratic on which the method's minimum
// gradient norm equals the main bound exactly.

#include "pepgrad/core.hpp"
#include "pepgrad/interp.hpp"

#include <functional>
#include <vector>

namespace pepgrad {

/// f(x) = p x^2 + q x + r on [lo, hi). lo = -inf / hi = +inf on the ends.
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;

    bool operator==(const Segment&) const = default;
};

struct ValueAndDerivative {
    double value = 0.0;
    double derivative = 0.0;
};

class PiecewiseQuadratic {
public:
    /// Validates coverage of the real line, C^1 junctions and |2p| <= L.
    PiecewiseQuadratic(double L, std::vector<Segment> segments);

    double L() const { return L_; }
    const std::vector<Segment>& segments() const { return segments_; }

    /// Segment ownership is half-open [lo, hi); the last segment is closed.
    ValueAndDerivative evaluate(double x) const;
    /// Evaluates segment `index` (0-based) at x, regardless of ownership.
    ValueAndDerivative evaluate_segment(std::size_t index, double x) const;

    bool operator==(const PiecewiseQuadratic&) const = default;

private:
    double L_;
    std::vector<Segment> segments_;
};

struct TightInstance {
    SmoothProblemSpec spec;
    StepSchedule schedule;
    PiecewiseQuadratic f;
    double U = 0.0;                 // main bound, also |f'| at every iterate
    std::vector<double> l;          // l_1..l_{N+2}, l_{N+2} = 0
    std::vector<double> f_values;   // f^1..f^{N+1}
    double x1 = 0.0;                // = l_1
    StepSchedule t_aug;             // schedule with t_{N+1} = 1/L appended
};

/// Requires every t_k in (0, 1/L] and delta > 0. The instance attains its
/// minimum f* at x = 0.
TightInstance build_tight_instance(const SmoothProblemSpec& spec, const StepSchedule& schedule);

ValueAndDerivative evaluate(const PiecewiseQuadratic& f, double x);

struct OracleValue {
    double value = 0.0;
    Eigen::VectorXd gradient;
};
using Oracle = std::function<OracleValue(const Eigen::VectorXd&)>;

struct GdRun {
    std::vector<IterateTriple> trajectory;  // x^1..x^{N+1}
    double min_grad_norm = 0.0;
    int argmin_index = 0;                   // 1-based, lowest k among ties
};

/// Runs x^{k+1} = x^k - t_k grad f(x^k). Oracle failures (exceptions,
/// non-finite output, wrong gradient size) are raised as OracleError.
GdRun run_gd(const Oracle& oracle, const Eigen::VectorXd& x1, const StepSchedule& schedule);
GdRun run_gd(const PiecewiseQuadratic& f, double x1, const StepSchedule& schedule);

struct AttainmentResult {
    double bound = 0.0;
    double attained = 0.0;
    bool exact = false;
};

/// Builds the instance, runs the method from x1 and compares the minimum
/// gradient norm with the bound: exact iff |attained - bound| <= tol * max(1, bound).
AttainmentResult attainment_check(const SmoothProblemSpec& spec, const StepSchedule& schedule,
                                  double tol = 1e-9);

/// The N+1 iterate triples (l_i, U, f^i) of the instance.
TripleSet export_triples(const TightInstance& instance);

}  // namespace pepgrad
