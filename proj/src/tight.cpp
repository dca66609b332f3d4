#include "pepgrad/tight.hpp"

#include "pepgrad/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pepgrad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (curv/2)(x - a)^2 + slope (x - a) + c, expanded to monomial form on [lo, hi).
Segment anchored(double lo, double hi, double curv, double a, double slope, double c) {
    return {lo, hi, 0.5 * curv, slope - curv * a, 0.5 * curv * a * a - slope * a + c};
}

}  // namespace

PiecewiseQuadratic::PiecewiseQuadratic(double L, std::vector<Segment> segments)
    : L_(L), segments_(std::move(segments)) {
    if (!(std::isfinite(L_) && L_ > 0.0)) throw InvalidArgument("L must be positive");
    if (segments_.empty()) throw InvalidArgument("piecewise quadratic needs a segment");
    if (segments_.front().lo != -kInf || segments_.back().hi != kInf) {
        throw InvalidArgument("segments must cover the whole real line");
    }
    for (std::size_t s = 0; s < segments_.size(); ++s) {
        const auto& seg = segments_[s];
        if (!(seg.lo < seg.hi)) throw InvalidArgument("segment with lo >= hi");
        if (std::abs(2.0 * seg.p) > L_ * (1.0 + 1e-12)) {
            throw InvalidArgument("segment curvature exceeds L");
        }
        if (s == 0) continue;
        const auto& prev = segments_[s - 1];
        if (prev.hi != seg.lo) throw InvalidArgument("segments are not contiguous");
        const auto left = evaluate_segment(s - 1, seg.lo);
        const auto right = evaluate_segment(s, seg.lo);
        const double scale = std::max({1.0, std::abs(left.value), std::abs(left.derivative)});
        if (std::abs(left.value - right.value) > kTolEq * scale ||
            std::abs(left.derivative - right.derivative) > kTolEq * scale) {
            throw InvalidArgument("piecewise quadratic is not C1 at x = " +
                                  std::to_string(seg.lo));
        }
    }
}

ValueAndDerivative PiecewiseQuadratic::evaluate_segment(std::size_t index, double x) const {
    const auto& s = segments_.at(index);
    return {(s.p * x + s.q) * x + s.r, 2.0 * s.p * x + s.q};
}

ValueAndDerivative PiecewiseQuadratic::evaluate(double x) const {
    // First segment whose lo exceeds x, minus one.
    const auto it = std::ranges::upper_bound(segments_, x, {}, &Segment::lo);
    const auto index = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
        0, std::distance(segments_.begin(), it) - 1));
    return evaluate_segment(index, x);
}

ValueAndDerivative evaluate(const PiecewiseQuadratic& f, double x) { return f.evaluate(x); }

TightInstance build_tight_instance(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    if (!(spec.delta > 0.0)) throw InvalidArgument("tight instance needs delta > 0");
    require_regime(schedule, spec.L, RegimeClass::UnitOrBelow, "tight instance");

    const double L = spec.L;
    const int N = schedule.size();
    const double U = bound_main(spec, schedule);

    std::vector<double> t_aug(schedule.values());
    t_aug.push_back(1.0 / L);

    // l_i = U * sum_{k >= i} t_k, stored 0-based with l[N+1] = 0.
    std::vector<double> l(static_cast<std::size_t>(N + 2), 0.0);
    for (int i = N; i >= 0; --i) {
        l[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i + 1)] +
                                         U * t_aug[static_cast<std::size_t>(i)];
    }
    l[static_cast<std::size_t>(N + 1)] = 0.0;

    std::vector<double> fv(static_cast<std::size_t>(N + 1));
    double decrease = 0.0;
    for (int i = 0; i <= N; ++i) {
        fv[static_cast<std::size_t>(i)] = spec.f_star + spec.delta - 0.25 * U * U * decrease;
        if (i < N) {
            const double t = schedule.t(i + 1);
            decrease += -L * t * t + 4.0 * t;
        }
    }

    // Ascending order: bottom piece, then for i = N..1 the convex piece
    // anchored at l_{i+1} followed by the concave one, then the top piece.
    const auto li = [&](int i) { return l[static_cast<std::size_t>(i - 1)]; };
    const auto fi = [&](int i) { return fv[static_cast<std::size_t>(i - 1)]; };
    const auto mid = [&](int i) { return 0.5 * (li(i) + li(i + 1)); };

    std::vector<Segment> segs;
    segs.reserve(static_cast<std::size_t>(2 * N + 2));
    segs.push_back({-kInf, mid(N + 1), 0.5 * L, 0.0, spec.f_star});
    for (int i = N; i >= 1; --i) {
        segs.push_back(anchored(mid(i + 1), li(i + 1), L, li(i + 1), U, fi(i + 1)));
        segs.push_back(anchored(li(i + 1), mid(i), -L, li(i + 1), U, fi(i + 1)));
    }
    segs.push_back(anchored(mid(1), kInf, L, li(1), U, fi(1)));

    const double x1 = li(1);
    return TightInstance{spec,
                         schedule,
                         PiecewiseQuadratic(L, std::move(segs)),
                         U,
                         std::move(l),
                         std::move(fv),
                         x1,
                         StepSchedule(std::move(t_aug))};
}

GdRun run_gd(const Oracle& oracle, const Eigen::VectorXd& x1, const StepSchedule& schedule) {
    const auto call = [&](const Eigen::VectorXd& x) {
        OracleValue v;
        try {
            v = oracle(x);
        } catch (const std::exception& e) {
            throw OracleError(std::string("oracle failed: ") + e.what());
        }
        if (!std::isfinite(v.value) || v.gradient.size() != x.size() || !v.gradient.allFinite()) {
            throw OracleError("oracle returned a non-finite value or a gradient of wrong size");
        }
        return v;
    };

    GdRun run;
    Eigen::VectorXd x = x1;
    for (int k = 1; k <= schedule.size() + 1; ++k) {
        const OracleValue v = call(x);
        run.trajectory.push_back({x, v.gradient, v.value});
        const double norm = v.gradient.norm();
        if (k == 1 || norm < run.min_grad_norm) {
            run.min_grad_norm = norm;
            run.argmin_index = k;
        }
        if (k <= schedule.size()) x = x - schedule.t(k) * v.gradient;
    }
    return run;
}

GdRun run_gd(const PiecewiseQuadratic& f, double x1, const StepSchedule& schedule) {
    const Oracle oracle = [&f](const Eigen::VectorXd& x) {
        const auto vd = f.evaluate(x(0));
        return OracleValue{vd.value, Eigen::VectorXd::Constant(1, vd.derivative)};
    };
    return run_gd(oracle, Eigen::VectorXd::Constant(1, x1), schedule);
}

AttainmentResult attainment_check(const SmoothProblemSpec& spec, const StepSchedule& schedule,
                                  double tol) {
    const TightInstance inst = build_tight_instance(spec, schedule);
    const GdRun run = run_gd(inst.f, inst.x1, schedule);
    AttainmentResult res{inst.U, run.min_grad_norm, false};
    res.exact = std::abs(res.attained - res.bound) <= tol * std::max(1.0, res.bound);
    return res;
}

TripleSet export_triples(const TightInstance& instance) {
    TripleSet set;
    set.L = instance.spec.L;
    for (std::size_t i = 0; i < instance.f_values.size(); ++i) {
        set.triples.push_back({Eigen::VectorXd::Constant(1, instance.l[i]),
                               Eigen::VectorXd::Constant(1, instance.U), instance.f_values[i]});
    }
    return set;
}

}  // namespace pepgrad
