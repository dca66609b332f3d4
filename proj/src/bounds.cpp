#include "pepgrad/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pepgrad {

double per_step_weight(double t, double L) {
    return std::min(-L * L * t * t * t + 4.0 * t, -L * t * t + 4.0 * t);
}

double total_weight(const StepSchedule& schedule, double L) {
    double sum = 0.0;
    for (double t : schedule.steps()) sum += per_step_weight(t, L);
    return sum;
}

double bound_main(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    require_regime(schedule, spec.L, RegimeClass::BelowSqrt3, "bound_main");
    return std::sqrt(4.0 * spec.delta / (total_weight(schedule, spec.L) + 2.0 / spec.L));
}

double bound_taylor(const SmoothProblemSpec& spec, int N) {
    spec.validate();
    if (N < 1) throw InvalidArgument("N must be at least 1");
    return std::sqrt(4.0 * spec.L * spec.delta / (3.0 * N));
}

double bound_drori(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    require_regime(schedule, spec.L, RegimeClass::UnitOrBelow, "bound_drori");
    double denom = 0.0;
    for (double t : schedule.steps()) denom += t * (4.0 - spec.L * t);
    return std::sqrt(4.0 * spec.delta / denom);
}

double bound_nesterov(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    require_regime(schedule, spec.L, RegimeClass::Conjecture, "bound_nesterov");
    double denom = 1.0 / (2.0 * spec.L);
    for (double t : schedule.steps()) denom += t * (1.0 - 0.5 * spec.L * t);
    return std::sqrt(spec.delta / denom);
}

ConjecturedBound bound_conjecture(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    require_regime(schedule, spec.L, RegimeClass::Conjecture, "bound_conjecture");
    return {std::sqrt(4.0 * spec.delta / total_weight(schedule, spec.L))};
}

double bound_b3(const SmoothProblemSpec& spec, int N) {
    spec.validate();
    if (N < 1) throw InvalidArgument("N must be at least 1");
    constexpr double s3 = std::numbers::sqrt3;
    return std::sqrt(6.0 * s3 * spec.L * spec.delta / (8.0 * N + 3.0 * s3));
}

double optimal_step(double L) {
    if (!(std::isfinite(L) && L > 0.0)) throw InvalidArgument("L must be positive");
    return 2.0 / (std::numbers::sqrt3 * L);
}

BoundReport bound_report(const SmoothProblemSpec& spec, const StepSchedule& schedule) {
    spec.validate();
    BoundReport report;
    report.regime = classify_regime(schedule, spec.L);
    const auto within = [&](RegimeClass needed) {
        return static_cast<int>(report.regime) <= static_cast<int>(needed);
    };
    if (within(RegimeClass::Conjecture)) {
        report.nesterov = bound_nesterov(spec, schedule);
        report.conjecture = bound_conjecture(spec, schedule);
    }
    if (within(RegimeClass::BelowSqrt3)) report.main = bound_main(spec, schedule);
    if (within(RegimeClass::UnitOrBelow)) report.drori = bound_drori(spec, schedule);

    const bool unit_steps = std::ranges::all_of(
        schedule.steps(), [&](double t) { return std::abs(t * spec.L - 1.0) <= kTolEq; });
    if (unit_steps) report.taylor = bound_taylor(spec, schedule.size());
    return report;
}

}  // namespace pepgrad
