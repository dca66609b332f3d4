#include "pepgrad/core.hpp"

#include <cmath>
#include <numbers>

namespace pepgrad {

SmoothProblemSpec SmoothProblemSpec::make(double L, double delta, double f_star) {
    SmoothProblemSpec spec{L, delta, f_star};
    spec.validate();
    return spec;
}

void SmoothProblemSpec::validate() const {
    if (!(std::isfinite(L) && L > 0.0)) {
        throw InvalidArgument("L must be a positive finite number");
    }
    if (!(std::isfinite(delta) && delta >= 0.0)) {
        throw InvalidArgument("delta must be a nonnegative finite number");
    }
    if (!std::isfinite(f_star)) {
        throw InvalidArgument("f_star must be finite");
    }
}

StepSchedule::StepSchedule(std::vector<double> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) {
        throw InvalidArgument("step schedule needs at least one step");
    }
    for (double t : steps_) {
        if (!(std::isfinite(t) && t > 0.0)) {
            throw InvalidArgument("step lengths must be positive and finite");
        }
    }
}

StepSchedule StepSchedule::constant(double t, int N) {
    if (N < 1) {
        throw InvalidArgument("N must be at least 1");
    }
    return StepSchedule(std::vector<double>(static_cast<std::size_t>(N), t));
}

std::string_view to_string(RegimeClass r) {
    switch (r) {
        case RegimeClass::UnitOrBelow: return "UnitOrBelow";
        case RegimeClass::BelowSqrt3: return "BelowSqrt3";
        case RegimeClass::Conjecture: return "Conjecture";
        case RegimeClass::Outside: return "Outside";
    }
    return "?";
}

std::string_view regime_interval(RegimeClass r) {
    switch (r) {
        case RegimeClass::UnitOrBelow: return "(0, 1/L]";
        case RegimeClass::BelowSqrt3: return "(0, sqrt(3)/L)";
        case RegimeClass::Conjecture: return "(0, 2/L)";
        case RegimeClass::Outside: return "(0, inf)";
    }
    return "?";
}

RegimeClass classify_regime(const StepSchedule& schedule, double L) {
    // Classification is on the products t*L so that (c*t, L/c) agrees with (t, L).
    double worst = 0.0;
    for (double t : schedule.steps()) {
        worst = std::max(worst, t * L);
    }
    if (worst <= 1.0) return RegimeClass::UnitOrBelow;
    if (worst < std::numbers::sqrt3) return RegimeClass::BelowSqrt3;
    if (worst < 2.0) return RegimeClass::Conjecture;
    return RegimeClass::Outside;
}

void require_regime(const StepSchedule& schedule, double L, RegimeClass needed,
                    std::string_view what) {
    if (static_cast<int>(classify_regime(schedule, L)) > static_cast<int>(needed)) {
        throw RegimeError(std::string(what) + " requires every step in " +
                          std::string(regime_interval(needed)));
    }
}

void IterateTriple::validate() const {
    if (x.size() < 1 || x.size() != g.size()) {
        throw DimensionMismatch("triple needs x and g of equal dimension >= 1");
    }
}

}  // namespace pepgrad
