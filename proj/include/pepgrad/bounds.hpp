#pragma once

// Closed-form worst-case bounds on min_k ||grad f(x^k)|| for the fixed-step
// gradient method on L-smooth functions.

#include "pepgrad/core.hpp"

#include <optional>
#include <string_view>

namespace pepgrad {

/// min(-L^2 t^3 + 4t, -L t^2 + 4t); the per-step contribution to the main bound.
double per_step_weight(double t, double L);

/// Sum of per_step_weight over the schedule.
double total_weight(const StepSchedule& schedule, double L);

/// sqrt(4 delta / (sum_k w(t_k) + 2/L)). Valid for every t_k in (0, sqrt(3)/L).
double bound_main(const SmoothProblemSpec& spec, const StepSchedule& schedule);

/// sqrt(4 L delta / (3N)), the rate claimed for t_k = 1/L.
double bound_taylor(const SmoothProblemSpec& spec, int N);

/// sqrt(4 delta / sum_k t_k (4 - L t_k)), valid for t_k in (0, 1/L].
double bound_drori(const SmoothProblemSpec& spec, const StepSchedule& schedule);

/// sqrt(delta / (sum_k t_k (1 - L t_k / 2) + 1/(2L))), valid for t_k in (0, 2/L).
double bound_nesterov(const SmoothProblemSpec& spec, const StepSchedule& schedule);

/// A value that is only conjectured, never proven. Reports must keep the tag.
struct ConjecturedBound {
    double value = 0.0;
    static constexpr std::string_view tag = "CONJECTURE";
};

/// sqrt(4 delta / sum_k w(t_k)) for t_k in (0, 2/L). Unproven.
ConjecturedBound bound_conjecture(const SmoothProblemSpec& spec, const StepSchedule& schedule);

/// Main bound specialised to t_k = 2/(sqrt(3) L): sqrt(6 sqrt(3) L delta / (8N + 3 sqrt(3))).
double bound_b3(const SmoothProblemSpec& spec, int N);

/// The constant step 2/(sqrt(3) L) that minimises the main bound.
double optimal_step(double L);

/// All bounds for one instance. A field is empty when the schedule is outside
/// that bound's regime; taylor is present only for the constant schedule t_k = 1/L.
struct BoundReport {
    std::optional<double> nesterov;
    std::optional<double> taylor;
    std::optional<double> drori;
    std::optional<double> main;
    std::optional<ConjecturedBound> conjecture;
    RegimeClass regime = RegimeClass::Outside;
};

BoundReport bound_report(const SmoothProblemSpec& spec, const StepSchedule& schedule);

}  // namespace pepgrad
