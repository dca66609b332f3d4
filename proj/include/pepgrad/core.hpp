#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pepgrad {

/// Default absolute tolerance for equality assertions.
inline constexpr double kTolEq = 1e-9;

// Error hierarchy. Every error raised by the library derives from Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
/// A step schedule lies outside the interval a bound or construction is valid on.
struct RegimeError : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
struct NotInterpolable : Error {
    using Error::Error;
};
struct NotPsd : Error {
    using Error::Error;
};
struct OracleError : Error {
    using Error::Error;
};

/// Problem class parameters: gradient Lipschitz constant L, initial gap
/// delta = f(x1) - f*, and the lower bound f* itself.
struct SmoothProblemSpec {
    double L = 1.0;
    double delta = 0.0;
    double f_star = 0.0;

    /// Validating factory; throws InvalidArgument unless L > 0 and delta >= 0.
    static SmoothProblemSpec make(double L, double delta, double f_star = 0.0);
    void validate() const;
};

/// Fixed step lengths t_1..t_N of the gradient method, all positive.
class StepSchedule {
public:
    StepSchedule() = default;
    explicit StepSchedule(std::vector<double> steps);

    static StepSchedule constant(double t, int N);

    int size() const { return static_cast<int>(steps_.size()); }
    /// 1-based access, t(1) is the first step.
    double t(int k) const { return steps_.at(static_cast<std::size_t>(k - 1)); }
    std::span<const double> steps() const { return steps_; }
    const std::vector<double>& values() const { return steps_; }

    bool operator==(const StepSchedule&) const = default;

private:
    std::vector<double> steps_;
};

/// Nested step-length regimes, tightest first:
/// UnitOrBelow (t <= 1/L) inside BelowSqrt3 (t < sqrt(3)/L) inside
/// Conjecture (t < 2/L).
enum class RegimeClass { UnitOrBelow, BelowSqrt3, Conjecture, Outside };

std::string_view to_string(RegimeClass r);

RegimeClass classify_regime(const StepSchedule& schedule, double L);

/// Interval text used in RegimeError messages, e.g. "(0, sqrt(3)/L)".
std::string_view regime_interval(RegimeClass r);

/// Throws RegimeError naming `needed` when the schedule is not inside it.
void require_regime(const StepSchedule& schedule, double L, RegimeClass needed,
                    std::string_view what);

/// One (point, gradient, value) triple.
struct IterateTriple {
    Eigen::VectorXd x;
    Eigen::VectorXd g;
    double f = 0.0;

    int dim() const { return static_cast<int>(x.size()); }
    void validate() const;
};

}  // namespace pepgrad
