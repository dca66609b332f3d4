#pragma once

// JSON and CSV encodings of the library's value types.

#include "pepgrad/bounds.hpp"
#include "pepgrad/certify.hpp"
#include "pepgrad/interp.hpp"
#include "pepgrad/pep.hpp"
#include "pepgrad/sdp.hpp"
#include "pepgrad/tight.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace pepgrad {

using json = nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

void to_json(json& j, const IterateTriple& t);
void from_json(const json& j, IterateTriple& t);
void to_json(json& j, const TripleSet& s);
void from_json(const json& j, TripleSet& s);

void to_json(json& j, const BoundReport& r);
void from_json(const json& j, BoundReport& r);

void to_json(json& j, const QuadraticConstraint& c);
void from_json(const json& j, QuadraticConstraint& c);
void to_json(json& j, const PepProgram& p);
void from_json(const json& j, PepProgram& p);

void to_json(json& j, const SdpSolution& s);
void from_json(const json& j, SdpSolution& s);

void to_json(json& j, const Certificate& c);
void from_json(const json& j, Certificate& c);
void to_json(json& j, const CertificateReport& r);
void from_json(const json& j, CertificateReport& r);

/// Report plus an echo of the instance it was computed for.
json certificate_report_json(const CertificateReport& report, const Certificate& cert,
                             const SmoothProblemSpec& spec, const StepSchedule& schedule,
                             double q_tol);

void to_json(json& j, const Segment& s);
void from_json(const json& j, Segment& s);

/// CSV with header k,x,f,g for a univariate trajectory.
void write_trajectory_csv(std::ostream& out, const GdRun& run);

}  // namespace pepgrad

namespace nlohmann {
template <>
struct adl_serializer<pepgrad::PiecewiseQuadratic> {
    static void to_json(json& j, const pepgrad::PiecewiseQuadratic& f);
    static pepgrad::PiecewiseQuadratic from_json(const json& j);
};
}  // namespace nlohmann
