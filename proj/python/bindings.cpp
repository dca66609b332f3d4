#include "pepgrad/bounds.hpp"
#include "pepgrad/certify.hpp"
#include "pepgrad/interp.hpp"
#include "pepgrad/io.hpp"
#include "pepgrad/pep.hpp"
#include "pepgrad/sdp.hpp"
#include "pepgrad/tight.hpp"

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace pepgrad;

PYBIND11_MODULE(_pepgrad, m) {
    m.doc() = "Worst-case analysis of fixed-step gradient descent on L-smooth functions";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<RegimeError>(m, "RegimeError", error.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
    py::register_exception<NotInterpolable>(m, "NotInterpolable", error.ptr());
    py::register_exception<IndexError>(m, "PepIndexError", PyExc_IndexError);
    py::register_exception<NotPsd>(m, "NotPsd", error.ptr());
    py::register_exception<OracleError>(m, "OracleError", error.ptr());

    py::class_<SmoothProblemSpec>(m, "SmoothProblemSpec")
        .def(py::init(&SmoothProblemSpec::make), "L"_a = 1.0, "delta"_a = 1.0, "f_star"_a = 0.0)
        .def_readonly("L", &SmoothProblemSpec::L)
        .def_readonly("delta", &SmoothProblemSpec::delta)
        .def_readonly("f_star", &SmoothProblemSpec::f_star)
        .def("__repr__", [](const SmoothProblemSpec& s) {
            return "SmoothProblemSpec(L=" + format_double(s.L) + ", delta=" + format_double(s.delta) +
                   ", f_star=" + format_double(s.f_star) + ")";
        });

    py::class_<StepSchedule>(m, "StepSchedule")
        .def(py::init<std::vector<double>>(), "steps"_a)
        .def_static("constant", &StepSchedule::constant, "t"_a, "N"_a)
        .def_property_readonly("steps", &StepSchedule::values)
        .def("__len__", &StepSchedule::size)
        .def(py::self == py::self)
        .def("__repr__", [](const StepSchedule& s) { return "StepSchedule(" + json(s.values()).dump() + ")"; });
    py::implicitly_convertible<std::vector<double>, StepSchedule>();

    py::enum_<RegimeClass>(m, "RegimeClass")
        .value("UNIT_OR_BELOW", RegimeClass::UnitOrBelow)
        .value("BELOW_SQRT3", RegimeClass::BelowSqrt3)
        .value("CONJECTURE", RegimeClass::Conjecture)
        .value("OUTSIDE", RegimeClass::Outside);
    m.def("classify_regime", &classify_regime, "schedule"_a, "L"_a);

    m.def("bound_main", &bound_main, "spec"_a, "schedule"_a);
    m.def("bound_nesterov", &bound_nesterov, "spec"_a, "schedule"_a);
    m.def("bound_drori", &bound_drori, "spec"_a, "schedule"_a);
    m.def("bound_taylor", &bound_taylor, "spec"_a, "N"_a);
    m.def("bound_b3", &bound_b3, "spec"_a, "N"_a);
    m.def("bound_conjecture",
          [](const SmoothProblemSpec& spec, const StepSchedule& s) { return bound_conjecture(spec, s).value; },
          "spec"_a, "schedule"_a, "Conjectured bound for steps in (0, 2/L); not a proven guarantee.");
    m.def("optimal_step", &optimal_step, "L"_a);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("main", &BoundReport::main)
        .def_readonly("nesterov", &BoundReport::nesterov)
        .def_readonly("drori", &BoundReport::drori)
        .def_readonly("taylor", &BoundReport::taylor)
        .def_property_readonly("conjecture",
                               [](const BoundReport& r) -> std::optional<double> {
                                   if (r.conjecture) return r.conjecture->value;
                                   return std::nullopt;
                               })
        .def_readonly("regime", &BoundReport::regime)
        .def("to_json", [](const BoundReport& r) { return json(r).dump(); });
    m.def("bound_report", &bound_report, "spec"_a, "schedule"_a);

    py::class_<PepProgram>(m, "PepProgram")
        .def_readonly("N", &PepProgram::N)
        .def_readonly("gram_dim", &PepProgram::gram_dim)
        .def_property_readonly("num_constraints", [](const PepProgram& p) { return p.constraints.size(); })
        .def("to_json", [](const PepProgram& p) { return json(p).dump(); });
    m.def("assemble_pep", &assemble_pep, "spec"_a, "schedule"_a);

    py::class_<SdpSolution>(m, "SdpSolution")
        .def_property_readonly("status", [](const SdpSolution& s) { return std::string(to_string(s.status)); })
        .def_readonly("ell", &SdpSolution::ell)
        .def_property_readonly("value", &SdpSolution::sqrt_ell)
        .def_readonly("G", &SdpSolution::G)
        .def_readonly("f", &SdpSolution::f)
        .def_readonly("duals", &SdpSolution::duals)
        .def_readonly("gap", &SdpSolution::gap)
        .def_readonly("iterations", &SdpSolution::iterations);
    m.def(
        "solve",
        [](const PepProgram& program, double gap_tol, double feas_tol, int max_iter) {
            SdpOptions opts{gap_tol, feas_tol, max_iter};
            py::gil_scoped_release release;
            return solve(program, opts);
        },
        "program"_a, "gap_tol"_a = SdpOptions{}.gap_tol, "feas_tol"_a = SdpOptions{}.feas_tol,
        "max_iter"_a = SdpOptions{}.max_iter);

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("U", &Certificate::U)
        .def_readonly("B", &Certificate::B)
        .def_readonly("alpha", &Certificate::alpha)
        .def_readonly("sigma", &Certificate::sigma);
    py::class_<CertificateReport>(m, "CertificateReport")
        .def_readonly("multipliers_nonneg", &CertificateReport::multipliers_nonneg)
        .def_readonly("sigma_sums_to_one", &CertificateReport::sigma_sums_to_one)
        .def_readonly("linear_terms_vanish", &CertificateReport::linear_terms_vanish)
        .def_readonly("quadratic_matches_Q", &CertificateReport::quadratic_matches_Q)
        .def_readonly("residual_nsd", &CertificateReport::residual_nsd)
        .def_readonly("certified_bound", &CertificateReport::certified_bound)
        .def_property_readonly("verified", &CertificateReport::verified);
    m.def("build_certificate", &build_certificate, "spec"_a, "schedule"_a);
    m.def("verify_certificate", &verify_certificate, "certificate"_a, "spec"_a, "schedule"_a,
          "q_tol"_a = 1e-10);

    py::class_<IterateTriple>(m, "IterateTriple")
        .def(py::init([](Eigen::VectorXd x, Eigen::VectorXd g, double f) {
                 IterateTriple t{std::move(x), std::move(g), f};
                 t.validate();
                 return t;
             }),
             "x"_a, "g"_a, "f"_a)
        .def_readonly("x", &IterateTriple::x)
        .def_readonly("g", &IterateTriple::g)
        .def_readonly("f", &IterateTriple::f);
    py::class_<TripleSet>(m, "TripleSet")
        .def(py::init([](double L, std::vector<IterateTriple> triples) {
                 TripleSet s{L, std::move(triples)};
                 s.validate();
                 return s;
             }),
             "L"_a, "triples"_a)
        .def_readonly("L", &TripleSet::L)
        .def_readonly("triples", &TripleSet::triples)
        .def("to_json", [](const TripleSet& s) { return json(s).dump(); })
        .def_static("from_json", [](const std::string& text) { return json::parse(text).get<TripleSet>(); });

    py::class_<InterpolationReport>(m, "InterpolationReport")
        .def_readonly("ok", &InterpolationReport::ok)
        .def_property_readonly("violations", [](const InterpolationReport& r) {
            std::vector<std::tuple<int, int, double>> out;
            for (const auto& v : r.violations) out.emplace_back(v.i, v.j, v.residual);
            return out;
        });
    m.def("check_interpolation", &check_interpolation, "triples"_a, "tol"_a = kTolEq);
    m.def(
        "extension_minimum",
        [](const TripleSet& set, double tol) {
            const auto e = extension_minimum(set, tol);
            return py::make_tuple(e.f_min, e.x_min, e.witness_index);
        },
        "triples"_a, "tol"_a = kTolEq, "Returns (f_min, x_min, witness_index).");

    py::class_<TightInstance>(m, "TightInstance")
        .def_readonly("U", &TightInstance::U)
        .def_readonly("x1", &TightInstance::x1)
        .def_readonly("breakpoints", &TightInstance::l)
        .def_readonly("f_values", &TightInstance::f_values)
        .def("__call__", [](const TightInstance& t, double x) { return t.f.evaluate(x).value; })
        .def("derivative", [](const TightInstance& t, double x) { return t.f.evaluate(x).derivative; })
        .def("to_json", [](const TightInstance& t) { return json(t.f).dump(); })
        .def("run_gd", [](const TightInstance& t) {
            const auto run = run_gd(t.f, t.x1, t.schedule);
            std::vector<double> xs;
            for (const auto& it : run.trajectory) xs.push_back(it.x(0));
            return py::make_tuple(xs, run.min_grad_norm, run.argmin_index);
        });
    m.def("build_tight_instance", &build_tight_instance, "spec"_a, "schedule"_a);
    m.def("export_triples", &export_triples, "instance"_a);

    py::class_<AttainmentResult>(m, "AttainmentResult")
        .def_readonly("bound", &AttainmentResult::bound)
        .def_readonly("attained", &AttainmentResult::attained)
        .def_readonly("exact", &AttainmentResult::exact);
    m.def("attainment_check", &attainment_check, "spec"_a, "schedule"_a, "tol"_a = 1e-9);
}
