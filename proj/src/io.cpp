#include "pepgrad/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace pepgrad {

namespace {

json vec_json(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vec_from(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Row-major nested arrays.
json mat_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r).transpose()));
    return rows;
}

Eigen::MatrixXd mat_from(const json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto c = n == 0 ? 0 : static_cast<Eigen::Index>(rows.front().size());
    Eigen::MatrixXd m(n, c);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != c) {
            throw InvalidArgument("ragged matrix in JSON");
        }
        for (Eigen::Index k = 0; k < c; ++k) m(r, k) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
    }
    return m;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

RegimeClass regime_from_string(const std::string& s) {
    for (auto r : {RegimeClass::UnitOrBelow, RegimeClass::BelowSqrt3, RegimeClass::Conjecture,
                   RegimeClass::Outside}) {
        if (to_string(r) == s) return r;
    }
    throw InvalidArgument("unknown regime '" + s + "'");
}

json edge_json(double v) { return std::isinf(v) ? json(nullptr) : json(v); }

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void to_json(json& j, const IterateTriple& t) {
    j = json{{"x", vec_json(t.x)}, {"g", vec_json(t.g)}, {"f", t.f}};
}

void from_json(const json& j, IterateTriple& t) {
    t.x = vec_from(j.at("x"));
    t.g = vec_from(j.at("g"));
    t.f = j.at("f").get<double>();
    t.validate();
}

void to_json(json& j, const TripleSet& s) { j = json{{"L", s.L}, {"triples", s.triples}}; }

void from_json(const json& j, TripleSet& s) {
    s.L = j.at("L").get<double>();
    s.triples = j.at("triples").get<std::vector<IterateTriple>>();
    s.validate();
}

void to_json(json& j, const BoundReport& r) {
    j = json{{"regime", std::string(to_string(r.regime))},
             {"main", opt_json(r.main)},
             {"nesterov", opt_json(r.nesterov)},
             {"drori", opt_json(r.drori)},
             {"taylor", opt_json(r.taylor)},
             {"conjecture", r.conjecture ? json{{"value", r.conjecture->value},
                                                {"status", std::string(ConjecturedBound::tag)}}
                                         : json(nullptr)}};
}

void from_json(const json& j, BoundReport& r) {
    r.regime = regime_from_string(j.at("regime").get<std::string>());
    r.main = opt_from(j, "main");
    r.nesterov = opt_from(j, "nesterov");
    r.drori = opt_from(j, "drori");
    r.taylor = opt_from(j, "taylor");
    r.conjecture.reset();
    if (j.contains("conjecture") && !j.at("conjecture").is_null()) {
        r.conjecture = ConjecturedBound{j.at("conjecture").at("value").get<double>()};
    }
}

void to_json(json& j, const QuadraticConstraint& c) {
    j = json{{"kind", std::string(to_string(c.kind))},
             {"i", c.i},
             {"j", c.j},
             {"A", mat_json(c.A)},
             {"f_coeff", vec_json(c.f_coeff)},
             {"fstar_coeff", c.fstar_coeff},
             {"const_coeff", c.const_coeff},
             {"ell_coeff", c.ell_coeff}};
}

void from_json(const json& j, QuadraticConstraint& c) {
    c.kind = constraint_kind_from_string(j.at("kind").get<std::string>());
    c.i = j.at("i").get<int>();
    c.j = j.at("j").get<int>();
    c.A = mat_from(j.at("A"));
    c.f_coeff = vec_from(j.at("f_coeff"));
    c.fstar_coeff = j.at("fstar_coeff").get<double>();
    c.const_coeff = j.at("const_coeff").get<double>();
    c.ell_coeff = j.at("ell_coeff").get<double>();
}

void to_json(json& j, const PepProgram& p) {
    j = json{{"N", p.N},
             {"gram_dim", p.gram_dim},
             {"L", p.spec.L},
             {"delta", p.spec.delta},
             {"f_star", p.spec.f_star},
             {"steps", p.schedule.values()},
             {"objective", "maximize ell"},
             {"constraints", p.constraints}};
}

void from_json(const json& j, PepProgram& p) {
    p.spec = SmoothProblemSpec::make(j.at("L").get<double>(), j.at("delta").get<double>(),
                                     j.value("f_star", 0.0));
    p.schedule = StepSchedule(j.at("steps").get<std::vector<double>>());
    p.N = j.at("N").get<int>();
    p.gram_dim = j.at("gram_dim").get<int>();
    p.constraints = j.at("constraints").get<std::vector<QuadraticConstraint>>();
    if (p.N != p.schedule.size() || p.gram_dim != p.N + 1 ||
        p.constraints.size() != pep_constraint_count(p.N)) {
        throw InvalidArgument("inconsistent PEP program in JSON");
    }
}

void to_json(json& j, const SdpSolution& s) {
    j = json{{"status", std::string(to_string(s.status))},
             {"ell", s.ell},
             {"sqrt_ell", s.sqrt_ell()},
             {"gap", s.gap},
             {"iterations", s.iterations},
             {"G", mat_json(s.G)},
             {"f", vec_json(s.f)},
             {"duals", vec_json(s.duals)}};
}

void from_json(const json& j, SdpSolution& s) {
    s.status = solve_status_from_string(j.at("status").get<std::string>());
    s.ell = j.at("ell").get<double>();
    s.gap = j.at("gap").get<double>();
    s.iterations = j.value("iterations", 0);
    s.G = mat_from(j.at("G"));
    s.f = vec_from(j.at("f"));
    s.duals = vec_from(j.at("duals"));
}

void to_json(json& j, const Certificate& c) {
    j = json{{"U", c.U}, {"B", c.B}, {"alpha", vec_json(c.alpha)}, {"sigma", vec_json(c.sigma)}};
}

void from_json(const json& j, Certificate& c) {
    c.U = j.at("U").get<double>();
    c.B = j.at("B").get<double>();
    c.alpha = vec_from(j.at("alpha"));
    c.sigma = vec_from(j.at("sigma"));
}

void to_json(json& j, const CertificateReport& r) {
    j = json{{"multipliers_nonneg", r.multipliers_nonneg},
             {"sigma_sums_to_one", r.sigma_sums_to_one},
             {"linear_terms_vanish", r.linear_terms_vanish},
             {"quadratic_matches_Q", r.quadratic_matches_Q},
             {"residual_nsd", r.residual_nsd},
             {"certified_bound", r.certified_bound},
             {"verified", r.verified()}};
}

void from_json(const json& j, CertificateReport& r) {
    r.multipliers_nonneg = j.at("multipliers_nonneg").get<bool>();
    r.sigma_sums_to_one = j.at("sigma_sums_to_one").get<bool>();
    r.linear_terms_vanish = j.at("linear_terms_vanish").get<bool>();
    r.quadratic_matches_Q = j.at("quadratic_matches_Q").get<bool>();
    r.residual_nsd = j.at("residual_nsd").get<bool>();
    r.certified_bound = j.at("certified_bound").get<double>();
}

json certificate_report_json(const CertificateReport& report, const Certificate& cert,
                             const SmoothProblemSpec& spec, const StepSchedule& schedule,
                             double q_tol) {
    json j = report;
    j["input"] = json{{"L", spec.L},
                      {"delta", spec.delta},
                      {"f_star", spec.f_star},
                      {"steps", schedule.values()},
                      {"q_tol", q_tol}};
    j["certificate"] = cert;
    return j;
}

void to_json(json& j, const Segment& s) {
    j = json{{"lo", edge_json(s.lo)}, {"hi", edge_json(s.hi)}, {"p", s.p}, {"q", s.q}, {"r", s.r}};
}

void from_json(const json& j, Segment& s) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    s.lo = j.at("lo").is_null() ? -inf : j.at("lo").get<double>();
    s.hi = j.at("hi").is_null() ? inf : j.at("hi").get<double>();
    s.p = j.at("p").get<double>();
    s.q = j.at("q").get<double>();
    s.r = j.at("r").get<double>();
}

void write_trajectory_csv(std::ostream& out, const GdRun& run) {
    out << "k,x,f,g\n";
    for (std::size_t k = 0; k < run.trajectory.size(); ++k) {
        const auto& t = run.trajectory[k];
        if (t.dim() != 1) throw DimensionMismatch("trajectory CSV is univariate only");
        out << (k + 1) << ',' << format_double(t.x(0)) << ',' << format_double(t.f) << ','
            << format_double(t.g(0)) << '\n';
    }
}

}  // namespace pepgrad

namespace nlohmann {

void adl_serializer<pepgrad::PiecewiseQuadratic>::to_json(json& j,
                                                          const pepgrad::PiecewiseQuadratic& f) {
    j = json{{"L", f.L()}, {"segments", f.segments()}};
}

pepgrad::PiecewiseQuadratic adl_serializer<pepgrad::PiecewiseQuadratic>::from_json(const json& j) {
    return pepgrad::PiecewiseQuadratic(j.at("L").get<double>(),
                                       j.at("segments").get<std::vector<pepgrad::Segment>>());
}

}  // namespace nlohmann
