#include "pepgrad/cli.hpp"

#include "pepgrad/bounds.hpp"
#include "pepgrad/certify.hpp"
#include "pepgrad/interp.hpp"
#include "pepgrad/io.hpp"
#include "pepgrad/pep.hpp"
#include "pepgrad/sdp.hpp"
#include "pepgrad/tight.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

namespace pepgrad::cli {

namespace {

struct UsageError : Error {
    using Error::Error;
};
struct SolverFailure : Error {
    using Error::Error;
};

struct InstanceFlags {
    double L = 1.0;
    double delta = 1.0;
    double f_star = 0.0;
    std::string steps;
    std::optional<double> t_const;
    std::optional<int> N;
    bool json = false;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
    cmd->add_option("--L", f.L, "Gradient Lipschitz constant")->capture_default_str();
    cmd->add_option("--delta", f.delta, "Initial gap f(x1) - f*")->capture_default_str();
    cmd->add_option("--f-star", f.f_star, "Lower bound f*")->capture_default_str();
    cmd->add_option("--steps", f.steps, "Comma-separated step lengths t1,t2,...");
    cmd->add_option("--t-const", f.t_const, "Constant step length (with --N)");
    cmd->add_option("--N", f.N, "Number of steps (with --t-const)");
    cmd->add_flag("--json", f.json, "Emit JSON instead of a table");
}

std::vector<double> parse_steps(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("cannot parse step length '" + item + "'");
        }
    }
    return out;
}

StepSchedule schedule_from(const InstanceFlags& f) {
    const bool have_steps = !f.steps.empty();
    if (have_steps && (f.t_const || f.N)) {
        throw UsageError("--steps and --t-const/--N are mutually exclusive");
    }
    if (have_steps) return StepSchedule(parse_steps(f.steps));
    if (!f.t_const || !f.N) throw UsageError("give either --steps or both --t-const and --N");
    return StepSchedule::constant(*f.t_const, *f.N);
}

SmoothProblemSpec spec_from(const InstanceFlags& f) {
    return SmoothProblemSpec::make(f.L, f.delta, f.f_star);
}

// Human-readable numbers carry 6 significant digits.
std::string fmt6(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt6(const std::optional<double>& v) { return v ? fmt6(*v) : "-"; }

double default_gap_tol() {
    if (const char* env = std::getenv("PEPGRAD_GAP_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("PEPGRAD_GAP_TOL is not a number: ") + env);
        }
    }
    return SdpOptions{}.gap_tol;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "' for writing");
    file << content;
}

std::string csv_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

// --- bound -----------------------------------------------------------------

int cmd_bound(const InstanceFlags& f, std::ostream& out) {
    const auto spec = spec_from(f);
    const auto schedule = schedule_from(f);
    const BoundReport report = bound_report(spec, schedule);
    if (report.regime == RegimeClass::Outside) {
        throw RegimeError("no bound applies: every step must lie in (0, 2/L)");
    }
    if (f.json) {
        out << json(report).dump(2) << '\n';
        return kExitOk;
    }
    out << "regime      " << to_string(report.regime) << '\n'
        << "main        " << fmt6(report.main) << '\n'
        << "nesterov    " << fmt6(report.nesterov) << '\n'
        << "drori       " << fmt6(report.drori) << '\n'
        << "taylor      " << fmt6(report.taylor) << '\n'
        << "conjecture  "
        << (report.conjecture ? fmt6(report.conjecture->value) + "  [" +
                                    std::string(ConjecturedBound::tag) + "]"
                              : std::string("-"))
        << '\n';
    return kExitOk;
}

// --- pep-solve -------------------------------------------------------------

int cmd_pep_solve(const InstanceFlags& f, std::optional<double> gap_tol, int max_iter,
                  const std::string& program_out, std::ostream& out) {
    const auto spec = spec_from(f);
    const auto schedule = schedule_from(f);
    const PepProgram program = assemble_pep(spec, schedule);
    if (!program_out.empty()) write_file(program_out, json(program).dump(2) + "\n");

    SdpOptions options;
    options.gap_tol = gap_tol.value_or(default_gap_tol());
    options.max_iter = max_iter;
    if (!(options.gap_tol > 0.0)) throw UsageError("gap tolerance must be positive");
    if (max_iter < 1) throw UsageError("--max-iter must be at least 1");
    const SdpSolution sol = solve(program, options);

    std::optional<double> closed;
    if (classify_regime(schedule, spec.L) <= RegimeClass::BelowSqrt3) {
        closed = bound_main(spec, schedule);
    }
    std::optional<double> diff;
    if (closed) diff = std::abs(sol.sqrt_ell() - *closed);

    if (f.json) {
        json j{{"sdp_value", sol.sqrt_ell()},
               {"closed_form", closed ? json(*closed) : json(nullptr)},
               {"abs_diff", diff ? json(*diff) : json(nullptr)},
               {"solution", sol}};
        out << j.dump(2) << '\n';
    } else {
        out << "status       " << to_string(sol.status) << '\n'
            << "iterations   " << sol.iterations << '\n'
            << "sdp_value    " << fmt6(sol.sqrt_ell()) << '\n'
            << "closed_form  " << fmt6(closed) << '\n'
            << "abs_diff     " << fmt6(diff) << '\n'
            << "gap          " << fmt6(sol.gap) << '\n';
    }
    if (sol.status != SolveStatus::Optimal) {
        throw SolverFailure("SDP solver stopped with status " + std::string(to_string(sol.status)));
    }
    return kExitOk;
}

// --- certify ---------------------------------------------------------------

int cmd_certify(const InstanceFlags& f, double q_tol, std::ostream& out) {
    const auto spec = spec_from(f);
    const auto schedule = schedule_from(f);
    const Certificate cert = build_certificate(spec, schedule);
    const CertificateReport report = verify_certificate(cert, spec, schedule, q_tol);
    if (f.json) {
        out << certificate_report_json(report, cert, spec, schedule, q_tol).dump(2) << '\n';
    } else {
        const auto yes = [](bool b) { return b ? "yes" : "NO"; };
        out << "multipliers_nonneg   " << yes(report.multipliers_nonneg) << '\n'
            << "sigma_sums_to_one    " << yes(report.sigma_sums_to_one) << '\n'
            << "linear_terms_vanish  " << yes(report.linear_terms_vanish) << '\n'
            << "quadratic_matches_Q  " << yes(report.quadratic_matches_Q) << '\n'
            << "residual_nsd         " << yes(report.residual_nsd) << '\n'
            << "certified_bound      " << fmt6(report.certified_bound) << '\n'
            << "verified             " << yes(report.verified()) << '\n';
    }
    return report.verified() ? kExitOk : kExitCheckFailed;
}

// --- tight -----------------------------------------------------------------

struct TightFlags {
    std::string out;
    std::string triples_out;
    std::string trajectory_out;
    bool simulate = false;
};

int cmd_tight(const InstanceFlags& f, const TightFlags& t, std::ostream& out) {
    const auto spec = spec_from(f);
    const auto schedule = schedule_from(f);
    const TightInstance inst = build_tight_instance(spec, schedule);

    if (!t.out.empty()) write_file(t.out, json(inst.f).dump(2) + "\n");
    if (!t.triples_out.empty()) write_file(t.triples_out, json(export_triples(inst)).dump(2) + "\n");

    std::optional<GdRun> run;
    if (t.simulate || !t.trajectory_out.empty()) run = run_gd(inst.f, inst.x1, schedule);
    if (!t.trajectory_out.empty()) {
        std::ostringstream csv;
        write_trajectory_csv(csv, *run);
        write_file(t.trajectory_out, csv.str());
    }

    std::optional<AttainmentResult> att;
    if (t.simulate) att = attainment_check(spec, schedule);

    if (f.json) {
        json j{{"U", inst.U}, {"x1", inst.x1}, {"l", inst.l}, {"f_values", inst.f_values},
               {"t_aug", inst.t_aug.values()}, {"function", inst.f}};
        if (att) {
            j["simulation"] = json{{"bound", att->bound},
                                   {"attained", att->attained},
                                   {"exact", att->exact},
                                   {"iterates", [&] {
                                        std::vector<double> xs;
                                        for (const auto& it : run->trajectory) xs.push_back(it.x(0));
                                        return xs;
                                    }()}};
        }
        out << j.dump(2) << '\n';
    } else {
        out << "U            " << fmt6(inst.U) << '\n' << "breakpoints ";
        for (std::size_t i = 0; i + 1 < inst.l.size(); ++i) out << ' ' << fmt6(inst.l[i]);
        out << '\n' << "segments     " << inst.f.segments().size() << '\n';
        if (att) {
            out << "bound        " << fmt6(att->bound) << '\n'
                << "attained     " << fmt6(att->attained) << '\n'
                << "exact        " << (att->exact ? "true" : "false") << '\n';
        }
    }
    return (att && !att->exact) ? kExitCheckFailed : kExitOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepFlags {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
    std::string out;
    bool no_sdp = false;
    std::optional<double> gap_tol;
    unsigned jobs = 0;
};

struct SweepRow {
    std::string key;
    BoundReport bounds;
    std::optional<double> sdp_value;
    std::optional<double> sdp_gap;
    std::string warning;
};

int cmd_sweep(const InstanceFlags& f, const SweepFlags& s, std::ostream& out, std::ostream& err) {
    if (s.points < 1) throw UsageError("--points must be at least 1");
    if (s.points > 1 && !(s.from < s.to)) throw UsageError("--from must be below --to");

    std::vector<double> grid;
    for (int p = 0; p < s.points; ++p) {
        grid.push_back(s.points == 1 ? s.from
                                     : s.from + (s.to - s.from) * p / (s.points - 1.0));
    }
    if (s.param == "N") {
        for (double& v : grid) v = std::round(v);
        if (std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
            throw UsageError("N grid is not strictly increasing after rounding");
        }
    }

    // Everything that can fail on bad flags is resolved before the workers start.
    const auto instance_at = [&](double v) {
        InstanceFlags g = f;
        if (s.param == "step") {
            if (!g.steps.empty()) throw UsageError("a step sweep uses --N, not --steps");
            g.t_const = v;
        } else if (s.param == "N") {
            if (!g.steps.empty()) throw UsageError("an N sweep uses --t-const, not --steps");
            g.N = static_cast<int>(v);
        } else {
            g.delta = v;
        }
        return std::pair{spec_from(g), schedule_from(g)};
    };
    std::vector<std::pair<SmoothProblemSpec, StepSchedule>> instances;
    for (double v : grid) instances.push_back(instance_at(v));

    SdpOptions options;
    options.gap_tol = s.gap_tol.value_or(default_gap_tol());
    if (!(options.gap_tol > 0.0)) throw UsageError("gap tolerance must be positive");

    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
            const auto& [spec, schedule] = instances[i];
            auto& row = rows[i];
            row.key = s.param == "N" ? std::to_string(static_cast<int>(grid[i]))
                                     : format_double(grid[i]);
            row.bounds = bound_report(spec, schedule);
            if (s.no_sdp) continue;
            try {
                const SdpSolution sol = solve(assemble_pep(spec, schedule), options);
                if (sol.status == SolveStatus::Optimal) {
                    row.sdp_value = sol.sqrt_ell();
                    row.sdp_gap = sol.gap;
                } else {
                    row.warning = std::string(to_string(sol.status));
                }
            } catch (const Error& e) {
                row.warning = e.what();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto jobs = static_cast<unsigned>(
        std::min<std::size_t>(s.jobs == 0 ? hw : s.jobs, rows.size()));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();

    const std::string key_name = s.param == "step" ? "t" : s.param;
    std::ostringstream csv;
    csv << key_name
        << ",bound_main,bound_nesterov,bound_drori,bound_taylor,bound_conjecture,sdp_value,sdp_gap\n";
    for (const auto& row : rows) {
        const auto& b = row.bounds;
        std::optional<double> conj;
        if (b.conjecture) conj = b.conjecture->value;
        csv << row.key << ',' << csv_cell(b.main) << ',' << csv_cell(b.nesterov) << ','
            << csv_cell(b.drori) << ',' << csv_cell(b.taylor) << ',' << csv_cell(conj) << ','
            << csv_cell(row.sdp_value) << ',' << csv_cell(row.sdp_gap) << '\n';
        if (!row.warning.empty()) {
            err << "warning: " << key_name << " = " << row.key << ": SDP failed (" << row.warning
                << ")\n";
        }
    }
    if (s.out.empty()) {
        out << csv.str();
    } else {
        write_file(s.out, csv.str());
    }
    return kExitOk;
}

// --- check-interp ----------------------------------------------------------

int cmd_check_interp(const std::string& in, double tol, bool as_json, std::ostream& out) {
    std::ifstream file(in);
    if (!file) throw UsageError("cannot read '" + in + "'");
    TripleSet set;
    try {
        set = json::parse(file).get<TripleSet>();
    } catch (const json::exception& e) {
        throw UsageError("malformed triple file: " + std::string(e.what()));
    }
    const auto report = check_interpolation(set, tol);
    if (as_json) {
        json v = json::array();
        for (const auto& x : report.violations) {
            v.push_back(json{{"i", x.i}, {"j", x.j}, {"residual", x.residual}});
        }
        out << json{{"ok", report.ok}, {"violations", v}}.dump(2) << '\n';
    } else if (report.ok) {
        out << "ok: " << set.size() << " triples satisfy the interpolation conditions\n";
    } else {
        const auto& w = report.violations.front();
        out << "violated: " << report.violations.size() << " ordered pairs\n"
            << "worst pair (" << w.i << ", " << w.j << ") residual " << fmt6(w.residual) << '\n';
    }
    return report.ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Worst-case analysis of fixed-step gradient descent on L-smooth functions",
                 "pepgrad"};
    app.require_subcommand(1);

    InstanceFlags inst;
    std::optional<double> gap_tol;
    std::string program_out;
    int max_iter = SdpOptions{}.max_iter;
    double q_tol = 1e-10;
    TightFlags tight;
    SweepFlags sweep;
    std::string interp_in;
    double interp_tol = kTolEq;

    auto* bound = app.add_subcommand("bound", "Evaluate every closed-form bound");
    add_instance_flags(bound, inst);

    auto* pep = app.add_subcommand("pep-solve", "Solve the performance-estimation SDP");
    add_instance_flags(pep, inst);
    pep->add_option("--gap-tol", gap_tol, "Duality-gap tolerance (env PEPGRAD_GAP_TOL)");
    pep->add_option("--max-iter", max_iter, "Interior-point iteration limit")->capture_default_str();
    pep->add_option("--program-out", program_out, "Write the assembled program as JSON");

    auto* cert = app.add_subcommand("certify", "Replay the dual certificate of the main bound");
    add_instance_flags(cert, inst);
    cert->add_option("--q-tol", q_tol, "Coefficient tolerance")->capture_default_str();

    auto* tgt = app.add_subcommand("tight", "Build the worst-case function");
    add_instance_flags(tgt, inst);
    tgt->add_option("--out", tight.out, "Write the piecewise quadratic as JSON");
    tgt->add_option("--triples-out", tight.triples_out, "Write iterate triples as JSON");
    tgt->add_option("--trajectory-out", tight.trajectory_out, "Write the trajectory as CSV");
    tgt->add_flag("--simulate", tight.simulate, "Run gradient descent and check attainment");

    auto* swp = app.add_subcommand("sweep", "Sweep one parameter and emit CSV");
    add_instance_flags(swp, inst);
    swp->add_option("--param", sweep.param, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"step", "N", "delta"}));
    swp->add_option("--from", sweep.from)->required();
    swp->add_option("--to", sweep.to)->required();
    swp->add_option("--points", sweep.points)->required();
    swp->add_option("--out", sweep.out, "CSV output path (default stdout)");
    swp->add_flag("--no-sdp", sweep.no_sdp, "Skip the SDP solves");
    swp->add_option("--gap-tol", sweep.gap_tol, "Duality-gap tolerance (env PEPGRAD_GAP_TOL)");
    swp->add_option("--jobs", sweep.jobs, "Worker threads (0 = all cores)");

    auto* chk = app.add_subcommand("check-interp", "Check interpolation conditions of a triple file");
    chk->add_option("--in", interp_in, "Triple set JSON")->required();
    chk->add_option("--tol", interp_tol, "Additive residual tolerance")->capture_default_str();
    chk->add_flag("--json", inst.json, "Emit JSON");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*bound) return cmd_bound(inst, out);
        if (*pep) return cmd_pep_solve(inst, gap_tol, max_iter, program_out, out);
        if (*cert) return cmd_certify(inst, q_tol, out);
        if (*tgt) return cmd_tight(inst, tight, out);
        if (*swp) return cmd_sweep(inst, sweep, out, err);
        if (*chk) return cmd_check_interp(interp_in, interp_tol, inst.json, out);
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const SolverFailure& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace pepgrad::cli
