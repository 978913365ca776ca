#include "runge/cli.hpp"

#include "parallel.hpp"
#include "report.hpp"
#include "runge/bounds.hpp"
#include "runge/errors.hpp"
#include "runge/grids.hpp"
#include "runge/modular_unit.hpp"
#include "runge/primes.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace runge {

namespace {

using cli::Json;
using cli::Report;

std::string str(const mpq_class& q) { return q.get_str(); }

std::string str(const IndexPair& a) {
    std::ostringstream os;
    os << a;
    return os.str();
}

long parse_single_prime(const std::string& s) {
    const auto primes = parse_prime_range(s);
    if (primes.size() != 1 || s.find("..") != std::string::npos) {
        throw DomainError("expected a single prime, got '" + s + "'");
    }
    return primes.front();
}

long parse_odd_prime(const std::string& s) {
    const long p = parse_single_prime(s);
    if (p == 2) throw DomainError("p must be an odd prime, got 2");
    return p;
}

struct Options {
    std::string format = "json";
    int workers = 1;
    std::string constants;
    double c_runge = kDefaultCRunge;
    double precision = 1e-12;

    std::string p;
    long c = 0;
    std::string tau;
    std::string grid = "default";
    double q_max = 0.1;
    std::string curve;
    std::string j;
    long lmax = 0;
    double kappa = 0.0;
    std::string a;
    std::string proposition;
};

RunConfig resolve_config(const Options& o, const CLI::App& app) {
    RunConfig config;
    config.format = parse_format(o.format);
    if (o.workers < 1) throw DomainError("--workers must be at least 1");
    config.workers = o.workers;

    std::string path = o.constants;
    if (path.empty()) {
        if (const char* env = std::getenv("RUNGE_CONSTANTS"); env && *env) path = env;
    }
    if (!path.empty()) {
        const ConstantsFile file = load_constants(path);
        config.constants = file.constants;
        if (file.c_runge) config.c_runge = *file.c_runge;
        if (file.kappa2) config.kappa2 = *file.kappa2;
        if (file.precision_target) config.precision_target = *file.precision_target;
        config.constants_source = path;
    }
    if (app.count("--c-runge")) config.c_runge = o.c_runge;
    if (app.count("--precision")) config.precision_target = o.precision;
    TruncationBudget{config.precision_target}.validate();
    config.constants.validate();
    return config;
}

TruncationBudget budget_of(const RunConfig& c) { return TruncationBudget{c.precision_target}; }

// ---- bound

int cmd_bound(const Options& o, const RunConfig& config, Report& r) {
    const long p = parse_single_prime(o.p);
    const BoundReport b = combine_theorem1(p, config.c_runge);
    Json rec = Json::object();
    rec["p"] = p;
    rec["c_runge"] = b.c_runge;
    rec["runge_bound"] = b.runge_bound;
    rec["pari_bound"] = b.pari_bound;
    rec["substitution_margin"] = b.substitution_margin;
    rec["absorbed_slack"] = substitution_slack_limit();
    r.records.push_back(rec);
    r.summary["p"] = p;
    r.summary["runge_bound"] = b.runge_bound;
    r.summary["notes"] = b.notes;
    r.summary["pass"] = true;
    return 0;
}

// ---- verify

int verify_pga(const Options& o, const RunConfig& config, Report& r) {
    if (!(o.q_max > 1e-6 && o.q_max <= 0.1)) throw DomainError("--q-max must lie in (1e-6, 0.1]");
    const auto custom = parse_grid(o.grid);
    const auto grid = custom ? *custom : pga_grid(1e-6, o.q_max, 50);
    for (const auto& tau : grid) {
        if (tau.log_q_abs() > std::log(0.1) + 1e-12) throw DomainError("pga grid point with |q| > 0.1");
    }
    const auto indices = all_indices_up_to_level(13);
    const double s = config.constants.s_pga;
    const auto budget = budget_of(config);

    struct Row {
        double worst = 0.0;
        std::size_t at = 0;
    };
    const auto rows = cli::parallel_map(grid.size(), config.workers, [&](std::size_t i) {
        Row row;
        for (std::size_t k = 0; k < indices.size(); ++k) {
            const double v = std::abs(pga_residual(indices[k], grid[i], budget));
            if (v > row.worst) row = Row{v, k};
        }
        return row;
    });

    std::size_t failures = 0;
    double max_ratio = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double bound = s * grid[i].q_abs();
        const bool pass = rows[i].worst <= bound;
        failures += !pass;
        max_ratio = std::max(max_ratio, rows[i].worst / grid[i].q_abs());
        Json rec = Json::object();
        rec["index"] = i;
        rec["x"] = grid[i].x();
        rec["y"] = grid[i].y();
        rec["q_abs"] = grid[i].q_abs();
        rec["max_abs_residual"] = rows[i].worst;
        rec["worst_a"] = str(indices[rows[i].at]);
        rec["bound"] = bound;
        rec["pass"] = pass;
        r.records.push_back(rec);
    }
    r.summary["points"] = grid.size();
    r.summary["indices"] = indices.size();
    r.summary["max_residual_over_q"] = max_ratio;
    r.summary["envelope"] = "s_pga * |q|";
    r.summary["s_pga"] = s;
    r.summary["failures"] = failures;
    r.summary["pass"] = failures == 0;
    return failures == 0 ? 0 : 1;
}

int verify_llogz(const Options& o, const RunConfig& config, Report& r) {
    if (o.grid != "default") throw DomainError("verify llogz only supports --grid default");
    constexpr int kPhases = 16;
    const auto grid = llogz_grid(0.01, 0.99, 50, kPhases);
    const std::int64_t lengths[] = {10, 100, 10000};
    const double c0 = config.constants.c0;

    struct Row {
        double worst = 0.0;
        std::int64_t n = 0;
    };
    const auto rows = cli::parallel_map(grid.size(), config.workers, [&](std::size_t i) {
        Row row{-1.0, 0};
        for (auto n : lengths) {
            const double v = std::abs(sum_log_one_minus_powers(grid[i], n));
            if (v > row.worst) row = Row{v, n};
        }
        return row;
    });

    std::size_t failures = 0;
    double max_excess = -1e300;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r_abs = std::abs(grid[i]);
        const double env = llogz_envelope(r_abs);
        const double excess = rows[i].worst - env;
        const bool pass = excess <= c0;
        failures += !pass;
        max_excess = std::max(max_excess, excess);
        Json rec = Json::object();
        rec["index"] = i;
        rec["abs_z"] = r_abs;
        rec["phase_turns"] = static_cast<double>(i % kPhases) / kPhases;
        rec["worst_n"] = rows[i].n;
        rec["max_abs_sum"] = rows[i].worst;
        rec["envelope"] = env;
        rec["excess"] = excess;
        rec["pass"] = pass;
        r.records.push_back(rec);
    }
    r.summary["points"] = grid.size();
    r.summary["lengths"] = Json::array({10, 100, 10000});
    r.summary["max_excess"] = max_excess;
    r.summary["envelope"] = "(pi^2/6)/log(1/|z|) + c0";
    r.summary["c0"] = c0;
    r.summary["failures"] = failures;
    r.summary["pass"] = failures == 0;
    return failures == 0 ? 0 : 1;
}

int verify_pu(const Options& o, const CLI::App& sub, const RunConfig& config, Report& r) {
    if (o.p.empty()) throw DomainError("verify pu requires --p");
    const long p = parse_odd_prime(o.p);
    std::vector<long> cs = {0, 1, 2};
    if (sub.count("--c")) cs = {o.c};
    const auto custom = parse_grid(o.grid);
    const auto grid = custom ? *custom : pu_default_grid(p);
    std::vector<UnitIndexSet> sets;
    for (long c : cs) sets.push_back(build_index_set(p, c));
    const auto& cal = config.constants;
    const auto budget = budget_of(config);
    const std::size_t n = sets.size() * grid.size();
    const auto reps = cli::parallel_map(n, config.workers, [&](std::size_t k) {
        return evaluate_prop_pu(sets[k / grid.size()], grid[k % grid.size()], cal.s1, cal.s2, budget);
    });

    std::size_t failures = 0;
    double max_ratio = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& e = reps[k];
        const double allowed = e.envelope + e.slack * e.slack_normalizer;
        failures += !e.passes;
        max_ratio = std::max(max_ratio, std::abs(e.residual) / allowed);
        Json rec = Json::object();
        rec["index"] = k;
        rec["c"] = e.c;
        rec["x"] = e.tau.x();
        rec["y"] = e.tau.y();
        rec["log_abs_u"] = e.log_abs_u;
        rec["main_term"] = e.main_term;
        rec["residual"] = e.residual;
        rec["envelope"] = e.envelope;
        rec["slack_term"] = e.slack * e.slack_normalizer;
        rec["pass"] = e.passes;
        r.records.push_back(rec);
    }
    r.summary["p"] = p;
    r.summary["c"] = cs;
    r.summary["points"] = n;
    r.summary["max_residual_over_allowed"] = max_ratio;
    r.summary["s1"] = cal.s1;
    r.summary["s2"] = cal.s2;
    r.summary["failures"] = failures;
    r.summary["pass"] = failures == 0;
    return failures == 0 ? 0 : 1;
}

int verify_pana(const Options& o, const RunConfig& config, Report& r) {
    if (o.p.empty()) throw DomainError("verify pana requires --p");
    const long p = parse_odd_prime(o.p);
    const auto custom = parse_grid(o.grid);
    const auto grid = custom ? *custom : pana_default_grid();
    for (const auto& tau : grid) {
        if (!in_fundamental_domain_translates(tau, 1e-9)) {
            throw DomainError("pana grid point outside D + Z");
        }
    }
    const double slack = config.constants.pana_slack;
    const auto budget = budget_of(config);
    const auto verdicts = cli::parallel_map(grid.size(), config.workers, [&](std::size_t i) {
        return evaluate_prop_pana(p, grid[i], config.c_runge, slack, budget);
    });

    std::size_t checks = 0, failures = 0, cusp_only = 0, unit_only = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (const auto& v : verdicts[i]) {
            ++checks;
            failures += !v.holds();
            cusp_only += v.cusp_branch && !v.unit_branch;
            unit_only += v.unit_branch && !v.cusp_branch;
            Json rec = Json::object();
            rec["index"] = i;
            rec["x"] = v.tau.x();
            rec["y"] = v.tau.y();
            rec["c"] = v.c;
            rec["log_abs_j"] = v.log_abs_j;
            rec["log_abs_u"] = v.log_abs_u;
            rec["cusp_bound"] = v.cusp_bound;
            rec["unit_bound"] = v.unit_bound;
            rec["cusp_branch"] = v.cusp_branch;
            rec["unit_branch"] = v.unit_branch;
            rec["pass"] = v.holds();
            r.records.push_back(rec);
        }
    }
    r.summary["p"] = p;
    r.summary["points"] = grid.size();
    r.summary["checks"] = checks;
    r.summary["cusp_branch_only"] = cusp_only;
    r.summary["unit_branch_only"] = unit_only;
    r.summary["c_runge"] = config.c_runge;
    r.summary["pana_slack"] = slack;
    r.summary["failures"] = failures;
    r.summary["pass"] = failures == 0;
    return failures == 0 ? 0 : 1;
}

// ---- galois

int cmd_galois(const Options& o, const RunConfig& config, Report& r) {
    if (o.curve.empty() == o.j.empty()) throw DomainError("galois needs exactly one of --curve, --j");
    if (o.p.empty()) throw DomainError("galois requires --p");
    const CurveModel e = o.curve.empty() ? CurveModel::from_j(parse_rational(o.j)) : parse_curve(o.curve);
    std::vector<long> primes;
    for (long p : parse_prime_range(o.p)) {
        if (p > 2) primes.push_back(p);
    }
    if (primes.empty()) throw DomainError("galois needs an odd prime p");
    const long lmax = o.lmax;
    if (lmax < 0) throw DomainError("--lmax must be nonnegative");
    const TraceTable table(e, lmax);
    const auto verdicts = cli::parallel_map(primes.size(), config.workers, [&](std::size_t i) {
        return classify_point_image(table, primes[i], lmax);
    });

    std::size_t ruled_out = 0;
    for (const auto& v : verdicts) {
        ruled_out += v.status == ImageStatus::RuledOut;
        Json rec = Json::object();
        rec["p"] = v.p;
        rec["status"] = to_string(v.status);
        rec["witness_ell"] = v.witness_ell ? Json(*v.witness_ell) : Json(nullptr);
        rec["traces_used"] = v.traces_used;
        rec["bad_primes_skipped"] = v.bad_primes_skipped;
        r.records.push_back(rec);
    }
    r.summary["curve"] = e.to_string();
    r.summary["j"] = str(e.j_invariant());
    r.summary["lmax"] = lmax;
    r.summary["primes"] = primes.size();
    r.summary["ruled_out"] = ruled_out;
    r.summary["possibly_contained"] = primes.size() - ruled_out;
    return 0;
}

// ---- p0

int cmd_p0(const Options& o, const RunConfig& config, Report& r) {
    const Crossing c = p0_crossing(o.kappa, config.c_runge);
    Json rec = Json::object();
    rec["kappa_eff"] = o.kappa;
    rec["c_runge"] = config.c_runge;
    rec["prime"] = c.prime;
    rec["value_at_prime"] = c.value_at_prime;
    rec["last_failure"] = c.last_failure ? Json(c.last_failure) : Json(nullptr);
    rec["value_at_failure"] = c.last_failure ? Json(c.value_at_failure) : Json(nullptr);
    if (c.prime >= 3) {
        IsogenyChainConstants k;
        k.kappa2 = config.kappa2;
        const HeightChain h = pubo_lower_bound(static_cast<long>(c.prime), k);
        Json chain = Json::object();
        chain["kappa2"] = k.kappa2;
        chain["isogenous_height"] = h.isogenous_height;
        chain["faltings_height"] = h.faltings_height;
        chain["lower_bound"] = h.lower_bound;
        chain["positive"] = h.positive;
        chain["failed_step"] = h.failed_step;
        rec["height_chain"] = chain;
    }
    r.records.push_back(rec);
    r.summary["prime"] = c.prime;
    r.summary["notes"] = "conditional on constants kappa_eff, c_runge, kappa2";
    return 0;
}

// ---- point evaluations

int cmd_siegel_eval(const Options& o, const RunConfig& config, Report& r) {
    const auto comma = o.a.find(',');
    if (comma == std::string::npos) throw DomainError("--a must be A1,A2");
    const IndexPair a(parse_rational(o.a.substr(0, comma)), parse_rational(o.a.substr(comma + 1)));
    const HalfPlanePoint tau = parse_tau(o.tau);
    const SeriesValue v = siegel_log_abs_series(a, tau, budget_of(config));
    Json rec = Json::object();
    rec["a1"] = str(a.a1());
    rec["a2"] = str(a.a2());
    rec["x"] = tau.x();
    rec["y"] = tau.y();
    rec["log_abs_g"] = v.value;
    rec["tail_bound"] = v.tail_bound;
    rec["terms"] = v.terms;
    r.records.push_back(rec);
    r.summary["log_abs_g"] = v.value;
    return 0;
}

int cmd_unit_eval(const Options& o, const RunConfig& config, Report& r) {
    const long p = parse_odd_prime(o.p);
    const HalfPlanePoint tau = parse_tau(o.tau);
    const auto set = build_index_set(p, o.c);
    const auto budget = budget_of(config);
    Json rec = Json::object();
    rec["p"] = p;
    rec["c"] = o.c;
    rec["x"] = tau.x();
    rec["y"] = tau.y();
    int code = 0;
    if (tau.log_q_abs() <= -std::log(static_cast<double>(p)) + 1e-12) {
        const auto& cal = config.constants;
        const auto e = evaluate_prop_pu(set, tau, cal.s1, cal.s2, budget);
        rec["log_abs_u"] = e.log_abs_u;
        rec["main_term"] = e.main_term;
        rec["residual"] = e.residual;
        rec["envelope"] = e.envelope;
        rec["slack_term"] = e.slack * e.slack_normalizer;
        rec["pass"] = e.passes;
        code = e.passes ? 0 : 1;
    } else {
        rec["log_abs_u"] = unit_log_abs(set, tau, budget);
        rec["main_term"] = unit_main_slope(p, o.c) * tau.log_q_abs();
        rec["envelope"] = nullptr;
        rec["pass"] = nullptr;
    }
    r.summary["log_abs_u"] = rec["log_abs_u"];
    r.records.push_back(rec);
    return code;
}

int cmd_cm_table(const Options& o, const RunConfig&, Report& r) {
    const long lmax = o.lmax;
    const auto checks = verify_cm_table(lmax);
    const auto& table = cm_j_invariants();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const bool ok = checks[i].j_matches && checks[i].supersingular_pattern;
        failures += !ok;
        Json rec = Json::object();
        rec["discriminant"] = checks[i].discriminant;
        rec["j"] = table[i].j.get_str();
        rec["inert_primes_checked"] = checks[i].inert_primes_checked;
        rec["supersingular_pattern"] = checks[i].supersingular_pattern;
        rec["j_matches"] = checks[i].j_matches;
        rec["pass"] = ok;
        r.records.push_back(rec);
    }
    r.summary["entries"] = checks.size();
    r.summary["lmax"] = lmax;
    r.summary["failures"] = failures;
    r.summary["pass"] = failures == 0;
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Runge-method workbench for the split Cartan modular curve"};
    app.name("runge");
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "json, csv or text")->capture_default_str();
    app.add_option("--workers", o.workers, "worker threads")->capture_default_str();
    app.add_option("--constants", o.constants, "constants file (overrides RUNGE_CONSTANTS)");
    app.add_option("--c-runge", o.c_runge, "additive constant of the Runge bound");
    app.add_option("--precision", o.precision, "truncation target per series");

    auto* bound = app.add_subcommand("bound", "Runge and arithmetic bounds at a prime");
    bound->add_option("--p", o.p, "prime")->required();

    auto* verify = app.add_subcommand("verify", "grid verification: pga, llogz, pu or pana");
    verify->add_option("proposition", o.proposition, "pga | llogz | pu | pana")
        ->required()
        ->check(CLI::IsMember({"pga", "llogz", "pu", "pana"}));
    verify->add_option("--p", o.p, "odd prime (pu, pana)");
    verify->add_option("--c", o.c, "translate class (pu; default 0, 1, 2)");
    verify->add_option("--grid", o.grid, "'default' or x:y,x:y,...")->capture_default_str();
    verify->add_option("--q-max", o.q_max, "largest |q| on the pga grid")->capture_default_str();

    auto* galois = app.add_subcommand("galois", "split-Cartan trace test over a range of primes");
    galois->add_option("--curve", o.curve, "A1,A2,A3,A4,A6");
    galois->add_option("--j", o.j, "j-invariant, NUM or NUM/DEN");
    galois->add_option("--p", o.p, "prime or LO..HI")->required();
    o.lmax = 1000;
    galois->add_option("--lmax", o.lmax, "largest ell scanned")->capture_default_str();

    auto* p0 = app.add_subcommand("p0", "crossing prime of kappa p against the Runge bound");
    p0->add_option("--kappa", o.kappa, "effective constant kappa")->required();

    auto* siegel = app.add_subcommand("siegel-eval", "log|g_a(tau)|");
    siegel->add_option("--a", o.a, "A1,A2 rationals")->required();
    siegel->add_option("--tau", o.tau, "RE,IM")->required();

    auto* unit = app.add_subcommand("unit-eval", "log|U_c(tau)| and its envelope");
    unit->add_option("--p", o.p, "odd prime")->required();
    unit->add_option("--c", o.c, "translate class")->capture_default_str();
    unit->add_option("--tau", o.tau, "RE,IM")->required();

    auto* cm = app.add_subcommand("cm-table", "check the class-number-one CM table");
    cm->add_option("--lmax", o.lmax, "largest inert prime checked");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    RunConfig config;
    try {
        config = resolve_config(o, app);
    } catch (const std::exception& e) {
        err << "runge: " << e.what() << '\n';
        return 2;
    }

    Report report;
    report.config = cli::config_json(config);
    int code = 0;
    try {
        if (bound->parsed()) {
            report.command = "bound";
            code = cmd_bound(o, config, report);
        } else if (verify->parsed()) {
            report.command = "verify " + o.proposition;
            if (o.proposition == "pga") code = verify_pga(o, config, report);
            else if (o.proposition == "llogz") code = verify_llogz(o, config, report);
            else if (o.proposition == "pu") code = verify_pu(o, *verify, config, report);
            else code = verify_pana(o, config, report);
        } else if (galois->parsed()) {
            report.command = "galois";
            code = cmd_galois(o, config, report);
        } else if (p0->parsed()) {
            report.command = "p0";
            code = cmd_p0(o, config, report);
        } else if (siegel->parsed()) {
            report.command = "siegel-eval";
            code = cmd_siegel_eval(o, config, report);
        } else if (unit->parsed()) {
            report.command = "unit-eval";
            code = cmd_unit_eval(o, config, report);
        } else if (cm->parsed()) {
            report.command = "cm-table";
            if (!cm->count("--lmax")) o.lmax = 200;
            code = cmd_cm_table(o, config, report);
        }
    } catch (const DomainError& e) {
        err << "runge: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "runge: " << e.what() << '\n';
        return 1;
    }
    emit(report, config.format, out);
    return code;
}

}  // namespace runge
