#include "qmap_cli/commands.hpp"

#include "qmap_cli/identities.hpp"
#include "qmap_cli/report.hpp"

#include "qmap/baston.hpp"
#include "qmap/capacity.hpp"
#include "qmap/directions.hpp"
#include "qmap/exponents.hpp"
#include "qmap/regularity.hpp"
#include "qmap/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <thread>

namespace qmap::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
    const RunConfig& config;
    std::ostream& log;
    fs::path out;
    ReportMeta meta;

    std::string path(const char* name) const { return (out / name).string(); }
};

Run prepare(const RunConfig& config, std::ostream& log, const Rational& c_n) {
    Run run{config, log, fs::path(config.out_dir), {}};
    fs::create_directories(run.out);
    run.meta = {config.command, config_hash(config), config.seed, config.n, c_n};
    return run;
}

Rational required_calibration(const RunConfig& config) {
    const fs::path file = fs::path(config.out_dir) / "calibration.json";
    if (!fs::exists(file))
        throw ConfigError("output.dir", "missing " + file.string() + "; run 'qmap calibrate' with the same output directory first");
    const json cal = read_json(file.string());
    if (cal.at("n").get<std::size_t>() != config.n)
        throw ConfigError("run.n", "calibration.json was produced for n = " + std::to_string(cal.at("n").get<std::size_t>()));
    return rational_from_string(cal.at("c_n").get<std::string>());
}

std::vector<OperatorSample> samples_of(const RunConfig& c, const Lattice& lat) {
    const auto dirs = sample_directions(c.n, {c.direction_count, c.direction_seed, c.spread});
    return make_operator_samples(dirs, lat.h(), {c.stencil_budget, c.angle_tolerance});
}

PointFunction boundary_of(const LatticePtr& lat) {
    return [lat](std::span<const double> x) { return lat->spec().psi.evaluate(x); };
}

json budget_json(const ExponentBudget& b) {
    return {{"p", b.p == 0 ? std::string("inf") : to_string(b.p)},
            {"q", to_string(b.q)},
            {"n", b.n},
            {"r", to_string(b.r)},
            {"alpha_max_intro", to_string(b.alpha_max)},
            {"alpha_max_thm8", to_string(b.alpha_max_r2)},
            {"gamma_r", to_string(b.gamma_r)},
            {"a_n_pow_n", to_string(b.a_n_pow_n)},
            {"a_n", b.a_n}};
}

int calibrate(const RunConfig& c, std::ostream& log) {
    const MooreCalibration cal = calibrate_moore_constant(c.n);
    Run run = prepare(c, log, cal.c_n);
    write_json(run.path("calibration.json"), run.meta,
               {{"n", cal.n},
                {"c_n", to_string(cal.c_n)},
                {"samples", cal.samples},
                {"a_n", bellman_constant(c.n)},
                {"convention_note", cal.convention_note}});
    log << "c_" << c.n << " = " << to_string(cal.c_n) << " (confirmed on " << cal.samples << " quadratics)\n";
    return exit_pass;
}

int verify(const RunConfig& c, std::ostream& log) {
    Run run = prepare(c, log, calibrate_moore_constant(c.n, 0).c_n);
    const auto results = run_identity_suite(c.n, c.forms, c.seed);
    json rows = json::array();
    bool all = true;
    for (const auto& r : results) {
        rows.push_back({{"name", r.name}, {"checked", r.checked}, {"failed", r.failed}, {"pass", r.pass()}});
        all = all && r.pass();
        log << (r.pass() ? "pass " : "FAIL ") << r.name << ": " << r.checked - r.failed << "/" << r.checked << "\n";
    }
    write_json(run.path("identities.json"), run.meta,
               {{"forms", c.forms}, {"identities", rows}, {"all_pass", all}});
    return all ? exit_pass : exit_assertion;
}

struct Solved {
    LatticePtr lattice;
    std::vector<OperatorSample> samples;
    GridFunction u;  // with boundary values
    SolveReport report;
};

Solved solve_problem(const RunConfig& c, double scale = 1.0) {
    Solved s;
    s.lattice = make_lattice(c.domain());
    s.samples = samples_of(c, *s.lattice);
    const BellmanScheme scheme(s.lattice, s.samples, boundary_of(s.lattice));
    GridFunction f = density_field(s.lattice);
    if (scale != 1.0)
        for (double& v : f.values()) v *= scale;
    SolveResult r = scheme.solve(f, c.solver());
    s.u = scheme.with_boundary(r.u);
    s.report = std::move(r.report);
    return s;
}

int solve(const RunConfig& c, std::ostream& log) {
    Run run = prepare(c, log, required_calibration(c));
    const Solved s = solve_problem(c);
    write_qgrid(run.path("u.qgrid"), s.u, c.grid_format);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < s.report.update_history.size(); ++i)
        rows.push_back({std::to_string(i + 1), cell(s.report.update_history[i])});
    write_csv(run.path("residual.csv"), run.meta, {"sweep", "max_update"}, rows);
    const bool ok = s.report.last_update < c.tol;
    write_json(run.path("solve.json"), run.meta,
               {{"grid_file", "u.qgrid"},
                {"interior_nodes", s.lattice->interior_count()},
                {"operator_samples", s.samples.size()},
                {"iterations", s.report.iterations},
                {"last_update", s.report.last_update},
                {"residual", s.report.residual},
                {"tol", c.tol},
                {"converged", ok}});
    log << "solved " << s.lattice->interior_count() << " interior nodes in " << s.report.iterations
        << " sweeps, last update " << s.report.last_update << "\n";
    return ok ? exit_pass : exit_convergence;
}

std::vector<double> default_ts(const Lattice& lat) {
    std::vector<double> ts;
    const double cap = lat.spec().diameter() / 2;
    for (int m = 1; std::sqrt(m) * lat.h() <= cap + 1e-12; ++m) ts.push_back(std::sqrt(m) * lat.h());
    return ts;
}

int analyze(const RunConfig& c, std::ostream& log) {
    Run run = prepare(c, log, required_calibration(c));
    const Solved s = solve_problem(c);
    const Lattice& lat = *s.lattice;
    const double h = lat.h(), diam = lat.spec().diameter();
    bool ok = true;

    const ExponentBudget budget = exponent_budget(c.p_value(), c.n, c.r_value());
    write_json(run.path("budget.json"), run.meta, budget_json(budget));

    const ModulusCurve curve = modulus_of_continuity(s.u, c.ts.empty() ? default_ts(lat) : c.ts,
                                                     {c.pair_budget, c.seed});
    const ModulusCurve bar = concave_majorant(curve);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < curve.t.size(); ++i)
        rows.push_back({cell(curve.t[i]), cell(curve.theta[i]), cell(bar.theta[i])});
    write_csv(run.path("modulus.csv"), run.meta, {"t", "theta", "theta_bar"}, rows);
    const MajorantBoundCheck mb = check_majorant_bounds(curve, bar, {0.5, 1.0, 2.0});
    if (!mb.holds) log << "FAIL concave majorant bounds (worst " << mb.worst_lower << ", " << mb.worst_upper << ")\n";
    ok = ok && mb.holds;

    rows.clear();
    double beta = budget.alpha_max.get_d();
    for (auto [lo, hi] : {std::pair{4 * h, diam / 4}, std::pair{2 * h, diam / 2}}) {
        try {
            const HolderFit fit = holder_fit(curve, lo, hi);
            if (rows.empty()) beta = std::min(1.0, fit.alpha);
            rows.push_back({cell(lo) + ":" + cell(hi), cell(fit.alpha), cell(fit.C), cell(fit.r2)});
        } catch (const PreconditionError& e) {
            log << "holder window [" << lo << ", " << hi << "] skipped: " << e.what() << "\n";
        }
    }
    write_csv(run.path("holder.csv"), run.meta, {"window", "alpha", "C", "r2"}, rows);

    rows.clear();
    for (std::size_t i = 0; i < c.kappas.size(); ++i) {
        const Solved sk = solve_problem(c, c.kappas[i]);
        const StabilityReport st = stability_check(sk.u, s.u, c.p_value(), c.r_value());
        double above = 0.0;
        for (std::size_t k : lat.interior()) above = std::max(above, sk.u[k] - s.u[k]);
        if (above > 1e-8) {
            log << "FAIL comparison: kappa " << c.kappas[i] << " solution exceeds the base solution by " << above << "\n";
            ok = false;
        }
        rows.push_back({"kappa=" + cell(c.kappas[i]), cell(st.lhs), cell(std::pow(st.l_r_norm, st.gamma)),
                        cell(st.gamma), cell(st.C_fit)});
    }
    write_csv(run.path("stability.csv"), run.meta, {"perturbation", "lhs", "rhs", "gamma", "C_fit"}, rows);

    std::vector<double> deltas = c.deltas;
    if (deltas.empty())
        for (double d : {2 * h, 4 * h, 8 * h})
            if (d <= lat.spec().inradius()) deltas.push_back(d);
    rows.clear();
    if (deltas.size() >= 3) {
        const GapReport gaps = convolution_gap_check(s.u, deltas, beta);
        for (const auto& g : gaps.rows)
            rows.push_back({cell(g.delta), cell(g.sup_gap), cell(g.mean_gap), cell(g.l2_ratio), cell(g.mass_ratio)});
        log << "capped gap exponents: sup " << gaps.sup_exponent_capped << ", mean " << gaps.mean_exponent_capped << "\n";
    } else {
        log << "convolution gaps skipped: fewer than three radii fit in the domain\n";
    }
    write_csv(run.path("gaps.csv"), run.meta, {"delta", "sup_gap", "mean_gap", "l2_ratio", "mass_ratio"}, rows);
    return ok ? exit_pass : exit_assertion;
}

int capacity(const RunConfig& c, std::ostream& log) {
    const fs::path cal = fs::path(c.out_dir) / "calibration.json";
    Run run = prepare(c, log, fs::exists(cal) ? required_calibration(c) : calibrate_moore_constant(c.n, 0).c_n);
    const LatticePtr lat = make_lattice(c.domain());
    const CapacityEngine engine{lat, samples_of(c, *lat), c.solver()};
    const DomainSpec& spec = lat->spec();
    std::vector<double> center = spec.shape == Shape::ball ? spec.center : std::vector<double>(spec.dim());
    if (spec.shape == Shape::box)
        for (std::size_t i = 0; i < center.size(); ++i) center[i] = (spec.lower[i] + spec.upper[i]) / 2;
    for (double r : c.radii)
        if (r >= spec.inradius()) throw ConfigError("capacity.radii", "radius " + cell(r) + " reaches the boundary");

    const GridFunction f = density_field(lat);
    std::vector<CompactSpec> sets;
    for (double r : c.radii) sets.push_back(compact_ball(*lat, center, r, "ball_r=" + cell(r)));
    std::vector<CapacityValue> values(sets.size());
    std::vector<double> f_integral(sets.size(), 0.0);
    const unsigned workers = std::max(1u, std::min<unsigned>(thread_cap(), static_cast<unsigned>(sets.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < sets.size(); i += workers) {
                values[i] = capacity_of_compact(sets[i], engine);
                for (std::size_t k : lat->interior())
                    if (sets[i].nodes[k]) f_integral[i] += f[k];
                f_integral[i] *= lat->cell_volume();
            }
        });
    for (auto& t : pool) t.join();

    std::vector<CsvRow> rows;
    bool ok = true;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        rows.push_back({sets[i].name, cell(values[i].over_k), cell(values[i].over_omega), cell(values[i].volume),
                        cell(f_integral[i])});
        for (std::size_t j = 0; j < sets.size(); ++j)
            if (c.radii[i] < c.radii[j] && values[i].over_omega > values[j].over_omega + 1e-9) {
                log << "FAIL monotonicity: cap(" << sets[i].name << ") > cap(" << sets[j].name << ")\n";
                ok = false;
            }
    }
    write_csv(run.path("capacity.csv"), run.meta, {"set", "cap_over_K", "cap_over_Omega", "volume", "f_integral"},
              rows);
    log << "capacity of " << sets.size() << " sets written\n";
    return ok ? exit_pass : exit_assertion;
}

}  // namespace

unsigned thread_cap() {
    const char* env = std::getenv("QMAP_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    return (end && *end == '\0' && v > 0) ? static_cast<unsigned>(v) : 1;
}

int dispatch(const RunConfig& config, std::ostream& log) {
    validate(config);
    if (config.command == "calibrate") return calibrate(config, log);
    if (config.command == "verify") return verify(config, log);
    if (config.command == "solve") return solve(config, log);
    if (config.command == "analyze") return analyze(config, log);
    return capacity(config, log);
}

}  // namespace qmap::cli
