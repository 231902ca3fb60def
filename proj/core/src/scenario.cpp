#include "edlab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>

#include "edlab/bayes.hpp"
#include "edlab/born.hpp"
#include "edlab/classical.hpp"
#include "edlab/diagnostics.hpp"
#include "edlab/frame.hpp"
#include "edlab/maxent.hpp"
#include "edlab/momentum.hpp"
#include "edlab/numeric.hpp"
#include "edlab/rng.hpp"
#include "edlab/sampler.hpp"
#include "edlab/snapshot.hpp"

namespace edlab::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config root must be an object");
    return j;
}

/// Strict schema: every present key must be known, every required key present.
void check_keys(const json &j, const std::string &ctx,
                const std::set<std::string> &required, const std::set<std::string> &optional) {
    for (const auto &item : j.items()) {
        if (!required.count(item.key()) && !optional.count(item.key()))
            throw ValidationError("unknown key '" + item.key() + "' in " + ctx);
    }
    for (const auto &k : required) {
        if (!j.contains(k)) throw ValidationError("missing key '" + k + "' in " + ctx);
    }
}

void check_version(const json &j) {
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != 1)
        throw ValidationError("config must declare \"version\": 1");
}

UnitSystem parse_units(const json &j) {
    if (!j.contains("units")) return UnitSystem{};
    const json &u = j["units"];
    check_keys(u, "units", {}, {"hbar", "mass", "osmotic_mass"});
    UnitSystem base;
    return UnitSystem(u.value("hbar", base.hbar), u.value("mass", base.mass),
                      u.value("osmotic_mass", u.value("mass", base.mass)));
}

Grid1D parse_grid(const json &j) {
    if (!j.contains("grid")) throw ValidationError("missing 'grid'");
    const json &g = j["grid"];
    check_keys(g, "grid", {"x_min", "dx", "n"}, {});
    return Grid1D(g["x_min"].get<double>(), g["dx"].get<double>(), g["n"].get<std::size_t>());
}

Boundary parse_boundary(const json &j) {
    const std::string b = j.value("boundary", "dirichlet");
    if (b == "dirichlet") return Boundary::Dirichlet;
    if (b == "periodic") return Boundary::Periodic;
    throw ValidationError("boundary must be 'dirichlet' or 'periodic'");
}

wave::WaveFunction parse_initial(const json &j, const Grid1D &grid, const UnitSystem &units,
                                 Boundary boundary) {
    if (!j.contains("initial")) throw ValidationError("missing 'initial'");
    const json &s = j["initial"];
    const std::string type = s.value("type", "");
    if (type == "gaussian") {
        check_keys(s, "initial", {"type", "x0", "sigma0", "k0"}, {});
        return wave::gaussian_packet(grid, s["x0"].get<double>(), s["sigma0"].get<double>(),
                                     s["k0"].get<double>(), boundary);
    }
    if (type == "harmonic_ground") {
        check_keys(s, "initial", {"type"}, {"omega"});
        return wave::harmonic_ground_state(grid, units, s.value("omega", 1.0));
    }
    if (type == "plane_wave") {
        check_keys(s, "initial", {"type", "k"}, {});
        if (boundary != Boundary::Periodic)
            throw ValidationError("plane_wave initial state needs a periodic boundary");
        return wave::plane_wave(grid, s["k"].get<double>());
    }
    if (type == "snapshot") {
        check_keys(s, "initial", {"type", "path"}, {});
        wave::Snapshot snap = wave::load_snapshot(s["path"].get<std::string>());
        if (!snap.psi.grid.same_geometry(grid))
            throw ValidationError("snapshot grid does not match the scenario grid");
        return snap.psi;
    }
    throw ValidationError("initial.type must be gaussian, harmonic_ground, plane_wave "
                          "or snapshot");
}

wave::ScalarField parse_potential(const json &j) {
    if (!j.contains("potential")) return wave::ScalarField::zero();
    const Expression e = Expression::parse(j["potential"].get<std::string>());
    return wave::ScalarField::from_expression(e);
}

struct EvolutionSpec {
    double dt = 0.0;
    std::size_t steps = 0;
    std::size_t checkpoint_every = 0;
};

EvolutionSpec parse_evolution(const json &j, const Grid1D &grid) {
    if (!j.contains("evolution")) throw ValidationError("missing 'evolution'");
    const json &e = j["evolution"];
    check_keys(e, "evolution", {"steps"}, {"dt", "checkpoint_every"});
    EvolutionSpec spec;
    // Default step keeps the time-discretization error below the spatial one.
    spec.dt = e.value("dt", 0.25 * grid.dx * grid.dx);
    spec.steps = e["steps"].get<std::size_t>();
    spec.checkpoint_every = e.value("checkpoint_every", spec.steps);
    return spec;
}

std::uint64_t parse_seed(const json &j, const RunOptions &opt) {
    if (opt.seed_override) return *opt.seed_override;
    return j.value("seed", std::uint64_t{1});
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_summary(const RunOptions &opt, const ordered_json &summary) {
    std::filesystem::create_directories(opt.out_dir);
    std::ofstream out(opt.out_dir / "summary.json");
    if (!out) throw Error("cannot write summary.json");
    out << summary.dump(2) << '\n';
    if (!opt.quiet) std::cout << summary.dump(2) << std::endl;
}

/// Evaluates declared checks of the form {"name": threshold} against
/// measured values; a measured value above its threshold fails.
struct CheckSet {
    ordered_json report = ordered_json::object();
    bool all_passed = true;

    void upper_bound(const std::string &name, double measured, double threshold) {
        const bool ok = measured <= threshold;
        report[name] = {{"measured", measured}, {"threshold", threshold}, {"passed", ok}};
        all_passed = all_passed && ok;
    }
};

} // namespace

RunOutcome run_evolve(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config",
               {"version", "grid", "initial", "evolution"},
               {"units", "boundary", "potential", "seed", "diagnostics", "checks"});

    const UnitSystem units = parse_units(j);
    const Grid1D grid = parse_grid(j);
    const Boundary boundary = parse_boundary(j);
    const wave::WaveFunction psi0 = parse_initial(j, grid, units, boundary);
    const wave::ScalarField v = parse_potential(j);
    const EvolutionSpec spec = parse_evolution(j, grid);

    const wave::EvolutionResult traj =
        wave::evolve(psi0, v, units, spec.dt, spec.steps, spec.checkpoint_every);

    std::filesystem::create_directories(opt.out_dir);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "state_%04zu.csv", k);
        wave::save_snapshot(opt.out_dir / name, traj.states[k], units, traj.times[k]);
    }

    ordered_json summary;
    summary["command"] = "evolve";
    summary["times"] = traj.times;
    summary["norm_drift_per_step"] = traj.max_step_norm_drift;

    const json diag = j.value("diagnostics", json::object());
    check_keys(diag, "diagnostics", {},
               {"energy", "fokker_planck", "phase_equation", "momentum"});
    if (diag.value("energy", true)) {
        summary["energy"] = wave::energy_series(traj, v, units);
    }
    if (diag.value("fokker_planck", false))
        summary["fokker_planck_residual"] = wave::fokker_planck_residual(traj, units);
    if (diag.value("phase_equation", false))
        summary["phase_equation_residual"] = wave::phase_equation_residual(traj, v, units);
    if (diag.value("momentum", false)) {
        const wave::MomentumStats ms = wave::momentum_stats(traj.states.back(), units);
        summary["momentum"] = {{"p_mean", ms.p_mean},       {"p_var", ms.p_var},
                               {"x_mean", ms.x_mean},       {"x_var", ms.x_var},
                               {"mv_var", ms.mv_var},       {"mu2_mean", ms.mu2_mean},
                               {"v_mean", ms.v_mean}};
    }

    CheckSet checks;
    const json want = j.value("checks", json::object());
    check_keys(want, "checks", {}, {"norm_drift_per_step", "energy_drift"});
    if (want.contains("norm_drift_per_step"))
        checks.upper_bound("norm_drift_per_step", traj.max_step_norm_drift,
                           want["norm_drift_per_step"].get<double>());
    if (want.contains("energy_drift"))
        checks.upper_bound("energy_drift", wave::energy_drift(traj, v, units),
                           want["energy_drift"].get<double>());
    summary["checks"] = checks.report;
    summary["passed"] = checks.all_passed;
    write_summary(opt, summary);
    return RunOutcome{checks.all_passed ? 0 : 1};
}

RunOutcome run_sample(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config", {"version", "grid", "initial", "evolution", "sampler"},
               {"units", "boundary", "potential", "seed", "checks"});

    const UnitSystem units = parse_units(j);
    const Grid1D grid = parse_grid(j);
    const Boundary boundary = parse_boundary(j);
    const wave::WaveFunction psi0 = parse_initial(j, grid, units, boundary);
    const wave::ScalarField v = parse_potential(j);
    const EvolutionSpec spec = parse_evolution(j, grid);

    const json &sj = j["sampler"];
    check_keys(sj, "sampler", {"n_traj", "dt"}, {"escape_limit"});
    sampler::SamplerConfig cfg;
    cfg.n_traj = sj["n_traj"].get<std::size_t>();
    cfg.dt = sj["dt"].get<double>();
    cfg.escape_limit = sj.value("escape_limit", 0.01);
    cfg.seed = parse_seed(j, opt);

    const wave::EvolutionResult traj =
        wave::evolve(psi0, v, units, spec.dt, spec.steps, spec.checkpoint_every);
    const sampler::TrajectoryEnsemble ens = sampler::run_ensemble(traj, units, cfg);
    const sampler::EnsembleComparison cmp = sampler::compare_ensemble(ens, traj);

    std::filesystem::create_directories(opt.out_dir);
    {
        std::ofstream csv(opt.out_dir / "ensemble.csv");
        csv << "traj_id,t,x,escaped\n";
        for (std::size_t jt = 0; jt < ens.n_traj(); ++jt)
            for (std::size_t k = 0; k < ens.times.size(); ++k)
                csv << jt << ',' << fmt17(ens.times[k]) << ',' << fmt17(ens.positions[k][jt])
                    << ',' << (ens.escaped[jt] ? 1 : 0) << '\n';
    }

    ordered_json summary;
    summary["command"] = "sample";
    summary["seed"] = cfg.seed;
    summary["n_traj"] = cfg.n_traj;
    summary["times"] = ens.times;
    summary["l1"] = cmp.l1;
    ordered_json moments = ordered_json::array();
    for (const auto &m : cmp.moments)
        moments.push_back({{"mean", m.mean}, {"variance", m.variance}});
    summary["moments"] = moments;
    summary["escaped_fraction"] = ens.escaped_fraction();
    summary["fluctuation_only_steps"] = ens.fluctuation_only_steps;

    CheckSet checks;
    const json want = j.value("checks", json::object());
    check_keys(want, "checks", {}, {"l1_max"});
    if (want.contains("l1_max")) {
        double worst = 0.0;
        for (double l : cmp.l1) worst = std::max(worst, l);
        checks.upper_bound("l1_max", worst, want["l1_max"].get<double>());
    }
    summary["checks"] = checks.report;
    summary["passed"] = checks.all_passed;
    write_summary(opt, summary);
    return RunOutcome{checks.all_passed ? 0 : 1};
}

namespace {

frames::FrameMotion parse_motion(const json &j, double fd_step, std::string &description) {
    if (!j.contains("frame")) throw ValidationError("missing 'frame'");
    const json &f = j["frame"];
    if (f.contains("preset")) {
        const std::string preset = f["preset"].get<std::string>();
        if (preset == "constant_velocity") {
            check_keys(f, "frame", {"preset", "v0"}, {});
            description = "constant_velocity v0=" + std::to_string(f["v0"].get<double>());
            return frames::FrameMotion::constant_velocity(f["v0"].get<double>());
        }
        if (preset == "constant_acceleration") {
            check_keys(f, "frame", {"preset", "g"}, {});
            description = "constant_acceleration g=" + std::to_string(f["g"].get<double>());
            return frames::FrameMotion::constant_acceleration(f["g"].get<double>());
        }
        throw ValidationError("frame.preset must be constant_velocity or "
                              "constant_acceleration");
    }
    check_keys(f, "frame", {"expression"}, {});
    const Expression e = Expression::parse(f["expression"].get<std::string>());
    description = "expression " + e.str();
    return frames::FrameMotion::from_expression(e, fd_step);
}

} // namespace

RunOutcome run_symmetry(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config", {"version", "grid", "initial", "evolution", "frame"},
               {"units", "boundary", "potential", "seed", "checks"});

    const UnitSystem units = parse_units(j);
    const Grid1D grid = parse_grid(j);
    const Boundary boundary = parse_boundary(j);
    const wave::WaveFunction psi0 = parse_initial(j, grid, units, boundary);
    const wave::ScalarField v = parse_potential(j);
    const EvolutionSpec spec = parse_evolution(j, grid);

    std::string motion_desc;
    const frames::FrameMotion motion = parse_motion(j, spec.dt / 10.0, motion_desc);

    const frames::SymmetryReport rep = frames::verify_symmetry(
        psi0, v, motion, units, spec.dt, spec.steps, spec.checkpoint_every);

    ordered_json summary;
    summary["command"] = "symmetry";
    summary["frame"] = motion_desc;
    summary["times"] = rep.times;
    summary["density_residual"] = rep.density_residual;
    summary["max_density_residual"] = rep.max_density_residual;
    summary["phase_residual"] = rep.phase_residual;
    summary["shifts_cells"] = rep.shifts;
    summary["potentials_used"] = {
        {"original", j.value("potential", "0")},
        {"transformed", "V(x~-xi(t),t) - m xi_ddot(t) x~"},
    };

    CheckSet checks;
    const json want = j.value("checks", json::object());
    check_keys(want, "checks", {}, {"density_residual_max", "phase_residual_max"});
    if (want.contains("density_residual_max"))
        checks.upper_bound("density_residual_max", rep.max_density_residual,
                           want["density_residual_max"].get<double>());
    if (want.contains("phase_residual_max"))
        checks.upper_bound("phase_residual_max", rep.phase_residual,
                           want["phase_residual_max"].get<double>());
    summary["checks"] = checks.report;
    summary["passed"] = checks.all_passed;
    write_summary(opt, summary);
    return RunOutcome{checks.all_passed ? 0 : 1};
}

RunOutcome run_gauge_check(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config",
               {"version", "grid", "initial", "evolution", "gauge", "gauge_function"},
               {"units", "boundary", "potential", "seed", "checks"});

    const UnitSystem units = parse_units(j);
    const Grid1D grid = parse_grid(j);
    const Boundary boundary = parse_boundary(j);
    const wave::WaveFunction psi0 = parse_initial(j, grid, units, boundary);
    const EvolutionSpec spec = parse_evolution(j, grid);

    const json &gj = j["gauge"];
    check_keys(gj, "gauge", {"beta"}, {"A"});
    wave::GaugeField gauge;
    gauge.beta = gj["beta"].get<double>();
    if (gj.contains("A"))
        gauge.A = wave::ScalarField::from_expression(Expression::parse(gj["A"].get<std::string>()));
    gauge.V = parse_potential(j);

    const json &fj = j["gauge_function"];
    check_keys(fj, "gauge_function", {"f"}, {"dfdx", "dfdt"});
    const Expression fex = Expression::parse(fj["f"].get<std::string>());
    wave::GaugeFunction gf;
    if (fj.contains("dfdx") && fj.contains("dfdt")) {
        const Expression fx = Expression::parse(fj["dfdx"].get<std::string>());
        const Expression ft = Expression::parse(fj["dfdt"].get<std::string>());
        gf = wave::GaugeFunction::analytic(
            [fex](double x, double t) { return fex(x, t); },
            [fx](double x, double t) { return fx(x, t); },
            [ft](double x, double t) { return ft(x, t); });
    } else {
        gf = wave::GaugeFunction::from_expression(fex, spec.dt / 10.0);
    }

    const wave::EvolutionResult base =
        wave::evolve_gauged(psi0, gauge, units, spec.dt, spec.steps, spec.checkpoint_every);
    const auto [psi_t, gauge_t] = wave::gauge_transform(psi0, gauge, gf, 0.0, units);
    const wave::EvolutionResult alt =
        wave::evolve_gauged(psi_t, gauge_t, units, spec.dt, spec.steps, spec.checkpoint_every);

    std::vector<double> agreement;
    double worst = 0.0;
    for (std::size_t k = 0; k < base.states.size(); ++k) {
        const auto ra = base.states[k].density();
        const auto rb = alt.states[k].density();
        double m = 0.0;
        for (std::size_t i = 0; i < ra.size(); ++i) m = std::max(m, std::abs(ra[i] - rb[i]));
        agreement.push_back(m);
        worst = std::max(worst, m);
    }

    ordered_json summary;
    summary["command"] = "gauge-check";
    summary["beta"] = gauge.beta;
    summary["f"] = fex.str();
    summary["times"] = base.times;
    summary["density_agreement"] = agreement;
    summary["max_density_agreement"] = worst;

    CheckSet checks;
    const json want = j.value("checks", json::object());
    check_keys(want, "checks", {}, {"density_agreement_max"});
    if (want.contains("density_agreement_max"))
        checks.upper_bound("density_agreement_max", worst,
                           want["density_agreement_max"].get<double>());
    summary["checks"] = checks.report;
    summary["passed"] = checks.all_passed;
    write_summary(opt, summary);
    return RunOutcome{checks.all_passed ? 0 : 1};
}

namespace {

measure::MeasurementDevice parse_device(const json &j, const Grid1D &grid,
                                        const UnitSystem &units) {
    if (!j.contains("device")) throw ValidationError("missing 'device'");
    const json &d = j["device"];
    std::vector<std::size_t> pointer;
    if (d.contains("pointer_nodes")) pointer = d["pointer_nodes"].get<std::vector<std::size_t>>();
    const std::string preset = d.value("preset", "");
    if (preset == "harmonic") {
        check_keys(d, "device", {"preset", "n"}, {"omega", "pointer_nodes"});
        return measure::MeasurementDevice::harmonic(grid, units, d.value("omega", 1.0),
                                                    d["n"].get<std::size_t>(), pointer);
    }
    if (preset == "grid_deltas") {
        check_keys(d, "device", {"preset", "nodes"}, {});
        return measure::MeasurementDevice::grid_deltas(
            grid, d["nodes"].get<std::vector<std::size_t>>());
    }
    if (preset == "plane_waves") {
        check_keys(d, "device", {"preset", "modes"}, {"pointer_nodes"});
        return measure::MeasurementDevice::plane_waves(grid, units,
                                                       d["modes"].get<std::vector<long>>(),
                                                       pointer);
    }
    throw ValidationError("device.preset must be harmonic, grid_deltas or plane_waves");
}

} // namespace

RunOutcome run_measure(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config", {"version", "grid", "initial", "device", "shots"},
               {"units", "boundary", "seed", "checks"});

    const UnitSystem units = parse_units(j);
    const Grid1D grid = parse_grid(j);
    const Boundary boundary = parse_boundary(j);
    const wave::WaveFunction psi = parse_initial(j, grid, units, boundary);
    const measure::MeasurementDevice device = parse_device(j, grid, units);
    const auto shots = j["shots"].get<std::uint64_t>();
    const std::uint64_t seed = parse_seed(j, opt);

    const measure::BornResult born = measure::born_probabilities(psi, device);
    const measure::OutcomeCounts counts = measure::simulate_outcomes(psi, device, shots, seed);

    std::filesystem::create_directories(opt.out_dir);
    {
        std::ofstream csv(opt.out_dir / "outcomes.csv");
        csv << "outcome,pointer_x,prob,count\n";
        for (std::size_t i = 0; i < born.p.size(); ++i)
            csv << i << ',' << fmt17(device.pointer_position(i)) << ',' << fmt17(born.p[i])
                << ',' << counts.counts[i] << '\n';
    }

    double chi2 = 0.0;
    std::size_t dof = 0;
    for (std::size_t i = 0; i < born.p.size(); ++i) {
        const double expected = born.p[i] * static_cast<double>(shots);
        if (expected < 5.0) continue;  // standard small-expectation guard
        const double diff = static_cast<double>(counts.counts[i]) - expected;
        chi2 += diff * diff / expected;
        ++dof;
    }
    const double pvalue = dof > 1 ? chi_square_pvalue(chi2, dof - 1) : 1.0;

    ordered_json summary;
    summary["command"] = "measure";
    summary["seed"] = seed;
    summary["shots"] = shots;
    summary["prob"] = born.p;
    summary["no_click"] = born.no_click;
    if (!born.density.empty()) summary["density_per_eigenvalue"] = born.density;
    summary["counts"] = counts.counts;
    summary["no_click_count"] = counts.no_click;
    if (device.has_eigenvalues())
        summary["expectation"] =
            measure::expectation_value(psi, device, device.eigenvalues());
    summary["chi_square"] = {{"statistic", chi2}, {"dof", dof > 0 ? dof - 1 : 0},
                             {"p_value", pvalue}};

    CheckSet checks;
    const json want = j.value("checks", json::object());
    check_keys(want, "checks", {}, {"min_p_value"});
    bool passed = true;
    if (want.contains("min_p_value")) {
        const double min_p = want["min_p_value"].get<double>();
        passed = pvalue >= min_p;
        checks.report["min_p_value"] = {{"measured", pvalue}, {"threshold", min_p},
                                        {"passed", passed}};
        checks.all_passed = passed;
    }
    summary["checks"] = checks.report;
    summary["passed"] = checks.all_passed;
    write_summary(opt, summary);
    return RunOutcome{checks.all_passed ? 0 : 1};
}

RunOutcome run_classical_limit(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config", {"version", "grid", "initial", "com"},
               {"units", "boundary", "seed", "checks", "hamilton_jacobi"});

    const UnitSystem units = parse_units(j);
    const Grid1D grid = parse_grid(j);
    const Boundary boundary = parse_boundary(j);
    const wave::WaveFunction psi = parse_initial(j, grid, units, boundary);
    const std::uint64_t seed = parse_seed(j, opt);

    const json &cj = j["com"];
    check_keys(cj, "com", {"n_particles", "ensembles", "dt"}, {});
    const auto n_list = cj["n_particles"].get<std::vector<std::size_t>>();
    const auto ensembles = cj["ensembles"].get<std::size_t>();
    const double dt = cj["dt"].get<double>();

    const wave::HydroFields fields = wave::decompose(psi, units);

    std::vector<double> log_n, log_var, variances, expected;
    std::filesystem::create_directories(opt.out_dir);
    std::ofstream csv(opt.out_dir / "com_variance.csv");
    csv << "n_particles,var,expected\n";
    for (std::size_t n : n_list) {
        const sampler::ComStepVariance cv =
            sampler::com_step_variance(fields, psi, units, dt, n, ensembles, seed);
        variances.push_back(cv.variance);
        expected.push_back(cv.expected);
        log_n.push_back(std::log(static_cast<double>(n)));
        log_var.push_back(std::log(cv.variance));
        csv << n << ',' << fmt17(cv.variance) << ',' << fmt17(cv.expected) << '\n';
    }

    ordered_json summary;
    summary["command"] = "classical-limit";
    summary["seed"] = seed;
    summary["n_particles"] = n_list;
    summary["variance"] = variances;
    summary["expected"] = expected;
    double slope = 0.0;
    if (n_list.size() >= 2) {
        slope = regression_slope(log_n, log_var);
        summary["loglog_slope"] = slope;
    }
    if (j.value("hamilton_jacobi", false)) {
        const sampler::HamiltonJacobiGap gap = sampler::hamilton_jacobi_gap(psi, units);
        summary["hamilton_jacobi"] = {{"quantum_term", gap.quantum_term},
                                      {"kinetic_term", gap.kinetic_term},
                                      {"ratio", gap.defined ? gap.ratio : -1.0},
                                      {"defined", gap.defined}};
    }

    CheckSet checks;
    const json want = j.value("checks", json::object());
    check_keys(want, "checks", {}, {"slope_deviation_max"});
    if (want.contains("slope_deviation_max"))
        checks.upper_bound("slope_deviation_max", std::abs(slope + 1.0),
                           want["slope_deviation_max"].get<double>());
    summary["checks"] = checks.report;
    summary["passed"] = checks.all_passed;
    write_summary(opt, summary);
    return RunOutcome{checks.all_passed ? 0 : 1};
}

RunOutcome run_uncertainty(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config", {"version", "grid", "packets"},
               {"units", "boundary", "seed", "checks"});

    const UnitSystem units = parse_units(j);
    const Grid1D grid = parse_grid(j);
    const std::uint64_t seed = parse_seed(j, opt);

    struct PacketSpec {
        double x0, sigma0, k0;
    };
    std::vector<PacketSpec> packets;
    const json &pj = j["packets"];
    if (pj.is_array()) {
        for (const auto &row : pj) {
            if (!row.is_array() || row.size() != 3)
                throw ValidationError("packets rows must be [x0, sigma0, k0]");
            packets.push_back({row[0].get<double>(), row[1].get<double>(),
                               row[2].get<double>()});
        }
    } else {
        check_keys(pj, "packets", {"count", "sigma0", "k0", "x0"}, {});
        const auto count = pj["count"].get<std::size_t>();
        const auto srange = pj["sigma0"].get<std::vector<double>>();
        const auto krange = pj["k0"].get<std::vector<double>>();
        const auto xrange = pj["x0"].get<std::vector<double>>();
        if (srange.size() != 2 || krange.size() != 2 || xrange.size() != 2)
            throw ValidationError("packet suite ranges must be [lo, hi]");
        std::mt19937_64 rng = stream_rng(seed, 0);
        std::uniform_real_distribution<double> us(srange[0], srange[1]);
        std::uniform_real_distribution<double> uk(krange[0], krange[1]);
        std::uniform_real_distribution<double> ux(xrange[0], xrange[1]);
        for (std::size_t i = 0; i < count; ++i) packets.push_back({ux(rng), us(rng), uk(rng)});
    }

    std::filesystem::create_directories(opt.out_dir);
    std::ofstream csv(opt.out_dir / "packets.csv");
    csv << "x0,sigma0,k0,x_var,p_var,product,identity_gap\n";

    double max_identity_gap = 0.0;
    double min_product_slack = 1e30;
    for (const auto &p : packets) {
        const wave::WaveFunction psi = wave::gaussian_packet(grid, p.x0, p.sigma0, p.k0);
        const wave::MomentumStats ms = wave::momentum_stats(psi, units);
        const double identity_gap = std::abs(ms.p_var - (ms.mv_var + ms.mu2_mean));
        const double product = std::sqrt(ms.x_var) * std::sqrt(ms.p_var);
        max_identity_gap = std::max(max_identity_gap, identity_gap);
        min_product_slack = std::min(min_product_slack, product - 0.5 * units.hbar);
        csv << fmt17(p.x0) << ',' << fmt17(p.sigma0) << ',' << fmt17(p.k0) << ','
            << fmt17(ms.x_var) << ',' << fmt17(ms.p_var) << ',' << fmt17(product) << ','
            << fmt17(identity_gap) << '\n';
    }

    ordered_json summary;
    summary["command"] = "uncertainty";
    summary["n_packets"] = packets.size();
    summary["max_identity_gap"] = max_identity_gap;
    summary["min_product_slack"] = min_product_slack;

    CheckSet checks;
    const json want = j.value("checks", json::object());
    check_keys(want, "checks", {}, {"identity_gap_max", "product_slack_min"});
    if (want.contains("identity_gap_max"))
        checks.upper_bound("identity_gap_max", max_identity_gap,
                           want["identity_gap_max"].get<double>());
    if (want.contains("product_slack_min")) {
        const double lim = want["product_slack_min"].get<double>();
        const bool ok = min_product_slack >= lim;
        checks.report["product_slack_min"] = {{"measured", min_product_slack},
                                              {"threshold", lim},
                                              {"passed", ok}};
        checks.all_passed = checks.all_passed && ok;
    }
    summary["checks"] = checks.report;
    summary["passed"] = checks.all_passed;
    write_summary(opt, summary);
    return RunOutcome{checks.all_passed ? 0 : 1};
}

RunOutcome run_maxent(const std::filesystem::path &config, const RunOptions &opt) {
    const json j = load_config(config);
    check_version(j);
    check_keys(j, "config", {"version", "support", "constraints"}, {"seed"});

    const json &sj = j["support"];
    const std::string stype = sj.value("type", "");
    inference::Distribution prior = [&]() {
        if (stype == "discrete") {
            check_keys(sj, "support", {"type", "prior"}, {});
            return inference::Distribution::normalized_discrete(
                sj["prior"].get<std::vector<double>>());
        }
        if (stype == "grid") {
            check_keys(sj, "support", {"type", "x_min", "dx", "n"}, {"prior"});
            const Grid1D g(sj["x_min"].get<double>(), sj["dx"].get<double>(),
                           sj["n"].get<std::size_t>());
            if (!sj.contains("prior") || sj["prior"].get<std::string>() == "uniform")
                return inference::Distribution::uniform_grid(g);
            const Expression e = Expression::parse(sj["prior"].get<std::string>());
            std::vector<double> w(g.n);
            for (std::size_t i = 0; i < g.n; ++i) w[i] = e(g.x(i), 0.0);
            return inference::Distribution::normalized_grid(g, w);
        }
        throw ValidationError("support.type must be discrete or grid");
    }();

    inference::ConstraintSet cs;
    for (const auto &cj : j["constraints"]) {
        if (cj.contains("type")) {
            check_keys(cj, "constraint", {"type", "sigma2"}, {"center"});
            if (cj["type"].get<std::string>() != "central_variance")
                throw ValidationError("constraint.type must be central_variance");
            inference::CentralVarianceConstraint cv;
            cv.sigma2 = cj["sigma2"].get<double>();
            if (cj.contains("center") && !cj["center"].is_null())
                cv.center = cj["center"].get<double>();
            cs.central_variance = cv;
            continue;
        }
        check_keys(cj, "constraint", {"f", "target"}, {"label"});
        std::vector<double> samples;
        if (cj["f"].is_array()) {
            samples = cj["f"].get<std::vector<double>>();
        } else {
            const Expression e = Expression::parse(cj["f"].get<std::string>());
            samples.resize(prior.size());
            for (std::size_t i = 0; i < prior.size(); ++i) samples[i] = e(prior.point(i), 0.0);
        }
        cs.moments.push_back(inference::MomentConstraint::sampled(
            std::move(samples), cj["target"].get<double>(), cj.value("label", "")));
    }

    const inference::MaxEntSolution sol = inference::maximize_entropy(prior, cs);

    std::filesystem::create_directories(opt.out_dir);
    if (sol.posterior) {
        std::ofstream csv(opt.out_dir / "posterior.csv");
        csv << "point,prior,posterior\n";
        for (std::size_t i = 0; i < prior.size(); ++i)
            csv << fmt17(prior.point(i)) << ',' << fmt17(prior.weights()[i]) << ','
                << fmt17(sol.posterior->weights()[i]) << '\n';
    }

    ordered_json summary;
    summary["command"] = "maxent";
    summary["classification"] = inference::to_string(sol.classification);
    summary["multipliers"] = sol.multipliers;
    summary["log_partition"] = sol.log_partition;
    summary["entropy"] = sol.achieved_entropy;
    summary["residual"] = sol.residual;
    summary["iterations"] = sol.iterations;
    if (!sol.diagnostic.empty()) summary["diagnostic"] = sol.diagnostic;
    summary["passed"] = sol.classification != inference::Classification::Over;
    write_summary(opt, summary);

    return RunOutcome{sol.classification == inference::Classification::Over ? 2 : 0};
}

} // namespace edlab::scenario
