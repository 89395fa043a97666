#include "exogas/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "exogas/kernels.hpp"

namespace exogas {

namespace {

namespace fs = std::filesystem;

const char* kColumns =
    "t,lyapunov,dissipation_V,reactant_mass,reactant_sq,burn_integral,"
    "burn_sq_integral,X,Y,Z,gplus_sup,min_v,max_v,min_theta,max_theta,min_z,"
    "max_z,supnorm_dev,H_total,boundary_work_heat,res_entropy,"
    "res_reactant_mass,res_reactant_sq,res_first_law,res_volume,"
    "res_radius_ode";

void write_row(std::ostream& os, const FunctionalRecord& r) {
    char buf[1024];
    std::snprintf(
        buf, sizeof buf,
        "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
        "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
        "%.17g,%.17g,%.17g,%.17g\n",
        r.t, r.lyapunov, r.dissipation_V, r.reactant_mass, r.reactant_sq,
        r.burn_integral, r.burn_sq_integral, r.X, r.Y, r.Z, r.gplus_sup,
        r.min_v, r.max_v, r.min_theta, r.max_theta, r.min_z, r.max_z,
        r.supnorm_dev, r.H_total, r.boundary_work_heat, r.res_entropy,
        r.res_reactant_mass, r.res_reactant_sq, r.res_first_law, r.res_volume,
        r.res_radius_ode);
    os << buf;
}

void write_jsonl_row(std::ostream& os, const FunctionalRecord& r) {
    nlohmann::json j;
    j["t"] = r.t;
    j["lyapunov"] = r.lyapunov;
    j["dissipation_V"] = r.dissipation_V;
    j["reactant_mass"] = r.reactant_mass;
    j["reactant_sq"] = r.reactant_sq;
    j["burn_integral"] = r.burn_integral;
    j["burn_sq_integral"] = r.burn_sq_integral;
    j["X"] = r.X;
    j["Y"] = r.Y;
    j["Z"] = r.Z;
    j["gplus_sup"] = r.gplus_sup;
    j["min_v"] = r.min_v;
    j["max_v"] = r.max_v;
    j["min_theta"] = r.min_theta;
    j["max_theta"] = r.max_theta;
    j["min_z"] = r.min_z;
    j["max_z"] = r.max_z;
    j["supnorm_dev"] = r.supnorm_dev;
    j["H_total"] = r.H_total;
    j["boundary_work_heat"] = r.boundary_work_heat;
    j["res_entropy"] = r.res_entropy;
    j["res_reactant_mass"] = r.res_reactant_mass;
    j["res_reactant_sq"] = r.res_reactant_sq;
    j["res_first_law"] = r.res_first_law;
    j["res_volume"] = r.res_volume;
    j["res_radius_ode"] = r.res_radius_ode;
    os << j.dump() << "\n";
}

void dump_failure(const fs::path& dir, const RunConfig& cfg, const State& s,
                  const RadiusField& rf, const std::string& why) {
    std::ofstream dump(dir / "failure_dump.csv");
    dump << "# " << why << "\n";
    write_snapshot(dump, cfg.grid, s, rf, config_hash(cfg));
}

}  // namespace

std::string resolve_out_dir(const RunConfig& cfg,
                            const std::optional<std::string>& override_dir) {
    if (override_dir) return *override_dir;
    if (const char* env = std::getenv("EXOGAS_OUT_DIR")) {
        return (fs::path(env) / cfg.output.dir).string();
    }
    return cfg.output.dir;
}

RunReport run(const RunConfig& cfg,
              const std::optional<std::string>& out_dir_override, bool quiet) {
    RunReport report;
    report.theorem_regime = cfg.params.theorem_regime();
    report.outside_theorem_regime = cfg.params.outside_theorem_regime();

    const fs::path out_dir = resolve_out_dir(cfg, out_dir_override);
    fs::create_directories(out_dir);

    Stepper stepper(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
    stepper.set_hydro_enabled(cfg.hydro);

    State s = make_initial_condition(cfg.grid, cfg.ic);
    RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);

    DiagnosticsContext diag(cfg.params, cfg.grid, cfg.boundary);
    diag.initialize(s, rf);
    report.decay_initial = decay_metric(s);

    std::optional<RepresentationAudit> audit;
    if (cfg.audit.representation) {
        audit.emplace(cfg.params, cfg.grid, cfg.audit.k);
        audit->initialize(s, rf);
    }

    const std::string hash = config_hash(cfg);
    std::ofstream ts(out_dir / cfg.output.timeseries);
    ts << "# " << kVersion << ", config_hash = " << hash << "\n";
    ts << "# theorem_regime = " << (report.theorem_regime ? "true" : "false")
       << ", outside_theorem_regime = "
       << (report.outside_theorem_regime ? "true" : "false") << "\n";
    ts << kColumns << "\n";
    std::ofstream jl;
    if (cfg.output.jsonl) jl.open(out_dir / (cfg.output.timeseries + ".jsonl"));

    std::vector<double> gplus_t, gplus_v;
    long long last_written_step = 0;
    const auto sample_row = [&]() {
        const auto rec = diag.record(s, rf);
        write_row(ts, rec);
        if (jl.is_open()) write_jsonl_row(jl, rec);
        gplus_t.push_back(rec.t);
        gplus_v.push_back(rec.gplus_sup);
        last_written_step = report.steps;
    };
    sample_row();

    auto pending_snapshots = cfg.output.snapshot_times;
    std::sort(pending_snapshots.begin(), pending_snapshots.end());
    std::size_t next_snap = 0;
    const auto take_snapshots = [&]() {
        while (next_snap < pending_snapshots.size() &&
               s.t >= pending_snapshots[next_snap] - 1e-13) {
            char name[160];
            std::snprintf(name, sizeof name, "%s_t%.6f.csv",
                          cfg.output.snapshot_prefix.c_str(),
                          pending_snapshots[next_snap]);
            std::ofstream snap(out_dir / name);
            write_snapshot(snap, cfg.grid, s, rf, hash);
            ++next_snap;
        }
    };
    take_snapshots();

    bool invariant_violation = false;
    try {
        while (s.t < cfg.t_end - 1e-13) {
            const auto acct = stepper.step_auto(s, rf, cfg.t_end - s.t);
            diag.after_step(s, rf, acct);
            if (audit) audit->after_step(s, rf);
            ++report.steps;

            const auto val = validate_state(s);
            if (!val.pass) {
                invariant_violation = true;
                report.message = "state invariant violated: " +
                                 (val.violations.empty()
                                      ? std::string("unknown")
                                      : val.violations.front());
                dump_failure(out_dir, cfg, s, rf, report.message);
                break;
            }
            if (report.steps % cfg.sample_stride == 0) sample_row();
            take_snapshots();
        }
    } catch (const StepFailure& e) {
        report.exit_code = 2;
        report.message = e.what();
        dump_failure(out_dir, cfg, s, rf, e.what());
    }

    if (report.steps != last_written_step) sample_row();
    report.final_record = diag.record(s, rf);
    report.final_state = validate_state(s);
    if (gplus_t.size() >= 2)
        report.gplus_slope = gplus_envelope_slope(gplus_t, gplus_v);
    report.decay_final = decay_metric(s);
    report.invariants_pass = report.final_state.pass && !invariant_violation;

    if (audit) {
        const auto res = audit->evaluate(s, rf);
        report.max_audit_residual = res.max_abs_residual;
        std::ofstream ar(out_dir / "representation_audit.csv");
        ar << "# k = " << cfg.audit.k << ", config_hash = " << hash << "\n";
        ar << "x,B,Q,A_acc,residual\n";
        char buf[256];
        for (std::size_t i = 0; i < res.x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          res.x[i], res.B[i], res.Q[i], res.A_acc[i],
                          res.residual[i]);
            ar << buf;
        }
    }

    if (invariant_violation && report.exit_code == 0) report.exit_code = 3;

    if (!quiet) {
        std::cout << kVersion << " run: steps = " << report.steps
                  << ", t = " << s.t << ", exit = " << report.exit_code
                  << "\n";
        std::cout << "  kernels lane: "
                  << kernels::lane_name(kernels::active_lane()) << "\n";
        std::cout << "  theorem_regime = "
                  << (report.theorem_regime ? "true" : "false")
                  << ", outside_theorem_regime = "
                  << (report.outside_theorem_regime ? "true" : "false")
                  << "\n";
        std::cout << "  decay_metric: " << report.decay_initial << " -> "
                  << report.decay_final
                  << ", g+ envelope slope = " << report.gplus_slope << "\n";
        std::cout << "  min_v = " << report.final_record.min_v
                  << ", max_v = " << report.final_record.max_v
                  << ", min_theta = " << report.final_record.min_theta
                  << ", max_theta = " << report.final_record.max_theta << "\n";
        if (!report.message.empty())
            std::cout << "  message: " << report.message << "\n";
    }
    return report;
}

double xmax_doubling_difference(const RunConfig& cfg) {
    RunConfig wide = cfg;
    wide.grid.n_cells = cfg.grid.n_cells * 2;  // same dx, doubled domain
    wide.output.timeseries = "timeseries_wide.csv";

    // a common fixed dt isolates the truncation effect from the CFL
    // difference the larger outer radius would otherwise introduce
    const auto initial_dt = [](const RunConfig& c) {
        Stepper st(c.params, c.grid, c.boundary, c.stepper);
        State s = make_initial_condition(c.grid, c.ic);
        RadiusField rf = radius_from_volume(c.params, c.grid.dx, s.v);
        return st.compute_dt(s, rf);
    };
    const double dt = std::min(initial_dt(cfg), initial_dt(wide));

    const auto integrate = [dt](const RunConfig& c) {
        Stepper st(c.params, c.grid, c.boundary, c.stepper);
        st.set_hydro_enabled(c.hydro);
        State s = make_initial_condition(c.grid, c.ic);
        RadiusField rf = radius_from_volume(c.params, c.grid.dx, s.v);
        while (s.t < c.t_end - 1e-13)
            st.step(s, rf, std::min(dt, c.t_end - s.t));
        return s;
    };
    const State base = integrate(cfg);
    const State wide_s = integrate(wide);
    // compare over the interior half: the cells next to the original outer
    // boundary feel the pinning by construction
    double diff = 0.0;
    for (int c = 0; c < cfg.grid.n_cells / 2; ++c) {
        diff = std::max(diff, std::fabs(base.v[c] - wide_s.v[c]));
        diff = std::max(diff, std::fabs(base.theta[c] - wide_s.theta[c]));
        diff = std::max(diff, std::fabs(base.z[c] - wide_s.z[c]));
        diff = std::max(diff, std::fabs(base.u[c] - wide_s.u[c]));
    }
    return diff;
}

std::vector<VerifyRow> verify(const RunConfig& cfg,
                              const std::optional<std::string>& out_dir,
                              bool quiet) {
    RunReport rep = run(cfg, out_dir, true);
    const auto& r = rep.final_record;

    // residual thresholds scale with the run's own magnitudes
    const double scale_H = std::max(1.0, std::fabs(r.H_total));
    std::vector<VerifyRow> rows;
    rows.push_back({"state_invariants_pass", rep.invariants_pass ? 1.0 : 0.0,
                    1.0, rep.invariants_pass});
    rows.push_back({"min_v_positive", r.min_v, 0.0, r.min_v > 0.0});
    rows.push_back({"min_theta_positive", r.min_theta, 0.0, r.min_theta > 0.0});
    rows.push_back(
        {"z_range", std::max(-r.min_z, r.max_z - 1.0), 0.0,
         r.min_z >= 0.0 && r.max_z <= 1.0});
    rows.push_back({"dissipation_nonnegative", r.dissipation_V, 0.0,
                    r.dissipation_V >= 0.0});
    rows.push_back({"res_volume", r.res_volume, 1e-10 * scale_H,
                    r.res_volume <= 1e-10 * scale_H});
    rows.push_back({"res_reactant_mass", r.res_reactant_mass, 1e-4,
                    r.res_reactant_mass <= 1e-4});
    rows.push_back({"res_reactant_sq", r.res_reactant_sq, 1e-4,
                    r.res_reactant_sq <= 1e-4});
    rows.push_back({"res_entropy_identity", r.res_entropy, 1e-3,
                    r.res_entropy <= 1e-3});
    rows.push_back({"res_first_law", r.res_first_law, 1e-4 * scale_H,
                    r.res_first_law <= 1e-4 * scale_H});
    rows.push_back({"exit_code", double(rep.exit_code), 0.0,
                    rep.exit_code == 0});
    if (cfg.audit.representation)
        rows.push_back({"representation_residual", rep.max_audit_residual,
                        1e-2, rep.max_audit_residual <= 1e-2});

    if (!quiet) {
        std::printf("%-28s %14s %14s  %s\n", "check", "value", "threshold",
                    "pass");
        for (const auto& row : rows)
            std::printf("%-28s %14.6e %14.6e  %s\n", row.name.c_str(),
                        row.value, row.threshold, row.pass ? "PASS" : "FAIL");
    }
    return rows;
}

}  // namespace exogas
