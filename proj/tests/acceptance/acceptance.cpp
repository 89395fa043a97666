// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exogas/config.hpp"
#include "exogas/constitutive.hpp"
#include "exogas/diagnostics.hpp"
#include "exogas/runner.hpp"
#include "exogas/solver.hpp"
#include "exogas/verification.hpp"

using namespace exogas;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_exogas_bin;

void report(int id, const char* name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] %2d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id,
                name, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_maxwell() {
    Timer timer;
    PhysParams p;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> S(0.5, 2.0);
    const double steps[3] = {1e-2, 1e-3, 1e-4};
    bool pass = true;
    double worst_ext = 0.0, worst_ratio = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ThermoPoint s{S(rng), S(rng)};
        std::array<double, 3> r[3];
        for (int i = 0; i < 3; ++i) r[i] = maxwell_residuals(p, s, steps[i]);
        for (int comp = 0; comp < 3; ++comp) {
            // O(h^2) decay per decade of h wherever above the roundoff floor
            for (int i = 0; i + 1 < 3; ++i) {
                if (std::fabs(r[i][comp]) < 1e-11) continue;
                const double ratio =
                    std::fabs(r[i + 1][comp]) / std::fabs(r[i][comp]);
                worst_ratio = std::max(worst_ratio, ratio);
                if (ratio > 1.0 / 50.0) pass = false;
            }
            const double ext =
                (100.0 * r[2][comp] - r[1][comp]) / 99.0;
            worst_ext = std::max(worst_ext, std::fabs(ext));
        }
    }
    if (worst_ext >= 1e-9) pass = false;
    report(1, "thermodynamic-consistency", pass,
           fmt("Richardson residual %.2e (< 1e-9), worst decade ratio %.2e "
               "(< 2e-2)",
               worst_ext, worst_ratio),
           timer.seconds());
}

void criterion_2_dissipation() {
    Timer timer;
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> V(0.5, 2.0), T(0.5, 2.0),
        U(-1.0, 1.0), R(1.0, 3.0), UX(-1.0, 1.0);
    bool pass = true;
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
        PhysParams p;
        p.n_dim = n;
        p.lambda1 = 0.25;
        for (int i = 0; i < 10000; ++i) {
            const auto d = dissipation_decomposition(p, V(rng), T(rng),
                                                     U(rng), R(rng), UX(rng));
            const double scale = std::max(
                {std::fabs(d.lhs), std::fabs(d.t1), std::fabs(d.t2), 1e-300});
            const double rel = std::fabs(d.lhs - (d.t1 + d.t2)) / scale;
            worst = std::max(worst, rel);
            if (rel >= 1e-12 || d.t1 < 0.0 || d.t2 < 0.0) pass = false;
        }
    }
    report(2, "dissipation-positivity", pass,
           fmt("worst relative identity error %.2e on 2x10^4 samples, "
               "t1,t2 >= 0",
               worst),
           timer.seconds());
}

void criterion_3_geometry() {
    Timer timer;
    PhysParams p;
    bool pass = true;
    // exact closed form for unit volume
    {
        const int nc = 4096;
        const double dx = 8.0 / nc;
        std::vector<double> v(nc, 1.0);
        const auto rf = radius_from_volume(p, dx, v);
        double worst = 0.0;
        for (int i = 0; i <= nc; ++i)
            worst = std::max(
                worst, std::fabs(rf.r[i] - std::cbrt(1.0 + 3.0 * i * dx)));
        if (worst >= 1e-12) pass = false;
    }
    // telescoping of one conservative mass step on 64 cells
    double resid_rel = 0.0;
    {
        const int nc = 64;
        const double dx = 0.25, dt = 2e-3;
        std::mt19937_64 rng(303);
        std::uniform_real_distribution<double> V(0.5, 2.0), U(-1.0, 1.0);
        std::vector<double> v(nc), u(nc + 1);
        for (auto& x : v) x = V(rng);
        for (auto& x : u) x = U(rng);
        u[0] = 0.0;
        const auto rf = radius_from_volume(p, dx, v);
        std::vector<double> vn(nc);
        for (int c = 0; c < nc; ++c)
            vn[c] = v[c] +
                    dt * (rf.rn1[c + 1] * u[c + 1] - rf.rn1[c] * u[c]) / dx;
        const auto rfn = radius_from_volume(p, dx, vn);
        double umax = 0.0;
        for (double x : u) umax = std::max(umax, std::fabs(x));
        resid_rel = radius_ode_residual(p, rf, rfn, u, dt) / umax;
        if (resid_rel > 1e-12) pass = false;
    }
    report(3, "geometry-exactness", pass,
           fmt("r = (1+3x)^(1/3) to < 1e-12; mass-step residual %.2e x "
               "max|u|",
               resid_rel),
           timer.seconds());
}

void criterion_4_roots() {
    Timer timer;
    const auto r0 = entropy_roots(0.0);
    const auto re = entropy_roots(std::exp(1.0) - 2.0);
    const double a1_oracle = 0.22452829808295760;  // frozen bisection oracle
    const bool pass = r0.first == 1.0 && r0.second == 1.0 &&
                      std::fabs(re.second - std::exp(1.0)) < 1e-12 &&
                      std::fabs(re.first - a1_oracle) < 1e-12;
    report(4, "entropy-roots", pass,
           fmt("roots(0) exact; |a2 - e| = %.2e, |a1 - oracle| = %.2e",
               std::fabs(re.second - std::exp(1.0)),
               std::fabs(re.first - a1_oracle)),
           timer.seconds());
}

double reactant_residual_run(const RunConfig& base, int cells, double dt_fix,
                             double t_end, double* r2_out) {
    RunConfig cfg = base;
    cfg.grid.n_cells = cells;
    cfg.grid.dx = base.grid.dx * base.grid.n_cells / cells;
    Stepper st(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
    st.set_hydro_enabled(cfg.hydro);
    State s = make_initial_condition(cfg.grid, cfg.ic);
    RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);
    DiagnosticsContext diag(cfg.params, cfg.grid, cfg.boundary);
    diag.initialize(s, rf);
    while (s.t < t_end - 1e-12) {
        StepAccounting acct;
        if (dt_fix > 0.0)
            acct = st.step(s, rf, std::min(dt_fix, t_end - s.t));
        else
            acct = st.step_auto(s, rf, t_end - s.t);
        diag.after_step(s, rf, acct);
    }
    if (r2_out) *r2_out = diag.reactant_sq_residual(s);
    return diag.reactant_mass_residual(s);
}

void criterion_5_reactant() {
    Timer timer;
    bool pass = true;
    // part A: d = 0, frozen theta (lambda = 0), exact scalar kinetics
    double orderA = 0.0;
    {
        RunConfig cfg;
        cfg.params.d_diff = 0.0;
        cfg.params.lambda_heat = 0.0;
        cfg.params.beta = 0.0;
        cfg.ic = {"z-tophat", 0.0, 1.0, 0};
        cfg.grid.n_cells = 256;
        cfg.grid.dx = 16.0 / 256;
        double r[3];
        const double dts[3] = {1e-2, 5e-3, 2.5e-3};
        for (int i = 0; i < 3; ++i)
            r[i] = reactant_residual_run(cfg, 256, dts[i], 1.0, nullptr);
        const double o1 = std::log2(r[0] / r[1]);
        const double o2 = std::log2(r[1] / r[2]);
        orderA = std::min(o1, o2);
        // order-2 limit measured at finite dt; allow measurement wobble
        if (!(orderA >= 2.0 - 0.02)) pass = false;
    }
    // part B: full physics, simultaneous (dx, dt) halving via the CFL
    double orderB1 = 0.0, orderB2 = 0.0;
    {
        RunConfig cfg;
        cfg.grid.n_cells = 256;
        cfg.grid.dx = 50.0 / 256;
        cfg.ic = {"gaussian-bump", 0.1, 1.0, 0};
        double r1[3], r2[3];
        for (int lvl = 0; lvl < 3; ++lvl)
            r1[lvl] = reactant_residual_run(cfg, 256 << lvl, 0.0, 1.0,
                                            &r2[lvl]);
        orderB1 = std::min(std::log2(r1[0] / r1[1]), std::log2(r1[1] / r1[2]));
        orderB2 = std::min(std::log2(r2[0] / r2[1]), std::log2(r2[1] / r2[2]));
        if (orderB1 < 1.8 || orderB2 < 1.8) pass = false;
    }
    report(5, "reactant-identities", pass,
           fmt("scalar order %.3f (>= 2); full-physics orders r1 %.2f, r2 "
               "%.2f (>= 1.8)",
               orderA, orderB1, orderB2),
           timer.seconds());
}

void criterion_6_max_principle() {
    Timer timer;
    bool pass = true;
    long long violations = 0;
    long long total_steps = 0;
    for (const char* family : {"gaussian-bump", "z-tophat"}) {
        RunConfig cfg;
        cfg.ic.family = family;
        Stepper st(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
        State s = make_initial_condition(cfg.grid, cfg.ic);
        RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);
        const long long budget = family == std::string("gaussian-bump")
                                     ? 100000
                                     : 20000;
        for (long long i = 0; i < budget; ++i) {
            st.step_auto(s, rf, 1e9);
            for (double z : s.z)
                if (z < 0.0 || z > 1.0) ++violations;
            ++total_steps;
        }
    }
    if (violations != 0) pass = false;
    report(6, "z-maximum-principle", pass,
           fmt("%lld violations over %lld steps (10^5 default + 2x10^4 "
               "tophat)",
               violations, total_steps),
           timer.seconds());
}

double entropy_residual_run(int cells, double t_end) {
    RunConfig cfg;
    cfg.grid.n_cells = cells;
    cfg.grid.dx = 50.0 / cells;
    cfg.ic = {"gaussian-bump", 0.1, 1.0, 0};
    Stepper st(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
    State s = make_initial_condition(cfg.grid, cfg.ic);
    RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);
    DiagnosticsContext diag(cfg.params, cfg.grid, cfg.boundary);
    diag.initialize(s, rf);
    while (s.t < t_end - 1e-12)
        diag.after_step(s, rf, st.step_auto(s, rf, t_end - s.t));
    return diag.entropy_identity_residual(s, rf);
}

void criterion_7_entropy_identity() {
    Timer timer;
    bool pass = true;
    // equilibrium run stays at roundoff
    double eq_res = 0.0;
    {
        RunConfig cfg;
        cfg.grid.n_cells = 256;
        cfg.grid.dx = 50.0 / 256;
        cfg.ic = {"equilibrium", 0.0, 1.0, 0};
        Stepper st(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
        State s = make_initial_condition(cfg.grid, cfg.ic);
        RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);
        DiagnosticsContext diag(cfg.params, cfg.grid, cfg.boundary);
        diag.initialize(s, rf);
        while (s.t < 1.0 - 1e-12)
            diag.after_step(s, rf, st.step_auto(s, rf, 1.0 - s.t));
        eq_res = diag.entropy_identity_residual(s, rf);
        if (eq_res >= 1e-12) pass = false;
    }
    double r[3];
    for (int lvl = 0; lvl < 3; ++lvl)
        r[lvl] = entropy_residual_run(256 << lvl, 1.0);
    const double order =
        std::min(std::log2(r[0] / r[1]), std::log2(r[1] / r[2]));
    if (order < 1.8) pass = false;
    report(7, "entropy-identity", pass,
           fmt("equilibrium residual %.2e (< 1e-12); bump order %.2f (>= 1.8)",
               eq_res, order),
           timer.seconds());
}

void criterion_8_first_law() {
    Timer timer;
    bool pass = true;
    // closed-box order study
    double order = 0.0;
    {
        double r[3];
        for (int lvl = 0; lvl < 3; ++lvl) {
            RunConfig cfg;
            cfg.boundary.kind = BoundaryKind::closed_box;
            cfg.grid.n_cells = 128 << lvl;
            cfg.grid.dx = 30.0 / cfg.grid.n_cells;
            cfg.ic = {"gaussian-bump", 0.1, 1.0, 0};
            Stepper st(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
            State s = make_initial_condition(cfg.grid, cfg.ic);
            RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);
            DiagnosticsContext diag(cfg.params, cfg.grid, cfg.boundary);
            diag.initialize(s, rf);
            while (s.t < 1.0 - 1e-12)
                diag.after_step(s, rf, st.step_auto(s, rf, 1.0 - s.t));
            r[lvl] = diag.first_law_residual(s, rf);
        }
        order = std::min(std::log2(r[0] / r[1]), std::log2(r[1] / r[2]));
        if (order < 1.8) pass = false;
    }
    // linear-diffusion reduction telescopes at roundoff
    double reduction = 0.0;
    {
        RunConfig cfg;
        cfg.boundary.kind = BoundaryKind::closed_box;
        cfg.hydro = false;
        cfg.params.K_rate = 0.0;
        cfg.params.a_rad = 0.0;
        cfg.params.kappa2 = 0.0;
        cfg.grid.n_cells = 256;
        cfg.grid.dx = 30.0 / 256;
        Stepper st(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
        st.set_hydro_enabled(false);
        // pure-conduction state: theta bump, u identically zero
        State s = make_initial_condition(cfg.grid, {"equilibrium", 0.0, 1.0, 0});
        for (int c = 0; c < cfg.grid.n_cells; ++c) {
            const double x = cfg.grid.cell_center(c);
            s.theta[c] = 1.0 + 0.2 * std::exp(-(x - 8.0) * (x - 8.0));
            s.z[c] = 0.5 * std::exp(-0.25 * x * x);
        }
        RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);
        DiagnosticsContext diag(cfg.params, cfg.grid, cfg.boundary);
        diag.initialize(s, rf);
        const double H0 = total_energy(cfg.params, cfg.grid, s, rf);
        while (s.t < 1.0 - 1e-12)
            diag.after_step(s, rf, st.step_auto(s, rf, 1.0 - s.t));
        reduction = diag.first_law_residual(s, rf) / std::fabs(H0);
        if (reduction >= 1e-11) pass = false;
    }
    report(8, "first-law-balance", pass,
           fmt("closed-box order %.2f (>= 1.8); reduction residual %.2e "
               "relative (< 1e-11)",
               order, reduction),
           timer.seconds());
}

void criterion_9_representation() {
    Timer timer;
    bool pass = true;
    PhysParams p;
    // exact zero at t = 0 for three families
    {
        Grid g{256, 32.0 / 256};
        for (const char* family :
             {"equilibrium", "gaussian-bump", "z-tophat"}) {
            const auto s = make_initial_condition(g, {family, 0.1, 1.0, 0});
            const auto rf = radius_from_volume(p, g.dx, s.v);
            RepresentationAudit audit(p, g, 1);
            audit.initialize(s, rf);
            if (audit.evaluate(s, rf).max_abs_residual != 0.0) pass = false;
        }
    }
    // equilibrium closed form at dt = 1e-3
    double eq_worst = 0.0;
    {
        Grid g{256, 32.0 / 256};
        StepperConfig scfg;
        Stepper st(p, g, {}, scfg);
        State s = make_initial_condition(g, {"equilibrium", 0.0, 1.0, 0});
        auto rf = radius_from_volume(p, g.dx, s.v);
        RepresentationAudit audit(p, g, 1);
        audit.initialize(s, rf);
        while (s.t < 0.5 - 1e-12) {
            st.step(s, rf, std::min(1e-3, 0.5 - s.t));
            audit.after_step(s, rf);
        }
        const auto res = audit.evaluate(s, rf);
        const double P = pressure(p, {1.0, 1.0});
        for (std::size_t i = 0; i < res.x.size(); ++i) {
            eq_worst = std::max(eq_worst, std::fabs(res.residual[i]));
            eq_worst = std::max(
                eq_worst, std::fabs(res.Q[i] - std::exp(-s.t * P / p.alpha())));
        }
        if (eq_worst >= 1e-8) pass = false;
    }
    // bump run: residual shrinks by >= 1.8x per dt halving
    double factors[2] = {0, 0};
    {
        double res[3];
        for (int lvl = 0; lvl < 3; ++lvl) {
            const double dt = 2e-3 / (1 << lvl);
            Grid g{256, 32.0 / 256};
            StepperConfig scfg;
            Stepper st(p, g, {}, scfg);
            State s = make_initial_condition(g, {"gaussian-bump", 0.1, 1.0, 0});
            auto rf = radius_from_volume(p, g.dx, s.v);
            RepresentationAudit audit(p, g, 1);
            audit.initialize(s, rf);
            while (s.t < 0.5 - 1e-12) {
                st.step(s, rf, std::min(dt, 0.5 - s.t));
                audit.after_step(s, rf);
            }
            res[lvl] = audit.evaluate(s, rf).max_abs_residual;
        }
        factors[0] = res[0] / res[1];
        factors[1] = res[1] / res[2];
        if (factors[0] < 1.8 || factors[1] < 1.8) pass = false;
    }
    report(9, "representation-formula", pass,
           fmt("t=0 exact; equilibrium audit %.2e (< 1e-8); halving factors "
               "%.2f, %.2f (>= 1.8)",
               eq_worst, factors[0], factors[1]),
           timer.seconds());
}

void criterion_10_mms() {
    Timer timer;
    PhysParams p;
    MmsCase mms(p);
    bool pass = true;
    StepperConfig cfg;

    const auto space =
        convergence_study(mms, p, cfg, 3, 24, 12.0, 0.3, 5e-4, true, false, 3);
    const auto strang_t =
        time_order_study(mms, p, cfg, 3, 96, 12.0, 0.3, 0.02, 3);
    cfg.splitting = Splitting::lie;
    const auto lie_t = time_order_study(mms, p, cfg, 3, 96, 12.0, 0.3, 0.02, 3);

    double smin = 10, smax = 0, tmin = 10, tmax = 0, lmin = 10, lmax = 0;
    for (int f = 0; f < 4; ++f) {
        smin = std::min(smin, space.orders_l2[f]);
        smax = std::max(smax, space.orders_l2[f]);
        tmin = std::min(tmin, strang_t.orders_l2[f]);
        tmax = std::max(tmax, strang_t.orders_l2[f]);
        lmin = std::min(lmin, lie_t.orders_l2[f]);
        lmax = std::max(lmax, lie_t.orders_l2[f]);
    }
    if (smin < 1.8 || smax > 2.2) pass = false;
    if (tmin < 1.8 || tmax > 2.2) pass = false;
    if (lmin < 0.8 || lmax > 1.2) pass = false;
    report(10, "mms-convergence", pass,
           fmt("space [%.2f, %.2f] in [1.8,2.2]; strang time [%.2f, %.2f]; "
               "lie time [%.2f, %.2f] in [0.8,1.2]",
               smin, smax, tmin, tmax, lmin, lmax),
           timer.seconds());
}

void criterion_11_qualitative() {
    Timer timer;
    RunConfig cfg;  // defaults: bump, b = 5, beta = 1, 1024 cells, x_max = 50
    Stepper st(cfg.params, cfg.grid, cfg.boundary, cfg.stepper);
    State s = make_initial_condition(cfg.grid, cfg.ic);
    RadiusField rf = radius_from_volume(cfg.params, cfg.grid.dx, s.v);
    DiagnosticsContext diag(cfg.params, cfg.grid, cfg.boundary);
    diag.initialize(s, rf);
    const double decay0 = decay_metric(s);

    bool pass = true;
    double min_v = 1e300, min_th = 1e300, max_v = 0, max_th = 0;
    double X150 = -1, Y150 = -1, Z150 = -1;
    long long steps = 0;
    while (s.t < 200.0 - 1e-10) {
        diag.after_step(s, rf, st.step_auto(s, rf, 200.0 - s.t));
        ++steps;
        if (steps % 50 == 0 || s.t >= 200.0 - 1e-10) {
            const auto rep = validate_state(s);
            min_v = std::min(min_v, rep.min_v);
            min_th = std::min(min_th, rep.min_theta);
            max_v = std::max(max_v, rep.max_v);
            max_th = std::max(max_th, rep.max_theta);
            if (!rep.pass) pass = false;
        }
        if (X150 < 0 && s.t >= 150.0) {
            const auto rec = diag.record(s, rf);
            X150 = rec.X;
            Y150 = rec.Y;
            Z150 = rec.Z;
        }
    }
    const auto rec = diag.record(s, rf);
    const double decay_end = decay_metric(s);
    if (!(min_v > 0.0) || !(min_th > 0.0)) pass = false;
    if (!(max_v < 5.0) || !(max_th < 5.0)) pass = false;
    // X, Y, Z must have plateaued: late growth below 5% of the t=150 level
    if (rec.X - X150 > 0.05 * X150 + 1e-9) pass = false;
    if (rec.Y - Y150 > 0.05 * Y150 + 1e-9) pass = false;
    if (rec.Z - Z150 > 0.05 * Z150 + 1e-9) pass = false;
    if (!(decay_end < 0.1 * decay0)) pass = false;
    report(11, "long-horizon-decay", pass,
           fmt("min_v %.3f, min_th %.3f > 0; max_v %.3f, max_th %.3f bounded; "
               "X/Y/Z late growth %.1e/%.1e/%.1e; decay %.3f -> %.4f "
               "(< %.4f)",
               min_v, min_th, max_v, max_th, rec.X - X150, rec.Y - Y150,
               rec.Z - Z150, decay0, decay_end, 0.1 * decay0),
           timer.seconds());
}

void criterion_12_determinism() {
    Timer timer;
    bool pass = true;
    std::string detail;
    if (g_exogas_bin.empty()) {
        pass = false;
        detail = "exogas binary path not supplied (--exogas-bin)";
    } else {
        const fs::path work = fs::temp_directory_path() / "exogas_accept12";
        fs::remove_all(work);
        fs::create_directories(work);
        const fs::path cfgfile = work / "run.cfg";
        {
            std::ofstream cf(cfgfile);
            cf << "grid.n_cells = 256\ngrid.x_max = 50\nrun.t_end = 0.2\n"
                  "run.sample_stride = 5\nic.family = gaussian-bump\n"
                  "output.jsonl = true\naudit.representation = on\n"
                  "audit.k = 1\n";
        }
        const auto run_one = [&](const std::string& name, int threads) {
            std::ostringstream cmd;
            cmd << g_exogas_bin << " run " << cfgfile.string() << " --out "
                << (work / name).string() << " --threads " << threads
                << " --quiet";
            return std::system(cmd.str().c_str());
        };
        if (run_one("a", 1) != 0 || run_one("b", 1) != 0 ||
            run_one("c", 4) != 0) {
            pass = false;
            detail = "runs exited nonzero";
        } else {
            const auto slurp = [](const fs::path& f) {
                std::ifstream in(f, std::ios::binary);
                std::stringstream ss;
                ss << in.rdbuf();
                return ss.str();
            };
            for (const char* file :
                 {"timeseries.csv", "timeseries.csv.jsonl",
                  "representation_audit.csv"}) {
                const std::string a = slurp(work / "a" / file);
                const std::string b = slurp(work / "b" / file);
                const std::string c = slurp(work / "c" / file);
                if (a.empty() || a != b || a != c) {
                    if (pass) detail = std::string("mismatch in ") + file;
                    pass = false;
                }
            }
            if (pass)
                detail =
                    "timeseries, jsonl and audit byte-identical across reruns "
                    "and --threads 1 vs 4";
        }
    }
    report(12, "determinism", pass, detail, timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--exogas-bin") g_exogas_bin = argv[i + 1];

    criterion_1_maxwell();
    criterion_2_dissipation();
    criterion_3_geometry();
    criterion_4_roots();
    criterion_5_reactant();
    criterion_6_max_principle();
    criterion_7_entropy_identity();
    criterion_8_first_law();
    criterion_9_representation();
    criterion_10_mms();
    criterion_11_qualitative();
    criterion_12_determinism();

    std::printf("%d of 12 criteria failed\n", g_failures);
    return g_failures;
}
