#include "exogas/verification.hpp"

#include <cmath>
#include <cstdio>
#include <thread>

#include "exogas/constitutive.hpp"
#include "exogas/diagnostics.hpp"
#include "exogas/vmath.hpp"

namespace exogas {

namespace {

// target profile constants
constexpr double kAv = 0.1, kWv = 1.0, kCv = 2.0;
constexpr double kAu = 0.08;
constexpr double kAth = 0.08;
constexpr double kZ0 = 0.15, kZ1 = 0.1;

double sech2(double s) {
    const double c = std::cosh(s);
    return 1.0 / (c * c);
}

}  // namespace

MmsCase::MmsCase(const PhysParams& p, double fd_step) : p_(p), h_(fd_step) {}

double MmsCase::v_target(double t, double x) const {
    const double tau = 0.6 + 0.4 * std::cos(1.3 * t);
    return 1.0 + kAv * tau * sech2((x - kCv) / kWv);
}

double MmsCase::u_target(double t, double x) const {
    const double tau = std::sin(1.1 * t + 0.4);
    return kAu * tau * x * std::exp(-0.5 * (x - kCv) * (x - kCv));
}

double MmsCase::theta_target(double t, double x) const {
    const double tau = std::cos(0.9 * t + 0.3);
    return 1.0 + kAth * tau * std::exp(-0.25 * x * x);
}

double MmsCase::z_target(double t, double x) const {
    const double tau = kZ0 + kZ1 * std::cos(0.7 * t);
    return tau * std::exp(-0.25 * x * x);
}

double MmsCase::r_target(double t, double x) const {
    // integral of v_target in closed form (sech^2 -> tanh)
    const double tau = 0.6 + 0.4 * std::cos(1.3 * t);
    const double I =
        x + kAv * tau * kWv *
                (std::tanh((x - kCv) / kWv) + std::tanh(kCv / kWv));
    const double rn = 1.0 + p_.n_dim * I;
    if (p_.n_dim == 3) return std::cbrt(rn);
    if (p_.n_dim == 2) return std::sqrt(rn);
    return std::pow(rn, 1.0 / p_.n_dim);
}

namespace {

// 4th-order first derivative; h chosen by the caller
template <typename F>
double d1(F&& f, double x, double h) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) /
           (12.0 * h);
}

// 4th-order second derivative; needs a larger step than d1 to keep the
// roundoff amplification ~eps/h^2 below the differentiation tolerance
template <typename F>
double d2(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2 * h)) /
           (12.0 * h * h);
}

}  // namespace

std::array<double, 4> MmsCase::equation_defect(double t, double x) const {
    const double h1 = h_;
    const double h2 = std::max(4e-3, 100.0 * h_);
    const int n = p_.n_dim;
    const double alpha = p_.alpha();
    const double a3 = p_.a_rad / 3.0;

    const auto V = [&](double tt, double xx) { return v_target(tt, xx); };
    const auto U = [&](double tt, double xx) { return u_target(tt, xx); };
    const auto TH = [&](double tt, double xx) { return theta_target(tt, xx); };
    const auto ZF = [&](double tt, double xx) { return z_target(tt, xx); };
    const auto R = [&](double tt, double xx) { return r_target(tt, xx); };

    const double v = V(t, x), th = TH(t, x), z = ZF(t, x);
    const double r = R(t, x);
    const double rn1 = vmath::powi(r, n - 1);

    // g = r^{n-1} u and its x-derivatives
    const auto g = [&](double xx) {
        return vmath::powi(R(t, xx), n - 1) * U(t, xx);
    };
    const double w = d1(g, x, h1);
    const double w_x = d2(g, x, h2);

    const double v_x = d1([&](double xx) { return V(t, xx); }, x, h1);
    const double th_x = d1([&](double xx) { return TH(t, xx); }, x, h1);
    const double th_xx = d2([&](double xx) { return TH(t, xx); }, x, h2);
    const double z_x = d1([&](double xx) { return ZF(t, xx); }, x, h1);
    const double z_xx = d2([&](double xx) { return ZF(t, xx); }, x, h2);

    const double v_t = d1([&](double tt) { return V(tt, x); }, t, h1);
    const double u_t = d1([&](double tt) { return U(tt, x); }, t, h1);
    const double th_t = d1([&](double tt) { return TH(tt, x); }, t, h1);
    const double z_t = d1([&](double tt) { return ZF(tt, x); }, t, h1);

    // mass
    const double f_v = v_t - w;

    // momentum: sigma_x expanded so only closed forms get differentiated
    const double P_th = pointwise::pressure_theta_deriv(p_.R_gas, a3, v, th);
    const double P_v = -p_.R_gas * th / (v * v);
    const double sigma_x = alpha * (w_x * v - w * v_x) / (v * v) -
                           (P_v * v_x + P_th * th_x);
    const double f_u = u_t - rn1 * sigma_x;

    // energy in the e_theta form
    const double e_th = pointwise::energy_theta_deriv(p_.c_v, p_.a_rad, v, th);
    const auto acoef = [&](double xx) {
        const double vv = V(t, xx), tt2 = TH(t, xx);
        const double rr = R(t, xx);
        const double rn1l = vmath::powi(rr, n - 1);
        return rn1l * rn1l *
               pointwise::conductivity(p_.kappa1, p_.kappa2, p_.b_exp, vv,
                                       tt2) /
               vv;
    };
    const double A = acoef(x);
    const double A_x = d1(acoef, x, h1);
    const double heat_div = A_x * th_x + A * th_xx;
    const double xi = d1(
        [&](double xx) {
            const double rr = R(t, xx);
            const double uu = U(t, xx);
            return vmath::powi(rr, n - 2) * uu * uu;
        },
        x, h1);
    const double phi = pointwise::reaction_rate(p_.K_rate, p_.A_act, p_.beta, th);
    const double f_th = e_th * th_t + th * P_th * w - alpha * w * w / v -
                        heat_div + 2.0 * p_.mu * (n - 1) * xi -
                        p_.lambda_heat * phi * z;

    // reactant
    const auto bcoef = [&](double xx) {
        const double vv = V(t, xx);
        const double rr = R(t, xx);
        const double rn1l = vmath::powi(rr, n - 1);
        return p_.d_diff * rn1l * rn1l / (vv * vv);
    };
    const double B = bcoef(x);
    const double B_x = d1(bcoef, x, h1);
    const double f_z = z_t - (B_x * z_x + B * z_xx) + phi * z;

    return {f_v, f_u, f_th, f_z};
}

void MmsCase::forcing(double t, const Grid& grid, std::span<double> f_v,
                      std::span<double> f_u, std::span<double> f_th,
                      std::span<double> f_z) const {
    const int nc = grid.n_cells;
    for (int c = 0; c < nc; ++c) {
        const auto d = equation_defect(t, grid.cell_center(c));
        f_v[c] = d[0];
        f_th[c] = d[2];
        f_z[c] = d[3];
    }
    f_u[0] = 0.0;
    f_u[nc] = 0.0;
    for (int i = 1; i < nc; ++i)
        f_u[i] = equation_defect(t, grid.node(i))[1];
}

std::array<double, 4> MmsCase::substitution_residual(double t, double x) const {
    // consistency of the differentiation itself: the defect recomputed at a
    // halved step must agree to the differentiation tolerance
    MmsCase fine(p_, 0.5 * h_);
    const auto a = equation_defect(t, x);
    const auto b = fine.equation_defect(t, x);
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

State MmsCase::sample_state(const Grid& g, double t) const {
    State s;
    const int nc = g.n_cells;
    s.v.resize(nc);
    s.theta.resize(nc);
    s.z.resize(nc);
    s.u.resize(nc + 1);
    s.t = t;
    for (int c = 0; c < nc; ++c) {
        const double x = g.cell_center(c);
        s.v[c] = v_target(t, x);
        s.theta[c] = theta_target(t, x);
        s.z[c] = z_target(t, x);
    }
    for (int i = 0; i <= nc; ++i) s.u[i] = u_target(t, g.node(i));
    s.u[0] = 0.0;
    return s;
}

std::string ConvergenceStudy::table_csv() const {
    std::string out =
        "level,dx,dt,l2_v,l2_u,l2_theta,l2_z,max_v,max_u,max_theta,max_z\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g\n",
                      r.level, r.dx, r.dt, r.err_l2[0], r.err_l2[1],
                      r.err_l2[2], r.err_l2[3], r.err_max[0], r.err_max[1],
                      r.err_max[2], r.err_max[3]);
        out += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "orders_l2,,,%.4f,%.4f,%.4f,%.4f,orders_max,%.4f,%.4f,%.4f,"
                  "%.4f\n",
                  orders_l2[0], orders_l2[1], orders_l2[2], orders_l2[3],
                  orders_max[0], orders_max[1], orders_max[2], orders_max[3]);
    out += buf;
    return out;
}

namespace {

State integrate_mms(const MmsCase& mms, const PhysParams& p,
                    const StepperConfig& cfg, const Grid& g, double t_end,
                    double dt) {
    BoundaryConditions bc;
    Stepper stepper(p, g, bc, cfg);
    stepper.set_forcing([&mms, g](double t, std::span<double> fv,
                                  std::span<double> fu, std::span<double> fth,
                                  std::span<double> fz) {
        mms.forcing(t, g, fv, fu, fth, fz);
    });
    State s = mms.sample_state(g, 0.0);
    RadiusField rf = radius_from_volume(p, g.dx, s.v);
    while (s.t < t_end - 1e-13)
        stepper.step(s, rf, std::min(dt, t_end - s.t));
    return s;
}

ConvergenceRow error_row(const Grid& g, int level, double dt, const State& s,
                         const State& ref) {
    ConvergenceRow row;
    row.level = level;
    row.dx = g.dx;
    row.dt = dt;
    const auto l2max = [&](const std::vector<double>& a,
                           const std::vector<double>& b, double dx) {
        double s2 = 0.0, mx = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double e = a[i] - b[i];
            s2 += e * e;
            mx = std::max(mx, std::fabs(e));
        }
        return std::pair<double, double>(std::sqrt(s2 * dx), mx);
    };
    const auto ev = l2max(s.v, ref.v, g.dx);
    const auto eu = l2max(s.u, ref.u, g.dx);
    const auto eth = l2max(s.theta, ref.theta, g.dx);
    const auto ez = l2max(s.z, ref.z, g.dx);
    row.err_l2 = {ev.first, eu.first, eth.first, ez.first};
    row.err_max = {ev.second, eu.second, eth.second, ez.second};
    return row;
}

ConvergenceRow run_level(const MmsCase& mms, const PhysParams& p,
                         const StepperConfig& cfg, int level, int cells,
                         double x_max, double t_end, double dt) {
    Grid g{cells, x_max / cells};
    const State s = integrate_mms(mms, p, cfg, g, t_end, dt);
    const State ref = mms.sample_state(g, s.t);
    return error_row(g, level, dt, s, ref);
}

void fill_orders(ConvergenceStudy& study) {
    const int levels = static_cast<int>(study.rows.size());
    const auto& a = study.rows[levels - 2];
    const auto& b = study.rows[levels - 1];
    for (int f = 0; f < 4; ++f) {
        study.orders_l2[f] = std::log2(a.err_l2[f] / b.err_l2[f]);
        study.orders_max[f] = std::log2(a.err_max[f] / b.err_max[f]);
    }
    for (int lvl = 0; lvl + 1 < levels; ++lvl)
        for (int f = 0; f < 4; ++f)
            if (study.rows[lvl + 1].err_l2[f] > study.rows[lvl].err_l2[f])
                study.monotone = false;
}

}  // namespace

ConvergenceStudy convergence_study(const MmsCase& mms, const PhysParams& p,
                                   const StepperConfig& cfg, int levels,
                                   int base_cells, double x_max, double t_end,
                                   double dt0, bool refine_space,
                                   bool refine_time, int threads) {
    if (levels < 2)
        throw InvalidArgument("convergence_study: levels must be >= 2");
    ConvergenceStudy study;
    study.rows.resize(levels);

    const auto work = [&](int lvl) {
        const int cells = refine_space ? base_cells << lvl : base_cells;
        const double dt = refine_time ? dt0 / (1 << lvl) : dt0;
        study.rows[lvl] = run_level(mms, p, cfg, lvl, cells, x_max, t_end, dt);
    };

    if (threads > 1) {
        std::vector<std::thread> pool;
        for (int lvl = 0; lvl < levels; ++lvl)
            pool.emplace_back(work, lvl);
        for (auto& th : pool) th.join();
    } else {
        for (int lvl = 0; lvl < levels; ++lvl) work(lvl);
    }

    fill_orders(study);
    return study;
}

ConvergenceStudy time_order_study(const MmsCase& mms, const PhysParams& p,
                                  const StepperConfig& cfg, int levels,
                                  int cells, double x_max, double t_end,
                                  double dt0, int threads) {
    if (levels < 2)
        throw InvalidArgument("time_order_study: levels must be >= 2");
    Grid g{cells, x_max / cells};
    const double dt_ref = dt0 / (1 << (levels + 2));
    const State ref = integrate_mms(mms, p, cfg, g, t_end, dt_ref);

    ConvergenceStudy study;
    study.rows.resize(levels);
    const auto work = [&](int lvl) {
        const double dt = dt0 / (1 << lvl);
        const State s = integrate_mms(mms, p, cfg, g, t_end, dt);
        study.rows[lvl] = error_row(g, lvl, dt, s, ref);
    };
    if (threads > 1) {
        std::vector<std::thread> pool;
        for (int lvl = 0; lvl < levels; ++lvl)
            pool.emplace_back(work, lvl);
        for (auto& th : pool) th.join();
    } else {
        for (int lvl = 0; lvl < levels; ++lvl) work(lvl);
    }
    fill_orders(study);
    return study;
}

}  // namespace exogas
