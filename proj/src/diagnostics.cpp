#include "exogas/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "exogas/constitutive.hpp"
#include "exogas/kernels.hpp"
#include "exogas/vmath.hpp"

namespace exogas {

namespace {

double cell_avg_u(const State& s, int c) {
    return 0.5 * (s.u[c] + s.u[c + 1]);
}

}  // namespace

double lyapunov_functional(const PhysParams& p, const Grid& g, const State& s,
                           const RadiusField& rf) {
    (void)rf;
    const int nc = g.n_cells;
    std::vector<double> ent(nc);
    kernels::normalized_entropy(p, s.v.data(), s.theta.data(), ent.data(), nc);
    double acc = 0.0;
    for (int c = 0; c < nc; ++c) {
        const double ub = cell_avg_u(s, c);
        acc += ent[c] + 0.5 * ub * ub;
    }
    return acc * g.dx;
}

double dissipation_rate(const PhysParams& p, const Grid& g, const State& s,
                        const RadiusField& rf) {
    const int nc = g.n_cells;
    const double dx = g.dx;
    const double inv_dx = 1.0 / dx;
    std::vector<double> kap(nc), phi(nc), w(nc);
    kernels::conductivity(p, s.v.data(), s.theta.data(), kap.data(), nc);
    kernels::reaction_rate(p, s.theta.data(), phi.data(), nc);
    for (int c = 0; c < nc; ++c)
        w[c] = (rf.rn1[c + 1] * s.u[c + 1] - rf.rn1[c] * s.u[c]) * inv_dx;

    double acc = 0.0;
    for (int i = 1; i < nc; ++i) {
        const double kf = 0.5 * (kap[i - 1] + kap[i]);
        const double vf = 0.5 * (s.v[i - 1] + s.v[i]);
        const double tf = 0.5 * (s.theta[i - 1] + s.theta[i]);
        const double gx = (s.theta[i] - s.theta[i - 1]) * inv_dx;
        acc += kf * rf.rn2[i] * gx * gx / (vf * tf * tf);
    }
    for (int c = 0; c < nc; ++c) {
        const double ub = cell_avg_u(s, c);
        const double rb = 0.5 * (rf.r[c] + rf.r[c + 1]);
        const double rn2b = 0.5 * (rf.rn2[c] + rf.rn2[c + 1]);
        const double ux = (s.u[c + 1] - s.u[c]) * inv_dx;
        const double vth = s.v[c] * s.theta[c];
        acc += w[c] * w[c] / vth;
        acc += s.v[c] * ub * ub / (rb * rb * s.theta[c]);
        acc += rn2b * ux * ux / vth;
        acc += phi[c] * s.z[c] / s.theta[c];
    }
    return acc * dx;
}

double decay_metric(const State& s) {
    double m = 0.0;
    for (double x : s.v) m = std::max(m, std::fabs(x - 1.0));
    for (double x : s.theta) m = std::max(m, std::fabs(x - 1.0));
    for (double x : s.z) m = std::max(m, std::fabs(x));
    for (double x : s.u) m = std::max(m, std::fabs(x));
    return m;
}

double total_energy(const PhysParams& p, const Grid& g, const State& s,
                    const RadiusField& rf) {
    (void)rf;
    const int nc = g.n_cells;
    std::vector<double> e(nc);
    kernels::internal_energy(p, s.v.data(), s.theta.data(), e.data(), nc);
    double acc = 0.0;
    for (int c = 0; c < nc; ++c) {
        const double ub = cell_avg_u(s, c);
        acc += e[c] + 0.5 * ub * ub + p.lambda_heat * s.z[c];
    }
    return acc * g.dx;
}

std::pair<double, double> entropy_roots(double c) {
    if (c < 0.0)
        throw InvalidArgument("entropy_roots: argument must be nonnegative");
    if (c == 0.0) return {1.0, 1.0};

    const auto f = [c](double y) { return y - vmath::log(y) - 1.0 - c; };

    // lower root: f(e^{-(1+c)}) = e^{-(1+c)} > 0, f(1) = -c < 0
    double lo = vmath::exp(-(1.0 + c)), hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double a1 = 0.5 * (lo + hi);

    // upper root: grow the bracket geometrically until f > 0
    lo = 1.0;
    hi = 2.0 + c;
    while (f(hi) < 0.0) hi *= 2.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {a1, 0.5 * (lo + hi)};
}

double gplus_envelope_slope(std::span<const double> t,
                            std::span<const double> gplus) {
    const std::size_t n = t.size();
    if (n != gplus.size() || n < 2)
        throw InvalidArgument("gplus_envelope_slope: need matched samples");
    double st = 0, sg = 0, stt = 0, stg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        st += t[i];
        sg += gplus[i];
        stt += t[i] * t[i];
        stg += t[i] * gplus[i];
    }
    const double denom = n * stt - st * st;
    if (denom == 0.0) return 0.0;
    return (n * stg - st * sg) / denom;
}

IntervalMeans unit_interval_means(const PhysParams& p, const Grid& g,
                                  const State& s, double lyapunov_value) {
    if (g.x_max() < 2.0)
        throw InvalidArgument("unit_interval_means: x_max must be >= 2");
    const int K = static_cast<int>(std::floor(g.x_max()));
    IntervalMeans out;
    out.mean_v.assign(K, 0.0);
    out.mean_theta.assign(K, 0.0);
    std::vector<int> counts(K, 0);
    for (int c = 0; c < g.n_cells; ++c) {
        const int k = static_cast<int>(g.cell_center(c));
        if (k < 0 || k >= K) continue;
        out.mean_v[k] += s.v[c];
        out.mean_theta[k] += s.theta[c];
        counts[k] += 1;
    }
    const auto roots =
        entropy_roots(std::max(0.0, lyapunov_value) /
                      std::min(p.R_gas, p.c_v));
    out.a1 = roots.first;
    out.a2 = roots.second;
    for (int k = 0; k < K; ++k) {
        if (counts[k] == 0) continue;
        out.mean_v[k] /= counts[k];
        out.mean_theta[k] /= counts[k];
        if (out.mean_v[k] < out.a1 - 1e-9 || out.mean_v[k] > out.a2 + 1e-9 ||
            out.mean_theta[k] < out.a1 - 1e-9 ||
            out.mean_theta[k] > out.a2 + 1e-9)
            out.all_within = false;
    }
    return out;
}

DiagnosticsContext::DiagnosticsContext(const PhysParams& p, const Grid& g,
                                       const BoundaryConditions& bc)
    : p_(p), grid_(g), bc_(bc) {}

DiagnosticsContext::Instantaneous DiagnosticsContext::instantaneous(
    const State& s, const RadiusField& rf) const {
    const int nc = grid_.n_cells;
    const double dx = grid_.dx;
    const double inv_dx = 1.0 / dx;
    const double alpha = p_.alpha();
    const double two_mu_n1 = 2.0 * p_.mu * (p_.n_dim - 1);

    Instantaneous out;
    std::vector<double> kap(nc);
    kernels::conductivity(p_, s.v.data(), s.theta.data(), kap.data(), nc);

    double da = 0.0, dk = 0.0, rv = 0.0;
    double f_lo = rf.rn1[0] / rf.r[0] * s.u[0] * s.u[0];
    for (int c = 0; c < nc; ++c) {
        const double w =
            (rf.rn1[c + 1] * s.u[c + 1] - rf.rn1[c] * s.u[c]) * inv_dx;
        da += alpha * w * w / (s.v[c] * s.theta[c]);
        const double f_hi =
            rf.rn1[c + 1] / rf.r[c + 1] * s.u[c + 1] * s.u[c + 1];
        rv += two_mu_n1 * (f_hi - f_lo) * inv_dx / s.theta[c];
        f_lo = f_hi;
    }
    for (int i = 1; i < nc; ++i) {
        const double kf = 0.5 * (kap[i - 1] + kap[i]);
        const double vf = 0.5 * (s.v[i - 1] + s.v[i]);
        const double tf = 0.5 * (s.theta[i - 1] + s.theta[i]);
        const double gx = (s.theta[i] - s.theta[i - 1]) * inv_dx;
        dk += kf * rf.rn2[i] * gx * gx / (vf * tf * tf);
    }
    out.diss_alpha = da * dx;
    out.diss_kappa = dk * dx;
    out.rhs_visc = rv * dx;
    return out;
}

void DiagnosticsContext::initialize(const State& s0, const RadiusField& rf0) {
    const int nc = grid_.n_cells;
    z0_int_ = 0;
    z0_sq_int_ = 0;
    v0_int_ = 0;
    for (int c = 0; c < nc; ++c) {
        z0_int_ += s0.z[c];
        z0_sq_int_ += s0.z[c] * s0.z[c];
        v0_int_ += s0.v[c];
    }
    z0_int_ *= grid_.dx;
    z0_sq_int_ *= grid_.dx;
    v0_int_ *= grid_.dx;
    lyap0_ = lyapunov_functional(p_, grid_, s0, rf0);
    H0_ = total_energy(p_, grid_, s0, rf0);
    prev_ = instantaneous(s0, rf0);
    theta_prev_ = s0.theta;
    u_prev_ = s0.u;
    rf_prev_ = rf0;
    t_prev_ = s0.t;
    initialized_ = true;
}

void DiagnosticsContext::after_step(const State& s, const RadiusField& rf,
                                    const StepAccounting& acct) {
    if (!initialized_) throw HistoryGap("diagnostics: not initialized");
    const double dt = acct.dt;
    const int nc = grid_.n_cells;
    const double dx = grid_.dx;

    const Instantaneous now = instantaneous(s, rf);
    int_diss_alpha_ += 0.5 * dt * (prev_.diss_alpha + now.diss_alpha);
    int_diss_kappa_ += 0.5 * dt * (prev_.diss_kappa + now.diss_kappa);
    int_rhs_visc_ += 0.5 * dt * (prev_.rhs_visc + now.rhs_visc);
    prev_ = now;

    int_burn_ += acct.burn_mass_quad;
    int_burn_sq_ += acct.burn_sq_quad;
    int_burn_entropy_ += acct.burn_entropy_quad;
    int_z_diss_ += acct.z_dissipation;
    int_bdry_heat_ += acct.bdry_heat_flux;
    int_bdry_z_ += acct.bdry_z_flux;
    int_bdry_work_ += acct.bdry_work;
    int_bdry_volume_ += acct.bdry_volume_flux;
    int_forcing_energy_ += acct.theta_forcing + p_.lambda_heat * acct.z_forcing;
    int_v_forcing_ += acct.v_forcing;
    int_z_forcing_ += acct.z_forcing;

    // X(t): coefficient frozen at the pre-step temperature (first-order
    // consistent update quotient)
    {
        std::vector<double> pw(nc), lows(nc);
        kernels::vlog(theta_prev_.data(), lows.data(), nc);
        for (int c = 0; c < nc; ++c) lows[c] *= (p_.b_exp + 3.0);
        kernels::vexp(lows.data(), pw.data(), nc);
        double xinc = 0.0;
        for (int c = 0; c < nc; ++c) {
            const double tdot = (s.theta[c] - theta_prev_[c]) / dt;
            xinc += (1.0 + pw[c]) * tdot * tdot;
        }
        X_ += xinc * dx * dt;
    }
    // Y(t), Z(t): running maxima
    {
        const double inv_dx = 1.0 / dx;
        std::vector<double> pw(nc), lows(nc);
        kernels::vlog(s.theta.data(), lows.data(), nc);
        for (int c = 0; c < nc; ++c) lows[c] *= 2.0 * p_.b_exp;
        kernels::vexp(lows.data(), pw.data(), nc);
        double y = 0.0;
        for (int i = 1; i < nc; ++i) {
            const double gx = (s.theta[i] - s.theta[i - 1]) * inv_dx;
            const double coeff = 1.0 + 0.5 * (pw[i - 1] + pw[i]);
            y += rf.rn2[i] * coeff * gx * gx;
        }
        Y_ = std::max(Y_, y * dx);
        double zf = 0.0;
        for (int i = 1; i < nc; ++i) {
            const double uxx =
                (s.u[i + 1] - 2.0 * s.u[i] + s.u[i - 1]) * inv_dx * inv_dx;
            zf += uxx * uxx;
        }
        Z_ = std::max(Z_, zf * dx);
    }

    {
        std::vector<double> umid(nc + 1);
        for (int i = 0; i <= nc; ++i) umid[i] = 0.5 * (u_prev_[i] + s.u[i]);
        radius_res_last_ = radius_ode_residual(p_, rf_prev_, rf, umid, dt);
    }

    theta_prev_ = s.theta;
    u_prev_ = s.u;
    rf_prev_ = rf;
    t_prev_ = s.t;
}

double DiagnosticsContext::reactant_mass_residual(const State& s) const {
    double zint = 0.0;
    for (double zc : s.z) zint += zc;
    zint *= grid_.dx;
    return std::fabs(zint + int_burn_ - z0_int_ - int_bdry_z_ - int_z_forcing_);
}

double DiagnosticsContext::reactant_sq_residual(const State& s) const {
    double zsq = 0.0;
    for (double zc : s.z) zsq += zc * zc;
    zsq *= grid_.dx;
    // derivable half-weighted form of the z^2 identity
    return std::fabs(0.5 * zsq + int_z_diss_ + int_burn_sq_ - 0.5 * z0_sq_int_);
}

double DiagnosticsContext::entropy_identity_residual(
    const State& s, const RadiusField& rf) const {
    const double lyap = lyapunov_functional(p_, grid_, s, rf);
    const double lhs = lyap + int_diss_alpha_ + int_diss_kappa_ +
                       int_burn_entropy_;
    // boundary flux of the identity vanishes for both boundary kinds:
    // u is pinned at both ends and the entropy weight (1 - 1/theta) is
    // zero at the outer Dirichlet face
    const double rhs =
        lyap0_ + p_.lambda_heat * int_burn_ + int_rhs_visc_;
    return std::fabs(lhs - rhs);
}

double DiagnosticsContext::first_law_residual(const State& s,
                                              const RadiusField& rf) const {
    const double H = total_energy(p_, grid_, s, rf);
    return std::fabs(H - H0_ -
                     (int_bdry_heat_ + p_.lambda_heat * int_bdry_z_ +
                      int_bdry_work_ + int_forcing_energy_));
}

double DiagnosticsContext::volume_residual(const State& s) const {
    double vint = 0.0;
    for (double vc : s.v) vint += vc;
    vint *= grid_.dx;
    return std::fabs(vint - v0_int_ - int_bdry_volume_ - int_v_forcing_);
}

FunctionalRecord DiagnosticsContext::record(const State& s,
                                            const RadiusField& rf) const {
    FunctionalRecord r;
    r.t = s.t;
    r.lyapunov = lyapunov_functional(p_, grid_, s, rf);
    r.dissipation_V = dissipation_rate(p_, grid_, s, rf);
    double zint = 0.0, zsq = 0.0;
    for (double zc : s.z) {
        zint += zc;
        zsq += zc * zc;
    }
    r.reactant_mass = zint * grid_.dx;
    r.reactant_sq = zsq * grid_.dx;
    r.burn_integral = int_burn_;
    r.burn_sq_integral = int_z_diss_ + int_burn_sq_;
    r.X = X_;
    r.Y = Y_;
    r.Z = Z_;
    double gp = 0.0;
    for (double th : s.theta) gp = std::max(gp, 1.0 / th - 1.0);
    r.gplus_sup = std::max(gp, 0.0);
    const auto rep = validate_state(s);
    r.min_v = rep.min_v;
    r.max_v = rep.max_v;
    r.min_theta = rep.min_theta;
    r.max_theta = rep.max_theta;
    r.min_z = rep.min_z;
    r.max_z = rep.max_z;
    r.supnorm_dev = decay_metric(s);
    r.H_total = total_energy(p_, grid_, s, rf);
    r.boundary_work_heat =
        int_bdry_heat_ + p_.lambda_heat * int_bdry_z_ + int_bdry_work_;
    r.res_entropy = entropy_identity_residual(s, rf);
    r.res_reactant_mass = reactant_mass_residual(s);
    r.res_reactant_sq = reactant_sq_residual(s);
    r.res_first_law = first_law_residual(s, rf);
    r.res_volume = volume_residual(s);
    r.res_radius_ode = radius_res_last_;
    return r;
}

RepresentationAudit::RepresentationAudit(const PhysParams& p, const Grid& g,
                                         int k)
    : p_(p), grid_(g), k_(k) {
    if (k < 0) throw InvalidArgument("representation audit: k must be >= 0");
    if (grid_.x_max() < k + 2.0)
        throw InvalidArgument(
            "representation audit: x_max must be >= k + 2");
    const int nc = grid_.n_cells;
    // cut-off sampled at nodes; the strip weights (phi_j - phi_{j+1}) make
    // the discrete summation by parts of the momentum rows exact
    phi_cut_.resize(nc + 1);
    for (int j = 0; j <= nc; ++j) {
        const double x = grid_.node(j);
        if (x <= k + 1.0)
            phi_cut_[j] = 1.0;
        else if (x <= k + 2.0)
            phi_cut_[j] = k + 2.0 - x;
        else
            phi_cut_[j] = 0.0;
    }
    // audited cells: centers in [k, k+1] whose right node still has phi = 1
    first_cell_ = -1;
    last_cell_ = -1;
    for (int c = 0; c < nc; ++c) {
        const double x = grid_.cell_center(c);
        if (x >= k && x <= k + 1.0 && phi_cut_[c + 1] >= 1.0) {
            if (first_cell_ < 0) first_cell_ = c;
            last_cell_ = c;
        }
    }
    if (first_cell_ < 0)
        throw InvalidArgument("representation audit: empty audit interval");
}

double RepresentationAudit::sigma_strip(const State& s,
                                        const RadiusField& rf) const {
    const int nc = grid_.n_cells;
    const double inv_dx = 1.0 / grid_.dx;
    const double alpha = p_.alpha();
    const double a3 = p_.a_rad / 3.0;
    double acc = 0.0;
    for (int c = 0; c < nc; ++c) {
        const double wgt = phi_cut_[c] - phi_cut_[c + 1];
        if (wgt == 0.0) continue;
        const double w =
            (rf.rn1[c + 1] * s.u[c + 1] - rf.rn1[c] * s.u[c]) * inv_dx;
        acc += wgt * pointwise::effective_stress(alpha, p_.R_gas, a3, s.v[c],
                                                 s.theta[c], w);
    }
    return acc;
}

// suffix over interior nodes of (n-1) phi u^2 / r^n, read at node c+1
void RepresentationAudit::u2_suffix(const State& s, const RadiusField& rf,
                                    std::vector<double>& out) const {
    const int nc = grid_.n_cells;
    out.assign(nc + 1, 0.0);
    double suffix = 0.0;
    for (int j = nc - 1; j >= 1; --j) {
        suffix +=
            (p_.n_dim - 1) * phi_cut_[j] * s.u[j] * s.u[j] / rf.rn[j] * grid_.dx;
        out[j] = suffix;
    }
    out[0] = suffix;
}

// suffix over interior nodes of phi u r^{1-n}, read at node c+1
void RepresentationAudit::u_suffix(const State& s, const RadiusField& rf,
                                   std::vector<double>& out) const {
    const int nc = grid_.n_cells;
    out.assign(nc + 1, 0.0);
    double suffix = 0.0;
    for (int j = nc - 1; j >= 1; --j) {
        suffix += phi_cut_[j] * s.u[j] / rf.rn1[j] * grid_.dx;
        out[j] = suffix;
    }
    out[0] = suffix;
}

void RepresentationAudit::compute_BQ(const State& s, const RadiusField& rf,
                                     std::vector<double>& B,
                                     std::vector<double>& Q) const {
    const int nc = grid_.n_cells;
    const double alpha = p_.alpha();
    std::vector<double> su;
    u_suffix(s, rf, su);
    B.assign(nc, 0.0);
    Q.assign(nc, 0.0);
    for (int c = 0; c < nc; ++c) {
        B[c] = v0_[c] * vmath::exp((u0_suffix_[c + 1] - su[c + 1]) / alpha);
        Q[c] = vmath::exp((S1_ - S2_[c]) / alpha);
    }
}

void RepresentationAudit::initialize(const State& s0, const RadiusField& rf0) {
    if (s0.t != 0.0)
        throw HistoryGap(
            "representation audit: must be enabled from t = 0");
    const int nc = grid_.n_cells;
    v0_.assign(s0.v.begin(), s0.v.end());
    u_suffix(s0, rf0, u0_suffix_);
    S1_ = 0.0;
    s1_prev_ = sigma_strip(s0, rf0);
    S2_.assign(nc, 0.0);
    std::vector<double> sw;
    u2_suffix(s0, rf0, sw);
    s2_prev_.assign(nc, 0.0);
    for (int c = 0; c < nc; ++c) s2_prev_[c] = sw[c + 1];
    A_.assign(nc, 0.0);

    // at t=0, B Q = v0 so the integrand of A is simply P
    a_prev_.assign(nc, 0.0);
    const double a3 = p_.a_rad / 3.0;
    for (int c = 0; c < nc; ++c)
        a_prev_[c] = pointwise::pressure(p_.R_gas, a3, s0.v[c], s0.theta[c]);
    a_first0_ = a_prev_;
    a_first1_.assign(nc, 0.0);
    a_penult_.assign(nc, 0.0);
    dt_first_ = 0.0;
    dt_last_ = 0.0;
    steps_seen_ = 0;
    t_prev_ = 0.0;
    initialized_ = true;
}

void RepresentationAudit::after_step(const State& s, const RadiusField& rf) {
    if (!initialized_)
        throw HistoryGap("representation audit: not initialized at t = 0");
    const int nc = grid_.n_cells;
    const double dt = s.t - t_prev_;

    const double s1_now = sigma_strip(s, rf);
    S1_ += 0.5 * dt * (s1_prev_ + s1_now);
    s1_prev_ = s1_now;

    std::vector<double> sw;
    u2_suffix(s, rf, sw);
    for (int c = 0; c < nc; ++c) {
        const double now = sw[c + 1];
        S2_[c] += 0.5 * dt * (s2_prev_[c] + now);
        s2_prev_[c] = now;
    }

    std::vector<double> B, Q;
    compute_BQ(s, rf, B, Q);
    const double a3 = p_.a_rad / 3.0;
    a_penult_ = a_prev_;
    for (int c = first_cell_; c <= last_cell_; ++c) {
        const double Pnow =
            pointwise::pressure(p_.R_gas, a3, s.v[c], s.theta[c]);
        const double a_now = s.v[c] * Pnow / (B[c] * Q[c]);
        A_[c] += 0.5 * dt * (a_prev_[c] + a_now);
        a_prev_[c] = a_now;
    }
    ++steps_seen_;
    if (steps_seen_ == 1) {
        dt_first_ = dt;
        a_first1_ = a_prev_;
    }
    dt_last_ = dt;
    t_prev_ = s.t;
}

RepresentationAudit::Result RepresentationAudit::evaluate(
    const State& s, const RadiusField& rf) const {
    if (!initialized_)
        throw HistoryGap("representation audit: not initialized at t = 0");
    std::vector<double> B, Q;
    compute_BQ(s, rf, B, Q);
    Result res;
    const double alpha = p_.alpha();
    for (int c = first_cell_; c <= last_cell_; ++c) {
        res.x.push_back(grid_.cell_center(c));
        res.B.push_back(B[c]);
        res.Q.push_back(Q[c]);
        // Euler-Maclaurin end correction of the composite trapezoid
        double A_eff = A_[c];
        if (steps_seen_ >= 2) {
            const double fp_end = (a_prev_[c] - a_penult_[c]) / dt_last_;
            const double fp_0 = (a_first1_[c] - a_first0_[c]) / dt_first_;
            A_eff -= dt_last_ * dt_last_ / 12.0 * fp_end -
                     dt_first_ * dt_first_ / 12.0 * fp_0;
        }
        res.A_acc.push_back(A_eff);
        const double pred = B[c] * Q[c] * (1.0 + A_eff / alpha);
        const double r = s.v[c] - pred;
        res.residual.push_back(r);
        res.max_abs_residual = std::max(res.max_abs_residual, std::fabs(r));
    }
    return res;
}

}  // namespace exogas
