#include "exogas/solver.hpp"

#include <algorithm>
#include <cmath>

#include "exogas/constitutive.hpp"
#include "exogas/kernels.hpp"
#include "exogas/tridiag.hpp"
#include "exogas/vmath.hpp"

namespace exogas {

namespace {

// snap values within a few ulp of a bound back onto it; genuine violations
// stay visible to the caller
inline double snap_unit_interval(double z) {
    if (z < 0.0 && z > -5e-16) return 0.0;
    if (z > 1.0 && z < 1.0 + 5e-16) return 1.0;
    return z;
}

}  // namespace

Stepper::Stepper(const PhysParams& p, const Grid& g,
                 const BoundaryConditions& bc, const StepperConfig& cfg)
    : p_(p), grid_(g), bc_(bc), cfg_(cfg) {
    p_.validate();
    grid_.validate();
    cfg_.validate();
    const int nc = grid_.n_cells;
    w_.resize(nc);
    sigma_.resize(nc);
    kap_.resize(nc);
    fv_.resize(nc);
    fu_.resize(nc + 1);
    fth_.resize(nc);
    fz_.resize(nc);
    lo_.resize(nc + 1);
    di_.resize(nc + 1);
    up_.resize(nc + 1);
    rhs_.resize(nc + 1);
    thbar_.resize(nc);
    thnew_.resize(nc);
    fres_.resize(nc);
    vhalf_.resize(nc);
    phalf_.resize(nc);
    umid_.resize(nc + 1);
    znew_.resize(nc);
}

void Stepper::refresh_forcing(double t) {
    if (!forcing_) return;
    forcing_(t, fv_, fu_, fth_, fz_);
}

void Stepper::mass_flux(std::span<const double> u, const RadiusField& rf,
                        std::span<double> w) const {
    const int nc = grid_.n_cells;
    const double inv_dx = 1.0 / grid_.dx;
    for (int c = 0; c < nc; ++c)
        w[c] = (rf.rn1[c + 1] * u[c + 1] - rf.rn1[c] * u[c]) * inv_dx;
}

void Stepper::momentum_rhs(const State& s, const RadiusField& rf,
                           std::span<double> rhs) const {
    const int nc = grid_.n_cells;
    const double inv_dx = 1.0 / grid_.dx;
    std::vector<double> w(nc), sig(nc);
    mass_flux(s.u, rf, w);
    kernels::effective_stress(p_, s.v.data(), s.theta.data(), w.data(),
                              sig.data(), nc);
    rhs[0] = 0.0;
    rhs[nc] = 0.0;
    for (int i = 1; i < nc; ++i)
        rhs[i] = rf.rn1[i] * (sig[i] - sig[i - 1]) * inv_dx;
}

double Stepper::compute_dt(const State& s, const RadiusField& rf) const {
    const int nc = grid_.n_cells;
    const double gamma_eff = 1.0 + p_.R_gas / p_.c_v;
    const double a3 = p_.a_rad / 3.0;
    double max_speed = 1e-300;
    for (int i = 0; i <= nc; ++i) {
        double vn, thn;
        if (i == 0) {
            vn = s.v[0];
            thn = s.theta[0];
        } else if (i == nc) {
            vn = s.v[nc - 1];
            thn = s.theta[nc - 1];
        } else {
            vn = 0.5 * (s.v[i - 1] + s.v[i]);
            thn = 0.5 * (s.theta[i - 1] + s.theta[i]);
        }
        const double pth = pointwise::pressure_theta_deriv(p_.R_gas, a3, vn, thn);
        const double c =
            std::sqrt(thn * pth * gamma_eff / vn) * rf.rn1[i] / vn;
        max_speed = std::max(max_speed, c);
    }
    const double dt = cfg_.cfl_hyper * grid_.dx / max_speed;
    return std::clamp(dt, cfg_.dt_min, cfg_.dt_max);
}

int Stepper::energy_step(std::span<double> theta, std::span<const double> v,
                         std::span<const double> u, const RadiusField& rf,
                         double dtau, double weight, const double* q_ext,
                         const double* f_th, StepAccounting* acct) {
    const int nc = grid_.n_cells;
    const double dx = grid_.dx;
    const double inv_dx = 1.0 / dx;
    const double W = weight;
    const double a3 = p_.a_rad / 3.0;
    const double two_mu_n1 = 2.0 * p_.mu * (p_.n_dim - 1);
    const double alpha = p_.alpha();
    const bool outer_dirichlet = bc_.kind == BoundaryKind::exterior;

    mass_flux(u, rf, w_);

    // (r^{n-2} u^2)_x by exact flux difference; telescopes to the ends
    std::vector<double>& xi = sigma_;  // reuse workspace
    {
        double f_lo = rf.rn1[0] / rf.r[0] * u[0] * u[0];
        for (int c = 0; c < nc; ++c) {
            const double f_hi = rf.rn1[c + 1] / rf.r[c + 1] * u[c + 1] * u[c + 1];
            xi[c] = (f_hi - f_lo) * inv_dx;
            f_lo = f_hi;
        }
    }

    std::vector<double> e_old(nc);
    kernels::internal_energy(p_, v.data(), theta.data(), e_old.data(), nc);

    const double kappa_out =
        pointwise::conductivity(p_.kappa1, p_.kappa2, p_.b_exp, bc_.v_out,
                                bc_.theta_out);

    std::copy(theta.begin(), theta.end(), thnew_.begin());
    std::vector<double> gcoef(nc + 1);
    std::vector<double> gflux(nc + 1);

    if (!cfg_.diff_theta_impl) {
        // explicit forward-Euler evaluation; a test-harness mode, subject
        // to the parabolic step restriction
        kernels::conductivity(p_, v.data(), theta.data(), kap_.data(), nc);
        std::vector<double> gf(nc + 1);
        gf[0] = 0.0;
        for (int i = 1; i < nc; ++i) {
            const double kf = 0.5 * (kap_[i - 1] + kap_[i]);
            const double vf = 0.5 * (v[i - 1] + v[i]);
            gf[i] = rf.rn2[i] * kf / (vf * dx) * (theta[i] - theta[i - 1]);
        }
        gf[nc] = outer_dirichlet
                     ? rf.rn2[nc] * 0.5 * (kap_[nc - 1] + kappa_out) /
                           (0.5 * (v[nc - 1] + bc_.v_out) * dx) * 2.0 *
                           (bc_.theta_out - theta[nc - 1])
                     : 0.0;
        for (int c = 0; c < nc; ++c) {
            const double pth = pointwise::pressure_theta_deriv(p_.R_gas, a3,
                                                               v[c], theta[c]);
            double rhs = (gf[c + 1] - gf[c]) * inv_dx -
                         theta[c] * pth * w_[c] +
                         alpha * w_[c] * w_[c] / v[c] - two_mu_n1 * xi[c];
            if (q_ext) rhs += q_ext[c];
            if (f_th) rhs += f_th[c];
            const double e_new = e_old[c] + dtau * rhs;
            if (!(e_new > 0.0))
                throw NewtonDivergence(
                    "energy_step: explicit update left the positive cone");
            thnew_[c] = temperature_from_energy(p_, v[c], e_new, theta[c]);
        }
        if (acct) {
            acct->bdry_heat_flux += dtau * (gf[nc] - gf[0]);
            if (f_th) {
                double fsum = 0.0;
                for (int c = 0; c < nc; ++c) fsum += f_th[c];
                acct->theta_forcing += dtau * fsum * dx;
            }
        }
        std::copy(thnew_.begin(), thnew_.end(), theta.begin());
        return 1;
    }

    const auto assemble_fluxes = [&](const std::vector<double>& th_eval) {
        kernels::conductivity(p_, v.data(), th_eval.data(), kap_.data(), nc);
        gcoef[0] = 0.0;
        gflux[0] = 0.0;
        for (int i = 1; i < nc; ++i) {
            const double kf = 0.5 * (kap_[i - 1] + kap_[i]);
            const double vf = 0.5 * (v[i - 1] + v[i]);
            gcoef[i] = rf.rn2[i] * kf / (vf * dx);
            gflux[i] = gcoef[i] * (th_eval[i] - th_eval[i - 1]);
        }
        if (outer_dirichlet) {
            const double kf = 0.5 * (kap_[nc - 1] + kappa_out);
            const double vf = 0.5 * (v[nc - 1] + bc_.v_out);
            gcoef[nc] = rf.rn2[nc] * kf / (vf * dx);
            gflux[nc] = gcoef[nc] * 2.0 * (bc_.theta_out - th_eval[nc - 1]);
        } else {
            gcoef[nc] = 0.0;
            gflux[nc] = 0.0;
        }
    };

    int iters = 0;
    bool polished = false;
    const double tol = cfg_.newton_tol;
    for (int it = 0;; ++it) {
        if (it >= cfg_.newton_max_iter)
            throw NewtonDivergence("energy_step: Newton did not converge");
        ++iters;

        for (int c = 0; c < nc; ++c)
            thbar_[c] = theta[c] + W * (thnew_[c] - theta[c]);
        assemble_fluxes(thbar_);

        double maxth = 0.0;
        for (int c = 0; c < nc; ++c) {
            const double e_new =
                pointwise::internal_energy(p_.c_v, p_.a_rad, v[c], thnew_[c]);
            const double pth = pointwise::pressure_theta_deriv(p_.R_gas, a3,
                                                               v[c], thbar_[c]);
            const double gdiff = (gflux[c + 1] - gflux[c]) * inv_dx;
            double F = (e_new - e_old[c]) / dtau + thbar_[c] * pth * w_[c] -
                       alpha * w_[c] * w_[c] / v[c] + two_mu_n1 * xi[c] - gdiff;
            if (q_ext) F -= q_ext[c];
            if (f_th) F -= f_th[c];
            fres_[c] = F;

            const double pthth = 4.0 * p_.a_rad * thbar_[c] * thbar_[c];
            const double m_hi =
                (c + 1 == nc && outer_dirichlet) ? 2.0 * gcoef[nc] : gcoef[c + 1];
            di_[c] = pointwise::energy_theta_deriv(p_.c_v, p_.a_rad, v[c],
                                                   thnew_[c]) /
                         dtau +
                     W * (pth + thbar_[c] * pthth) * w_[c] +
                     W * (m_hi + gcoef[c]) * inv_dx;
            up_[c] = (c + 1 < nc) ? -W * gcoef[c + 1] * inv_dx : 0.0;
            lo_[c] = (c > 0) ? -W * gcoef[c] * inv_dx : 0.0;
            rhs_[c] = -F;
            maxth = std::max(maxth, std::fabs(thnew_[c]));
        }

        tridiag_solve_inplace({lo_.data(), (size_t)nc}, {di_.data(), (size_t)nc},
                              {up_.data(), (size_t)nc}, {rhs_.data(), (size_t)nc});

        // damped line search against non-positive iterates
        double factor = 1.0;
        for (int attempt = 0;; ++attempt) {
            bool ok = true;
            for (int c = 0; c < nc; ++c)
                if (thnew_[c] + factor * rhs_[c] <= 0.0) {
                    ok = false;
                    break;
                }
            if (ok) break;
            if (attempt >= 20)
                throw NewtonDivergence(
                    "energy_step: positivity loss, damping exhausted");
            factor *= 0.5;
        }

        double max_step = 0.0;
        for (int c = 0; c < nc; ++c) {
            const double d = factor * rhs_[c];
            thnew_[c] += d;
            max_step = std::max(max_step, std::fabs(d));
        }

        if (max_step <= tol * std::max(1.0, maxth)) {
            if (polished) break;
            polished = true;  // one more sweep drives F to its floor
        }
    }

    for (int c = 0; c < nc; ++c)
        thbar_[c] = theta[c] + W * (thnew_[c] - theta[c]);
    assemble_fluxes(thbar_);
    if (acct) {
        acct->energy_newton_iters += iters;
        acct->bdry_heat_flux += dtau * (gflux[nc] - gflux[0]);
        if (f_th) {
            double fsum = 0.0;
            for (int c = 0; c < nc; ++c) fsum += f_th[c];
            acct->theta_forcing += dtau * fsum * dx;
        }
    }
    std::copy(thnew_.begin(), thnew_.end(), theta.begin());
    return iters;
}

void Stepper::z_diffusion_step(std::span<double> z, std::span<const double> v,
                               const RadiusField& rf, double dtau,
                               const double* f_z, StepAccounting* acct) {
    if (p_.d_diff == 0.0) {
        if (f_z) {
            const int nc = grid_.n_cells;
            double fsum = 0.0;
            for (int c = 0; c < nc; ++c) {
                z[c] += dtau * f_z[c];
                fsum += f_z[c];
            }
            if (acct) acct->z_forcing += dtau * fsum * grid_.dx;
        }
        return;
    }

    const int nc = grid_.n_cells;
    const double dx = grid_.dx;
    const double inv_dx = 1.0 / dx;
    const bool outer_dirichlet = bc_.kind == BoundaryKind::exterior;

    std::vector<double> zcoef(nc + 1);
    zcoef[0] = 0.0;
    for (int i = 1; i < nc; ++i) {
        const double vf = 0.5 * (v[i - 1] + v[i]);
        zcoef[i] = p_.d_diff * rf.rn2[i] / (vf * vf * dx);
    }
    if (outer_dirichlet) {
        const double vf = 0.5 * (v[nc - 1] + bc_.v_out);
        zcoef[nc] = p_.d_diff * rf.rn2[nc] / (vf * vf * dx);
    } else {
        zcoef[nc] = 0.0;
    }

    const auto flux = [&](const double* zz, int i) -> double {
        if (i == 0) return 0.0;
        if (i == nc)
            return outer_dirichlet
                       ? zcoef[nc] * 2.0 * (bc_.z_out - zz[nc - 1])
                       : 0.0;
        return zcoef[i] * (zz[i] - zz[i - 1]);
    };

    const auto solve_with_weight = [&](double wz, std::vector<double>& out) {
        for (int c = 0; c < nc; ++c) {
            const double m_hi =
                (c + 1 == nc && outer_dirichlet) ? 2.0 * zcoef[nc] : zcoef[c + 1];
            di_[c] = 1.0 + wz * dtau * (m_hi + zcoef[c]) * inv_dx;
            up_[c] = (c + 1 < nc) ? -wz * dtau * zcoef[c + 1] * inv_dx : 0.0;
            lo_[c] = (c > 0) ? -wz * dtau * zcoef[c] * inv_dx : 0.0;
            const double lz =
                (flux(z.data(), c + 1) - flux(z.data(), c)) * inv_dx;
            rhs_[c] = z[c] + (1.0 - wz) * dtau * lz + (f_z ? dtau * f_z[c] : 0.0);
        }
        tridiag_solve_inplace({lo_.data(), (size_t)nc}, {di_.data(), (size_t)nc},
                              {up_.data(), (size_t)nc},
                              {rhs_.data(), (size_t)nc});
        for (int c = 0; c < nc; ++c) out[c] = snap_unit_interval(rhs_[c]);
    };

    double wz = 0.5;
    solve_with_weight(wz, znew_);
    if (!f_z) {
        bool in_range = true;
        for (int c = 0; c < nc; ++c)
            if (znew_[c] < 0.0 || znew_[c] > 1.0) {
                in_range = false;
                break;
            }
        if (!in_range) {
            wz = 1.0;  // backward Euler M-matrix solve cannot leave [0,1]
            solve_with_weight(wz, znew_);
            if (acct) acct->z_be_fallbacks += 1;
        }
    }

    if (acct) {
        std::vector<double>& zeta = rhs_;  // weighted state actually fluxed
        for (int c = 0; c < nc; ++c)
            zeta[c] = (1.0 - wz) * z[c] + wz * znew_[c];
        acct->bdry_z_flux +=
            dtau * (flux(zeta.data(), nc) - flux(zeta.data(), 0));
        double diss = 0.0, fsum = 0.0;
        for (int c = 0; c < nc; ++c) {
            const double fc = f_z ? f_z[c] : 0.0;
            diss -= 0.5 * (z[c] + znew_[c]) * (znew_[c] - z[c] - dtau * fc);
            fsum += fc;
        }
        acct->z_dissipation += diss * dx;
        acct->z_forcing += dtau * fsum * dx;
    }
    std::copy(znew_.begin(), znew_.end(), z.begin());
}

void Stepper::reaction_step(std::span<double> z, std::span<double> theta,
                            std::span<const double> v, double dtau,
                            StepAccounting* acct) {
    if (p_.K_rate == 0.0) return;
    const int nc = grid_.n_cells;
    const double dx = grid_.dx;
    const double lambda = p_.lambda_heat;

    std::vector<double>& phi = kap_;   // workspace reuse
    std::vector<double>& arg = fres_;
    std::vector<double>& decay = thbar_;
    kernels::reaction_rate(p_, theta.data(), phi.data(), nc);
    if (lambda != 0.0) {
        // midpoint rate: predict half the heat deposit, re-evaluate phi
        // there; keeps the substep second order in its own flow
        std::vector<double>& thmid = thnew_;
        for (int c = 0; c < nc; ++c) arg[c] = -phi[c] * dtau;
        kernels::vexp(arg.data(), decay.data(), nc);
        for (int c = 0; c < nc; ++c) {
            const double dz_half = 0.5 * z[c] * (1.0 - decay[c]);
            if (dz_half != 0.0) {
                const double e_half =
                    pointwise::internal_energy(p_.c_v, p_.a_rad, v[c],
                                               theta[c]) +
                    lambda * dz_half;
                thmid[c] =
                    temperature_from_energy(p_, v[c], e_half, theta[c]);
            } else {
                thmid[c] = theta[c];
            }
        }
        kernels::reaction_rate(p_, thmid.data(), phi.data(), nc);
    }
    for (int c = 0; c < nc; ++c) arg[c] = -phi[c] * dtau;
    kernels::vexp(arg.data(), decay.data(), nc);

    double burn_quad = 0.0, burn_exact = 0.0, burn_sq = 0.0, burn_ent = 0.0;
    for (int c = 0; c < nc; ++c) {
        const double z_old = z[c];
        const double z_new = z_old * decay[c];
        const double dz = z_old - z_new;
        const double z_mid = 0.5 * (z_old + z_new);
        z[c] = z_new;
        burn_quad += phi[c] * z_mid;
        burn_sq += phi[c] * z_mid * z_mid;
        burn_ent += phi[c] * z_mid / theta[c];
        burn_exact += dz;
        if (lambda != 0.0 && dz != 0.0) {
            const double e_target =
                pointwise::internal_energy(p_.c_v, p_.a_rad, v[c], theta[c]) +
                lambda * dz;
            theta[c] = temperature_from_energy(p_, v[c], e_target, theta[c]);
        }
    }
    if (acct) {
        acct->burn_mass_quad += burn_quad * dx * dtau;
        acct->burn_sq_quad += burn_sq * dx * dtau;
        acct->burn_entropy_quad += lambda * burn_ent * dx * dtau;
        acct->burn_mass_exact += burn_exact * dx;
        acct->burn_heat += lambda * burn_exact * dx;
    }
}

void Stepper::hydro_step(State& s, RadiusField& rf, double dtau, double t_mid,
                         StepAccounting* acct) {
    const int nc = grid_.n_cells;
    const double dx = grid_.dx;
    const double inv_dx = 1.0 / dx;
    const double alpha = p_.alpha();
    const double mw = cfg_.momentum_weight;
    const bool forced = static_cast<bool>(forcing_);
    if (forced) refresh_forcing(t_mid);

    // predictor volumes at the half step
    mass_flux(s.u, rf, w_);
    for (int c = 0; c < nc; ++c) {
        vhalf_[c] = s.v[c] + 0.5 * dtau * (w_[c] + (forced ? fv_[c] : 0.0));
        if (!(vhalf_[c] > 0.0))
            throw StatePositivityViolation("hydro_step: predictor v <= 0");
    }
    radius_from_volume(p_, dx, vhalf_, rf_half_);
    kernels::pressure(p_, vhalf_.data(), s.theta.data(), phalf_.data(), nc);

    const auto& rn1h = rf_half_.rn1;
    std::vector<double> unew(nc + 1);

    double stiff = 0.0;
    for (int c = 0; c < nc; ++c) {
        const double rmax = std::max(rf_half_.rn2[c], rf_half_.rn2[c + 1]);
        stiff = std::max(stiff, dtau * alpha * rmax / (vhalf_[c] * dx * dx));
    }

    if (stiff > 0.25) {
        // implicit viscous tridiagonal in the interior nodes
        std::vector<double>& wold = w_;
        for (int c = 0; c < nc; ++c)
            wold[c] =
                (rn1h[c + 1] * s.u[c + 1] - rn1h[c] * s.u[c]) * inv_dx;
        for (int c = 0; c < nc; ++c)
            sigma_[c] = alpha * (1.0 - mw) * wold[c] / vhalf_[c] - phalf_[c];

        const int m = nc - 1;  // unknowns u[1..nc-1]
        for (int i = 1; i < nc; ++i) {
            const double k = dtau * mw * alpha * rn1h[i] * inv_dx;
            const double chi = k * inv_dx / vhalf_[i];      // cell right of i
            const double clo = k * inv_dx / vhalf_[i - 1];  // cell left of i
            di_[i - 1] = 1.0 + chi * rn1h[i] + clo * rn1h[i];
            up_[i - 1] = (i + 1 < nc) ? -chi * rn1h[i + 1] : 0.0;
            lo_[i - 1] = (i - 1 > 0) ? -clo * rn1h[i - 1] : 0.0;
            double r = s.u[i] +
                       dtau * rn1h[i] * (sigma_[i] - sigma_[i - 1]) * inv_dx +
                       (forced ? dtau * fu_[i] : 0.0);
            if (i + 1 == nc) r += chi * rn1h[nc] * bc_.u_out;
            rhs_[i - 1] = r;
        }
        tridiag_solve_inplace({lo_.data(), (size_t)m}, {di_.data(), (size_t)m},
                              {up_.data(), (size_t)m},
                              {rhs_.data(), (size_t)m});
        unew[0] = 0.0;
        unew[nc] = bc_.u_out;
        for (int i = 1; i < nc; ++i) unew[i] = rhs_[i - 1];
    } else {
        // explicit midpoint
        const auto rhs_at = [&](const std::vector<double>& uu,
                                std::vector<double>& out) {
            for (int c = 0; c < nc; ++c)
                w_[c] = (rn1h[c + 1] * uu[c + 1] - rn1h[c] * uu[c]) * inv_dx;
            for (int c = 0; c < nc; ++c)
                sigma_[c] = alpha * w_[c] / vhalf_[c] - phalf_[c];
            out[0] = 0.0;
            out[nc] = 0.0;
            for (int i = 1; i < nc; ++i)
                out[i] = rn1h[i] * (sigma_[i] - sigma_[i - 1]) * inv_dx +
                         (forced ? fu_[i] : 0.0);
        };
        std::vector<double> k(nc + 1), ustar(nc + 1);
        rhs_at(s.u, k);
        for (int i = 0; i <= nc; ++i) ustar[i] = s.u[i] + 0.5 * dtau * k[i];
        ustar[0] = 0.0;
        ustar[nc] = bc_.u_out;
        rhs_at(ustar, k);
        for (int i = 0; i <= nc; ++i) unew[i] = s.u[i] + dtau * k[i];
        unew[0] = 0.0;
        unew[nc] = bc_.u_out;
    }

    for (int i = 0; i <= nc; ++i)
        umid_[i] = s.u[i] + mw * (unew[i] - s.u[i]);

    // conservative mass update with the predictor radii frozen
    double fvsum = 0.0;
    for (int c = 0; c < nc; ++c) {
        const double wm =
            (rn1h[c + 1] * umid_[c + 1] - rn1h[c] * umid_[c]) * inv_dx;
        const double fc = forced ? fv_[c] : 0.0;
        s.v[c] += dtau * (wm + fc);
        fvsum += fc;
        if (!(s.v[c] > 0.0))
            throw StatePositivityViolation("hydro_step: v <= 0 after update");
    }

    if (acct) {
        acct->bdry_volume_flux +=
            dtau * (rn1h[nc] * umid_[nc] - rn1h[0] * umid_[0]);
        acct->v_forcing += dtau * fvsum * dx;
        // boundary work r^{n-1} u sigma (zero with pinned ends, kept for
        // harness variants)
        const double wm_out =
            (rn1h[nc] * umid_[nc] - rn1h[nc - 1] * umid_[nc - 1]) * inv_dx;
        const double sig_out =
            alpha * wm_out / vhalf_[nc - 1] - phalf_[nc - 1];
        acct->bdry_work += dtau * rn1h[nc] * umid_[nc] * sig_out;
    }

    s.u = unew;
    radius_from_volume(p_, dx, s.v, rf);
}

StepAccounting Stepper::step(State& s, RadiusField& rf, double dt) {
    StepAccounting acct;
    acct.dt = dt;
    const double t0 = s.t;

    stage_ = s;
    rf_stage_ = rf;
    auto z = std::span<double>(stage_.z);
    auto th = std::span<double>(stage_.theta);
    auto v = std::span<const double>(stage_.v);
    const bool forced = static_cast<bool>(forcing_);

    if (cfg_.splitting == Splitting::strang) {
        const double h = 0.5 * dt;
        reaction_step(z, th, v, h, &acct);
        refresh_forcing(t0 + 0.25 * dt);
        energy_step(th, v, stage_.u, rf_stage_, h, cfg_.energy_weight, nullptr,
                    forced ? fth_.data() : nullptr, &acct);
        z_diffusion_step(z, v, rf_stage_, h, forced ? fz_.data() : nullptr,
                         &acct);
        if (hydro_enabled_) hydro_step(stage_, rf_stage_, dt, t0 + 0.5 * dt, &acct);
        refresh_forcing(t0 + 0.75 * dt);
        energy_step(th, v, stage_.u, rf_stage_, h, cfg_.energy_weight, nullptr,
                    forced ? fth_.data() : nullptr, &acct);
        z_diffusion_step(z, v, rf_stage_, h, forced ? fz_.data() : nullptr,
                         &acct);
        reaction_step(z, th, v, h, &acct);
    } else {
        reaction_step(z, th, v, dt, &acct);
        refresh_forcing(t0 + 0.5 * dt);
        energy_step(th, v, stage_.u, rf_stage_, dt, cfg_.energy_weight, nullptr,
                    forced ? fth_.data() : nullptr, &acct);
        z_diffusion_step(z, v, rf_stage_, dt, forced ? fz_.data() : nullptr,
                         &acct);
        if (hydro_enabled_) hydro_step(stage_, rf_stage_, dt, t0 + 0.5 * dt, &acct);
    }

    stage_.t = t0 + dt;
    s = stage_;
    rf = rf_stage_;
    return acct;
}

StepAccounting Stepper::step_auto(State& s, RadiusField& rf, double dt_limit) {
    double dt = std::min(compute_dt(s, rf), dt_limit);
    int rejections = 0;
    for (;;) {
        try {
            StepAccounting acct = step(s, rf, dt);
            acct.rejections = rejections;
            return acct;
        } catch (const NewtonDivergence&) {
        } catch (const StatePositivityViolation&) {
        }
        dt *= 0.5;
        ++rejections;
        if (dt < cfg_.dt_min)
            throw StepFailure("step_auto: dt fell below dt_min after " +
                              std::to_string(rejections) + " rejections");
    }
}

State oracle_step(const PhysParams& p, const Grid& g,
                  const BoundaryConditions& bc, const State& s,
                  double dt_tiny) {
    // Deliberately self-contained forward-Euler evaluation of all four
    // right-hand sides; shares no assembly code with Stepper.
    const int nc = g.n_cells;
    const double dx = g.dx;
    const double a3 = p.a_rad / 3.0;
    const double alpha = p.alpha();
    const bool outer_dirichlet = bc.kind == BoundaryKind::exterior;

    const RadiusField rf = radius_from_volume(p, dx, s.v);

    std::vector<double> w(nc), sig(nc), kap(nc);
    for (int c = 0; c < nc; ++c) {
        w[c] = (rf.rn1[c + 1] * s.u[c + 1] - rf.rn1[c] * s.u[c]) / dx;
        sig[c] = alpha * w[c] / s.v[c] -
                 pointwise::pressure(p.R_gas, a3, s.v[c], s.theta[c]);
        kap[c] = pointwise::conductivity(p.kappa1, p.kappa2, p.b_exp, s.v[c],
                                         s.theta[c]);
    }

    State out = s;
    out.t = s.t + dt_tiny;

    for (int i = 1; i < nc; ++i)
        out.u[i] = s.u[i] + dt_tiny * rf.rn1[i] * (sig[i] - sig[i - 1]) / dx;
    out.u[0] = 0.0;
    out.u[nc] = bc.u_out;

    for (int c = 0; c < nc; ++c) out.v[c] = s.v[c] + dt_tiny * w[c];

    const auto heat_flux = [&](int i) -> double {
        if (i == 0) return 0.0;
        if (i == nc) {
            if (!outer_dirichlet) return 0.0;
            const double kf =
                0.5 * (kap[nc - 1] + pointwise::conductivity(
                                         p.kappa1, p.kappa2, p.b_exp,
                                         bc.v_out, bc.theta_out));
            const double vf = 0.5 * (s.v[nc - 1] + bc.v_out);
            return rf.rn2[nc] * kf * 2.0 * (bc.theta_out - s.theta[nc - 1]) /
                   (vf * dx);
        }
        const double kf = 0.5 * (kap[i - 1] + kap[i]);
        const double vf = 0.5 * (s.v[i - 1] + s.v[i]);
        return rf.rn2[i] * kf * (s.theta[i] - s.theta[i - 1]) / (vf * dx);
    };
    const auto z_flux = [&](int i) -> double {
        if (p.d_diff == 0.0 || i == 0) return 0.0;
        if (i == nc) {
            if (!outer_dirichlet) return 0.0;
            const double vf = 0.5 * (s.v[nc - 1] + bc.v_out);
            return p.d_diff * rf.rn2[nc] * 2.0 * (bc.z_out - s.z[nc - 1]) /
                   (vf * vf * dx);
        }
        const double vf = 0.5 * (s.v[i - 1] + s.v[i]);
        return p.d_diff * rf.rn2[i] * (s.z[i] - s.z[i - 1]) / (vf * vf * dx);
    };

    for (int c = 0; c < nc; ++c) {
        const double xi_lo = rf.rn1[c] / rf.r[c] * s.u[c] * s.u[c];
        const double xi_hi =
            rf.rn1[c + 1] / rf.r[c + 1] * s.u[c + 1] * s.u[c + 1];
        const double phi =
            pointwise::reaction_rate(p.K_rate, p.A_act, p.beta, s.theta[c]);
        const double e_rhs = (heat_flux(c + 1) - heat_flux(c)) / dx +
                             sig[c] * w[c] -
                             2.0 * p.mu * (p.n_dim - 1) * (xi_hi - xi_lo) / dx +
                             p.lambda_heat * phi * s.z[c];
        const double e_new =
            pointwise::internal_energy(p.c_v, p.a_rad, s.v[c], s.theta[c]) +
            dt_tiny * e_rhs;
        if (!(out.v[c] > 0.0) || !std::isfinite(e_new) || e_new <= 0.0)
            throw OracleUnstable("oracle_step: state left the positive cone");
        out.theta[c] = temperature_from_energy(p, out.v[c], e_new, s.theta[c]);
        out.z[c] = s.z[c] + dt_tiny * ((z_flux(c + 1) - z_flux(c)) / dx -
                                       phi * s.z[c]);
        if (!(out.theta[c] > 0.0) || !std::isfinite(out.theta[c]) ||
            !std::isfinite(out.z[c]))
            throw OracleUnstable("oracle_step: state left the positive cone");
    }
    return out;
}

}  // namespace exogas
