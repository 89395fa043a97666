#include "exogas/constitutive.hpp"

#include <cmath>
#include <sstream>

namespace exogas {

std::vector<std::string> PhysParams::validation_errors() const {
    std::vector<std::string> errs;
    if (!(mu > 0.0)) errs.push_back("viscosity constraint violated: mu > 0");
    if (!(n_dim * lambda1 + 2.0 * mu > 0.0))
        errs.push_back("viscosity constraint violated: n*lambda1 + 2*mu > 0");
    if (!(alpha() > 0.0))
        errs.push_back("alpha = 2*mu + lambda1 must be positive");
    if (!(c_v > 0.0)) errs.push_back("c_v must be positive");
    if (!(R_gas > 0.0)) errs.push_back("R must be positive");
    if (lambda_heat < 0.0) errs.push_back("lambda must be nonnegative");
    if (K_rate < 0.0) errs.push_back("K must be nonnegative");
    if (A_act < 0.0) errs.push_back("A must be nonnegative");
    if (beta < 0.0) errs.push_back("beta must be nonnegative");
    if (d_diff < 0.0) errs.push_back("d must be nonnegative");
    if (a_rad < 0.0) errs.push_back("a must be nonnegative");
    if (kappa1 < 0.0) errs.push_back("kappa1 must be nonnegative");
    if (kappa2 < 0.0) errs.push_back("kappa2 must be nonnegative");
    if (!(kappa1 + kappa2 > 0.0))
        errs.push_back("kappa1 + kappa2 must be positive");
    if (!(b_exp > 0.0)) errs.push_back("b must be positive");
    if (n_dim < 2) errs.push_back("n must be an integer >= 2");
    return errs;
}

void PhysParams::validate() const {
    const auto errs = validation_errors();
    if (errs.empty()) return;
    std::ostringstream msg;
    msg << "invalid parameters:";
    for (const auto& e : errs) msg << "\n  " << e;
    throw InvalidArgument(msg.str());
}

double pressure(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "pressure");
    return pointwise::pressure(p.R_gas, p.a_rad / 3.0, s.v, s.theta);
}

double internal_energy(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "internal_energy");
    return pointwise::internal_energy(p.c_v, p.a_rad, s.v, s.theta);
}

double energy_temp_deriv(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "energy_temp_deriv");
    return pointwise::energy_theta_deriv(p.c_v, p.a_rad, s.v, s.theta);
}

double pressure_temp_deriv(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "pressure_temp_deriv");
    return pointwise::pressure_theta_deriv(p.R_gas, p.a_rad / 3.0, s.v,
                                           s.theta);
}

double entropy(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "entropy");
    return pointwise::entropy(p.c_v, p.R_gas, p.a_rad / 3.0, s.v, s.theta);
}

double normalized_entropy(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "normalized_entropy");
    return pointwise::normalized_entropy(p.c_v, p.R_gas, p.a_rad / 3.0, s.v,
                                         s.theta);
}

double conductivity(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "conductivity");
    return pointwise::conductivity(p.kappa1, p.kappa2, p.b_exp, s.v, s.theta);
}

double reaction_rate(const PhysParams& p, double theta) {
    if (theta < 0.0)
        throw StatePositivityViolation("reaction_rate: negative theta");
    return pointwise::reaction_rate(p.K_rate, p.A_act, p.beta, theta);
}

double species_diffusion(const PhysParams& p, const ThermoPoint& s) {
    require_positive(s, "species_diffusion");
    return pointwise::species_diffusion(p.d_diff, s.v);
}

double temperature_from_energy(const PhysParams& p, double v, double e_target,
                               double theta_guess) {
    // e(v,.) is strictly increasing with e_theta >= c_v > 0; plain Newton
    // from any positive guess converges monotonically after one step.
    double th = theta_guess > 0.0 ? theta_guess : 1.0;
    for (int it = 0; it < 64; ++it) {
        const double f = pointwise::internal_energy(p.c_v, p.a_rad, v, th) -
                         e_target;
        const double df = pointwise::energy_theta_deriv(p.c_v, p.a_rad, v, th);
        double step = f / df;
        double next = th - step;
        while (next <= 0.0) {
            step *= 0.5;
            next = th - step;
        }
        th = next;
        if (std::fabs(step) <= 1e-15 * th) break;
    }
    return th;
}

std::array<double, 3> maxwell_residuals(const PhysParams& p,
                                        const ThermoPoint& s, double h) {
    require_positive(s, "maxwell_residuals");
    if (!(h > 0.0)) throw InvalidArgument("maxwell_residuals: h must be > 0");
    if (s.v - h <= 0.0 || s.theta - h <= 0.0)
        throw DegenerateStencil("maxwell_residuals: step leaves the domain");

    const double cv = p.c_v, R = p.R_gas, a = p.a_rad, a3 = a / 3.0;
    const double v = s.v, th = s.theta;

    const auto E = [&](double vv, double tt) {
        return pointwise::entropy(cv, R, a3, vv, tt);
    };
    const auto e = [&](double vv, double tt) {
        return pointwise::internal_energy(cv, a, vv, tt);
    };

    const double dE_dv = (E(v + h, th) - E(v - h, th)) / (2.0 * h);
    const double dE_dth = (E(v, th + h) - E(v, th - h)) / (2.0 * h);
    const double de_dv = (e(v + h, th) - e(v - h, th)) / (2.0 * h);

    const double P = pointwise::pressure(R, a3, v, th);
    const double P_th = pointwise::pressure_theta_deriv(R, a3, v, th);
    const double e_th = pointwise::energy_theta_deriv(cv, a, v, th);

    return {dE_dv - P_th, dE_dth - e_th / th, de_dv - (th * P_th - P)};
}

std::array<double, 3> maxwell_residuals(const PhysParams& p,
                                        const ThermoPoint& s) {
    const double scale = std::max({1.0, std::fabs(s.v), std::fabs(s.theta)});
    return maxwell_residuals(p, s, 1e-4 * scale);
}

DissipationSplit dissipation_decomposition(const PhysParams& p, double v,
                                           double theta, double u, double r,
                                           double ux) {
    if (!(v > 0.0) || !(theta > 0.0) || !(r >= 1.0))
        throw StatePositivityViolation(
            "dissipation_decomposition: requires v, theta > 0 and r >= 1");

    const int n = p.n_dim;
    const double rn1 = vmath::powi(r, n - 1);
    const double rn2 = vmath::powi(r, n - 2);

    const double w = (n - 1) * v * u / r + rn1 * ux;
    const double ddx = (n - 2) * v * u * u / (r * r) + 2.0 * rn2 * u * ux;

    const double vth = v * theta;
    const double lhs =
        p.alpha() * w * w / vth - 2.0 * p.mu * (n - 1) * ddx / theta;

    const double t1 = (p.lambda1 + 2.0 * p.mu / n) * w * w / vth;
    const double sq = w / std::sqrt(double(n)) - std::sqrt(double(n)) * v * u / r;
    const double t2 = 2.0 * p.mu * (n - 1) / vth * (sq * sq);

    return {lhs, t1, t2};
}

}  // namespace exogas
