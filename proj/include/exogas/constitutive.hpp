#pragma once

#include <array>

#include "exogas/errors.hpp"
#include "exogas/params.hpp"
#include "exogas/vmath.hpp"

namespace exogas {

// One thermodynamic state point in Lagrangian variables: specific volume
// v = 1/rho and absolute temperature theta, both strictly positive.
struct ThermoPoint {
    double v;
    double theta;
};

inline void require_positive(const ThermoPoint& s, const char* where) {
    if (!(s.v > 0.0) || !(s.theta > 0.0))
        throw StatePositivityViolation(std::string(where) +
                                       ": requires v > 0 and theta > 0");
}

// Pointwise closures. The formula bodies live in `pointwise` so the batch
// kernel lanes evaluate exactly the same expressions in the same order.
namespace pointwise {

inline double pressure(double R, double a_third, double v, double th) {
    const double th2 = th * th;
    return R * th / v + a_third * (th2 * th2);
}

inline double internal_energy(double c_v, double a, double v, double th) {
    const double th2 = th * th;
    return c_v * th + a * v * (th2 * th2);
}

inline double energy_theta_deriv(double c_v, double a, double v, double th) {
    return c_v + 4.0 * a * v * (th * th * th);
}

inline double pressure_theta_deriv(double R, double a_third, double v,
                                   double th) {
    return R / v + 4.0 * a_third * (th * th * th);
}

inline double entropy(double c_v, double R, double a_third, double v,
                      double th) {
    const double th3 = th * th * th;
    return c_v * vmath::log(th) + 4.0 * a_third * v * th3 + R * vmath::log(v);
}

inline double normalized_entropy(double c_v, double R, double a_third,
                                 double v, double th) {
    const double dth = th - 1.0;
    const double quartic = 3.0 * (th * th) + 2.0 * th + 1.0;
    return c_v * (th - vmath::log(th) - 1.0) + R * (v - vmath::log(v) - 1.0) +
           a_third * v * (dth * dth) * quartic;
}

inline double conductivity(double k1, double k2, double b, double v,
                           double th) {
    return k1 + k2 * v * vmath::exp(b * vmath::log(th));
}

inline double reaction_rate(double K, double A, double beta, double th) {
    if (th == 0.0) return 0.0;  // Arrhenius limit
    return K * vmath::exp(beta * vmath::log(th) - A / th);
}

inline double species_diffusion(double d, double v) { return d / (v * v); }

inline double effective_stress(double alpha, double R, double a_third,
                               double v, double th, double w) {
    return alpha * w / v - pressure(R, a_third, v, th);
}

}  // namespace pointwise

double pressure(const PhysParams& p, const ThermoPoint& s);
double internal_energy(const PhysParams& p, const ThermoPoint& s);
double energy_temp_deriv(const PhysParams& p, const ThermoPoint& s);
double pressure_temp_deriv(const PhysParams& p, const ThermoPoint& s);
double entropy(const PhysParams& p, const ThermoPoint& s);
double normalized_entropy(const PhysParams& p, const ThermoPoint& s);
double conductivity(const PhysParams& p, const ThermoPoint& s);
double reaction_rate(const PhysParams& p, double theta);
double species_diffusion(const PhysParams& p, const ThermoPoint& s);

// Inverts e(v,theta) = target for theta at fixed v (monotone Newton).
// Used by the reaction substep to deposit released heat exactly.
double temperature_from_energy(const PhysParams& p, double v, double e_target,
                               double theta_guess);

// Residuals of the three thermodynamic identities, computed by central
// finite differences of step h against the closed-form derivatives:
//   r1: dE/dv - dP/dtheta
//   r2: dE/dtheta - (1/theta) de/dtheta
//   r3: de/dv - (theta dP/dtheta - P)
std::array<double, 3> maxwell_residuals(const PhysParams& p,
                                        const ThermoPoint& s, double h);
std::array<double, 3> maxwell_residuals(const PhysParams& p,
                                        const ThermoPoint& s);

// The pointwise dissipation identity: returns (lhs, t1, t2) with
//   lhs = alpha |(r^{n-1}u)_x|^2 / (v theta) - 2 mu (n-1) (r^{n-2}u^2)_x / theta
//   t1  = (lambda1 + 2 mu / n) |(r^{n-1}u)_x|^2 / (v theta)
//   t2  = (2 mu (n-1) / (v theta)) [ (r^{n-1}u)_x / sqrt(n) - sqrt(n) v u / r ]^2
// where the derivatives expand via
//   (r^{n-1}u)_x   = (n-1) v u / r + r^{n-1} u_x
//   (r^{n-2}u^2)_x = (n-2) v u^2 / r^2 + 2 r^{n-2} u u_x.
// Contract: lhs == t1 + t2 to roundoff and t1, t2 >= 0.
struct DissipationSplit {
    double lhs;
    double t1;
    double t2;
};
DissipationSplit dissipation_decomposition(const PhysParams& p, double v,
                                           double theta, double u, double r,
                                           double ux);

}  // namespace exogas
