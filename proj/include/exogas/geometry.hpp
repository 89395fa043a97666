#pragma once

#include <functional>
#include <span>
#include <vector>

#include "exogas/errors.hpp"
#include "exogas/params.hpp"

namespace exogas {

// Node radii of the exterior domain. rn = r^n is the stored primary
// quantity, accumulated from the specific volume by compensated prefix
// sums so that r^n(x) = 1 + n * integral of v is exact to roundoff; r and
// r^{n-1} are derived from it.
struct RadiusField {
    std::vector<double> rn;   // r^n at nodes, rn[0] = 1
    std::vector<double> r;    // r at nodes, r[0] = 1, strictly increasing
    std::vector<double> rn1;  // r^{n-1} at nodes
    std::vector<double> rn2;  // r^{2n-2} at nodes

    std::size_t nodes() const { return rn.size(); }
};

// r^n_i = 1 + n * dx * sum_{j<i} v_j (Kahan-compensated, sequential).
RadiusField radius_from_volume(const PhysParams& p, double dx,
                               std::span<const double> v);

// In-place variant reusing allocations.
void radius_from_volume(const PhysParams& p, double dx,
                        std::span<const double> v, RadiusField& rf);

// dr/dx = r^{1-n} v at nodes, v averaged to nodes (one-sided at the ends).
std::vector<double> radius_jacobian(const PhysParams& p, const RadiusField& rf,
                                    std::span<const double> v);

// Residual of dr/dt = u measured through the exact r^n form:
//   max_i | (rn_new_i - rn_old_i) / (n * rn1_old_i * dt) - u_i |,
// which equals |(r_new-r_old)/dt - u| to leading order and telescopes to
// machine zero when v was advanced one conservative mass step with frozen
// fluxes r^{n-1}u (u(0) = 0).
double radius_ode_residual(const PhysParams& p, const RadiusField& rf_old,
                           const RadiusField& rf_new,
                           std::span<const double> u, double dt);

// Initial-condition coordinate map: x(r) = integral_1^r y^{n-1} rho0(y) dy
// by composite Simpson, and its monotone inverse r0(x) by bisection.
struct CoordinateMap {
    std::vector<double> r_samples;  // sample radii in [1, r_max]
    std::vector<double> x_of_r;     // strictly increasing map values
    std::function<double(double)> integrand;  // y^{n-1} rho0(y)

    double x_max() const { return x_of_r.back(); }
    // x(r) from the stored prefix plus a partial-panel Simpson tail.
    double x_at(double r) const;
    // r0(x) by bisection on x_at to interval width 1e-12.
    double r_of_x(double x) const;
};

CoordinateMap eulerian_to_lagrangian_ic(const PhysParams& p,
                                        const std::function<double(double)>& rho0,
                                        double r_max, int panels = 4096);

}  // namespace exogas
