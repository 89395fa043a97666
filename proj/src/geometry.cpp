#include "exogas/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "exogas/vmath.hpp"

namespace exogas {

namespace {

double root_n(double x, int n) {
    if (n == 2) return std::sqrt(x);
    if (n == 3) return std::cbrt(x);
    return std::pow(x, 1.0 / n);
}

}  // namespace

void radius_from_volume(const PhysParams& p, double dx,
                        std::span<const double> v, RadiusField& rf) {
    const std::size_t nc = v.size();
    const int n = p.n_dim;
    rf.rn.resize(nc + 1);
    rf.r.resize(nc + 1);
    rf.rn1.resize(nc + 1);
    rf.rn2.resize(nc + 1);

    // compensated prefix sum; sequential by the determinism contract
    double sum = 1.0;
    double comp = 0.0;
    rf.rn[0] = 1.0;
    const double scale = n * dx;
    for (std::size_t i = 0; i < nc; ++i) {
        if (!(v[i] > 0.0))
            throw StatePositivityViolation(
                "radius_from_volume: non-positive specific volume");
        const double term = scale * v[i] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        rf.rn[i + 1] = sum;
    }

    for (std::size_t i = 0; i <= nc; ++i) {
        const double r = root_n(rf.rn[i], n);
        rf.r[i] = r;
        const double rn1 = vmath::powi(r, n - 1);
        rf.rn1[i] = rn1;
        rf.rn2[i] = rn1 * rn1;
    }
}

RadiusField radius_from_volume(const PhysParams& p, double dx,
                               std::span<const double> v) {
    RadiusField rf;
    radius_from_volume(p, dx, v, rf);
    return rf;
}

std::vector<double> radius_jacobian(const PhysParams& p, const RadiusField& rf,
                                    std::span<const double> v) {
    (void)p;
    const std::size_t nc = v.size();
    std::vector<double> jac(nc + 1);
    for (std::size_t i = 0; i <= nc; ++i) {
        double vn;
        if (i == 0)
            vn = v[0];
        else if (i == nc)
            vn = v[nc - 1];
        else
            vn = 0.5 * (v[i - 1] + v[i]);
        jac[i] = vn / rf.rn1[i];
    }
    return jac;
}

double radius_ode_residual(const PhysParams& p, const RadiusField& rf_old,
                           const RadiusField& rf_new,
                           std::span<const double> u, double dt) {
    const int n = p.n_dim;
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double drdt =
            (rf_new.rn[i] - rf_old.rn[i]) / (n * rf_old.rn1[i] * dt);
        worst = std::max(worst, std::fabs(drdt - u[i]));
    }
    return worst;
}

namespace {

double simpson_panel(const std::function<double(double)>& f, double a,
                     double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

}  // namespace

CoordinateMap eulerian_to_lagrangian_ic(
    const PhysParams& p, const std::function<double(double)>& rho0,
    double r_max, int panels) {
    if (!(r_max > 1.0))
        throw InvalidArgument("eulerian_to_lagrangian_ic: r_max must be > 1");
    panels = std::max(panels, 4096);

    const int n = p.n_dim;
    // capture the density by value: the map outlives the caller's functor
    const std::function<double(double)> integrand = [rho0, n](double y) {
        const double rho = rho0(y);
        if (!(rho > 0.0))
            throw InvalidDensity(
                "eulerian_to_lagrangian_ic: rho0 must be positive");
        return vmath::powi(y, n - 1) * rho;
    };

    CoordinateMap map;
    map.r_samples.resize(panels + 1);
    map.x_of_r.resize(panels + 1);
    const double h = (r_max - 1.0) / panels;

    double acc = 0.0, comp = 0.0;
    map.r_samples[0] = 1.0;
    map.x_of_r[0] = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double a = 1.0 + k * h;
        const double b = 1.0 + (k + 1) * h;
        const double term = simpson_panel(integrand, a, b) - comp;
        const double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
        map.r_samples[k + 1] = b;
        map.x_of_r[k + 1] = acc;
        if (!(map.x_of_r[k + 1] > map.x_of_r[k]))
            throw InvalidDensity(
                "eulerian_to_lagrangian_ic: map is not strictly increasing");
    }

    map.integrand = integrand;
    return map;
}

double CoordinateMap::x_at(double r) const {
    if (r <= 1.0) return 0.0;
    if (r >= r_samples.back()) return x_of_r.back();
    const auto it = std::upper_bound(r_samples.begin(), r_samples.end(), r);
    const std::size_t hi_idx = static_cast<std::size_t>(it - r_samples.begin());
    const std::size_t lo_idx = hi_idx - 1;
    // partial-panel tail; a single Simpson panel is exact to ~1e-16 at
    // these widths
    return x_of_r[lo_idx] + simpson_panel(integrand, r_samples[lo_idx], r);
}

double CoordinateMap::r_of_x(double x) const {
    if (x <= 0.0) return 1.0;
    if (x >= x_of_r.back()) return r_samples.back();

    const auto it = std::lower_bound(x_of_r.begin(), x_of_r.end(), x);
    const std::size_t hi_idx = static_cast<std::size_t>(it - x_of_r.begin());
    const std::size_t lo_idx = hi_idx - 1;

    double lo = r_samples[lo_idx], hi = r_samples[hi_idx];
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (x_at(mid) < x)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace exogas
