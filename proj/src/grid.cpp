#include "exogas/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "exogas/vmath.hpp"

namespace exogas {

namespace {

double gaussian(double x, double center, double width) {
    const double s = (x - center) / width;
    return std::exp(-s * s);
}

}  // namespace

State make_initial_condition(const Grid& grid, const InitialCondition& ic) {
    grid.validate();
    const int nc = grid.n_cells;
    State s;
    s.v.assign(nc, 1.0);
    s.theta.assign(nc, 1.0);
    s.z.assign(nc, 0.0);
    s.u.assign(nc + 1, 0.0);
    s.t = 0.0;

    const double A = ic.amplitude;
    const double w = ic.width;
    if (!(w > 0.0))
        throw InvalidArgument("make_initial_condition: width must be > 0");

    if (ic.family == "equilibrium" || A == 0.0) {
        if (ic.family == "z-tophat") {
            for (int i = 0; i < nc; ++i) {
                const double x = grid.cell_center(i);
                s.z[i] = 0.5 * (1.0 - std::tanh((x - 1.0) / 0.1));
            }
        }
    } else if (ic.family == "gaussian-bump") {
        for (int i = 0; i < nc; ++i) {
            const double x = grid.cell_center(i);
            const double g = gaussian(x, 2.0, w);
            s.v[i] = 1.0 + A * g;
            s.theta[i] = 1.0 + A * g;
            s.z[i] = 0.5 * std::exp(-x * x);
        }
        for (int i = 0; i <= nc; ++i) {
            const double x = grid.node(i);
            s.u[i] = A * x * gaussian(x, 2.0, w);
        }
        s.u[0] = 0.0;
        s.u[nc] = 0.0;
    } else if (ic.family == "z-tophat") {
        // reactant slab on [0,1], smoothed; hydro fields at equilibrium
        for (int i = 0; i < nc; ++i) {
            const double x = grid.cell_center(i);
            s.z[i] = 0.5 * (1.0 - std::tanh((x - 1.0) / 0.1));
        }
    } else if (ic.family == "random-modes") {
        std::mt19937_64 rng(ic.seed);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
        const int modes = 4;
        std::vector<double> ph(modes), amp(modes);
        for (int m = 0; m < modes; ++m) {
            ph[m] = phase(rng);
            amp[m] = A / modes;
        }
        const double L = grid.x_max();
        for (int i = 0; i < nc; ++i) {
            const double x = grid.cell_center(i);
            const double env = std::exp(-x * x / (2.0 * w * w * 16.0));
            double dv = 0.0;
            for (int m = 0; m < modes; ++m)
                dv += amp[m] * std::cos(2.0 * M_PI * (m + 1) * x / L + ph[m]);
            s.v[i] = 1.0 + dv * env;
            s.theta[i] = 1.0 + 0.5 * dv * env;
            s.z[i] = 0.5 * std::exp(-x * x);
        }
    } else {
        throw InvalidArgument("make_initial_condition: unknown family '" +
                              ic.family + "'");
    }

    for (int i = 0; i < nc; ++i) {
        if (!(s.v[i] > 0.0) || !(s.theta[i] > 0.0))
            throw StatePositivityViolation(
                "make_initial_condition: amplitude drives v or theta "
                "non-positive");
        if (s.z[i] < 0.0 || s.z[i] > 1.0)
            throw StatePositivityViolation(
                "make_initial_condition: z outside [0,1]");
    }
    return s;
}

ValidationReport validate_state(const State& s) {
    ValidationReport rep;
    const int nc = s.n_cells();
    const auto minmax_v = std::minmax_element(s.v.begin(), s.v.end());
    const auto minmax_t = std::minmax_element(s.theta.begin(), s.theta.end());
    const auto minmax_z = std::minmax_element(s.z.begin(), s.z.end());
    rep.min_v = *minmax_v.first;
    rep.max_v = *minmax_v.second;
    rep.min_theta = *minmax_t.first;
    rep.max_theta = *minmax_t.second;
    rep.min_z = *minmax_z.first;
    rep.max_z = *minmax_z.second;
    for (double ui : s.u) rep.max_abs_u = std::max(rep.max_abs_u, std::fabs(ui));

    if (!(rep.min_v > 0.0)) {
        rep.pass = false;
        const auto idx = std::min_element(s.v.begin(), s.v.end()) - s.v.begin();
        rep.violations.push_back("v <= 0 at cell " + std::to_string(idx));
    }
    if (!(rep.min_theta > 0.0)) {
        rep.pass = false;
        const auto idx =
            std::min_element(s.theta.begin(), s.theta.end()) - s.theta.begin();
        rep.violations.push_back("theta <= 0 at cell " + std::to_string(idx));
    }
    if (rep.min_z < 0.0 || rep.max_z > 1.0) {
        rep.pass = false;
        long idx = 0;
        for (int i = 0; i < nc; ++i)
            if (s.z[i] < 0.0 || s.z[i] > 1.0) {
                idx = i;
                break;
            }
        rep.violations.push_back("z outside [0,1] at cell " +
                                 std::to_string(idx));
    }
    if (s.u[0] != 0.0) {
        rep.pass = false;
        rep.violations.push_back("u(0) != 0");
    }

    rep.far_field_deviation = std::max(
        {std::fabs(s.v[nc - 1] - 1.0), std::fabs(s.theta[nc - 1] - 1.0),
         std::fabs(s.z[nc - 1]), std::fabs(s.u[nc])});
    return rep;
}

void write_snapshot(std::ostream& os, const Grid& grid, const State& s,
                    const RadiusField& rf, const std::string& params_hash) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "# t = %.17g, config_hash = %s\n", s.t,
                  params_hash.c_str());
    os << buf;
    os << "x,v,u,theta,z,r\n";
    for (int i = 0; i < grid.n_cells; ++i) {
        const double u_mid = 0.5 * (s.u[i] + s.u[i + 1]);
        const double r_mid = 0.5 * (rf.r[i] + rf.r[i + 1]);
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      grid.cell_center(i), s.v[i], u_mid, s.theta[i], s.z[i],
                      r_mid);
        os << buf;
    }
}

}  // namespace exogas
