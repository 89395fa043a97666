#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "exogas/errors.hpp"
#include "exogas/geometry.hpp"
#include "exogas/params.hpp"

namespace exogas {

// Uniform Lagrangian mass mesh on the truncated domain [0, x_max].
// Staggered layout: v, theta, z live at cell centers x_{i+1/2}, the
// velocity u at nodes x_i.
struct Grid {
    int n_cells = 1024;
    double dx = 50.0 / 1024.0;

    double x_max() const { return n_cells * dx; }
    double cell_center(int i) const { return (i + 0.5) * dx; }
    double node(int i) const { return i * dx; }

    void validate() const {
        if (n_cells < 8) throw InvalidArgument("grid: n_cells must be >= 8");
        if (!(dx > 0.0)) throw InvalidArgument("grid: dx must be > 0");
    }
};

// Boundary treatment. Inner boundary (x=0): u=0, insulating Neumann for
// theta and z via ghost mirroring. Outer boundary (x=x_max): Dirichlet
// pinning at the far-field state (1, 0, 1, 0). The closed-box variant
// (both ends no-slip + Neumann) exists for conservation test harnesses.
enum class BoundaryKind { exterior, closed_box };

struct BoundaryConditions {
    BoundaryKind kind = BoundaryKind::exterior;
    double v_out = 1.0;
    double u_out = 0.0;
    double theta_out = 1.0;
    double z_out = 0.0;
};

struct State {
    std::vector<double> v;      // cells, > 0
    std::vector<double> theta;  // cells, > 0
    std::vector<double> z;      // cells, in [0,1]
    std::vector<double> u;      // nodes, u[0] = 0
    double t = 0.0;

    int n_cells() const { return static_cast<int>(v.size()); }
};

struct ValidationReport {
    bool pass = true;
    double min_v = 0, max_v = 0;
    double min_theta = 0, max_theta = 0;
    double min_z = 0, max_z = 0;
    double max_abs_u = 0;
    double far_field_deviation = 0;  // deviation of the last cell/node
    std::vector<std::string> violations;
};

// IC families ("equilibrium", "gaussian-bump", "z-tophat", "random-modes").
struct InitialCondition {
    std::string family = "gaussian-bump";
    double amplitude = 0.1;
    double width = 1.0;
    std::uint64_t seed = 0;  // used by random-modes only
};

State make_initial_condition(const Grid& grid, const InitialCondition& ic);

ValidationReport validate_state(const State& s);

// Snapshot serialization: one CSV row per cell (x, v, u_interp, theta, z, r)
// after a `#` header carrying t and the params hash.
void write_snapshot(std::ostream& os, const Grid& grid, const State& s,
                    const RadiusField& rf, const std::string& params_hash);

}  // namespace exogas
