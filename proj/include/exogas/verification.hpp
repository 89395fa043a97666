#pragma once

#include <array>
#include <string>
#include <vector>

#include "exogas/solver.hpp"

namespace exogas {

// Manufactured-solution case. Target fields are smooth closed forms with
// u*(t,0) = 0 and far field (1,0,1,0); the volume profile has an elementary
// antiderivative so r*(t,x) from the volume integral is closed-form too.
// Forcings are the defects of the targets under the governing equations,
// computed by Richardson finite differences of the closed forms.
class MmsCase {
  public:
    MmsCase(const PhysParams& p, double fd_step = 1e-6);

    double v_target(double t, double x) const;
    double u_target(double t, double x) const;
    double theta_target(double t, double x) const;
    double z_target(double t, double x) const;
    double r_target(double t, double x) const;  // via r^n = 1 + n int v

    // forcing fields sampled on the grid at time t
    void forcing(double t, const Grid& g, std::span<double> f_v,
                 std::span<double> f_u, std::span<double> f_th,
                 std::span<double> f_z) const;

    // pointwise defect of the four equations at (t,x): the residual after
    // adding the forcing; used to validate the construction itself
    std::array<double, 4> substitution_residual(double t, double x) const;

    State sample_state(const Grid& g, double t) const;

  private:
    std::array<double, 4> equation_defect(double t, double x) const;

    PhysParams p_;
    double h_;
};

struct ConvergenceRow {
    int level;
    double dx, dt;
    std::array<double, 4> err_l2;   // v, u, theta, z
    std::array<double, 4> err_max;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    std::array<double, 4> orders_l2;   // log2 ratios between last two levels
    std::array<double, 4> orders_max;
    bool monotone = true;  // errors decreased at every level

    std::string table_csv() const;
};

// Runs the MMS case on `levels` simultaneously refined (dx, dt) grids and
// reports observed orders. dt_scale sets dt = dt_scale * dx at the coarsest
// level; refine_time/refine_space control which of dx, dt halve per level.
ConvergenceStudy convergence_study(const MmsCase& mms, const PhysParams& p,
                                   const StepperConfig& cfg, int levels,
                                   int base_cells, double x_max, double t_end,
                                   double dt0, bool refine_space,
                                   bool refine_time, int threads = 1);

// Isolates the temporal order: errors against a same-grid reference run at
// dt0 / 2^(levels+2), so the spatial error cancels exactly.
ConvergenceStudy time_order_study(const MmsCase& mms, const PhysParams& p,
                                  const StepperConfig& cfg, int levels,
                                  int cells, double x_max, double t_end,
                                  double dt0, int threads = 1);

}  // namespace exogas
