#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "exogas/geometry.hpp"
#include "exogas/grid.hpp"
#include "exogas/params.hpp"

namespace exogas {

enum class Splitting { lie, strang };

struct StepperConfig {
    double cfl_hyper = 0.4;
    bool diff_theta_impl = true;   // implicit energy solve (explicit is for
                                   // the oracle integrator only)
    double newton_tol = 1e-10;
    int newton_max_iter = 25;
    double dt_min = 1e-12;
    double dt_max = 1.0;
    Splitting splitting = Splitting::strang;
    // Implicitness weights: 0.5 = Crank-Nicolson (default), 1.0 = backward
    // Euler. z diffusion always starts at 0.5 and falls back to 1.0 on a
    // range violation (see reaction/diffusion notes in solver.cpp).
    double energy_weight = 0.5;
    double momentum_weight = 0.5;
    int threads = 1;

    void validate() const {
        if (!(cfl_hyper > 0.0 && cfl_hyper <= 1.0))
            throw InvalidArgument("stepper: 0 < cfl_hyper <= 1 required");
        if (!(newton_tol > 0.0))
            throw InvalidArgument("stepper: newton_tol must be > 0");
        if (newton_max_iter < 1)
            throw InvalidArgument("stepper: newton_max_iter must be >= 1");
        if (!(dt_min > 0.0) || !(dt_max >= dt_min))
            throw InvalidArgument("stepper: need 0 < dt_min <= dt_max");
        if (!(energy_weight >= 0.5 && energy_weight <= 1.0) ||
            !(momentum_weight >= 0.5 && momentum_weight <= 1.0))
            throw InvalidArgument(
                "stepper: implicitness weights must lie in [0.5, 1]");
    }
};

// Exact per-step bookkeeping the diagnostics layer builds its identity
// residuals from. All quantities are increments over one full step.
struct StepAccounting {
    double dt = 0.0;
    int energy_newton_iters = 0;
    int rejections = 0;
    int z_be_fallbacks = 0;

    // reaction substeps (both halves)
    double burn_mass_quad = 0.0;    // sum phi z_mid dx dtau   (int int phi z)
    double burn_mass_exact = 0.0;   // sum dz dx               (z actually burnt)
    double burn_sq_quad = 0.0;      // sum phi z_mid^2 dx dtau (int int phi z^2)
    double burn_heat = 0.0;         // lambda sum dz dx        (energy deposited)
    double burn_entropy_quad = 0.0; // sum lambda phi z_mid / theta dx dtau

    // z diffusion substeps
    double z_dissipation = 0.0;     // int int d r^{2n-2} z_x^2 / v^2 (scheme form)
    double bdry_z_flux = 0.0;       // int Phi(x_max) - Phi(0) dt (applied)
    double z_forcing = 0.0;         // int int f_z (MMS runs)

    // energy substeps
    double bdry_heat_flux = 0.0;    // int G(x_max) - G(0) dt (applied)
    double theta_forcing = 0.0;     // int int f_theta

    // hydro substep
    double bdry_work = 0.0;         // int (r^{n-1} u sigma)|_0^{x_max} dt
    double bdry_volume_flux = 0.0;  // int (r^{n-1} u)|_0^{x_max} dt
    double v_forcing = 0.0;         // int int f_v
};

// MMS forcing hook: fills the four arrays (cells, nodes, cells, cells)
// with f_v, f_u, f_theta, f_z at time t.
using ForcingFn =
    std::function<void(double t, std::span<double> f_v, std::span<double> f_u,
                       std::span<double> f_th, std::span<double> f_z)>;

class Stepper {
  public:
    Stepper(const PhysParams& p, const Grid& g, const BoundaryConditions& bc,
            const StepperConfig& cfg);

    void set_forcing(ForcingFn f) { forcing_ = std::move(f); }
    // Test harness switch: freezes u, v, r (pure diffusion/reaction runs).
    void set_hydro_enabled(bool on) { hydro_enabled_ = on; }

    const PhysParams& params() const { return p_; }
    const Grid& grid() const { return grid_; }
    const StepperConfig& config() const { return cfg_; }

    // cfl_hyper * dx / max node signal speed, clamped to [dt_min, dt_max].
    double compute_dt(const State& s, const RadiusField& rf) const;

    // One split step of size dt; commits to s/rf only on success.
    // Throws NewtonDivergence/StatePositivityViolation on substep failure
    // (callers halve dt), StepFailure never (that is step_auto's job).
    StepAccounting step(State& s, RadiusField& rf, double dt);

    // compute_dt + rejection loop with dt halving; dt capped by dt_limit.
    StepAccounting step_auto(State& s, RadiusField& rf, double dt_limit);

    // --- pieces exposed for tests and the reference integrator ---

    // w = (r^{n-1}u)_x at cells (exact conservative flux difference).
    void mass_flux(std::span<const double> u, const RadiusField& rf,
                   std::span<double> w) const;

    // r^{n-1} (sigma_x) at nodes, end rows forced to the pinned values.
    void momentum_rhs(const State& s, const RadiusField& rf,
                      std::span<double> rhs) const;

    // Implicit energy update of theta (conservative delta-e form, theta-
    // weighted fluxes, quasi-Newton with kappa frozen per iterate).
    // u, v, z frozen; q_ext is an optional per-cell source (the unit-test
    // and MMS hook). Returns Newton iterations used.
    int energy_step(std::span<double> theta, std::span<const double> v,
                    std::span<const double> u, const RadiusField& rf,
                    double dtau, double weight, const double* q_ext,
                    const double* f_th, StepAccounting* acct);

    // CN z diffusion with BE fallback on range violation (f_z == nullptr
    // runs enforce [0,1] unconditionally).
    void z_diffusion_step(std::span<double> z, std::span<const double> v,
                          const RadiusField& rf, double dtau, const double* f_z,
                          StepAccounting* acct);

    // Exact-exponential reactant decay + heat deposit via e-inversion.
    void reaction_step(std::span<double> z, std::span<double> theta,
                       std::span<const double> v, double dtau,
                       StepAccounting* acct);

  private:
    void hydro_step(State& s, RadiusField& rf, double dtau, double t_mid,
                    StepAccounting* acct);
    void refresh_forcing(double t);

    PhysParams p_;
    Grid grid_;
    BoundaryConditions bc_;
    StepperConfig cfg_;
    ForcingFn forcing_;
    bool hydro_enabled_ = true;

    // workspaces
    std::vector<double> w_, sigma_, kap_, fv_, fu_, fth_, fz_;
    std::vector<double> lo_, di_, up_, rhs_, thbar_, thnew_, fres_;
    std::vector<double> vhalf_, phalf_, umid_, znew_;
    RadiusField rf_half_;
    State stage_;
    RadiusField rf_stage_;
};

// Reference explicit integrator: one forward-Euler evaluation of all four
// right-hand sides at a tiny dt, for cross-checking the split integrator
// on small instances. Throws OracleUnstable if the result leaves the
// positive cone (callers halve dt_tiny and retry).
State oracle_step(const PhysParams& p, const Grid& g,
                  const BoundaryConditions& bc, const State& s,
                  double dt_tiny);

}  // namespace exogas
