#pragma once

#include <utility>
#include <vector>

#include "exogas/geometry.hpp"
#include "exogas/grid.hpp"
#include "exogas/params.hpp"
#include "exogas/solver.hpp"

namespace exogas {

// One time-sample of every tracked functional and identity residual.
// Columns appear in CSV output in declaration order.
struct FunctionalRecord {
    double t = 0;
    double lyapunov = 0;          // int (E~ + u^2/2) dx
    double dissipation_V = 0;     // entropy dissipation rate functional
    double reactant_mass = 0;     // int z dx
    double reactant_sq = 0;       // int z^2 dx
    double burn_integral = 0;     // int int phi z
    double burn_sq_integral = 0;  // int int (d r^{2n-2} z_x^2/v^2 + phi z^2)
    double X = 0, Y = 0, Z = 0;   // auxiliary functionals
    double gplus_sup = 0;         // || max(1/theta - 1, 0) ||_inf
    double min_v = 0, max_v = 0;
    double min_theta = 0, max_theta = 0;
    double min_z = 0, max_z = 0;
    double supnorm_dev = 0;       // sup |(v-1, u, theta-1, z)|
    double H_total = 0;           // int (e + u^2/2 + lambda z) dx
    double boundary_work_heat = 0;
    double res_entropy = 0;       // integrated entropy identity
    double res_reactant_mass = 0;
    double res_reactant_sq = 0;
    double res_first_law = 0;
    double res_volume = 0;
    double res_radius_ode = 0;
};

// Instantaneous functionals (midpoint quadrature, fixed summation order).
double lyapunov_functional(const PhysParams& p, const Grid& g, const State& s,
                           const RadiusField& rf);
double dissipation_rate(const PhysParams& p, const Grid& g, const State& s,
                        const RadiusField& rf);
double decay_metric(const State& s);
double total_energy(const PhysParams& p, const Grid& g, const State& s,
                    const RadiusField& rf);

// Roots a1 in (0,1], a2 in [1,inf) of y - log y - 1 = c, bisection to 1e-12.
std::pair<double, double> entropy_roots(double c_over_min);

// Least-squares slope of the ||g+||_inf envelope over time samples; the
// growth-bound monitor for the local temperature lower bound.
double gplus_envelope_slope(std::span<const double> t,
                            std::span<const double> gplus);

// Per-unit-interval means of v and theta over Omega_k = [k, k+1), with the
// admissible band [a1, a2] derived from the supplied Lyapunov value.
struct IntervalMeans {
    std::vector<double> mean_v, mean_theta;
    double a1 = 1, a2 = 1;
    bool all_within = true;
};
IntervalMeans unit_interval_means(const PhysParams& p, const Grid& g,
                                  const State& s, double lyapunov_value);

// Running accumulators for every time-integrated identity. Feed it each
// accepted step; query a FunctionalRecord any time.
class DiagnosticsContext {
  public:
    DiagnosticsContext(const PhysParams& p, const Grid& g,
                       const BoundaryConditions& bc);

    void initialize(const State& s0, const RadiusField& rf0);
    void after_step(const State& s, const RadiusField& rf,
                    const StepAccounting& acct);
    FunctionalRecord record(const State& s, const RadiusField& rf) const;

    double lyapunov0() const { return lyap0_; }
    // reactant mass balance: int z + int int phi z - int z0 (minus the
    // outer boundary throughput)
    double reactant_mass_residual(const State& s) const;
    // residual of the z^2 identity in its derivable half-weighted form
    double reactant_sq_residual(const State& s) const;
    double entropy_identity_residual(const State& s,
                                     const RadiusField& rf) const;
    double first_law_residual(const State& s, const RadiusField& rf) const;
    double volume_residual(const State& s) const;

  private:
    struct Instantaneous {
        double diss_alpha = 0;  // int alpha w^2/(v theta) dx
        double diss_kappa = 0;  // int kappa (r^{n-1}theta_x)^2/(v theta^2) dx
        double rhs_visc = 0;    // int 2 mu (n-1)(r^{n-2}u^2)_x/theta dx
    };
    Instantaneous instantaneous(const State& s, const RadiusField& rf) const;

    PhysParams p_;
    Grid grid_;
    BoundaryConditions bc_;
    bool initialized_ = false;

    double z0_int_ = 0, z0_sq_int_ = 0, v0_int_ = 0;
    double lyap0_ = 0, H0_ = 0;

    // previous-sample cache for trapezoid accumulation
    Instantaneous prev_;
    std::vector<double> theta_prev_, u_prev_;
    RadiusField rf_prev_;
    double t_prev_ = 0;

    // time integrals
    double int_diss_alpha_ = 0, int_diss_kappa_ = 0, int_rhs_visc_ = 0;
    double int_burn_ = 0;          // int int phi z          (midpoint)
    double int_burn_sq_ = 0;       // int int phi z^2        (midpoint)
    double int_burn_entropy_ = 0;  // int int lambda phi z / theta
    double int_z_diss_ = 0;        // int int d r^{2n-2} z_x^2 / v^2
    double int_bdry_heat_ = 0, int_bdry_z_ = 0, int_bdry_work_ = 0;
    double int_bdry_volume_ = 0;
    double int_forcing_energy_ = 0;  // theta forcing + lambda z forcing
    double int_v_forcing_ = 0;
    double int_z_forcing_ = 0;

    double X_ = 0, Y_ = 0, Z_ = 0;
    double radius_res_last_ = 0;
};

// Local representation audit: tracks B(t,x), Q(t,x) and the time integral
// A(t,x) = int_0^t v P / (B Q) ds over the audited interval
// Omega_k = (k, k+1), and reports v - B Q (1 + A/alpha).
class RepresentationAudit {
  public:
    RepresentationAudit(const PhysParams& p, const Grid& g, int k);

    // must see the t = 0 state; later enabling is a HistoryGap
    void initialize(const State& s0, const RadiusField& rf0);
    void after_step(const State& s, const RadiusField& rf);

    struct Result {
        std::vector<double> x, B, Q, A_acc, residual;
        double max_abs_residual = 0;
    };
    Result evaluate(const State& s, const RadiusField& rf) const;

    int k() const { return k_; }

  private:
    void compute_BQ(const State& s, const RadiusField& rf,
                    std::vector<double>& B, std::vector<double>& Q) const;
    double sigma_strip(const State& s, const RadiusField& rf) const;
    void u2_suffix(const State& s, const RadiusField& rf,
                   std::vector<double>& out) const;
    void u_suffix(const State& s, const RadiusField& rf,
                  std::vector<double>& out) const;

    PhysParams p_;
    Grid grid_;
    int k_;
    bool initialized_ = false;
    double t_prev_ = 0;

    int first_cell_ = 0, last_cell_ = 0;  // audited cells [first, last]
    std::vector<double> phi_cut_;          // cut-off at nodes
    std::vector<double> v0_, u0_suffix_;   // v0 cells; initial u-suffix, nodes

    double S1_ = 0;                 // int int_{k+1}^{k+2} sigma
    double s1_prev_ = 0;
    std::vector<double> S2_;        // per-cell int int_x^inf (n-1) phi u^2 r^-n
    std::vector<double> s2_prev_;
    std::vector<double> A_;         // per-audited-cell accumulator
    std::vector<double> a_prev_, a_penult_, a_first0_, a_first1_;
    double dt_first_ = 0, dt_last_ = 0;
    long long steps_seen_ = 0;
};

}  // namespace exogas
