#include <doctest.h>

#include <cmath>
#include <random>

#include "exogas/verification.hpp"

using namespace exogas;

TEST_CASE("manufactured targets satisfy their boundary structure") {
    PhysParams p;
    MmsCase mms(p);
    for (double t : {0.0, 0.7, 2.3}) {
        CHECK(mms.u_target(t, 0.0) == 0.0);
        CHECK(mms.v_target(t, 12.0) == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(mms.theta_target(t, 12.0) == doctest::Approx(1.0));
        CHECK(mms.z_target(t, 12.0) == doctest::Approx(0.0));
        CHECK(mms.z_target(t, 0.0) > 0.0);
        CHECK(mms.z_target(t, 0.0) < 1.0);
        // r^n - 1 - n*int(v) consistency at a point with unit volume tail
        CHECK(mms.r_target(t, 0.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("substitution residual stays below the differentiation tolerance") {
    PhysParams p;
    MmsCase mms(p);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> T(0.0, 2.0), X(0.2, 9.0);
    for (int i = 0; i < 10; ++i) {
        const auto res = mms.substitution_residual(T(rng), X(rng));
        for (double r : res) CHECK(std::fabs(r) < 1e-7);
    }
}

TEST_CASE("static conduction case matches the hand-derived forcing") {
    // v* = 1, u* = 0, kappa2 = 0: f_theta = -(r^{2n-2} kappa1 theta*_x)_x
    // with r = (1+3x)^{1/3}; hand-differentiate for theta* = 1 + g(x).
    PhysParams p;
    p.kappa2 = 0.0;
    p.K_rate = 0.0;

    struct StaticCase : MmsCase {
        explicit StaticCase(const PhysParams& q) : MmsCase(q) {}
    };
    // the standard case is time-dependent; probe it at the moment the
    // velocity amplitude crosses zero so u* = 0 identically in x
    MmsCase mms(p);
    const double t0 = -0.4 / 1.1;  // sin(1.1 t + 0.4) = 0
    CHECK(std::fabs(mms.u_target(t0, 3.0)) < 1e-15);

    Grid g{64, 12.0 / 64};
    std::vector<double> fv(64), fu(65), fth(64), fz(64);
    mms.forcing(t0, g, fv, fu, fth, fz);

    for (int c : {10, 20, 30}) {
        const double x = g.cell_center(c);
        // hand formula pieces
        const double tau_th = std::cos(0.9 * t0 + 0.3);
        const double th = 1.0 + 0.08 * tau_th * std::exp(-0.25 * x * x);
        const double th_x =
            0.08 * tau_th * (-0.5 * x) * std::exp(-0.25 * x * x);
        const double th_xx = 0.08 * tau_th *
                             (0.25 * x * x - 0.5) * std::exp(-0.25 * x * x);
        const double tau_v = 0.6 + 0.4 * std::cos(1.3 * t0);
        const double sech = 1.0 / std::cosh(x - 2.0);
        const double v = 1.0 + 0.1 * tau_v * sech * sech;
        const double I =
            x + 0.1 * tau_v * (std::tanh(x - 2.0) + std::tanh(2.0));
        const double rn = 1.0 + 3.0 * I;
        const double r = std::cbrt(rn);
        const double r4 = r * r * r * r;
        // A = r^4 kappa1 / v; A_x = (4 r^3 r_x v - r^4 v_x)/v^2 kappa1
        const double r_x = v / (r * r);
        const double v_x = 0.1 * tau_v * (-2.0) * sech * sech *
                           std::tanh(x - 2.0);
        const double A = r4 * p.kappa1 / v;
        const double A_x =
            p.kappa1 * (4.0 * r * r * r * r_x * v - r4 * v_x) / (v * v);
        const double heat = A_x * th_x + A * th_xx;
        const double e_th = p.c_v + 4.0 * p.a_rad * v * th * th * th;
        const double th_t =
            0.08 * (-0.9) * std::sin(0.9 * t0 + 0.3) * std::exp(-0.25 * x * x);
        const double expect = e_th * th_t - heat;
        CHECK(fth[c] == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("convergence study flags non-monotone error sequences") {
    PhysParams p;
    StepperConfig cfg;
    MmsCase mms(p);
    // two levels, deliberately so coarse in time that the sequence is noisy
    const auto study =
        convergence_study(mms, p, cfg, 2, 16, 12.0, 0.05, 0.01, true, true);
    CHECK(study.rows.size() == 2);
    // whatever the orders, the report must carry the full table
    CHECK(!study.table_csv().empty());
}

TEST_CASE("strang shows second order on a short smooth study") {
    PhysParams p;
    StepperConfig cfg;
    MmsCase mms(p);
    const auto study =
        convergence_study(mms, p, cfg, 3, 32, 12.0, 0.4, 0.02, true, true, 3);
    for (int f = 0; f < 4; ++f) {
        CHECK(study.orders_l2[f] > 1.8);
        CHECK(study.orders_l2[f] < 2.2);
    }
    CHECK(study.monotone);
}

TEST_CASE("threaded and sequential studies agree bitwise") {
    PhysParams p;
    StepperConfig cfg;
    MmsCase mms(p);
    const auto a =
        convergence_study(mms, p, cfg, 2, 24, 12.0, 0.3, 0.02, true, true, 1);
    const auto b =
        convergence_study(mms, p, cfg, 2, 24, 12.0, 0.3, 0.02, true, true, 2);
    for (int lvl = 0; lvl < 2; ++lvl)
        for (int f = 0; f < 4; ++f) {
            CHECK(a.rows[lvl].err_l2[f] == b.rows[lvl].err_l2[f]);
            CHECK(a.rows[lvl].err_max[f] == b.rows[lvl].err_max[f]);
        }
}
