#include "exogas/constitutive.hpp"
#include "exogas/errors.hpp"
#include "exogas/kernels_impl.hpp"

namespace exogas::kernels {

namespace {

void check_positive(const double* v, const double* th, std::size_t n,
                    const char* where) {
    for (std::size_t i = 0; i < n; ++i)
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation(std::string(where) +
                                           ": non-positive state");
}

}  // namespace

void pressure_scalar(const PhysParams& p, const double* v, const double* th,
                     double* out, std::size_t n) {
    check_positive(v, th, n, "pressure");
    const double R = p.R_gas, a3 = p.a_rad / 3.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::pressure(R, a3, v[i], th[i]);
}

void internal_energy_scalar(const PhysParams& p, const double* v,
                            const double* th, double* out, std::size_t n) {
    check_positive(v, th, n, "internal_energy");
    const double cv = p.c_v, a = p.a_rad;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::internal_energy(cv, a, v[i], th[i]);
}

void energy_theta_deriv_scalar(const PhysParams& p, const double* v,
                               const double* th, double* out, std::size_t n) {
    check_positive(v, th, n, "energy_theta_deriv");
    const double cv = p.c_v, a = p.a_rad;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::energy_theta_deriv(cv, a, v[i], th[i]);
}

void pressure_theta_deriv_scalar(const PhysParams& p, const double* v,
                                 const double* th, double* out,
                                 std::size_t n) {
    check_positive(v, th, n, "pressure_theta_deriv");
    const double R = p.R_gas, a3 = p.a_rad / 3.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::pressure_theta_deriv(R, a3, v[i], th[i]);
}

void conductivity_scalar(const PhysParams& p, const double* v,
                         const double* th, double* out, std::size_t n) {
    check_positive(v, th, n, "conductivity");
    const double k1 = p.kappa1, k2 = p.kappa2, b = p.b_exp;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::conductivity(k1, k2, b, v[i], th[i]);
}

void reaction_rate_scalar(const PhysParams& p, const double* th, double* out,
                          std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (th[i] < 0.0)
            throw StatePositivityViolation("reaction_rate: negative theta");
    const double K = p.K_rate, A = p.A_act, beta = p.beta;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::reaction_rate(K, A, beta, th[i]);
}

void normalized_entropy_scalar(const PhysParams& p, const double* v,
                               const double* th, double* out, std::size_t n) {
    check_positive(v, th, n, "normalized_entropy");
    const double cv = p.c_v, R = p.R_gas, a3 = p.a_rad / 3.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::normalized_entropy(cv, R, a3, v[i], th[i]);
}

void effective_stress_scalar(const PhysParams& p, const double* v,
                             const double* th, const double* w, double* out,
                             std::size_t n) {
    check_positive(v, th, n, "effective_stress");
    const double alpha = p.alpha(), R = p.R_gas, a3 = p.a_rad / 3.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = pointwise::effective_stress(alpha, R, a3, v[i], th[i], w[i]);
}

void vexp_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = vmath::exp(x[i]);
}

void vlog_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = vmath::log(x[i]);
}

}  // namespace exogas::kernels
