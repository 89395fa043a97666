#include "exogas/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "exogas/kernels_impl.hpp"

namespace exogas::kernels {

namespace {

Lane g_lane = [] {
    const char* env = std::getenv("EXOGAS_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Lane::scalar;
    if (env && std::strcmp(env, "avx2") == 0) return Lane::avx2;
    return __builtin_cpu_supports("avx2") ? Lane::avx2 : Lane::scalar;
}();

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

Lane active_lane() { return g_lane; }

void force_lane(Lane lane) { g_lane = lane; }

std::string lane_name(Lane lane) {
    return lane == Lane::avx2 ? "avx2" : "scalar";
}

#define EXOGAS_DISPATCH2(name)                                               \
    void name(const PhysParams& p, const double* v, const double* th,       \
              double* out, std::size_t n) {                                  \
        if (g_lane == Lane::avx2)                                            \
            name##_avx2(p, v, th, out, n);                                   \
        else                                                                 \
            name##_scalar(p, v, th, out, n);                                 \
    }

EXOGAS_DISPATCH2(pressure)
EXOGAS_DISPATCH2(internal_energy)
EXOGAS_DISPATCH2(energy_theta_deriv)
EXOGAS_DISPATCH2(pressure_theta_deriv)
EXOGAS_DISPATCH2(conductivity)
EXOGAS_DISPATCH2(normalized_entropy)

#undef EXOGAS_DISPATCH2

void reaction_rate(const PhysParams& p, const double* th, double* out,
                   std::size_t n) {
    if (g_lane == Lane::avx2)
        reaction_rate_avx2(p, th, out, n);
    else
        reaction_rate_scalar(p, th, out, n);
}

void effective_stress(const PhysParams& p, const double* v, const double* th,
                      const double* w, double* out, std::size_t n) {
    if (g_lane == Lane::avx2)
        effective_stress_avx2(p, v, th, w, out, n);
    else
        effective_stress_scalar(p, v, th, w, out, n);
}

void vexp(const double* x, double* out, std::size_t n) {
    if (g_lane == Lane::avx2)
        vexp_avx2(x, out, n);
    else
        vexp_scalar(x, out, n);
}

void vlog(const double* x, double* out, std::size_t n) {
    if (g_lane == Lane::avx2)
        vlog_avx2(x, out, n);
    else
        vlog_scalar(x, out, n);
}

}  // namespace exogas::kernels
