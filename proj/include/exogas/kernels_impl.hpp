#pragma once

#include <cstddef>

#include "exogas/params.hpp"

// Internal lane entry points; users go through kernels.hpp.

namespace exogas::kernels {

#define EXOGAS_KERNEL_LANE(suffix)                                            \
    void pressure_##suffix(const PhysParams&, const double*, const double*,   \
                           double*, std::size_t);                             \
    void internal_energy_##suffix(const PhysParams&, const double*,           \
                                  const double*, double*, std::size_t);       \
    void energy_theta_deriv_##suffix(const PhysParams&, const double*,        \
                                     const double*, double*, std::size_t);    \
    void pressure_theta_deriv_##suffix(const PhysParams&, const double*,      \
                                       const double*, double*, std::size_t);  \
    void conductivity_##suffix(const PhysParams&, const double*,              \
                               const double*, double*, std::size_t);          \
    void reaction_rate_##suffix(const PhysParams&, const double*, double*,    \
                                std::size_t);                                 \
    void normalized_entropy_##suffix(const PhysParams&, const double*,        \
                                     const double*, double*, std::size_t);    \
    void effective_stress_##suffix(const PhysParams&, const double*,          \
                                   const double*, const double*, double*,     \
                                   std::size_t);                              \
    void vexp_##suffix(const double*, double*, std::size_t);                  \
    void vlog_##suffix(const double*, double*, std::size_t);

EXOGAS_KERNEL_LANE(scalar)
EXOGAS_KERNEL_LANE(avx2)

#undef EXOGAS_KERNEL_LANE

}  // namespace exogas::kernels
