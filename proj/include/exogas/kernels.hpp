#pragma once

#include <cstddef>
#include <string>

#include "exogas/params.hpp"

// Batch constitutive kernels over cell arrays. Two lanes: a scalar reference
// and an AVX2 variant selected at runtime; both evaluate the identical
// expression trees (see vmath.hpp), so outputs are bit-equal. Input and
// output arrays must not alias.

namespace exogas::kernels {

enum class Lane { scalar, avx2 };

bool avx2_supported();
Lane active_lane();
// Overrides lane selection (tests, EXOGAS_SIMD=scalar|avx2 env at startup).
void force_lane(Lane lane);
std::string lane_name(Lane lane);

void pressure(const PhysParams& p, const double* v, const double* th,
              double* out, std::size_t n);
void internal_energy(const PhysParams& p, const double* v, const double* th,
                     double* out, std::size_t n);
void energy_theta_deriv(const PhysParams& p, const double* v, const double* th,
                        double* out, std::size_t n);
void pressure_theta_deriv(const PhysParams& p, const double* v,
                          const double* th, double* out, std::size_t n);
void conductivity(const PhysParams& p, const double* v, const double* th,
                  double* out, std::size_t n);
void reaction_rate(const PhysParams& p, const double* th, double* out,
                   std::size_t n);
void normalized_entropy(const PhysParams& p, const double* v, const double* th,
                        double* out, std::size_t n);
// sigma = alpha * w / v - P(v, theta)
void effective_stress(const PhysParams& p, const double* v, const double* th,
                      const double* w, double* out, std::size_t n);

void vexp(const double* x, double* out, std::size_t n);
void vlog(const double* x, double* out, std::size_t n);

}  // namespace exogas::kernels
