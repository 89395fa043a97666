#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

// Scalar reference implementations of exp/log used throughout the code in
// place of libm. The AVX2 kernel lane mirrors these algorithms operation for
// operation (same polynomial order, no FMA), so both lanes produce identical
// bits and runs are reproducible regardless of dispatch.
//
// Algorithms are the classic Cephes rational approximations; accuracy is a
// couple of ulp over the full double range (exercised in test_vmath).

namespace exogas::vmath {

namespace detail {

inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kLn2Hi = 6.93145751953125e-1;
inline constexpr double kLn2Lo = 1.42860682030941723212e-6;

inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;
inline constexpr double kExpHi = 709.782712893383996843;
inline constexpr double kExpLo = -745.8;

inline constexpr double kLogP0 = 1.01875663804580931796e-4;
inline constexpr double kLogP1 = 4.97494994976747001425e-1;
inline constexpr double kLogP2 = 4.70579119878881725854e0;
inline constexpr double kLogP3 = 1.44989225341610930846e1;
inline constexpr double kLogP4 = 1.79368678507819816313e1;
inline constexpr double kLogP5 = 7.70838733755885391666e0;
inline constexpr double kLogQ0 = 1.12873587189167450590e1;
inline constexpr double kLogQ1 = 4.52279145837532221105e1;
inline constexpr double kLogQ2 = 8.29875266912776603211e1;
inline constexpr double kLogQ3 = 7.11544750618563894466e1;
inline constexpr double kLogQ4 = 2.31251620126765340583e1;
inline constexpr double kSqrtHalf = 0.70710678118654752440;
inline constexpr double kLogC3 = 2.121944400546905827679e-4;  // e correction
inline constexpr double kLogC4 = 0.693359375;                 // ln2 high part

// 2^k for integral k in [-1022, 1023].
inline double pow2i(double k) {
    const auto bits = (static_cast<std::int64_t>(k) + 1023) << 52;
    return std::bit_cast<double>(bits);
}

}  // namespace detail

inline double exp(double x) {
    using namespace detail;
    if (x != x) return x;
    if (x > kExpHi) return std::numeric_limits<double>::infinity();
    if (x < kExpLo) return 0.0;

    const double n = std::floor(kLog2E * x + 0.5);
    double r = x - n * kLn2Hi;
    r = r - n * kLn2Lo;
    const double rr = r * r;
    const double p = r * ((kExpP0 * rr + kExpP1) * rr + kExpP2);
    const double q = ((kExpQ0 * rr + kExpQ1) * rr + kExpQ2) * rr + kExpQ3;
    double y = p / (q - p);
    y = 1.0 + 2.0 * y;

    // two-stage 2^n so the subnormal tail stays representable
    const double n1 = std::floor(n * 0.5);
    const double n2 = n - n1;
    return y * pow2i(n1) * pow2i(n2);
}

inline double log(double x) {
    using namespace detail;
    if (x != x) return x;
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    if (x < 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x == std::numeric_limits<double>::infinity()) return x;

    double scale_adj = 0.0;
    if (x < std::numeric_limits<double>::min()) {  // subnormal
        x *= 0x1p54;
        scale_adj = 54.0;
    }
    const auto bits = std::bit_cast<std::int64_t>(x);
    double e = static_cast<double>(((bits >> 52) & 0x7ff) - 1022);
    double m = std::bit_cast<double>(
        (bits & 0x000fffffffffffffLL) | 0x3fe0000000000000LL);  // [0.5, 1)
    e -= scale_adj;
    if (m < kSqrtHalf) {
        m = m + m;
        e -= 1.0;
    }

    const double z = m - 1.0;
    const double zz = z * z;
    const double pnum =
        ((((kLogP0 * z + kLogP1) * z + kLogP2) * z + kLogP3) * z + kLogP4) * z +
        kLogP5;
    const double pden =
        ((((z + kLogQ0) * z + kLogQ1) * z + kLogQ2) * z + kLogQ3) * z + kLogQ4;
    double y = z * (zz * pnum / pden);
    y = y - e * kLogC3;
    y = y - 0.5 * zz;
    double result = z + y;
    result = result + e * kLogC4;
    return result;
}

// x^y as exp(y*log(x)); the single code path keeps lanes equivalent.
inline double pow(double x, double y) { return exp(y * log(x)); }

// Integer power by repeated multiplication (geometry factors r^(n-1) etc.).
inline double powi(double x, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= x;
    return acc;
}

}  // namespace exogas::vmath
