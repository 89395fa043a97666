// AVX2 lane. Every kernel evaluates the same expression tree in the same
// order as the scalar lane (vmath.hpp / constitutive.hpp), with no FMA, so
// the two lanes are bit-equal. Tails shorter than a vector fall back to the
// pointwise scalar formulas.

#include <immintrin.h>

#include <cstdint>
#include <limits>

#include "exogas/constitutive.hpp"
#include "exogas/errors.hpp"
#include "exogas/kernels_impl.hpp"
#include "exogas/vmath.hpp"

namespace exogas::kernels {

namespace {

using vmath::detail::kExpHi;
using vmath::detail::kExpLo;
using vmath::detail::kExpP0;
using vmath::detail::kExpP1;
using vmath::detail::kExpP2;
using vmath::detail::kExpQ0;
using vmath::detail::kExpQ1;
using vmath::detail::kExpQ2;
using vmath::detail::kExpQ3;
using vmath::detail::kLn2Hi;
using vmath::detail::kLn2Lo;
using vmath::detail::kLog2E;
using vmath::detail::kLogC3;
using vmath::detail::kLogC4;
using vmath::detail::kLogP0;
using vmath::detail::kLogP1;
using vmath::detail::kLogP2;
using vmath::detail::kLogP3;
using vmath::detail::kLogP4;
using vmath::detail::kLogP5;
using vmath::detail::kLogQ0;
using vmath::detail::kLogQ1;
using vmath::detail::kLogQ2;
using vmath::detail::kLogQ3;
using vmath::detail::kLogQ4;
using vmath::detail::kSqrtHalf;

inline __m256d vset(double x) { return _mm256_set1_pd(x); }

// 2^k for integral k held in doubles, |k| <= 1022.
inline __m256d pow2i4(__m256d k) {
    const __m128i k32 = _mm256_cvtpd_epi32(k);
    const __m256i k64 = _mm256_cvtepi32_epi64(k32);
    const __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_castsi256_pd(bits);
}

inline __m256d exp4(__m256d x) {
    const __m256d nan_mask = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
    const __m256d hi_mask = _mm256_cmp_pd(x, vset(kExpHi), _CMP_GT_OQ);
    const __m256d lo_mask = _mm256_cmp_pd(x, vset(kExpLo), _CMP_LT_OQ);

    const __m256d n = _mm256_floor_pd(
        _mm256_add_pd(_mm256_mul_pd(vset(kLog2E), x), vset(0.5)));
    __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, vset(kLn2Hi)));
    r = _mm256_sub_pd(r, _mm256_mul_pd(n, vset(kLn2Lo)));
    const __m256d rr = _mm256_mul_pd(r, r);

    __m256d p = _mm256_add_pd(_mm256_mul_pd(vset(kExpP0), rr), vset(kExpP1));
    p = _mm256_add_pd(_mm256_mul_pd(p, rr), vset(kExpP2));
    p = _mm256_mul_pd(r, p);
    __m256d q = _mm256_add_pd(_mm256_mul_pd(vset(kExpQ0), rr), vset(kExpQ1));
    q = _mm256_add_pd(_mm256_mul_pd(q, rr), vset(kExpQ2));
    q = _mm256_add_pd(_mm256_mul_pd(q, rr), vset(kExpQ3));

    __m256d y = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    y = _mm256_add_pd(vset(1.0), _mm256_mul_pd(vset(2.0), y));

    const __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(n, vset(0.5)));
    const __m256d n2 = _mm256_sub_pd(n, n1);
    y = _mm256_mul_pd(_mm256_mul_pd(y, pow2i4(n1)), pow2i4(n2));

    const __m256d inf = vset(std::numeric_limits<double>::infinity());
    y = _mm256_blendv_pd(y, inf, hi_mask);
    y = _mm256_blendv_pd(y, _mm256_setzero_pd(), lo_mask);
    y = _mm256_blendv_pd(y, x, nan_mask);
    return y;
}

inline __m256d log4(__m256d x) {
    const __m256d nan_mask = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d zero_mask = _mm256_cmp_pd(x, zero, _CMP_EQ_OQ);
    const __m256d neg_mask = _mm256_cmp_pd(x, zero, _CMP_LT_OQ);
    const __m256d inf = vset(std::numeric_limits<double>::infinity());
    const __m256d inf_mask = _mm256_cmp_pd(x, inf, _CMP_EQ_OQ);

    const __m256d dbl_min = vset(std::numeric_limits<double>::min());
    __m256d sub_mask = _mm256_and_pd(_mm256_cmp_pd(x, dbl_min, _CMP_LT_OQ),
                                     _mm256_cmp_pd(x, zero, _CMP_GT_OQ));
    const __m256d xs =
        _mm256_blendv_pd(x, _mm256_mul_pd(x, vset(0x1p54)), sub_mask);
    const __m256d scale_adj = _mm256_and_pd(sub_mask, vset(54.0));

    const __m256i bits = _mm256_castpd_si256(xs);
    const __m256i ebits = _mm256_and_si256(_mm256_srli_epi64(bits, 52),
                                           _mm256_set1_epi64x(0x7ff));
    // small nonnegative int64 -> double via the 2^52 offset trick
    const __m256d e_off = _mm256_castsi256_pd(
        _mm256_or_si256(ebits, _mm256_set1_epi64x(0x4330000000000000LL)));
    __m256d e = _mm256_sub_pd(_mm256_sub_pd(e_off, vset(4503599627370496.0)),
                              vset(1022.0));
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
        _mm256_set1_epi64x(0x3fe0000000000000LL)));
    e = _mm256_sub_pd(e, scale_adj);

    const __m256d lt = _mm256_cmp_pd(m, vset(kSqrtHalf), _CMP_LT_OQ);
    m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), lt);
    e = _mm256_blendv_pd(e, _mm256_sub_pd(e, vset(1.0)), lt);

    const __m256d z = _mm256_sub_pd(m, vset(1.0));
    const __m256d zz = _mm256_mul_pd(z, z);

    __m256d pn = _mm256_add_pd(_mm256_mul_pd(vset(kLogP0), z), vset(kLogP1));
    pn = _mm256_add_pd(_mm256_mul_pd(pn, z), vset(kLogP2));
    pn = _mm256_add_pd(_mm256_mul_pd(pn, z), vset(kLogP3));
    pn = _mm256_add_pd(_mm256_mul_pd(pn, z), vset(kLogP4));
    pn = _mm256_add_pd(_mm256_mul_pd(pn, z), vset(kLogP5));
    __m256d pd = _mm256_add_pd(z, vset(kLogQ0));
    pd = _mm256_add_pd(_mm256_mul_pd(pd, z), vset(kLogQ1));
    pd = _mm256_add_pd(_mm256_mul_pd(pd, z), vset(kLogQ2));
    pd = _mm256_add_pd(_mm256_mul_pd(pd, z), vset(kLogQ3));
    pd = _mm256_add_pd(_mm256_mul_pd(pd, z), vset(kLogQ4));

    __m256d y = _mm256_mul_pd(z, _mm256_div_pd(_mm256_mul_pd(zz, pn), pd));
    y = _mm256_sub_pd(y, _mm256_mul_pd(e, vset(kLogC3)));
    y = _mm256_sub_pd(y, _mm256_mul_pd(vset(0.5), zz));
    __m256d res = _mm256_add_pd(z, y);
    res = _mm256_add_pd(res, _mm256_mul_pd(e, vset(kLogC4)));

    res = _mm256_blendv_pd(res, _mm256_sub_pd(zero, inf), zero_mask);
    res = _mm256_blendv_pd(
        res, vset(std::numeric_limits<double>::quiet_NaN()), neg_mask);
    res = _mm256_blendv_pd(res, inf, inf_mask);
    res = _mm256_blendv_pd(res, x, nan_mask);
    return res;
}

inline void require_positive4(__m256d v, __m256d th, const char* where) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d bad = _mm256_or_pd(
        _mm256_cmp_pd(v, zero, _CMP_NGT_UQ),   // !(v > 0), NaN included
        _mm256_cmp_pd(th, zero, _CMP_NGT_UQ));
    if (_mm256_movemask_pd(bad))
        throw StatePositivityViolation(std::string(where) +
                                       ": non-positive state");
}

}  // namespace

void pressure_avx2(const PhysParams& p, const double* v, const double* th,
                   double* out, std::size_t n) {
    const double R = p.R_gas, a3 = p.a_rad / 3.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d tt = _mm256_loadu_pd(th + i);
        require_positive4(vv, tt, "pressure");
        const __m256d th2 = _mm256_mul_pd(tt, tt);
        const __m256d res = _mm256_add_pd(
            _mm256_div_pd(_mm256_mul_pd(vset(R), tt), vv),
            _mm256_mul_pd(vset(a3), _mm256_mul_pd(th2, th2)));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation("pressure: non-positive state");
        out[i] = pointwise::pressure(R, a3, v[i], th[i]);
    }
}

void internal_energy_avx2(const PhysParams& p, const double* v,
                          const double* th, double* out, std::size_t n) {
    const double cv = p.c_v, a = p.a_rad;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d tt = _mm256_loadu_pd(th + i);
        require_positive4(vv, tt, "internal_energy");
        const __m256d th2 = _mm256_mul_pd(tt, tt);
        const __m256d res = _mm256_add_pd(
            _mm256_mul_pd(vset(cv), tt),
            _mm256_mul_pd(_mm256_mul_pd(vset(a), vv),
                          _mm256_mul_pd(th2, th2)));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation(
                "internal_energy: non-positive state");
        out[i] = pointwise::internal_energy(cv, a, v[i], th[i]);
    }
}

void energy_theta_deriv_avx2(const PhysParams& p, const double* v,
                             const double* th, double* out, std::size_t n) {
    const double cv = p.c_v, a = p.a_rad;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d tt = _mm256_loadu_pd(th + i);
        require_positive4(vv, tt, "energy_theta_deriv");
        const __m256d th3 = _mm256_mul_pd(_mm256_mul_pd(tt, tt), tt);
        const __m256d res = _mm256_add_pd(
            vset(cv),
            _mm256_mul_pd(_mm256_mul_pd(vset(4.0 * a), vv), th3));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation(
                "energy_theta_deriv: non-positive state");
        out[i] = pointwise::energy_theta_deriv(cv, a, v[i], th[i]);
    }
}

void pressure_theta_deriv_avx2(const PhysParams& p, const double* v,
                               const double* th, double* out, std::size_t n) {
    const double R = p.R_gas, a3 = p.a_rad / 3.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d tt = _mm256_loadu_pd(th + i);
        require_positive4(vv, tt, "pressure_theta_deriv");
        const __m256d th3 = _mm256_mul_pd(_mm256_mul_pd(tt, tt), tt);
        const __m256d res =
            _mm256_add_pd(_mm256_div_pd(vset(R), vv),
                          _mm256_mul_pd(vset(4.0 * a3), th3));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation(
                "pressure_theta_deriv: non-positive state");
        out[i] = pointwise::pressure_theta_deriv(R, a3, v[i], th[i]);
    }
}

void conductivity_avx2(const PhysParams& p, const double* v, const double* th,
                       double* out, std::size_t n) {
    const double k1 = p.kappa1, k2 = p.kappa2, b = p.b_exp;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d tt = _mm256_loadu_pd(th + i);
        require_positive4(vv, tt, "conductivity");
        const __m256d powb = exp4(_mm256_mul_pd(vset(b), log4(tt)));
        const __m256d res = _mm256_add_pd(
            vset(k1), _mm256_mul_pd(_mm256_mul_pd(vset(k2), vv), powb));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation("conductivity: non-positive state");
        out[i] = pointwise::conductivity(k1, k2, b, v[i], th[i]);
    }
}

void reaction_rate_avx2(const PhysParams& p, const double* th, double* out,
                        std::size_t n) {
    const double K = p.K_rate, A = p.A_act, beta = p.beta;
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d tt = _mm256_loadu_pd(th + i);
        if (_mm256_movemask_pd(_mm256_cmp_pd(tt, zero, _CMP_LT_OQ)))
            throw StatePositivityViolation("reaction_rate: negative theta");
        const __m256d arg =
            _mm256_sub_pd(_mm256_mul_pd(vset(beta), log4(tt)),
                          _mm256_div_pd(vset(A), tt));
        __m256d res = _mm256_mul_pd(vset(K), exp4(arg));
        // Arrhenius limit at theta = 0
        res = _mm256_blendv_pd(res, zero,
                               _mm256_cmp_pd(tt, zero, _CMP_EQ_OQ));
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        if (th[i] < 0.0)
            throw StatePositivityViolation("reaction_rate: negative theta");
        out[i] = pointwise::reaction_rate(K, A, beta, th[i]);
    }
}

void normalized_entropy_avx2(const PhysParams& p, const double* v,
                             const double* th, double* out, std::size_t n) {
    const double cv = p.c_v, R = p.R_gas, a3 = p.a_rad / 3.0;
    const __m256d one = vset(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d tt = _mm256_loadu_pd(th + i);
        require_positive4(vv, tt, "normalized_entropy");
        const __m256d dth = _mm256_sub_pd(tt, one);
        const __m256d quartic = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(vset(3.0), _mm256_mul_pd(tt, tt)),
                          _mm256_mul_pd(vset(2.0), tt)),
            one);
        const __m256d cv_term = _mm256_mul_pd(
            vset(cv), _mm256_sub_pd(_mm256_sub_pd(tt, log4(tt)), one));
        const __m256d r_term = _mm256_mul_pd(
            vset(R), _mm256_sub_pd(_mm256_sub_pd(vv, log4(vv)), one));
        const __m256d rad_term = _mm256_mul_pd(
            _mm256_mul_pd(_mm256_mul_pd(vset(a3), vv),
                          _mm256_mul_pd(dth, dth)),
            quartic);
        _mm256_storeu_pd(out + i,
                         _mm256_add_pd(_mm256_add_pd(cv_term, r_term),
                                       rad_term));
    }
    for (; i < n; ++i) {
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation(
                "normalized_entropy: non-positive state");
        out[i] = pointwise::normalized_entropy(cv, R, a3, v[i], th[i]);
    }
}

void effective_stress_avx2(const PhysParams& p, const double* v,
                           const double* th, const double* w, double* out,
                           std::size_t n) {
    const double alpha = p.alpha(), R = p.R_gas, a3 = p.a_rad / 3.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d tt = _mm256_loadu_pd(th + i);
        const __m256d ww = _mm256_loadu_pd(w + i);
        require_positive4(vv, tt, "effective_stress");
        const __m256d th2 = _mm256_mul_pd(tt, tt);
        const __m256d press = _mm256_add_pd(
            _mm256_div_pd(_mm256_mul_pd(vset(R), tt), vv),
            _mm256_mul_pd(vset(a3), _mm256_mul_pd(th2, th2)));
        const __m256d res = _mm256_sub_pd(
            _mm256_div_pd(_mm256_mul_pd(vset(alpha), ww), vv), press);
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) {
        if (!(v[i] > 0.0) || !(th[i] > 0.0))
            throw StatePositivityViolation(
                "effective_stress: non-positive state");
        out[i] = pointwise::effective_stress(alpha, R, a3, v[i], th[i], w[i]);
    }
}

void vexp_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = vmath::exp(x[i]);
}

void vlog_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, log4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = vmath::log(x[i]);
}

}  // namespace exogas::kernels
