// Built with -mavx2 -mfma; only entered after a runtime CPU check.

#include "casimir/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cstdint>

namespace casimir::kernels {

namespace {

// exp(x) for x <= 0. Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, then a
// degree-13 Taylor polynomial (truncation < 1e-17 relative).
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d floor_x = _mm256_set1_pd(-708.0);

  const __m256d underflow = _mm256_cmp_pd(x, floor_x, _CMP_LT_OQ);
  x = _mm256_max_pd(x, floor_x);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  // 1/j! for j = 13 .. 0
  static constexpr double kInvFact[14] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
      1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
      1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        0.5,
      1.0,                1.0};
  __m256d poly = _mm256_set1_pd(kInvFact[0]);
  for (int j = 1; j < 14; ++j) poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(kInvFact[j]));

  // 2^n by building the exponent field; n >= -1022 after the clamp.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_cvtepi32_epi64(n32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  const __m256d scale = _mm256_castsi256_pd(bits);

  const __m256d out = _mm256_mul_pd(poly, scale);
  return _mm256_andnot_pd(underflow, out);
}

// log(u) for normal u > 0 (u = 0 gives -inf). u = 2^e m, m in [sqrt(1/2), sqrt(2)),
// log(m) = f - f^2/2 + s (f^2/2 + R(s^2)) with s = f/(2+f) and R the atanh series.
inline __m256d log_pd(__m256d u) {
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730950488);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  const __m256i bits = _mm256_castpd_si256(u);
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  // Exponent fits comfortably in the low 32 bits of each lane; convert via int32.
  const __m256i perm = _mm256_permutevar8x32_epi32(biased, _mm256_setr_epi32(0, 2, 4, 6, 0, 2, 4, 6));
  __m256d e = _mm256_cvtepi32_pd(_mm256_castsi256_si128(perm));
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  const __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, one));

  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);

  // R(z) = sum_{j=1..10} 2 z^j / (2j + 1)
  __m256d poly = _mm256_set1_pd(2.0 / 21.0);
  for (int j = 9; j >= 1; --j) poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(2.0 / (2 * j + 1)));
  const __m256d R = _mm256_mul_pd(poly, z);

  const __m256d hfsq = _mm256_mul_pd(half, _mm256_mul_pd(f, f));
  const __m256d corr = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, R), _mm256_fmadd_pd(e, ln2_lo, _mm256_setzero_pd()));
  const __m256d logm = _mm256_add_pd(_mm256_sub_pd(f, hfsq), corr);
  __m256d out = _mm256_fmadd_pd(e, ln2_hi, logm);

  const __m256d zero = _mm256_cmp_pd(u, _mm256_setzero_pd(), _CMP_EQ_OQ);
  return _mm256_blendv_pd(out, _mm256_set1_pd(-__builtin_inf()), zero);
}

// log1p(y) for y in (-1, 0]: log(1 + y) corrected for the rounding of 1 + y.
inline __m256d log1p_pd(__m256d y) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d u = _mm256_add_pd(one, y);
  const __m256d lu = log_pd(u);
  const __m256d c = _mm256_div_pd(_mm256_sub_pd(_mm256_sub_pd(u, one), y), u);
  const __m256d out = _mm256_sub_pd(lu, c);
  // u == 1 exactly: log1p(y) = y to full precision.
  const __m256d exact = _mm256_cmp_pd(u, one, _CMP_EQ_OQ);
  return _mm256_blendv_pd(out, y, exact);
}

}  // namespace

void round_trip_log_avx2(const RoundTripParams& p, const double* kappa, double* te, double* tm,
                         std::size_t n) {
  const double s_scalar = p.susceptibility;
  const bool static_limit = p.xi_sq == 0.0;
  const double inv_xi_sq_scalar = static_limit ? 0.0 : 1.0 / p.xi_sq;

  const __m256d s = _mm256_set1_pd(s_scalar);
  const __m256d inv_xi_sq = _mm256_set1_pd(inv_xi_sq_scalar);
  const __m256d eps = _mm256_set1_pd(1.0 + s_scalar * inv_xi_sq_scalar);
  const __m256d minus_two_L = _mm256_set1_pd(-2.0 * p.distance);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d kap = _mm256_loadu_pd(kappa + i);
    const __m256d km = _mm256_sqrt_pd(_mm256_fmadd_pd(kap, kap, s));
    const __m256d sum = _mm256_add_pd(kap, km);
    const __m256d q = exp_pd(_mm256_mul_pd(minus_two_L, kap));

    const __m256d r_te = _mm256_div_pd(s, _mm256_mul_pd(sum, sum));  // sign irrelevant once squared
    const __m256d y_te = _mm256_xor_pd(_mm256_mul_pd(_mm256_mul_pd(r_te, r_te), q), sign);
    _mm256_storeu_pd(te + i, log1p_pd(y_te));

    __m256d y_tm;
    if (static_limit) {
      y_tm = _mm256_xor_pd(q, sign);
    } else {
      const __m256d num = _mm256_mul_pd(s, _mm256_sub_pd(_mm256_mul_pd(kap, inv_xi_sq), _mm256_div_pd(one, sum)));
      const __m256d r_tm = _mm256_div_pd(num, _mm256_fmadd_pd(eps, kap, km));
      y_tm = _mm256_xor_pd(_mm256_mul_pd(_mm256_mul_pd(r_tm, r_tm), q), sign);
    }
    _mm256_storeu_pd(tm + i, log1p_pd(y_tm));
  }
  if (i < n) round_trip_log_scalar(p, kappa + i, te + i, tm + i, n - i);
}

namespace detail {

void exp_avx2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) {
    double buf[4] = {x[i], 0.0, 0.0, 0.0};
    _mm256_storeu_pd(buf, exp_pd(_mm256_loadu_pd(buf)));
    out[i] = buf[0];
  }
}

void log1p_avx2(const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, log1p_pd(_mm256_loadu_pd(y + i)));
  for (; i < n; ++i) {
    double buf[4] = {y[i], 0.0, 0.0, 0.0};
    _mm256_storeu_pd(buf, log1p_pd(_mm256_loadu_pd(buf)));
    out[i] = buf[0];
  }
}

}  // namespace detail

}  // namespace casimir::kernels

#else  // no AVX2 at compile time: the dispatcher never selects this path

#include "casimir/errors.hpp"

namespace casimir::kernels {

void round_trip_log_avx2(const RoundTripParams&, const double*, double*, double*, std::size_t) {
  throw DomainError("AVX2 kernel not compiled for this target");
}

namespace detail {
void exp_avx2(const double*, double*, std::size_t) {
  throw DomainError("AVX2 kernel not compiled for this target");
}
void log1p_avx2(const double*, double*, std::size_t) {
  throw DomainError("AVX2 kernel not compiled for this target");
}
}  // namespace detail

}  // namespace casimir::kernels

#endif
