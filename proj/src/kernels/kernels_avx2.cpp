// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "alphaleak/kernels.hpp"

namespace alphaleak::kernels::avx2 {
namespace {

// Fast path range: 2^n stays a normal double for n = round(x * log2(e)).
constexpr double kExpLo = -708.0;
constexpr double kExpHi = 709.0;

// exp on [kExpLo, kExpHi]: Cody-Waite reduction by ln 2, degree-13 Taylor
// polynomial on |r| <= ln(2)/2, then scale by 2^n through the exponent bits.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  const __m256i n64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

inline bool all_in_fast_range(__m256d x) {
  const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, _mm256_set1_pd(kExpLo), _CMP_GE_OQ),
                                   _mm256_cmp_pd(x, _mm256_set1_pd(kExpHi), _CMP_LE_OQ));
  return _mm256_movemask_pd(ok) == 0xF;
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

}  // namespace

double log_sum_exp(std::span<const double> x) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const std::size_t len = x.size();
  if (len == 0) return kNegInf;

  std::size_t i = 0;
  double m = kNegInf;
  if (len >= 4) {
    __m256d vmax = _mm256_set1_pd(kNegInf);
    for (; i + 4 <= len; i += 4) vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(x.data() + i));
    m = horizontal_max(vmax);
  }
  for (; i < len; ++i) m = std::max(m, x[i]);
  if (std::isinf(m)) return m;

  // Terms below exp(-708) are flushed to zero; the max term contributes 1.
  const __m256d vm = _mm256_set1_pd(m);
  const __m256d floor = _mm256_set1_pd(kExpLo);
  __m256d acc = _mm256_setzero_pd();
  i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), vm);
    const __m256d keep = _mm256_cmp_pd(t, floor, _CMP_GE_OQ);
    const __m256d e = exp_pd(_mm256_max_pd(t, floor));
    acc = _mm256_add_pd(acc, _mm256_and_pd(e, keep));
  }
  double sum = horizontal_sum(acc);
  for (; i < len; ++i) sum += std::exp(x[i] - m);
  return m + std::log(sum);
}

void exp_affine(std::span<const double> x, double scale, double shift, std::span<double> out) {
  const std::size_t len = x.size();
  if (scale == 0.0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(len), std::exp(shift));
    return;
  }
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vt = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    // mul then add, not fma, so arguments round like the scalar path
    const __m256d arg = _mm256_add_pd(vt, _mm256_mul_pd(vs, _mm256_loadu_pd(x.data() + i)));
    if (all_in_fast_range(arg)) {
      _mm256_storeu_pd(out.data() + i, exp_pd(arg));
    } else {
      alignas(32) double lanes[4];
      _mm256_store_pd(lanes, arg);
      for (int j = 0; j < 4; ++j) out[i + j] = std::exp(lanes[j]);
    }
  }
  for (; i < len; ++i) out[i] = std::exp(shift + scale * x[i]);
}

void min_plus_convolve(std::span<const double> a, std::span<const double> b,
                       std::span<double> out, std::span<std::int64_t> argmin) {
  const std::size_t len = out.size();
  double* o = out.data();
  std::int64_t* g = argmin.data();
  for (std::size_t k = 0; k < len; ++k) {
    o[k] = a[0] + b[k];
    g[k] = 0;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const double ai = a[i];
    const __m256d va = _mm256_set1_pd(ai);
    const __m256i vi = _mm256_set1_epi64x(static_cast<long long>(i));
    std::size_t k = i;
    for (; k + 4 <= len; k += 4) {
      const __m256d cand = _mm256_add_pd(va, _mm256_loadu_pd(b.data() + (k - i)));
      const __m256d cur = _mm256_loadu_pd(o + k);
      const __m256d lt = _mm256_cmp_pd(cand, cur, _CMP_LT_OQ);
      _mm256_storeu_pd(o + k, _mm256_blendv_pd(cur, cand, lt));
      const __m256d idx = _mm256_castsi256_pd(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(g + k)));
      const __m256d upd = _mm256_blendv_pd(idx, _mm256_castsi256_pd(vi), lt);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(g + k), _mm256_castpd_si256(upd));
    }
    for (; k < len; ++k) {
      const double cand = ai + b[k - i];
      if (cand < o[k]) {
        o[k] = cand;
        g[k] = static_cast<std::int64_t>(i);
      }
    }
  }
}

}  // namespace alphaleak::kernels::avx2
