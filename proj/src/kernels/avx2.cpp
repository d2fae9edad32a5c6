#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "avx2_table.hpp"

namespace citerank::kernels::detail {
namespace {

// Horizontal add in a fixed lane order: (l0 + l2) + (l1 + l3).
inline double reduce(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Exact for 0 <= x < 2^52.
inline __m256d u64_to_f64(__m256i x) {
  const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);  // 2^52
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, magic_bits)),
                       magic);
}

void acr_avx2(std::span<const std::uint32_t> citations,
              std::span<const std::int32_t> years, std::int32_t as_of_year,
              std::span<double> out) {
  const std::size_t n = out.size();
  const __m128i as_of = _mm_set1_epi32(as_of_year);
  const __m128i zero = _mm_setzero_si128();
  const __m128i one = _mm_set1_epi32(1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i c = _mm_loadu_si128(
        reinterpret_cast<const __m128i*>(citations.data() + i));
    const __m128i y =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(years.data() + i));
    const __m128i age = _mm_max_epi32(zero, _mm_sub_epi32(as_of, y));
    const __m256d num = _mm256_cvtepi32_pd(c);
    const __m256d den = _mm256_cvtepi32_pd(_mm_add_epi32(age, one));
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) {
    const std::int32_t age = std::max<std::int32_t>(0, as_of_year - years[i]);
    out[i] = static_cast<double>(citations[i]) / static_cast<double>(age + 1);
  }
}

void srcr_avx2(std::span<const double> acr, std::span<const double> sum,
               std::span<const std::uint64_t> count, double alpha,
               std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d a = _mm256_set1_pd(alpha);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cnt = u64_to_f64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(count.data() + i)));
    const __m256d s = _mm256_loadu_pd(sum.data() + i);
    const __m256d empty = _mm256_cmp_pd(cnt, zero, _CMP_EQ_OQ);
    const __m256d mean = _mm256_blendv_pd(_mm256_div_pd(s, cnt), zero, empty);
    const __m256d x = _mm256_loadu_pd(acr.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(_mm256_add_pd(x, a),
                                                   _mm256_add_pd(mean, a)));
  }
  for (; i < n; ++i) {
    const double mean =
        count[i] > 0 ? sum[i] / static_cast<double>(count[i]) : 0.0;
    out[i] = (acr[i] + alpha) / (mean + alpha);
  }
}

void multiply_avx2(std::span<const double> a, std::span<const double> b,
                   std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                                   _mm256_loadu_pd(b.data() + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void scale_shift_avx2(std::span<const double> x, double scale, double shift,
                      std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d s = _mm256_set1_pd(scale);
  const __m256d t = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), s);
    _mm256_storeu_pd(out.data() + i, _mm256_add_pd(v, t));
  }
  for (; i < n; ++i) {
    const double scaled = x[i] * scale;
    out[i] = scaled + shift;
  }
}

void rescale_avx2(std::span<const double> x, double lo, double range,
                  std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d l = _mm256_set1_pd(lo);
  const __m256d r = _mm256_set1_pd(range);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), l);
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(v, r));
  }
  for (; i < n; ++i) out[i] = (x[i] - lo) / range;
}

double sum_avx2(std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x.data() + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x.data() + i + 4));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x.data() + i));
  }
  double acc = reduce(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double l1_distance_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                    _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  double total = reduce(acc);
  for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

double gather_sum_avx2(std::span<const double> values,
                       std::span<const std::uint32_t> indices) {
  const std::size_t n = indices.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128i idx = _mm_loadu_si128(
        reinterpret_cast<const __m128i*>(indices.data() + k));
    acc = _mm256_add_pd(acc, _mm256_i32gather_pd(values.data(), idx, 8));
  }
  double total = reduce(acc);
  for (; k < n; ++k) total += values[indices[k]];
  return total;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{
      Backend::avx2,    acr_avx2,     srcr_avx2,        multiply_avx2,
      scale_shift_avx2, rescale_avx2, sum_avx2,         l1_distance_avx2,
      gather_sum_avx2,
  };
  return table;
}

}  // namespace citerank::kernels::detail
