#pragma once

// Dense per-paper arithmetic used by the metric passes. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant picked at
// runtime. Elementwise kernels produce bit-identical results on every
// backend; reductions agree to rounding (the lane order differs).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace citerank::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;

  // out[i] = citations[i] / (max(0, as_of_year - years[i]) + 1)
  void (*acr)(std::span<const std::uint32_t> citations,
              std::span<const std::int32_t> years, std::int32_t as_of_year,
              std::span<double> out);

  // mean = count > 0 ? sum / count : 0;  out = (acr + alpha) / (mean + alpha)
  // Counts must be below 2^52.
  void (*srcr)(std::span<const double> acr, std::span<const double> sum,
               std::span<const std::uint64_t> count, double alpha,
               std::span<double> out);

  // out[i] = a[i] * b[i]
  void (*multiply)(std::span<const double> a, std::span<const double> b,
                   std::span<double> out);

  // out[i] = x[i] * scale + shift  (two roundings, never fused)
  void (*scale_shift)(std::span<const double> x, double scale, double shift,
                      std::span<double> out);

  // out[i] = (x[i] - lo) / range
  void (*rescale)(std::span<const double> x, double lo, double range,
                  std::span<double> out);

  double (*sum)(std::span<const double> x);
  double (*l1_distance)(std::span<const double> a, std::span<const double> b);

  // sum of values[indices[k]]; indices must be < 2^31
  double (*gather_sum)(std::span<const double> values,
                       std::span<const std::uint32_t> indices);
};

const KernelTable& scalar_table();

// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();

// Backend picked at startup: the best available, unless CITERANK_SIMD=scalar
// is set in the environment.
const KernelTable& active();

// Overrides the active backend. Returns false (and changes nothing) when the
// requested backend is unavailable.
bool select(Backend backend);

std::string_view backend_name(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

}  // namespace citerank::kernels
