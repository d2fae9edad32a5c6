#include "citerank/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace citerank::kernels {
namespace {

void acr_scalar(std::span<const std::uint32_t> citations,
                std::span<const std::int32_t> years, std::int32_t as_of_year,
                std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::int32_t age = std::max<std::int32_t>(0, as_of_year - years[i]);
    out[i] = static_cast<double>(citations[i]) / static_cast<double>(age + 1);
  }
}

void srcr_scalar(std::span<const double> acr, std::span<const double> sum,
                 std::span<const std::uint64_t> count, double alpha,
                 std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double mean =
        count[i] > 0 ? sum[i] / static_cast<double>(count[i]) : 0.0;
    out[i] = (acr[i] + alpha) / (mean + alpha);
  }
}

void multiply_scalar(std::span<const double> a, std::span<const double> b,
                     std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void scale_shift_scalar(std::span<const double> x, double scale, double shift,
                        std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double scaled = x[i] * scale;
    out[i] = scaled + shift;
  }
}

void rescale_scalar(std::span<const double> x, double lo, double range,
                    std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x[i] - lo) / range;
}

double sum_scalar(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc;
}

double l1_distance_scalar(std::span<const double> a,
                          std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double gather_sum_scalar(std::span<const double> values,
                         std::span<const std::uint32_t> indices) {
  double acc = 0.0;
  for (std::uint32_t k : indices) acc += values[k];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      Backend::scalar,   acr_scalar,  srcr_scalar,        multiply_scalar,
      scale_shift_scalar, rescale_scalar, sum_scalar, l1_distance_scalar,
      gather_sum_scalar,
  };
  return table;
}

}  // namespace citerank::kernels
