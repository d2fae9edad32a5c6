#include <atomic>
#include <cstdlib>
#include <string>

#include "citerank/kernels.hpp"

#if defined(CITERANK_BUILD_AVX2)
#include "avx2_table.hpp"
#endif

namespace citerank::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(CITERANK_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const char* forced = std::getenv("CITERANK_SIMD");
  if (forced != nullptr) {
    if (auto backend = parse_backend(forced); backend == Backend::scalar) {
      return &scalar_table();
    }
  }
  if (const KernelTable* simd = avx2_table()) return simd;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(CITERANK_BUILD_AVX2)
  static const bool supported = cpu_has_avx2();
  if (supported) return &detail::avx2_kernels();
#endif
  return nullptr;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(Backend backend) {
  const KernelTable* table =
      backend == Backend::scalar ? &scalar_table() : avx2_table();
  if (table == nullptr) return false;
  current().store(table, std::memory_order_release);
  return true;
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::scalar;
  if (name == "avx2") return Backend::avx2;
  return std::nullopt;
}

}  // namespace citerank::kernels
