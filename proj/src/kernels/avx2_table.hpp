#pragma once

#include "citerank/kernels.hpp"

namespace citerank::kernels::detail {

// Defined in avx2.cpp, which is only compiled with -mavx2 on x86-64.
const KernelTable& avx2_kernels();

}  // namespace citerank::kernels::detail
