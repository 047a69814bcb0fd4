#pragma once

#include "mdg/simd.hpp"

namespace mdg::simd::detail {

// Return nullptr when the variant was not compiled for this target.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace mdg::simd::detail
