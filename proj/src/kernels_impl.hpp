#pragma once

#include "normmesh/kernels.hpp"

namespace normmesh::kernels::detail {

KernelTable make_avx2_table() noexcept;

}  // namespace normmesh::kernels::detail
