#pragma once

#include "sbmtest/kernels/dense.hpp"

namespace sbmtest::kernels::detail {

extern const Table kScalarTable;
#if defined(SBMTEST_HAVE_AVX2)
extern const Table kAvx2Table;
#endif

}  // namespace sbmtest::kernels::detail
