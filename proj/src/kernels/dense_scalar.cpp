#include "kernels/tables.hpp"

namespace sbmtest::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void row_times_block_scalar(const double* row, std::size_t len, const double* block,
                            std::size_t p, double* out) {
  for (std::size_t k = 0; k < p; ++k) out[k] = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    const double r = row[j];
    const double* b = block + j * p;
    for (std::size_t k = 0; k < p; ++k) out[k] += r * b[k];
  }
}

}  // namespace

const Table kScalarTable = {dot_scalar, sum_scalar, axpy_scalar, scale_scalar,
                            row_times_block_scalar};

}  // namespace sbmtest::kernels::detail
