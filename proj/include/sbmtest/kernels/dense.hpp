#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense double-precision kernels with a scalar reference and an AVX2+FMA
// variant. The backend is chosen once at startup from CPUID and can be
// forced with SBMTEST_SIMD=scalar|avx2 or set_backend().
namespace sbmtest::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_available(Backend backend);
// Throws if the backend is unavailable on this CPU/build.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// x *= alpha
void scale(double alpha, std::span<double> x);
// out[k] = sum_j row[j] * block[j * p + k], k < p; block is row-major len(row) x p.
void row_times_block(std::span<const double> row, std::span<const double> block, std::size_t p,
                     std::span<double> out);

// Backend tables; exposed for equivalence tests.
struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*row_times_block)(const double*, std::size_t, const double*, std::size_t, double*);
};

const Table& table(Backend backend);

}  // namespace sbmtest::kernels
