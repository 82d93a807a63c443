#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels/tables.hpp"
#include "sbmtest/error.hpp"

namespace sbmtest::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(SBMTEST_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("SBMTEST_SIMD")) {
    const std::string choice(env);
    if (choice == "scalar") return Backend::Scalar;
    if (choice == "avx2" && cpu_has_avx2()) return Backend::Avx2;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> t{&table(initial_backend())};
  return t;
}

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorCode::LengthMismatch, std::string(what) + ": length mismatch");
}

}  // namespace

const Table& table(Backend backend) {
#if defined(SBMTEST_HAVE_AVX2)
  if (backend == Backend::Avx2) return detail::kAvx2Table;
#endif
  (void)backend;
  return detail::kScalarTable;
}

bool backend_available(Backend backend) {
  return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() {
  return current().load() == &detail::kScalarTable ? Backend::Scalar : Backend::Avx2;
}

void set_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw Error(ErrorCode::Config, "SIMD backend not available on this machine");
  }
  current().store(&table(backend));
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_lengths(a.size(), b.size(), "dot");
  return current().load()->dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> x) { return current().load()->sum(x.data(), x.size()); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_lengths(x.size(), y.size(), "axpy");
  current().load()->axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) {
  current().load()->scale(alpha, x.data(), x.size());
}

void row_times_block(std::span<const double> row, std::span<const double> block, std::size_t p,
                     std::span<double> out) {
  check_lengths(block.size(), row.size() * p, "row_times_block");
  check_lengths(out.size(), p, "row_times_block");
  current().load()->row_times_block(row.data(), row.size(), block.data(), p, out.data());
}

}  // namespace sbmtest::kernels
