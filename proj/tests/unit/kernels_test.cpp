#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sbmtest/kernels/dense.hpp"
#include "sbmtest/rng.hpp"

using namespace sbmtest;
using kernels::Backend;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  Rng r(seed);
  std::vector<double> v(n);
  for (double& x : v) x = r.normal();
  return v;
}

double tol_for(std::size_t n) { return 1e-13 * static_cast<double>(n + 1); }

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!kernels::backend_available(Backend::Avx2)) GTEST_SKIP() << "AVX2 not available";
  }
  const kernels::Table& scalar = kernels::table(Backend::Scalar);
  const kernels::Table& simd() { return kernels::table(Backend::Avx2); }
};

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 64, 100, 1001};

}  // namespace

TEST_F(KernelEquivalence, Dot) {
  for (std::size_t n : kSizes) {
    const auto a = random_vector(n, n + 1);
    const auto b = random_vector(n, n + 2);
    EXPECT_NEAR(scalar.dot(a.data(), b.data(), n), simd().dot(a.data(), b.data(), n), tol_for(n))
        << "n=" << n;
  }
}

TEST_F(KernelEquivalence, Sum) {
  for (std::size_t n : kSizes) {
    const auto a = random_vector(n, n + 3);
    EXPECT_NEAR(scalar.sum(a.data(), n), simd().sum(a.data(), n), tol_for(n)) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, AxpyAndScaleAreExact) {
  for (std::size_t n : kSizes) {
    const auto x = random_vector(n, n + 4);
    auto y1 = random_vector(n, n + 5);
    auto y2 = y1;
    scalar.axpy(0.37, x.data(), y1.data(), n);
    simd().axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15 * (1 + std::abs(y1[i])));
    scalar.scale(-1.7, y1.data(), n);
    simd().scale(-1.7, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15 * (1 + std::abs(y1[i])));
  }
}

TEST_F(KernelEquivalence, RowTimesBlock) {
  for (std::size_t p : {1u, 2u, 3u, 4u, 5u, 8u, 12u}) {
    for (std::size_t n : {1u, 9u, 100u, 333u}) {
      const auto row = random_vector(n, 10 * p + n);
      const auto block = random_vector(n * p, 20 * p + n);
      std::vector<double> o1(p), o2(p);
      scalar.row_times_block(row.data(), n, block.data(), p, o1.data());
      simd().row_times_block(row.data(), n, block.data(), p, o2.data());
      for (std::size_t k = 0; k < p; ++k) {
        EXPECT_NEAR(o1[k], o2[k], tol_for(n)) << "p=" << p << " n=" << n;
      }
    }
  }
}

TEST(Kernels, ScalarReferenceValues) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, -5, 6};
  const auto& t = kernels::table(Backend::Scalar);
  EXPECT_EQ(t.dot(a.data(), b.data(), 3), 12.0);
  EXPECT_EQ(t.sum(b.data(), 3), 5.0);
  const std::vector<double> block{1, 0, 0, 1, 1, 1};  // 3 x 2
  std::vector<double> out(2);
  t.row_times_block(a.data(), 3, block.data(), 2, out.data());
  EXPECT_EQ(out[0], 4.0);
  EXPECT_EQ(out[1], 5.0);
}

TEST(Kernels, BackendSelection) {
  const Backend before = kernels::active_backend();
  kernels::set_backend(Backend::Scalar);
  EXPECT_EQ(kernels::active_backend(), Backend::Scalar);
  const std::vector<double> a{1, 2, 3, 4, 5};
  EXPECT_EQ(kernels::dot(a, a), 55.0);
  if (!kernels::backend_available(Backend::Avx2)) {
    EXPECT_ANY_THROW(kernels::set_backend(Backend::Avx2));
  }
  kernels::set_backend(before);
  EXPECT_EQ(kernels::backend_name(Backend::Scalar), "scalar");
}
