#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "sbiem/errors.hpp"
#include "sbiem/grid.hpp"

using namespace sbiem;

TEST(Grid, Geometry) {
  const Grid g(100.0, 8);
  EXPECT_DOUBLE_EQ(g.dx(), 12.5);
  EXPECT_DOUBLE_EQ(g.x(0), -50.0);
  EXPECT_DOUBLE_EQ(g.x(4), 0.0);
  EXPECT_DOUBLE_EQ(g.k(1), 2.0 * std::numbers::pi / 100.0);
  EXPECT_EQ(g.mode_index(4), -4);
  EXPECT_EQ(g.mode_index(7), -1);
  EXPECT_DOUBLE_EQ(g.k(7), -2.0 * std::numbers::pi / 100.0);
  const auto half = g.half_spectrum_k_abs();
  ASSERT_EQ(half.size(), 5u);
  EXPECT_DOUBLE_EQ(half.back(), std::numbers::pi / g.dx());
}

TEST(Grid, NearestSampleWraps) {
  const Grid g(100.0, 8);
  EXPECT_EQ(g.nearest_sample(0.0), 4u);
  EXPECT_EQ(g.nearest_sample(13.0), 5u);
  EXPECT_EQ(g.nearest_sample(-50.0), 0u);
  EXPECT_EQ(g.nearest_sample(49.0), 0u);  // wraps onto -50
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(Grid(1.0, 6), ConfigError);
  EXPECT_THROW(Grid(1.0, 1), ConfigError);
  EXPECT_THROW(Grid(0.0, 8), ConfigError);
  EXPECT_NO_THROW(Grid(1.0, 2));
}

TEST(Transform, SingleCosineMode) {
  const Grid g(10.0, 16);
  const SpectralTransform t(g);
  std::vector<double> f(16);
  for (std::size_t m = 0; m < 16; ++m) f[m] = std::cos(g.k(3) * g.x(m));
  const auto a = t.forward(f);
  for (std::size_t i = 0; i < 16; ++i) {
    const double expect = (i == 3 || i == 13) ? 0.5 : 0.0;
    EXPECT_NEAR(a[i].real(), expect, 1e-14) << i;
    EXPECT_NEAR(a[i].imag(), 0.0, 1e-14) << i;
  }
}

TEST(Transform, MatchesDirectSum) {
  const Grid g(7.0, 32);
  const SpectralTransform t(g);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  std::vector<double> f(32);
  for (auto& v : f) v = d(rng);
  const auto a = t.forward(f);
  for (std::size_t i = 0; i < 32; ++i) {
    Complex direct = 0.0;
    for (std::size_t m = 0; m < 32; ++m) direct += f[m] * std::exp(Complex(0.0, -g.k(i) * g.x(m)));
    direct /= 32.0;
    EXPECT_NEAR(std::abs(a[i] - direct), 0.0, 1e-13) << i;
  }
}

TEST(Transform, RoundTrip) {
  for (std::size_t n : {2u, 8u, 256u}) {
    const Grid g(3.0, n);
    const SpectralTransform t(g);
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> f(n);
    for (auto& v : f) v = d(rng);
    const auto back = t.inverse(t.forward(f));
    for (std::size_t m = 0; m < n; ++m) EXPECT_NEAR(back[m], f[m], 1e-14);

    std::vector<Complex> half(t.half_size());
    std::vector<double> out(n);
    t.forward_half(f, half);
    t.inverse_half(half, out);
    for (std::size_t m = 0; m < n; ++m) EXPECT_NEAR(out[m], f[m], 1e-14);
  }
}

TEST(Transform, Parseval) {
  const Grid g(1.0, 64);
  const SpectralTransform t(g);
  std::vector<double> f(64);
  for (std::size_t m = 0; m < 64; ++m) f[m] = std::exp(-std::pow(g.x(m) * 8.0, 2));
  const auto a = t.forward(f);
  double space = 0.0, spectrum = 0.0;
  for (double v : f) space += v * v;
  for (const auto& c : a) spectrum += std::norm(c);
  EXPECT_NEAR(space / 64.0, spectrum, 1e-14);
}

TEST(Transform, HalfSpectrumMagnitudesAgree) {
  const Grid g(2.0, 16);
  const SpectralTransform t(g);
  std::vector<double> f(16);
  for (std::size_t m = 0; m < 16; ++m) f[m] = std::sin(0.3 * m) + 0.1 * m;
  const auto full = t.forward(f);
  std::vector<Complex> half(t.half_size());
  t.forward_half(f, half);
  for (std::size_t i = 0; i < half.size(); ++i) EXPECT_NEAR(std::abs(half[i]), std::abs(full[i]), 1e-14);
}

TEST(Transform, InverseRejectsNonHermitian) {
  const Grid g(1.0, 8);
  const SpectralTransform t(g);
  std::vector<Complex> a(8, 0.0);
  a[1] = Complex(1.0, 0.0);  // no partner at -k
  EXPECT_THROW(t.inverse(a), SymmetryError);
}

TEST(Transform, ShapeMismatch) {
  const Grid g(1.0, 8);
  const SpectralTransform t(g);
  std::vector<double> f(4);
  EXPECT_THROW(t.forward(f), ShapeError);
}

TEST(Transform, ConcurrentUse) {
  const Grid g(1.0, 128);
  const SpectralTransform t(g);
  std::vector<double> f(128);
  for (std::size_t m = 0; m < 128; ++m) f[m] = std::cos(0.1 * m * m);
  const auto expect = t.forward(f);
  std::vector<std::jthread> pool;
  std::vector<int> ok(4, 0);
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      bool good = true;
      for (int r = 0; r < 50; ++r) good = good && t.forward(f) == expect;
      ok[w] = good;
    });
  }
  pool.clear();
  for (int v : ok) EXPECT_TRUE(v);
}
