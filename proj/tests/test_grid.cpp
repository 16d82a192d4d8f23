#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "nnlab/grid.hpp"
#include "nnlab/rng.hpp"
#include "nnlab/fit.hpp"

using namespace nnlab;

namespace {

GridField random_field(std::vector<std::size_t> shape, std::vector<double> box,
                       std::uint64_t seed) {
  GridField g(std::move(shape), std::move(box));
  Rng rng(seed);
  for (auto& z : g.v) z = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return g;
}

}  // namespace

// ============================================================================
// FFT basics
// ============================================================================

TEST_CASE("fft: inverse undoes forward") {
  for (auto shape : {std::vector<std::size_t>{256}, std::vector<std::size_t>{32, 64}}) {
    GridField u = random_field(shape, std::vector<double>(shape.size(), 1.0), 7);
    GridField v = ifft(fft(u));
    double err = 0.0;
    for (std::size_t i = 0; i < u.total(); ++i) err = std::max(err, std::abs(u.v[i] - v.v[i]));
    CHECK(err < 1e-12);
  }
}

TEST_CASE("fft: single mode lands in a single bin") {
  const std::size_t n = 64;
  const double L = 2.0;
  GridField u({n}, {L});
  const long k = 5;
  for (std::size_t i = 0; i < n; ++i) {
    double x = L * double(i) / double(n);
    u.v[i] = std::exp(cplx(0.0, kTwoPi * double(k) * x / L));
  }
  GridField s = fft(u);
  for (std::size_t i = 0; i < n; ++i) {
    double expect = (long(i) == k) ? double(n) : 0.0;
    CHECK(std::abs(s.v[i] - cplx(expect, 0.0)) < 1e-9);
  }
}

TEST_CASE("grid: frequency map is the signed lattice") {
  GridField u({8}, {4.0});
  CHECK(u.freq(0, 0) == doctest::Approx(0.0));
  CHECK(u.freq(0, 1) == doctest::Approx(kTwoPi / 4.0));
  CHECK(u.freq(0, 7) == doctest::Approx(-kTwoPi / 4.0));
  CHECK(u.freq(0, 4) == doctest::Approx(-kTwoPi * 4.0 / 4.0));
  CHECK(u.nyquist() == doctest::Approx(kPi * 8.0 / 4.0));
}

// ============================================================================
// Spectral calculus
// ============================================================================

TEST_CASE("derivative: exact on trigonometric polynomials") {
  const std::size_t n = 128;
  const double L = 2.0 * kPi;
  GridField u({n}, {L});
  for (std::size_t i = 0; i < n; ++i) {
    double x = L * double(i) / double(n);
    u.v[i] = std::sin(3.0 * x) + 0.5 * std::cos(7.0 * x);
  }
  GridField du = derivative(u, 0);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = L * double(i) / double(n);
    double expect = 3.0 * std::cos(3.0 * x) - 3.5 * std::sin(7.0 * x);
    err = std::max(err, std::abs(du.v[i] - cplx(expect, 0.0)));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("derivative: mixed partials commute in 2-D") {
  GridField u = random_field({32, 32}, {1.0, 3.0}, 11);
  // kill the Nyquist rows so both orders see identical content
  GridField a = derivative(derivative(u, 0), 1);
  GridField b = derivative(derivative(u, 1), 0);
  double err = 0.0;
  for (std::size_t i = 0; i < u.total(); ++i) err = std::max(err, std::abs(a.v[i] - b.v[i]));
  CHECK(err < 1e-7);
}

TEST_CASE("apply_multiplier: unit multiplier is the identity") {
  GridField u = random_field({16, 16}, {1.0, 1.0}, 3);
  GridField v = apply_multiplier(u, [](std::span<const double>) { return cplx(1.0, 0.0); });
  double err = 0.0;
  for (std::size_t i = 0; i < u.total(); ++i) err = std::max(err, std::abs(u.v[i] - v.v[i]));
  CHECK(err < 1e-13);
}

TEST_CASE("apply_multiplier: |xi|^2 symbol matches minus Laplacian") {
  const std::size_t n = 64;
  const double L = 2.0 * kPi;
  GridField u({n, n}, {L, L});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double x = L * double(i) / double(n), y = L * double(j) / double(n);
      u.v[i * n + j] = std::sin(2.0 * x) * std::cos(5.0 * y);
    }
  GridField v = apply_multiplier(u, [](std::span<const double> xi) {
    return cplx(xi[0] * xi[0] + xi[1] * xi[1], 0.0);
  });
  double err = 0.0;
  for (std::size_t i = 0; i < u.total(); ++i)
    err = std::max(err, std::abs(v.v[i] - (4.0 + 25.0) * u.v[i]));
  CHECK(err < 1e-9);
}

// ============================================================================
// Resampling and interpolation
// ============================================================================

TEST_CASE("spectral_upsample: reproduces trig polynomials on the fine grid") {
  const std::size_t n = 32;
  const double L = 1.0;
  GridField u({n, n}, {L, L});
  auto f = [&](double x, double y) {
    return std::sin(kTwoPi * 3.0 * x) * std::cos(kTwoPi * 2.0 * y) + 0.25;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      u.v[i * n + j] = f(L * double(i) / n, L * double(j) / n);
  GridField fine = spectral_upsample(u, 2);
  REQUIRE(fine.shape[0] == 2 * n);
  double err = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      double x = L * double(i) / (2 * n), y = L * double(j) / (2 * n);
      err = std::max(err, std::abs(fine.v[i * 2 * n + j] - cplx(f(x, y), 0.0)));
    }
  CHECK(err < 1e-11);
}

TEST_CASE("spectral_upsample: keeps every coarse sample, Nyquist included") {
  // rough random data has an unmatched Nyquist mode; the symmetric split
  // must still reproduce the coarse samples exactly at coarse nodes
  GridField u = random_field({16, 8}, {1.0, 2.0}, 71);
  GridField fine = spectral_upsample(u, 2);
  double err = 0.0;
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      err = std::max(err, std::abs(fine.v[(2 * i) * 16 + 2 * j] - u.v[i * 8 + j]));
  CHECK(err < 1e-12);
}

TEST_CASE("interpolant: close to the closed form off the lattice") {
  const std::size_t n = 256;
  const double L = 1.0;
  GridField u({n}, {L});
  auto f = [&](double x) { return std::sin(kTwoPi * 3.0 * x + 0.3) + 0.2 * std::cos(kTwoPi * 5.0 * x); };
  for (std::size_t i = 0; i < n; ++i) u.v[i] = f(L * double(i) / n);
  Interpolant itp(u);
  Rng rng(19);
  double err = 0.0;
  for (int t = 0; t < 200; ++t) {
    double x = rng.uniform(0.0, 1.0);
    std::vector<double> p{x};
    err = std::max(err, std::abs(itp.eval(p) - cplx(f(x), 0.0)));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("interpolant: periodic wrap is seamless at the box edge") {
  const std::size_t n = 64;
  GridField u = random_field({n}, {2.0}, 23);
  Interpolant itp(u);
  std::vector<double> a{1.999999}, b{-0.000001};
  CHECK(std::abs(itp.eval(a) - itp.eval(b)) < 1e-4);
}

// ============================================================================
// Norms, means, bookkeeping
// ============================================================================

TEST_CASE("grid: sup norm, masked sup norm and mean") {
  GridField u({4}, {1.0});
  u.v = {cplx(1, 0), cplx(-3, 0), cplx(0, 2), cplx(0.5, 0.5)};
  CHECK(u.sup_norm() == doctest::Approx(3.0));
  std::vector<std::uint8_t> mask{1, 0, 1, 1};
  CHECK(u.sup_norm_masked(mask) == doctest::Approx(2.0));
  CHECK(u.mean().real() == doctest::Approx((1.0 - 3.0 + 0.0 + 0.5) / 4.0));
}

TEST_CASE("grid: validate rejects bad shapes") {
  CHECK_THROWS(GridField({3}, {1.0}).validate());        // not a power of two
  CHECK_THROWS(GridField({8}, {-1.0}).validate());       // negative box
  CHECK_NOTHROW(GridField({8, 16}, {1.0, 2.0}).validate());
}

TEST_CASE("multiindex: row-major walk covers the grid once") {
  std::vector<std::size_t> shape{2, 3};
  std::vector<std::vector<std::size_t>> seen;
  for (MultiIndex mi(shape); !mi.done(); mi.next()) seen.push_back(*mi);
  REQUIRE(seen.size() == 6);
  CHECK(seen.front() == std::vector<std::size_t>{0, 0});
  CHECK(seen[1] == std::vector<std::size_t>{0, 1});
  CHECK(seen.back() == std::vector<std::size_t>{1, 2});
}

// ============================================================================
// Deterministic RNG and slope fitting
// ============================================================================

TEST_CASE("rng: reproducible streams, fork decorrelates") {
  Rng a(42), b(42), c = Rng(42).fork(1);
  bool same = true, differ = false;
  for (int i = 0; i < 64; ++i) {
    double x = a.uniform(), y = b.uniform(), z = c.uniform();
    same = same && (x == y);
    differ = differ || (x != z);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("fit: recovers an exact affine law and a dyadic decay") {
  std::vector<double> x{0, 1, 2, 3, 4}, y;
  for (double t : x) y.push_back(-2.5 * t + 0.75);
  SlopeFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-2.5));
  CHECK(f.intercept == doctest::Approx(0.75));
  CHECK(f.r2 == doctest::Approx(1.0));

  std::vector<double> lv{2, 3, 4, 5};
  std::vector<double> val;
  for (double j : lv) val.push_back(3.0 * std::pow(2.0, -1.5 * j));
  SlopeFit g = fit_log2_slope(lv, val);
  CHECK(g.slope == doctest::Approx(-1.5));
}
