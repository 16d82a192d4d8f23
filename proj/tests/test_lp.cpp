#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "nnlab/grid.hpp"
#include "nnlab/lp.hpp"
#include "nnlab/rng.hpp"

using namespace nnlab;

// ============================================================================
// Profile invariants
// ============================================================================

TEST_CASE("profile: classical profile satisfies plateau/support/monotonicity") {
  CHECK_NOTHROW(classical_profile().validate());
}

TEST_CASE("profile: violations are caught") {
  SpectralProfile wide{[](double r) { return r < 3.0 ? 1.0 : 0.0; }};
  CHECK_THROWS(wide.validate());
  SpectralProfile bumpy{[](double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 0.5 + 0.4 * std::sin(20.0 * r);  // not monotone
  }};
  CHECK_THROWS(bumpy.validate());
}

TEST_CASE("profile: smooth transition region, no flat spots at the seams") {
  auto p = classical_profile();
  CHECK(p(1.0) == doctest::Approx(1.0));
  CHECK(p(2.0) == doctest::Approx(0.0));
  CHECK(p(1.5) > 0.1);
  CHECK(p(1.5) < 0.9);
}

// ============================================================================
// Family structure on the lattice
// ============================================================================

TEST_CASE("family: telescoping partition and band supports hold on a grid") {
  GridField g({1024}, {2.0 * kPi});
  LPFamily fam = build_classical_family(7);
  CHECK(fam.max_usable_level(g) == 7);
  CHECK_NOTHROW(fam.validate_on_grid(g));

  GridField g2({64, 64}, {2.0 * kPi, 2.0 * kPi});
  LPFamily fam2 = build_classical_family(3);
  CHECK_NOTHROW(fam2.validate_on_grid(g2));
}

TEST_CASE("family: distant bands have exactly disjoint support") {
  LPFamily fam = build_classical_family(9);
  for (int j = 0; j <= 9; ++j)
    for (int k = j + 2; k <= 9; ++k) {
      double worst = 0.0;
      for (int i = 0; i <= 20000; ++i) {
        double rho = 1100.0 * double(i) / 20000.0;
        worst = std::max(worst, fam.weight(j, rho) * fam.weight(k, rho));
      }
      CHECK(worst == 0.0);
    }
}

TEST_CASE("family: adjacent bands do overlap") {
  LPFamily fam = build_classical_family(5);
  double best = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    double rho = 70.0 * double(i) / 20000.0;
    best = std::max(best, fam.weight(3, rho) * fam.weight(4, rho));
  }
  CHECK(best > 0.01);
}

// ============================================================================
// Band projection against a direct oracle
// ============================================================================

TEST_CASE("dyadic_convolve: matches the mode-by-mode oracle on trig data") {
  const std::size_t n = 256;
  const double L = 2.0 * kPi;  // modes sit at integer frequencies
  GridField u({n}, {L});
  struct Mode { double k, re, im; };
  std::vector<Mode> modes{{1, 0.7, 0.0}, {3, -0.2, 0.4}, {9, 1.1, -0.3}, {40, 0.5, 0.9}};
  for (std::size_t i = 0; i < n; ++i) {
    double x = L * double(i) / double(n);
    cplx acc(0.0, 0.0);
    for (const auto& m : modes) acc += cplx(m.re, m.im) * std::exp(cplx(0.0, m.k * x));
    u.v[i] = acc;
  }
  LPFamily fam = build_classical_family(6);
  for (int level : {0, 2, 3, 5}) {
    GridField bl = dyadic_convolve(u, fam, level);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double x = L * double(i) / double(n);
      cplx acc(0.0, 0.0);
      for (const auto& m : modes)
        acc += fam.weight(level, m.k) * cplx(m.re, m.im) * std::exp(cplx(0.0, m.k * x));
      err = std::max(err, std::abs(bl.v[i] - acc));
    }
    CHECK(err < 1e-11);
  }
}

TEST_CASE("dyadic_convolve: bands add up to the low pass") {
  GridField u({512}, {2.0 * kPi});
  Rng rng(77);
  for (auto& z : u.v) z = cplx(rng.normal(), rng.normal());
  LPFamily fam = build_classical_family(6);
  GridField sum = u.like_zero();
  for (int j = 0; j <= 6; ++j) sum += dyadic_convolve(u, fam, j);
  GridField lp = lowpass(u, fam, 6);
  double err = 0.0;
  for (std::size_t i = 0; i < u.total(); ++i) err = std::max(err, std::abs(sum.v[i] - lp.v[i]));
  CHECK(err < 1e-10);
}

TEST_CASE("dyadic_convolve: refuses bands beyond the lattice") {
  GridField u({32}, {2.0 * kPi});  // Nyquist 16
  LPFamily fam = build_classical_family(10);
  CHECK_NOTHROW(dyadic_convolve(u, fam, 3));  // band [4,16]
  try {
    dyadic_convolve(u, fam, 4);  // band [8,32] spills
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("resolution exhausted") != std::string::npos);
  }
}

// ============================================================================
// Weighted cross-convolution decay (almost orthogonality, quantitative)
// ============================================================================

TEST_CASE("cross decay: vanishing moments buy geometric decay in |j-k|") {
  auto eta = bump_derivative_hat(4);   // four vanishing moments
  auto theta = bump_derivative_hat(0);
  CrossDecayReport rep = measure_cross_decay(eta, theta, 2, 8, 3, 2);
  REQUIRE(rep.rows.size() >= 9);
  CHECK(rep.slope_bits_per_level < -3.0);
  CHECK(rep.r2 > 0.95);

  auto flat = bump_derivative_hat(0);  // no vanishing moments: no decay
  CrossDecayReport ctrl = measure_cross_decay(flat, theta, 2, 8, 3, 2);
  CHECK(ctrl.slope_bits_per_level > -0.8);
}
