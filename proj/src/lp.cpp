#include "nnlab/lp.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "nnlab/bump.hpp"
#include "nnlab/fit.hpp"

namespace nnlab {

namespace {

double smooth_h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// C-infinity step: 0 at 0, 1 at 1, monotone.
double smooth_step(double x) {
  double a = smooth_h(x), b = smooth_h(1.0 - x);
  return a / (a + b);
}

double norm2(std::span<const double> xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return std::sqrt(s);
}

}  // namespace

void SpectralProfile::validate(double rho_max, std::size_t samples) const {
  double prev = f(0.0);
  for (std::size_t i = 0; i <= samples; ++i) {
    double rho = rho_max * double(i) / double(samples);
    double val = f(rho);
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("SpectralProfile: " + why + " at rho = " +
                                  std::to_string(rho));
    };
    if (!(val >= -1e-15 && val <= 1.0 + 1e-15)) fail("value outside [0,1]");
    if (rho <= 1.0 && std::abs(val - 1.0) > 1e-12) fail("plateau broken");
    if (rho >= 2.0 && std::abs(val) > 1e-12) fail("support exceeds 2");
    if (val > prev + 1e-12) fail("profile increases");
    prev = val;
  }
}

SpectralProfile classical_profile() {
  return SpectralProfile{[](double rho) {
    if (rho <= 1.0) return 1.0;
    if (rho >= 2.0) return 0.0;
    return 1.0 - smooth_step(rho - 1.0);
  }};
}

double LPFamily::weight(int level, double rho) const {
  if (level < 0) throw std::invalid_argument("LPFamily: negative level");
  if (level == 0) return profile(rho);
  double sc = std::ldexp(1.0, -level);
  return profile(sc * rho) - profile(2.0 * sc * rho);
}

int LPFamily::max_usable_level(const GridField& g) const {
  double ny = g.nyquist();
  int j = 0;
  while (j + 1 <= max_level && std::ldexp(1.0, j + 2) <= ny) ++j;
  return j;
}

void LPFamily::validate_on_grid(const GridField& g) const {
  std::vector<double> xi(g.dim());
  for (MultiIndex mi(g.shape); !mi.done(); mi.next()) {
    const auto& idx = *mi;
    for (std::size_t a = 0; a < g.dim(); ++a) xi[a] = g.freq(a, idx[a]);
    double rho = norm2(xi);
    double sum = 0.0;
    for (int j = 0; j <= max_level; ++j) {
      double w = weight(j, rho);
      if (w < -1e-12 || w > 1.0 + 1e-12)
        throw std::runtime_error("LPFamily: weight outside [0,1] at level " +
                                 std::to_string(j));
      if (j >= 1 && (rho <= std::ldexp(1.0, j - 1) + 1e-14 ||
                     rho >= std::ldexp(1.0, j + 1) - 1e-14) &&
          std::abs(w) > 1e-12)
        throw std::runtime_error("LPFamily: band support violated at level " +
                                 std::to_string(j));
      sum += w;
    }
    double expect = profile(std::ldexp(rho, -max_level));
    if (std::abs(sum - expect) > 1e-11)
      throw std::runtime_error("LPFamily: telescoping partition violated");
  }
}

LPFamily build_classical_family(int max_level) {
  if (max_level < 0) throw std::invalid_argument("build_classical_family: level < 0");
  SpectralProfile p = classical_profile();
  p.validate();
  return LPFamily{p, max_level};
}

GridField dyadic_convolve(const GridField& u, const LPFamily& fam, int level) {
  if (level < 0 || level > fam.max_level)
    throw std::invalid_argument("dyadic_convolve: level outside family");
  double need = level == 0 ? 2.0 : std::ldexp(1.0, level + 1);
  if (need > u.nyquist() * (1.0 + 1e-12))
    throw std::runtime_error("dyadic_convolve: resolution exhausted at level " +
                             std::to_string(level));
  return apply_multiplier(u, [&](std::span<const double> xi) {
    return cplx(fam.weight(level, norm2(xi)), 0.0);
  });
}

GridField lowpass(const GridField& u, const LPFamily& fam, int level) {
  if (level < 0) throw std::invalid_argument("lowpass: negative level");
  double sc = std::ldexp(1.0, -level);
  return apply_multiplier(u, [&](std::span<const double> xi) {
    return cplx(fam.profile(sc * norm2(xi)), 0.0);
  });
}

std::function<cplx(double)> bump_derivative_hat(int m) {
  if (m < 0 || m > 12) throw std::invalid_argument("bump_derivative_hat: order");
  return [m](double xi) {
    cplx p(1.0, 0.0);
    for (int i = 0; i < m; ++i) p *= cplx(0.0, xi);
    return p * bump_transform(xi);
  };
}

CrossDecayReport measure_cross_decay(const std::function<cplx(double)>& eta_hat,
                                     const std::function<cplx(double)>& theta_hat,
                                     int weight_power, int max_offset,
                                     int base_level, int fit_skip) {
  // The convolution eta_j * theta_k is synthesized from the exact transforms
  // on a periodic grid; alias error is the transform tail beyond Nyquist,
  // which is transcendentally small for bump-type generators.
  const std::size_t n = 1 << 18;
  const double L = 8.0;
  const double h = L / double(n);
  const int k = base_level;
  CrossDecayReport rep;
  std::vector<double> off, lg;
  for (int o = 0; o <= max_offset; ++o) {
    int j = k + o;
    GridField g({n}, {L});
    double sj = std::ldexp(1.0, -j), sk = std::ldexp(1.0, -k);
    for (std::size_t i = 0; i < n; ++i) {
      double xi = g.freq(0, i);
      g.v[i] = eta_hat(sj * xi) * theta_hat(sk * xi) * (double(n) / L);
    }
    fft_inplace(g, 1);
    double wscale = std::ldexp(1.0, k);
    double integral = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double x = double(i) * h;
      double xs = x > L / 2 ? x - L : x;
      integral += std::abs(g.v[i]) *
                  std::pow(1.0 + wscale * std::abs(xs), double(weight_power)) * h;
    }
    rep.rows.push_back({j, k, integral});
    if (o >= fit_skip) {
      off.push_back(double(o));
      lg.push_back(std::log2(std::max(integral, 1e-300)));
    }
  }
  SlopeFit f = fit_line(off, lg);
  rep.slope_bits_per_level = f.slope;
  rep.r2 = f.r2;
  return rep;
}

}  // namespace nnlab
