#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nnlab/grid.hpp"

namespace nnlab {

/** Radial Fourier-side profile: 1 on [0,1], 0 on [2,inf), in [0,1] and
 * non-increasing in between. */
struct SpectralProfile {
  std::function<double(double)> f;

  double operator()(double rho) const { return f(rho); }
  /** Dense radial check of plateau/support/monotonicity; throws naming the
   * first violating radius. */
  void validate(double rho_max = 4.0, std::size_t samples = 8192) const;
};

/** Smooth-step profile built from exp(-1/x) glue. */
SpectralProfile classical_profile();

/** Dyadic multiplier family: weight(0) = profile(|xi|), and for j >= 1
 * weight(j) = profile(2^-j |xi|) - profile(2^-(j-1) |xi|). */
struct LPFamily {
  SpectralProfile profile;
  int max_level = 0;

  double weight(int level, double rho) const;
  /** Largest level whose band [2^(j-1), 2^(j+1)] is inside the grid Nyquist. */
  int max_usable_level(const GridField& g) const;
  /** Telescoping partition and band-support checks on the grid lattice. */
  void validate_on_grid(const GridField& g) const;
};

LPFamily build_classical_family(int max_level);

/** Band projection lambda_j * u. Throws "resolution exhausted" when the
 * band is not representable on the grid. */
GridField dyadic_convolve(const GridField& u, const LPFamily& fam, int level);

/** Low-pass sum_{j<=J} lambda_j * u = profile(2^-J |xi|) multiplier. */
GridField lowpass(const GridField& u, const LPFamily& fam, int level);

/** One row of the weighted cross-convolution decay experiment. */
struct CrossDecayRow {
  int j, k;
  double integral;  // int |eta_j * theta_k| (1 + 2^k |x|)^N dx, j = k + offset
};

struct CrossDecayReport {
  std::vector<CrossDecayRow> rows;
  double slope_bits_per_level;  // fitted on log2(integral) vs j - k
  double r2 = 0.0;
};

/** Measures int |eta_j * theta_k| (1+2^k|x|)^N dx for j = k + 0..max_offset
 * with k = base_level fixed, and fits the decay rate on offsets >= fit_skip
 * (small offsets are preasymptotic). The convolution is synthesized from the
 * analytic transforms eta_hat, theta_hat (eta_hat_j(xi) = eta_hat(2^-j xi)),
 * so vanishing moments of eta are exact: the expected rate is -(number of
 * vanishing moments) bits per level. */
CrossDecayReport measure_cross_decay(const std::function<cplx(double)>& eta_hat,
                                     const std::function<cplx(double)>& theta_hat,
                                     int weight_power, int max_offset,
                                     int base_level = 3, int fit_skip = 1);

/** Transform of the m-th derivative of the normalized standard bump:
 * (i xi)^m B(xi). m = 0 is the bump itself (unit integral); m >= 1 has
 * exactly m vanishing moments. */
std::function<cplx(double)> bump_derivative_hat(int m);

}  // namespace nnlab
