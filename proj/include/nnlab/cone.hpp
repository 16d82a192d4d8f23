#pragma once

#include "nnlab/grid.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nnlab {

/** Tensor-product bump atom: center c, per-axis radius rho, weight coeff.
 * The profile on each axis is the standard bump normalized to unit integral,
 * so a unit-coefficient atom integrates to one for any radius. */
struct Atom {
  std::vector<double> c;
  std::vector<double> rho;
  double coeff = 1.0;
};

/** Finite sum of atoms with closed-form transform and moments. */
struct AtomKernel {
  std::vector<Atom> atoms;

  cplx hat(std::span<const double> xi) const;
  double value(std::span<const double> x) const;
  /** Exact moment integral x^alpha against the kernel. */
  double moment(std::span<const std::size_t> alpha) const;
  /** L1 mass by midpoint quadrature over the support box. */
  double mass_l1(std::size_t quad_per_axis = 512) const;
  /** Mass outside the cone {x_d < -|x'|, x_d < -depth}, same quadrature; the
   * supports are placed inside the cone by construction, evaluated as a
   * check. */
  double mass_outside_cone(double depth, std::size_t quad_per_axis = 512) const;
  /** Largest |xi| along coordinate rays where |hat| exceeds tol times the
   * transform's peak magnitude. */
  double spectral_extent(double tol = 1e-2) const;
};

/** Analysis/synthesis convolution pair supported in the downward cone
 * {x_d < -|x'|}.
 *
 * Both families come from one generating atom g through its transform
 * Phi = g^. With m = moment_order + 1 and, per level, x = 1 - Phi(z),
 * y = 1 - Phi(z/2):
 *
 *   phi0^ = Phi              psi0^ = sum_{i<2m} (1 - Phi)^i
 *   phi1^ = x^m - y^m        psi1^ = x^m + y^m
 *
 * where level j >= 1 evaluates the level-one symbols at z = 2^{-(j-1)} xi.
 * Telescoping gives the exact identity
 *
 *   phi0^ psi0^ + sum_{j=1}^{J} (phi1^ psi1^)(2^{-(j-1)} xi)
 *       = 1 - (1 - Phi(2^{-J} xi))^{2m},
 *
 * so the reproduction defect over the resolved band is a pure truncation
 * term; its measured sup is recorded in repro_budget. phi1 and psi1 have
 * vanishing moments through moment_order exactly, and the level-0 product
 * psi0 * phi0 matches the moments of the identity through level0_flat_order
 * = 2 moment_order + 1. In x space every kernel is a combination of
 * convolution powers of (dilates of) g, hence supported in the closed cone:
 * sums of cone points stay in the cone. psi0 and psi1 additionally carry an
 * exact multiple of the identity operator (delta0, delta1) sitting at the
 * cone vertex; it is kept explicit and handled in closed form. The price of
 * one-sided support is kernel mass that grows like 2^{2m}; it is reported,
 * not hidden, in tv_mass0/tv_mass1. */
struct ConePair {
  int dim = 1;
  int moment_order = 8;
  int levels = 12;
  double scale = 1.0;  // global dilation of the generating atom
  Atom base;           // generating cone atom, unit integral
  double delta0 = 0.0;
  double delta1 = 0.0;
  int level0_flat_order = 0;

  /** Phi, the transform of the generating atom. */
  cplx base_hat(std::span<const double> xi) const;
  cplx phi_hat(int level, std::span<const double> xi) const;
  cplx psi_hat(int level, std::span<const double> xi) const;

  double repro_budget = 0.0;    // sup |partition - 1| over the resolved band
  double resolved_band = 0.0;   // frequency range the truncation covers
  double band_hi = 0.0;         // meaningful band of the analysis generator
  double reach0 = 0.0;          // x-space support depth of level-0 kernels
  double reach1 = 0.0;          // same for the level-1 generators
  double achieved_moment_residual = 0.0;  // relative to largest term
  double cone_mass_defect = 0.0;          // measured by grid reconstruction
  double tv_mass0 = 0.0;        // |psi0|_1 bound from the expansion
  double tv_mass1 = 0.0;        // |psi1|_1 bound from the expansion

  /** A level is usable on a grid when its spectral band fits under the
   * Nyquist frequency and its kernel support fits in half the box (no torus
   * wrap of the one-sided reads). */
  bool level_resolvable(int level, const GridField& g) const;
  int max_resolvable_level(const GridField& g) const;
};

ConePair build_cone_pair(int dim, int moment_order = 8, int level_count = 12,
                         double scale = 1.0);

/** Convolution with the level-j analysis (phi) or synthesis (psi) kernel,
 * as an exact spectral multiplier on the grid. Throws when the level is not
 * resolvable. */
GridField cone_convolve_phi(const ConePair& pair, int level, const GridField& u);
GridField cone_convolve_psi(const ConePair& pair, int level, const GridField& u);

/** One-sided extension: sum_j psi_j * (mask . (phi_j * u)) for levels
 * 0..top_level. With the cone pointing down, the value at x only reads u
 * above x; masking to the domain makes the result independent of u outside
 * it wherever the reads stay interior. */
GridField cone_extend(const ConePair& pair, const GridField& u,
                      const std::vector<std::uint8_t>& inside, int top_level);

/** Truncated reproduction sum_{j<=top} psi_j * phi_j * u as one merged
 * multiplier; equals the identity up to the recorded truncation defect on
 * resolvable frequencies. */
GridField cone_smooth(const ConePair& pair, const GridField& u, int top_level);

}  // namespace nnlab
