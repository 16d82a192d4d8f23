#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nnlab/grid.hpp"
#include "nnlab/lp.hpp"

namespace nnlab {

/** Result of a Holder-Zygmund norm estimate.
 *
 * Both backends include the plain sup term, so value >= sup|u| on the mask
 * whenever s > 0. levels span the dyadic separations (difference backend) or
 * the dyadic frequency bands (besov backend) that entered the sup. */
struct NormEstimate {
  double value = 0.0;
  std::string backend;
  int levels_lo = 0;
  int levels_hi = 0;
  std::vector<std::size_t> resolution;
};

/** sup |u| over mask samples; pass nullptr for the whole grid. */
double sup_masked(const GridField& u, const std::vector<std::uint8_t>* mask);

/** Finite-difference estimate of the Lambda^s norm.
 *
 * Three branches: first-difference quotients for 0 < s < 1, midpoint
 * second-difference quotients for integer part of the recursion at s = 1,
 * and for s > 1 the recursion value(s) = value(u, s-1) + sum_a
 * value(d_a u, s-1) on spectral gradients. Pair separations run over
 * axis-aligned dyadic magnitudes in [2*spacing, box/4]; with a mask, every
 * point a quotient touches (both endpoints, and the midpoint when s = 1)
 * must be masked in. Integer s is detected exactly, not by tolerance.
 * The s > 1 recursion differentiates the ambient periodic field even under
 * a mask: the restricted norm is that of an ambient function's restriction. */
NormEstimate zygmund_norm_diff(const GridField& u, double s,
                               const std::vector<std::uint8_t>* mask = nullptr);

/** Dyadic-band estimate max(sup|u|, max_j 2^{js} sup|lambda_j * u|), sups
 * over the mask when given. Levels run to the family's last grid-usable
 * band. The explicit sup|u| term makes the estimate comparable with the
 * difference backend at constant one instead of 1/(1-2^{-s}). */
NormEstimate zygmund_norm_besov(const GridField& u, double s, const LPFamily& fam,
                                const std::vector<std::uint8_t>* mask = nullptr);

/** Interpolation inequality |u|_{(1-theta)a+theta b} <= C |u|_a^{1-theta}
 * |u|_b^theta, evaluated with the dyadic-band backend. For that backend the
 * inequality holds with C = 1: each level obeys it exactly, and a sup of
 * products is at most the product of sups. */
struct ConvexityReport {
  double mid = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // mid / bound; 1 when both sides vanish
};
ConvexityReport check_convexity(const GridField& u, double a, double b, double theta,
                                const LPFamily& fam);

/** Periodic coordinate map x -> x + displacement(x). */
struct TorusMap {
  std::vector<GridField> disp;  // one component per axis, common layout

  /** Sample u(x + disp(x)) on u's grid through band-limited interpolation. */
  GridField compose(const GridField& u, std::size_t upsample = 4) const;
  /** 1 + max_a |disp_a|_r: the identity contributes unit gradient; its sup
   * is a box constant absorbed into the inequality constants. */
  double map_norm(double r, const LPFamily& fam) const;
};

/** Product and composition inequalities at exponent a, reported as measured
 * left/right sides and their ratios with all unspecified constants set to 1.
 *
 * product: |uv|_a vs |u|_a ||v||_eps + ||u||_eps |v|_a.
 * chain, a < 1:  |u o phi|_a vs |u|_a ||phi||_1^a.
 * chain, a = 1:  |u o phi|_1 vs |u|_1 (1 + ||phi||_{1+eps}^{1/(1+eps)}).
 * chain, a > 1:  |u o phi|_a vs |u|_a ||phi||_{1+eps}^{(1+2eps)/(1+eps)}
 *                + ||u||_{1+eps} |phi|_a + ||u||_0,
 * where |phi|_r is map_norm and the phi seminorm in the a > 1 display is
 * max_a |disp_a|_r (the identity part drops from the pure seminorm slot). */
struct ProductChainReport {
  double product_lhs = 0.0;
  double product_rhs = 0.0;
  double product_ratio = 0.0;
  double chain_lhs = 0.0;
  double chain_rhs = 0.0;
  double chain_ratio = 0.0;
};
ProductChainReport check_product_chain(const GridField& u, const GridField& v,
                                       const TorusMap& phi, double a, double eps,
                                       const LPFamily& fam);

}  // namespace nnlab
