#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nnlab/cone.hpp"
#include "nnlab/domain.hpp"
#include "nnlab/grid.hpp"
#include "nnlab/lp.hpp"

namespace nnlab {

/** Dyadic smoothing scale t = 2^-N. Quantizing t to powers of two removes
 * any interpolation ambiguity from the schedule. */
struct SmoothingLevel {
  double t = 1.0;
  int N = 0;
};

/** Checks N >= 0 and N + 1 <= fam.max_level, then sets t = 2^-N. */
SmoothingLevel make_smoothing_level(int N, const LPFamily& fam);

enum class SmoothBackend { multiplier, cone, glued };

/** Frequency truncation at dyadic scales, three ways.
 *
 * multiplier: lowpass by the family profile; the torus workhorse.
 * cone:       truncated reproduction of the cone pair through the closed
 *             form 1 - (1 - Phi(2^-N xi))^(2m); identical to summing the
 *             level products by the pair's exact telescoping identity, but
 *             free of the large cancellations the partial products carry.
 * glued:      S0(chi0 u) + sum_nu chi_nu S^nu(chi_nu u) over a domain
 *             chart, with S0 the multiplier lowpass and S^nu the cone
 *             smoothing conjugated by the chart map.
 *
 * The chart maps realized by graph domains are signed permutations plus a
 * translation. Conjugating a convolution by such a map is again a
 * convolution whose kernel is rotated by the linear part (the translation
 * cancels between the map and its inverse), so each S^nu acts as an exact
 * multiplier with symbol m(A^T xi). Chart conjugation therefore commutes
 * with spectral derivatives to machine precision on the grid. */
struct SmoothingOperator {
  SmoothBackend backend = SmoothBackend::multiplier;
  LPFamily family;                    // multiplier backend and glued interior
  ConePair pair;                      // cone backend and glued chart pieces
  DomainChart chart;                  // glued only
  std::vector<std::uint8_t> closure;  // glued only: partition-complete mask
};

SmoothingOperator make_multiplier_smoother(const LPFamily& fam);
SmoothingOperator make_cone_smoother(const ConePair& pair);

/** Glued operator over a graph domain. Requires an exact partition on the
 * domain closure and signed-permutation chart linear parts; anything else
 * would break grid-exact conjugation. */
SmoothingOperator make_glued_smoother(const LPFamily& fam, const ConePair& pair,
                                      const GraphDomain& dom);

/** Spectrally truncated copy of a glued partition, for scaling-law runs.
 * Chart cutoffs are band-limited with the classical profile at radius cut
 * (support <= 2 cut) and the interior piece is rebuilt as 1 - sum chi_nu^2,
 * so the partition stays exact to machine precision. For fixed C-infinity
 * cutoffs the continuum says (S_t - I)chi = O(t^inf), but exp-flat spectral
 * tails reach that regime only around 2^N ~ grid Nyquist; truncation makes
 * the smoothing levels decouple from the cutoff spectra exactly once the
 * active band of S_t clears cut, so measured decay rates reflect the field
 * being smoothed rather than the cutoffs. */
DomainChart band_limited_chart(const DomainChart& chart, double cut);

/** Universal extension from a graph domain:
 * sum_{j<=top} psi_j * (1_omega . (phi_j * f)).
 *
 * Per-level symbols are evaluated analytically at the grid frequencies,
 * which realizes each convolution exactly on grid trigonometric
 * polynomials; the per-level resolution gates of cone_convolve guard
 * continuum-fidelity claims about band content, not operator identities,
 * so they do not apply here. top_level < 0 selects the pair's full ladder. */
GridField rychkov_extend(const GridField& f, const GraphDomain& dom,
                         const ConePair& pair, int top_level = -1);

/** S_t u. Throws "resolution exhausted" when the level overflows what the
 * operator can represent on u's grid. */
GridField smooth_apply(const SmoothingOperator& op, const SmoothingLevel& level,
                       const GridField& u);

/** u - S_t u. */
GridField smooth_remainder(const SmoothingOperator& op, const SmoothingLevel& level,
                           const GridField& u);

/** The chart piece S^nu g of a glued operator (no cutoffs applied): the
 * cone smoothing conjugated by chart chart_index's map. */
GridField glued_chart_smooth(const SmoothingOperator& op, const SmoothingLevel& level,
                             std::size_t chart_index, const GridField& g);

/** [d_axis, S_t]u = d(S_t u) - S_t(d u), spectral derivative.
 *
 * declared_r documents the regularity the caller claims for u; the decay
 * estimate needs r > 1, and declaring r <= 1 records a warning instead of
 * failing. */
GridField commutator_d_smooth(const SmoothingOperator& op, const SmoothingLevel& level,
                              const GridField& u, std::size_t axis,
                              double declared_r = 2.0,
                              std::string* warning = nullptr);

/** The cutoff-boundary expression the glued commutator reduces to:
 *
 *   (S0-I)((d chi0)u) + sum_nu (d chi_nu)(S^nu-I)(chi_nu u)
 *                     + sum_nu chi_nu (S^nu-I)((d chi_nu)u).
 *
 * Matches commutator_d_smooth wherever the partition sums to one, up to
 * the aliasing of grid products. Glued backend only. */
GridField glued_commutator_terms(const SmoothingOperator& op,
                                 const SmoothingLevel& level, const GridField& u,
                                 std::size_t axis);

/** Least-squares slope of log2(values) against levels. Values must be
 * positive. */
double fit_log2_slope(const std::vector<int>& levels,
                      const std::vector<double>& values);

}  // namespace nnlab
