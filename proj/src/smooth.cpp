#include "nnlab/smooth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nnlab {

namespace {

cplx ipow(cplx z, int k) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// 1 - (1 - Phi(2^-N xi))^(2m): the truncated reproduction sum of the cone
// pair in closed form, by its telescoping identity.
cplx merged_cone_symbol(const ConePair& pair, int N, std::span<const double> xi) {
  const double sc = std::ldexp(1.0, -N);
  std::vector<double> z(xi.size());
  for (std::size_t d = 0; d < xi.size(); ++d) z[d] = sc * xi[d];
  const cplx w = cplx(1.0, 0.0) - pair.base_hat(z);
  return cplx(1.0, 0.0) - ipow(w, 2 * (pair.moment_order + 1));
}

bool is_signed_permutation(const std::vector<double>& a) {
  if (a.size() != 4) return false;
  auto one = [](double x) { return std::abs(std::abs(x) - 1.0) < 1e-14; };
  auto zero = [](double x) { return std::abs(x) < 1e-14; };
  const bool diag = one(a[0]) && zero(a[1]) && zero(a[2]) && one(a[3]);
  const bool anti = zero(a[0]) && one(a[1]) && one(a[2]) && zero(a[3]);
  return diag || anti;
}

void require_glued(const SmoothingOperator& op, const char* who) {
  if (op.backend != SmoothBackend::glued)
    throw std::invalid_argument(std::string(who) + ": glued backend only");
}

void check_level(const SmoothingOperator& op, const SmoothingLevel& level,
                 const GridField& u) {
  if (level.N < 0) throw std::invalid_argument("smooth_apply: negative level");
  const bool wants_family = op.backend != SmoothBackend::cone;
  const bool wants_pair = op.backend != SmoothBackend::multiplier;
  if (wants_family && level.N > op.family.max_usable_level(u))
    throw std::runtime_error("smooth_apply: resolution exhausted at level " +
                             std::to_string(level.N));
  if (wants_pair && level.N > op.pair.levels)
    throw std::runtime_error("smooth_apply: resolution exhausted at level " +
                             std::to_string(level.N));
}

}  // namespace

SmoothingLevel make_smoothing_level(int N, const LPFamily& fam) {
  if (N < 0) throw std::invalid_argument("make_smoothing_level: N must be >= 0");
  if (N + 1 > fam.max_level)
    throw std::invalid_argument(
        "make_smoothing_level: N + 1 exceeds the family's max level");
  return SmoothingLevel{std::ldexp(1.0, -N), N};
}

SmoothingOperator make_multiplier_smoother(const LPFamily& fam) {
  SmoothingOperator op;
  op.backend = SmoothBackend::multiplier;
  op.family = fam;
  return op;
}

SmoothingOperator make_cone_smoother(const ConePair& pair) {
  SmoothingOperator op;
  op.backend = SmoothBackend::cone;
  op.pair = pair;
  return op;
}

SmoothingOperator make_glued_smoother(const LPFamily& fam, const ConePair& pair,
                                      const GraphDomain& dom) {
  if (pair.dim != 2)
    throw std::invalid_argument("make_glued_smoother: chart pieces need a 2-d pair");
  const double defect = dom.chart.partition_defect(dom.mask);
  if (!(defect <= 1e-8))
    throw std::invalid_argument(
        "make_glued_smoother: chart partition fails its exactness invariant");
  for (const Chart& c : dom.chart.charts)
    if (!is_signed_permutation(c.phi_linear))
      throw std::invalid_argument(
          "make_glued_smoother: chart linear part is not a signed permutation");
  SmoothingOperator op;
  op.backend = SmoothBackend::glued;
  op.family = fam;
  op.pair = pair;
  op.chart = dom.chart;
  op.closure = dom.mask;
  return op;
}

DomainChart band_limited_chart(const DomainChart& chart, double cut) {
  if (!(cut > 0.0))
    throw std::invalid_argument("band_limited_chart: cut must be positive");
  const SpectralProfile prof = classical_profile();
  DomainChart out = chart;
  out.chi0 = chart.chi0.like_zero();
  for (auto& z : out.chi0.v) z = 1.0;
  for (std::size_t nu = 0; nu < chart.charts.size(); ++nu) {
    GridField chi = apply_multiplier(chart.charts[nu].chi,
                                     [&](std::span<const double> xi) {
                                       double r2 = 0.0;
                                       for (double c : xi) r2 += c * c;
                                       return cplx(prof(std::sqrt(r2) / cut), 0.0);
                                     });
    out.chi0 -= pointwise_mul(chi, chi);
    out.charts[nu].chi = std::move(chi);
  }
  return out;
}

GridField rychkov_extend(const GridField& f, const GraphDomain& dom,
                         const ConePair& pair, int top_level) {
  if (pair.dim != int(f.dim()))
    throw std::invalid_argument(
        "rychkov_extend: cone axis mismatch: pair dimension " +
        std::to_string(pair.dim) + " vs field dimension " + std::to_string(f.dim()));
  if (dom.mask.size() != f.total())
    throw std::invalid_argument("rychkov_extend: domain mask does not fit the field");
  const int top = top_level < 0 ? pair.levels : top_level;
  if (top > pair.levels)
    throw std::invalid_argument("rychkov_extend: level outside pair");
  GridField acc = f.like_zero();
  for (int j = 0; j <= top; ++j) {
    GridField band = apply_multiplier(
        f, [&](std::span<const double> xi) { return pair.phi_hat(j, xi); });
    for (std::size_t i = 0; i < band.v.size(); ++i)
      if (!dom.mask[i]) band.v[i] = 0.0;
    acc += apply_multiplier(
        band, [&](std::span<const double> xi) { return pair.psi_hat(j, xi); });
  }
  return acc;
}

GridField glued_chart_smooth(const SmoothingOperator& op, const SmoothingLevel& level,
                             std::size_t chart_index, const GridField& g) {
  require_glued(op, "glued_chart_smooth");
  if (chart_index >= op.chart.charts.size())
    throw std::invalid_argument("glued_chart_smooth: chart index out of range");
  const std::vector<double>& a = op.chart.charts[chart_index].phi_linear;
  // Conjugation by x -> Ax + b turns the convolution into the one with the
  // rotated kernel, a multiplier with symbol m(A^T xi); the offset cancels.
  return apply_multiplier(g, [&](std::span<const double> xi) {
    const double eta[2] = {a[0] * xi[0] + a[2] * xi[1], a[1] * xi[0] + a[3] * xi[1]};
    return merged_cone_symbol(op.pair, level.N, eta);
  });
}

GridField smooth_apply(const SmoothingOperator& op, const SmoothingLevel& level,
                       const GridField& u) {
  check_level(op, level, u);
  switch (op.backend) {
    case SmoothBackend::multiplier:
      return lowpass(u, op.family, level.N);
    case SmoothBackend::cone:
      return apply_multiplier(u, [&](std::span<const double> xi) {
        return merged_cone_symbol(op.pair, level.N, xi);
      });
    case SmoothBackend::glued: {
      if (!u.same_layout(op.chart.chi0))
        throw std::invalid_argument("smooth_apply: field does not match the chart grid");
      GridField acc = lowpass(pointwise_mul(op.chart.chi0, u), op.family, level.N);
      for (std::size_t nu = 0; nu < op.chart.charts.size(); ++nu) {
        const GridField& chi = op.chart.charts[nu].chi;
        acc += pointwise_mul(chi,
                             glued_chart_smooth(op, level, nu, pointwise_mul(chi, u)));
      }
      return acc;
    }
  }
  throw std::logic_error("smooth_apply: unknown backend");
}

GridField smooth_remainder(const SmoothingOperator& op, const SmoothingLevel& level,
                           const GridField& u) {
  return u - smooth_apply(op, level, u);
}

GridField commutator_d_smooth(const SmoothingOperator& op, const SmoothingLevel& level,
                              const GridField& u, std::size_t axis, double declared_r,
                              std::string* warning) {
  if (axis >= u.dim()) throw std::invalid_argument("commutator_d_smooth: axis");
  if (declared_r <= 1.0 && warning)
    *warning = "commutator decay estimate not guaranteed for declared r <= 1";
  return derivative(smooth_apply(op, level, u), axis) -
         smooth_apply(op, level, derivative(u, axis));
}

GridField glued_commutator_terms(const SmoothingOperator& op,
                                 const SmoothingLevel& level, const GridField& u,
                                 std::size_t axis) {
  require_glued(op, "glued_commutator_terms");
  const GridField dchi0 = derivative(op.chart.chi0, axis);
  GridField g = pointwise_mul(dchi0, u);
  GridField acc = lowpass(g, op.family, level.N) - g;
  for (std::size_t nu = 0; nu < op.chart.charts.size(); ++nu) {
    const GridField& chi = op.chart.charts[nu].chi;
    const GridField dchi = derivative(chi, axis);
    GridField cu = pointwise_mul(chi, u);
    acc += pointwise_mul(dchi, glued_chart_smooth(op, level, nu, cu) - cu);
    GridField du = pointwise_mul(dchi, u);
    acc += pointwise_mul(chi, glued_chart_smooth(op, level, nu, du) - du);
  }
  return acc;
}

double fit_log2_slope(const std::vector<int>& levels,
                      const std::vector<double>& values) {
  if (levels.size() != values.size() || levels.size() < 2)
    throw std::invalid_argument("fit_log2_slope: need matching lists, >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = double(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(values[i] > 0.0))
      throw std::invalid_argument("fit_log2_slope: values must be positive");
    const double x = double(levels[i]);
    const double y = std::log2(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nnlab
