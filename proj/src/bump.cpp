#include "nnlab/bump.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nnlab/grid.hpp"

namespace nnlab {

namespace {

struct BumpTable {
  static constexpr double kDs = 2.0 * kPi / 512.0;
  std::vector<double> bt;   // B(k * kDs)
  std::vector<double> mom;  // m_k
  double w_int = 0.0;
  double s_max = 0.0;

  BumpTable() {
    const std::size_t n = 1 << 22;
    const double L = 512.0;
    const double h = L / double(n);
    GridField g({n}, {L});
    for (std::size_t i = 0; i < n; ++i) {
      double x = double(i) * h;
      double xs = x > L / 2 ? x - L : x;
      double w = bump_value(xs);
      g.v[i] = w;
      w_int += w * h;
    }
    fft_inplace(g, -1);
    const std::size_t keep = 300000;
    bt.resize(keep);
    for (std::size_t k = 0; k < keep; ++k) bt[k] = g.v[k].real() * h / w_int;
    s_max = double(keep - 1) * kDs;

    mom.assign(24, 0.0);
    const std::size_t q = 1 << 17;
    const double hq = 2.0 / double(q);
    for (std::size_t i = 0; i < q; ++i) {
      double r = -1.0 + (double(i) + 0.5) * hq;
      double w = bump_value(r);
      double rk = 1.0;
      for (std::size_t k = 0; k < mom.size(); ++k) {
        mom[k] += w * rk * hq;
        rk *= r;
      }
    }
    // normalize by the zeroth moment from the same rule so mom[0] == 1 exactly
    const double m0 = mom[0];
    for (auto& m : mom) m /= m0;
  }
};

const BumpTable& table() {
  static BumpTable t;
  return t;
}

}  // namespace

double bump_value(double r) {
  return r * r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
}

double bump_integral() { return table().w_int; }

double bump_transform_smax() { return table().s_max; }

double bump_transform(double s) {
  const BumpTable& t = table();
  s = std::abs(s);
  if (s <= 0.5) {
    // Taylor series B(s) = sum (-1)^k m_2k s^2k / (2k)!; terms shrink fast
    // enough here that the truncation error is far below the table's
    // interpolation error, and B(0) = 1 holds exactly.
    double acc = 0.0, s2 = s * s, pw = 1.0, fact = 1.0;
    for (int k = 0; 2 * k + 1 < int(t.mom.size()); ++k) {
      if (k > 0) {
        pw *= -s2;
        fact *= double(2 * k - 1) * double(2 * k);
      }
      acc += t.mom[std::size_t(2 * k)] * pw / fact;
    }
    return acc;
  }
  if (s >= t.s_max - 8 * BumpTable::kDs) return 0.0;
  double pos = s / BumpTable::kDs;
  std::size_t i1 = std::size_t(pos);
  if (i1 < 3) i1 = 3;  // unreachable: the series branch covers s <= 0.5
  if (i1 + 5 >= t.bt.size()) return 0.0;
  double x = pos - double(i1);
  // eight-point Lagrange stencil; the samples are spectrally accurate, so the
  // h^8 stencil error sits at machine level instead of the ~1e-9 a cubic
  // leaves near the oscillatory part of the transform
  double acc = 0.0;
  for (int j = -3; j <= 4; ++j) {
    double w = 1.0;
    for (int k = -3; k <= 4; ++k)
      if (k != j) w *= (x - double(k)) / double(j - k);
    acc += w * t.bt[std::size_t(std::ptrdiff_t(i1) + j)];
  }
  return acc;
}

double bump_central_moment(int k) {
  if (k < 0 || std::size_t(k) >= table().mom.size())
    throw std::invalid_argument("bump_central_moment: order out of range");
  return table().mom[std::size_t(k)];
}

}  // namespace nnlab
