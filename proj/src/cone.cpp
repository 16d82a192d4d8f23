#include "nnlab/cone.hpp"

#include "nnlab/bump.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace nnlab {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
  return r;
}

cplx ipow(cplx z, int k) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// AtomKernel
// ---------------------------------------------------------------------------

cplx AtomKernel::hat(std::span<const double> xi) const {
  cplx acc(0.0, 0.0);
  for (const Atom& a : atoms) {
    double amp = a.coeff;
    double phase = 0.0;
    for (std::size_t d = 0; d < xi.size(); ++d) {
      amp *= bump_transform(a.rho[d] * xi[d]);
      phase -= xi[d] * a.c[d];
    }
    if (amp != 0.0) acc += amp * cplx(std::cos(phase), std::sin(phase));
  }
  return acc;
}

double AtomKernel::value(std::span<const double> x) const {
  const double W = bump_integral();
  double acc = 0.0;
  for (const Atom& a : atoms) {
    double p = a.coeff;
    for (std::size_t d = 0; d < x.size() && p != 0.0; ++d) {
      double r = (x[d] - a.c[d]) / a.rho[d];
      p *= bump_value(r) / (a.rho[d] * W);
    }
    acc += p;
  }
  return acc;
}

double AtomKernel::moment(std::span<const std::size_t> alpha) const {
  double acc = 0.0;
  for (const Atom& a : atoms) {
    double p = a.coeff;
    for (std::size_t d = 0; d < alpha.size(); ++d) {
      double s = 0.0;
      for (std::size_t e = 0; e <= alpha[d]; e += 2)
        s += binom(int(alpha[d]), int(e)) * std::pow(a.c[d], double(alpha[d] - e)) *
             std::pow(a.rho[d], double(e)) * bump_central_moment(int(e));
      p *= s;
    }
    acc += p;
  }
  return acc;
}

namespace {

std::pair<std::vector<double>, std::vector<double>> bounding_box(const AtomKernel& k,
                                                                 std::size_t dim) {
  std::vector<double> lo(dim, 1e300), hi(dim, -1e300);
  for (const Atom& a : k.atoms)
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], a.c[d] - a.rho[d]);
      hi[d] = std::max(hi[d], a.c[d] + a.rho[d]);
    }
  return {lo, hi};
}

template <class F>
void quad_scan(const AtomKernel& k, std::size_t dim, std::size_t q, F&& visit) {
  auto [lo, hi] = bounding_box(k, dim);
  std::vector<std::size_t> shape(dim, q);
  std::vector<double> x(dim);
  double cell = 1.0;
  for (std::size_t d = 0; d < dim; ++d) cell *= (hi[d] - lo[d]) / double(q);
  for (MultiIndex mi(shape); !mi.done(); mi.next()) {
    const auto& idx = *mi;
    for (std::size_t d = 0; d < dim; ++d)
      x[d] = lo[d] + (double(idx[d]) + 0.5) * (hi[d] - lo[d]) / double(q);
    visit(x, k.value(x) * cell);
  }
}

}  // namespace

double AtomKernel::mass_l1(std::size_t quad_per_axis) const {
  if (atoms.empty()) return 0.0;
  std::size_t dim = atoms[0].c.size();
  double m = 0.0;
  quad_scan(*this, dim, quad_per_axis, [&](const std::vector<double>&, double w) {
    m += std::abs(w);
  });
  return m;
}

double AtomKernel::mass_outside_cone(double depth, std::size_t quad_per_axis) const {
  if (atoms.empty()) return 0.0;
  std::size_t dim = atoms[0].c.size();
  double out = 0.0;
  quad_scan(*this, dim, quad_per_axis, [&](const std::vector<double>& x, double w) {
    double lat = 0.0;
    for (std::size_t d = 0; d + 1 < dim; ++d) lat += x[d] * x[d];
    lat = std::sqrt(lat);
    double xd = x[dim - 1];
    if (!(xd < -lat && xd < -depth)) out += std::abs(w);
  });
  return out;
}

double AtomKernel::spectral_extent(double tol) const {
  if (atoms.empty()) return 0.0;
  std::size_t dim = atoms[0].c.size();
  std::vector<std::vector<double>> dirs;
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<double> e(dim, 0.0);
    e[d] = 1.0;
    dirs.push_back(e);
  }
  if (dim == 2) {
    double r = 1.0 / std::sqrt(2.0);
    dirs.push_back({r, r});
    dirs.push_back({r, -r});
  }
  // The threshold is relative to the transform's own peak so that kernels
  // with strong coefficient cancellation are not measured against a
  // meaningless coefficient sum.
  double rho_min = 1e300;
  for (const Atom& a : atoms)
    for (double r : a.rho) rho_min = std::min(rho_min, r);
  const double s_top = std::min(bump_transform_smax() / 2,
                                bump_transform_smax() / (4 * rho_min));
  const double step = std::min(0.25, s_top / 4096);
  double peak = 0.0;
  std::vector<double> xi(dim);
  for (const auto& e : dirs) {
    for (double s = 0.0; s < s_top; s += step) {
      for (std::size_t d = 0; d < dim; ++d) xi[d] = s * e[d];
      peak = std::max(peak, std::abs(hat(xi)));
    }
  }
  if (peak == 0.0) return 0.0;
  double extent = 0.0;
  for (const auto& e : dirs) {
    for (double s = step; s < s_top; s += step) {
      for (std::size_t d = 0; d < dim; ++d) xi[d] = s * e[d];
      if (std::abs(hat(xi)) > tol * peak) extent = std::max(extent, s);
    }
  }
  return extent;
}

// ---------------------------------------------------------------------------
// ConePair symbols
// ---------------------------------------------------------------------------

cplx ConePair::base_hat(std::span<const double> xi) const {
  double amp = 1.0, phase = 0.0;
  for (std::size_t d = 0; d < xi.size(); ++d) {
    amp *= bump_transform(base.rho[d] * xi[d]);
    phase -= xi[d] * base.c[d];
  }
  return amp * cplx(std::cos(phase), std::sin(phase));
}

namespace {

std::vector<double> level_arg(int level, std::span<const double> xi, double factor) {
  double sc = factor * (level <= 1 ? 1.0 : std::ldexp(1.0, -(level - 1)));
  std::vector<double> z(xi.size());
  for (std::size_t d = 0; d < xi.size(); ++d) z[d] = sc * xi[d];
  return z;
}

}  // namespace

cplx ConePair::phi_hat(int level, std::span<const double> xi) const {
  if (level == 0) return base_hat(xi);
  const int m = moment_order + 1;
  cplx u = base_hat(level_arg(level, xi, 1.0));
  cplx v = base_hat(level_arg(level, xi, 0.5));
  return ipow(cplx(1.0, 0.0) - u, m) - ipow(cplx(1.0, 0.0) - v, m);
}

cplx ConePair::psi_hat(int level, std::span<const double> xi) const {
  const int m = moment_order + 1;
  if (level == 0) {
    cplx w = cplx(1.0, 0.0) - base_hat(xi);
    cplx acc(0.0, 0.0), p(1.0, 0.0);
    for (int i = 0; i < 2 * m; ++i) {
      acc += p;
      p *= w;
    }
    return acc;
  }
  cplx u = base_hat(level_arg(level, xi, 1.0));
  cplx v = base_hat(level_arg(level, xi, 0.5));
  return ipow(cplx(1.0, 0.0) - u, m) + ipow(cplx(1.0, 0.0) - v, m);
}

bool ConePair::level_resolvable(int level, const GridField& g) const {
  double band = level == 0 ? band_hi : band_hi * std::ldexp(1.0, level - 1);
  double reach = level == 0 ? reach0 : reach1 * std::ldexp(1.0, -(level - 1));
  double box_min = *std::min_element(g.box.begin(), g.box.end());
  return band <= g.nyquist() * (1.0 + 1e-12) && reach <= box_min / 2;
}

int ConePair::max_resolvable_level(const GridField& g) const {
  int j = -1;
  while (j + 1 <= levels && level_resolvable(j + 1, g)) ++j;
  return j;
}

// ---------------------------------------------------------------------------
// Construction and diagnostics
// ---------------------------------------------------------------------------

namespace {

// Moments of one axis factor of an atom: integral of t^k against the
// normalized bump centered at c with radius rho.
std::vector<double> axis_moments(double c, double rho, std::size_t kmax) {
  std::vector<double> out(kmax + 1, 0.0);
  for (std::size_t k = 0; k <= kmax; ++k) {
    double s = 0.0;
    for (std::size_t e = 0; e <= k; e += 2)
      s += binom(int(k), int(e)) * std::pow(c, double(k - e)) *
           std::pow(rho, double(e)) * bump_central_moment(int(e));
    out[k] = s;
  }
  return out;
}

// Dense table of moments indexed by per-axis order 0..amax. Starts as the
// moments of the identity (delta), folds in one convolution factor at a
// time via the binomial product rule for moments of a convolution.
struct MomSeq {
  std::size_t dim, n;
  std::vector<double> v;

  MomSeq(std::size_t dim_, std::size_t amax) : dim(dim_), n(amax + 1) {
    v.assign(dim == 1 ? n : n * n, 0.0);
    v[0] = 1.0;
  }
  double at(std::size_t a, std::size_t b = 0) const {
    return v[dim == 1 ? a : a * n + b];
  }
  double& at(std::size_t a, std::size_t b = 0) {
    return v[dim == 1 ? a : a * n + b];
  }

  void fold(const std::vector<std::vector<double>>& ax) {
    MomSeq out(dim, n - 1);
    out.v.assign(v.size(), 0.0);
    if (dim == 1) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b <= a; ++b)
          out.at(a) += binom(int(a), int(b)) * ax[0][b] * at(a - b);
    } else {
      for (std::size_t a1 = 0; a1 < n; ++a1)
        for (std::size_t a2 = 0; a2 < n; ++a2)
          for (std::size_t b1 = 0; b1 <= a1; ++b1)
            for (std::size_t b2 = 0; b2 <= a2; ++b2)
              out.at(a1, a2) += binom(int(a1), int(b1)) * binom(int(a2), int(b2)) *
                                ax[0][b1] * ax[1][b2] * at(a1 - b1, a2 - b2);
    }
    v = std::move(out.v);
  }
};

std::vector<std::vector<double>> dirs_for(std::size_t dim) {
  if (dim == 1) return {{1.0}};
  std::vector<std::vector<double>> dirs;
  for (int k = 0; k < 8; ++k) {
    double th = kPi * double(k) / 8.0;
    dirs.push_back({std::cos(th), std::sin(th)});
  }
  return dirs;
}

// Mass fraction of the kernel given by `smooth_hat` (identity component
// already removed) that a grid reconstruction places outside the closed
// cone, with a few-cell margin for the sampled boundary. Limited by the
// spectral truncation of the reconstruction, not by actual leakage.
double recon_cone_defect(const std::function<cplx(std::span<const double>)>& smooth_hat,
                         std::size_t dim, double reach) {
  std::size_t n = dim == 1 ? (std::size_t(1) << 17) : 2048;
  double L = 4.0 * reach;
  GridField g(std::vector<std::size_t>(dim, n), std::vector<double>(dim, L));
  std::vector<double> xi(dim);
  std::size_t i = 0;
  for (MultiIndex mi(g.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    for (std::size_t a = 0; a < dim; ++a) xi[a] = g.freq(a, idx[a]);
    g.v[i] = smooth_hat(xi);
  }
  fft_inplace(g, 1);
  double cell = 1.0;
  for (std::size_t a = 0; a < dim; ++a) cell *= L / double(n);
  // on the synthesis side of the fft the values are kernel samples times the
  // lattice density; cell * value integrates them
  double norm = 1.0;
  for (std::size_t a = 0; a < dim; ++a) norm *= double(n) / L;
  double margin = 3.0 * L / double(n);
  double inside = 0.0, outside = 0.0;
  i = 0;
  std::vector<double> x(dim);
  for (MultiIndex mi(g.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    for (std::size_t a = 0; a < dim; ++a) {
      x[a] = double(idx[a]) * L / double(n);
      if (x[a] >= L / 2) x[a] -= L;
    }
    double lat = 0.0;
    for (std::size_t a = 0; a + 1 < dim; ++a) lat += x[a] * x[a];
    lat = std::sqrt(lat);
    double w = std::abs(g.v[i]) * norm * cell;
    if (x[dim - 1] < -lat + margin)
      inside += w;
    else
      outside += w;
  }
  return outside / std::max(inside + outside, 1e-300);
}

}  // namespace

ConePair build_cone_pair(int dim, int moment_order, int level_count, double scale) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("build_cone_pair: dim must be 1 or 2");
  if (moment_order < 0 || moment_order > 12)
    throw std::invalid_argument("build_cone_pair: moment_order outside [0,12]");
  if (level_count < 2) throw std::invalid_argument("build_cone_pair: need >= 2 levels");
  if (!(scale > 0.0) || !(scale < 1e6))
    throw std::invalid_argument("build_cone_pair: bad scale");

  ConePair pair;
  pair.dim = dim;
  pair.moment_order = moment_order;
  pair.levels = level_count;
  pair.scale = scale;
  const std::size_t d = std::size_t(dim);
  const int m = moment_order + 1;

  pair.base.c.assign(d, 0.0);
  pair.base.c[d - 1] = -0.5 * scale;
  pair.base.rho.assign(d, 0.2 * scale);
  pair.base.coeff = 1.0;

  pair.delta0 = double(2 * m);
  pair.delta1 = 2.0;
  pair.level0_flat_order = 2 * moment_order + 1;

  const double depth = 0.7 * scale;  // |c_d| + rho of the generating atom
  pair.reach1 = double(m) * depth;
  pair.reach0 = double(2 * m - 1) * depth;
  pair.tv_mass0 = std::ldexp(1.0, 2 * m) - 1.0;
  pair.tv_mass1 = std::ldexp(1.0, m + 1);

  const auto dirs = dirs_for(d);
  std::vector<double> xi(d);

  // Meaningful band of the level-1 analysis symbol, relative to its peak.
  {
    const double s_top = 60.0 / scale;
    const double step = s_top / 8192;
    double peak = 0.0, extent = 0.0;
    for (const auto& e : dirs)
      for (double s = step; s < s_top; s += step) {
        for (std::size_t a = 0; a < d; ++a) xi[a] = s * e[a];
        peak = std::max(peak, std::abs(pair.phi_hat(1, xi)));
      }
    for (const auto& e : dirs)
      for (double s = step; s < s_top; s += step) {
        for (std::size_t a = 0; a < d; ++a) xi[a] = s * e[a];
        if (std::abs(pair.phi_hat(1, xi)) > 1e-2 * peak) extent = std::max(extent, s);
      }
    pair.band_hi = extent;
  }

  // Resolved band: the truncation defect is (1 - Phi(2^-J xi))^2m, so the
  // partition stays within 1e-6 of one as long as |1 - Phi| at the argument
  // 2^-J xi stays under 1e-6^(1/2m).
  {
    const double theta = std::pow(1e-6, 1.0 / double(2 * m));
    const double step = 0.002 / scale;
    double zeta = 0.0;
    bool stop = false;
    while (!stop && zeta < 4.0 / scale) {
      double next = zeta + step;
      for (const auto& e : dirs) {
        for (std::size_t a = 0; a < d; ++a) xi[a] = next * e[a];
        if (std::abs(cplx(1.0, 0.0) - pair.base_hat(xi)) > theta) {
          stop = true;
          break;
        }
      }
      if (!stop) zeta = next;
    }
    pair.resolved_band = zeta * std::ldexp(1.0, level_count);
  }

  // Measured reproduction defect over the resolved band.
  {
    double lo = 1e-3 / scale, hi = pair.resolved_band;
    std::size_t n_r = std::size_t(std::log10(hi / lo) * 160.0) + 2;
    double worst = 0.0;
    for (std::size_t i = 0; i < n_r; ++i) {
      double r = lo * std::pow(hi / lo, double(i) / double(n_r - 1));
      for (const auto& e : dirs) {
        for (std::size_t a = 0; a < d; ++a) xi[a] = r * e[a];
        cplx t = pair.phi_hat(0, xi) * pair.psi_hat(0, xi);
        for (int j = 1; j <= level_count; ++j)
          t += pair.phi_hat(j, xi) * pair.psi_hat(j, xi);
        worst = std::max(worst, std::abs(t - cplx(1.0, 0.0)));
      }
    }
    pair.repro_budget = worst;
  }

  // Exact moment checks through the fold recursion, reported relative to the
  // largest contributing term (the alternating sums run over terms that grow
  // combinatorially, so an absolute residual would only measure rounding of
  // huge intermediates).
  {
    const std::size_t amax = std::size_t(pair.level0_flat_order);
    auto ax_of = [&](double lam) {
      std::vector<std::vector<double>> ax;
      for (std::size_t a = 0; a < d; ++a)
        ax.push_back(axis_moments(lam * pair.base.c[a], lam * pair.base.rho[a], amax));
      return ax;
    };
    const auto ax1 = ax_of(1.0), axh = ax_of(0.5);
    // conv powers of g and of its half-size dilate, orders 0..2m
    std::vector<MomSeq> pw1, pwh;
    pw1.emplace_back(d, amax);
    pwh.emplace_back(d, amax);
    for (int k = 1; k <= 2 * m; ++k) {
      pw1.push_back(pw1.back());
      pw1.back().fold(ax1);
      pwh.push_back(pwh.back());
      pwh.back().fold(axh);
    }
    double rel = 0.0;
    auto check = [&](double sum, double big, double want) {
      rel = std::max(rel, std::abs(sum - want) / std::max(big, 1.0));
    };
    auto for_orders = [&](std::size_t omax, auto&& f) {
      if (d == 1) {
        for (std::size_t a = 0; a <= omax; ++a) f(a, std::size_t(0), a);
      } else {
        for (std::size_t a = 0; a <= omax; ++a)
          for (std::size_t b = 0; a + b <= omax; ++b) f(a, b, a + b);
      }
    };
    // phi1 and psi1: all moments through moment_order vanish
    for_orders(std::size_t(moment_order), [&](std::size_t a, std::size_t b,
                                              std::size_t total) {
      double sphi = 0.0, spsi = total == 0 ? pair.delta1 : 0.0, big = 1.0;
      for (int k = 1; k <= m; ++k) {
        double s = (k % 2 ? -1.0 : 1.0) * binom(m, k);
        double t1 = s * pw1[std::size_t(k)].at(a, b);
        double th = s * pwh[std::size_t(k)].at(a, b);
        sphi += t1 - th;
        spsi += t1 + th;
        big = std::max({big, std::abs(t1), std::abs(th)});
      }
      check(sphi, big, 0.0);
      check(spsi, big, 0.0);
    });
    // level-0 product psi0 * phi0 matches the identity through 2m-1
    for_orders(amax, [&](std::size_t a, std::size_t b, std::size_t total) {
      double sum = 0.0, big = 1.0;
      for (int k = 0; k < 2 * m; ++k) {
        double c = (k % 2 ? -1.0 : 1.0) * binom(2 * m, k + 1);
        double t = c * pw1[std::size_t(k + 1)].at(a, b);
        sum += t;
        big = std::max(big, std::abs(t));
      }
      check(sum, big, total == 0 ? 1.0 : 0.0);
    });
    pair.achieved_moment_residual = rel;
  }

  // Mass outside the cone for the assembled kernels, by grid reconstruction.
  {
    auto defect_of = [&](int kind, int level, double delta, double reach) {
      auto smooth = [&, kind, level, delta](std::span<const double> z) {
        cplx h = kind == 0 ? pair.phi_hat(level, z) : pair.psi_hat(level, z);
        return h - cplx(delta, 0.0);
      };
      return recon_cone_defect(smooth, d, reach);
    };
    double c = defect_of(1, 0, pair.delta0, pair.reach0);
    c = std::max(c, defect_of(0, 1, 0.0, pair.reach1));
    c = std::max(c, defect_of(1, 1, pair.delta1, pair.reach1));
    pair.cone_mass_defect = c;
  }

  return pair;
}

// ---------------------------------------------------------------------------
// Application: analytic multipliers with a per-grid cache
// ---------------------------------------------------------------------------

namespace {

// keyed by the pair's construction parameters, not its address, so caching
// stays correct when distinct pairs are built at a reused stack slot
struct MultKey {
  int dim;
  int order;
  int levels;
  double scale;
  int kind;  // 0 phi, 1 psi
  int level;
  std::vector<std::size_t> shape;
  std::vector<double> box;
  bool operator<(const MultKey& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (order != o.order) return order < o.order;
    if (levels != o.levels) return levels < o.levels;
    if (scale != o.scale) return scale < o.scale;
    if (kind != o.kind) return kind < o.kind;
    if (level != o.level) return level < o.level;
    if (shape != o.shape) return shape < o.shape;
    return box < o.box;
  }
};

const std::vector<cplx>& multiplier_table(const ConePair& pair, int kind, int level,
                                          const GridField& g) {
  static std::map<MultKey, std::vector<cplx>> cache;
  MultKey key{pair.dim,  pair.moment_order, pair.levels, pair.scale,
              kind,      level,             g.shape,     g.box};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> w(g.total());
  std::vector<double> xi(g.dim());
  std::size_t i = 0;
  for (MultiIndex mi(g.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    for (std::size_t a = 0; a < g.dim(); ++a) xi[a] = g.freq(a, idx[a]);
    w[i] = kind == 0 ? pair.phi_hat(level, xi) : pair.psi_hat(level, xi);
  }
  return cache.emplace(key, std::move(w)).first->second;
}

GridField conv_with(const ConePair& pair, int kind, int level, const GridField& u) {
  if (level < 0 || level > pair.levels)
    throw std::invalid_argument("cone convolve: level outside pair");
  if (!pair.level_resolvable(level, u))
    throw std::runtime_error("cone convolve: resolution exhausted at level " +
                             std::to_string(level));
  const auto& w = multiplier_table(pair, kind, level, u);
  GridField s = fft(u);
  for (std::size_t i = 0; i < s.v.size(); ++i) s.v[i] *= w[i];
  fft_inplace(s, 1);
  return s;
}

}  // namespace

GridField cone_convolve_phi(const ConePair& pair, int level, const GridField& u) {
  return conv_with(pair, 0, level, u);
}

GridField cone_convolve_psi(const ConePair& pair, int level, const GridField& u) {
  return conv_with(pair, 1, level, u);
}

GridField cone_extend(const ConePair& pair, const GridField& u,
                      const std::vector<std::uint8_t>& inside, int top_level) {
  if (inside.size() != u.total())
    throw std::invalid_argument("cone_extend: mask size mismatch");
  GridField acc = u.like_zero();
  for (int j = 0; j <= top_level; ++j) {
    GridField band = cone_convolve_phi(pair, j, u);
    for (std::size_t i = 0; i < band.v.size(); ++i)
      if (!inside[i]) band.v[i] = 0.0;
    acc += cone_convolve_psi(pair, j, band);
  }
  return acc;
}

GridField cone_smooth(const ConePair& pair, const GridField& u, int top_level) {
  if (top_level < 0 || top_level > pair.levels)
    throw std::invalid_argument("cone_smooth: level outside pair");
  for (int j = 0; j <= top_level; ++j)
    if (!pair.level_resolvable(j, u))
      throw std::runtime_error("cone_smooth: resolution exhausted at level " +
                               std::to_string(j));
  GridField s = fft(u);
  std::vector<double> xi(u.dim());
  std::size_t i = 0;
  for (MultiIndex mi(u.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    for (std::size_t a = 0; a < u.dim(); ++a) xi[a] = u.freq(a, idx[a]);
    cplx mm(0.0, 0.0);
    for (int j = 0; j <= top_level; ++j) mm += pair.phi_hat(j, xi) * pair.psi_hat(j, xi);
    s.v[i] *= mm;
  }
  fft_inplace(s, 1);
  return s;
}

}  // namespace nnlab
