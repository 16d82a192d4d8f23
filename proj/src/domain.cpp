#include "nnlab/domain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace nnlab {

namespace {

double hexp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// smooth blend of max(a, b); deviates from the hard max by O(mu^2 / |a-b|)
double smooth_max(double a, double b, double mu) {
  return 0.5 * (a + b + std::sqrt((a - b) * (a - b) + mu * mu));
}

// weighted sum of axis-shifted samples; off in grid steps, wrapped
GridField axis_stencil(const GridField& u, std::size_t axis,
                       const double* w, const int* off, int taps, double scale) {
  GridField out = u.like_zero();
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < u.shape.size(); ++a) stride *= u.shape[a];
  const long n = long(u.shape[axis]);
  for (std::size_t i = 0; i < u.total(); ++i) {
    const long c = long((i / stride) % std::size_t(n));
    const std::size_t base = i - std::size_t(c) * stride;
    cplx acc = 0.0;
    for (int k = 0; k < taps; ++k) {
      long cc = (c + off[k]) % n;
      if (cc < 0) cc += n;
      acc += w[k] * u.v[base + std::size_t(cc) * stride];
    }
    out.v[i] = acc * scale;
  }
  return out;
}

std::string point_string(const std::vector<double>& x) {
  std::string s = "(";
  char buf[32];
  for (std::size_t a = 0; a < x.size(); ++a) {
    std::snprintf(buf, sizeof buf, "%s%.6g", a ? ", " : "", x[a]);
    s += buf;
  }
  return s + ")";
}

double min_face_distance(const GridField& g, const std::vector<double>& x) {
  double d = HUGE_VAL;
  for (std::size_t a = 0; a < x.size(); ++a)
    d = std::min({d, x[a], g.box[a] - x[a]});
  return d;
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = hexp(t), b = hexp(1.0 - t);
  return a / (a + b);
}

GridField fd_derivative(const GridField& u, std::size_t axis) {
  if (axis >= u.shape.size()) throw std::invalid_argument("fd_derivative: axis");
  static const double w[4] = {-1.0, 8.0, -8.0, 1.0};
  static const int off[4] = {2, 1, -1, -2};
  const double h = u.spacing(axis);
  return axis_stencil(u, axis, w, off, 4, 1.0 / (12.0 * h));
}

GridField fd_second_derivative(const GridField& u, std::size_t axis) {
  if (axis >= u.shape.size()) throw std::invalid_argument("fd_second_derivative: axis");
  static const double w[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  static const int off[5] = {2, 1, 0, -1, -2};
  const double h = u.spacing(axis);
  return axis_stencil(u, axis, w, off, 5, 1.0 / (12.0 * h * h));
}

double c2_norm(const GridField& u, const std::vector<std::uint8_t>& mask) {
  double total = u.sup_norm_masked(mask);
  std::vector<GridField> grad;
  grad.reserve(u.shape.size());
  for (std::size_t a = 0; a < u.shape.size(); ++a) {
    grad.push_back(fd_derivative(u, a));
    total += grad.back().sup_norm_masked(mask);
  }
  for (std::size_t a = 0; a < u.shape.size(); ++a)
    for (std::size_t b = a; b < u.shape.size(); ++b)
      total += (a == b ? fd_second_derivative(u, a) : fd_derivative(grad[a], b))
                   .sup_norm_masked(mask);
  return total;
}

DefiningFunction::DefiningFunction(GridField r) : rho(std::move(r)) {
  rho.validate("DefiningFunction");
  grad.reserve(rho.shape.size());
  for (std::size_t a = 0; a < rho.shape.size(); ++a)
    grad.push_back(fd_derivative(rho, a));
}

std::vector<BoundarySample> boundary_samples(const DefiningFunction& rho) {
  const GridField& g = rho.rho;
  const std::size_t d = g.shape.size();
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t a = d; a-- > 1;) stride[a - 1] = stride[a] * g.shape[a];

  // seeds: midpoints of sign-changing grid edges
  std::vector<std::vector<double>> seeds;
  std::size_t i = 0;
  for (MultiIndex mi(g.shape); !mi.done(); mi.next(), ++i) {
    const bool in_i = g.v[i].real() < 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t c = (*mi)[a];
      const std::size_t j = i - c * stride[a] + ((c + 1) % g.shape[a]) * stride[a];
      if ((g.v[j].real() < 0.0) == in_i) continue;
      std::vector<double> x(d);
      for (std::size_t b = 0; b < d; ++b) x[b] = double((*mi)[b]) * g.spacing(b);
      x[a] += 0.5 * g.spacing(a);
      seeds.push_back(std::move(x));
    }
  }

  Interpolant itp(g, 1);
  std::vector<Interpolant> itg;
  itg.reserve(d);
  for (std::size_t a = 0; a < d; ++a) itg.emplace_back(rho.grad[a], 1);

  std::vector<BoundarySample> out;
  out.reserve(seeds.size());
  std::vector<double> gr(d);
  for (auto& x : seeds) {
    for (int step = 0; step < 2; ++step) {
      const double val = itp.eval(x).real();
      double n2 = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        gr[a] = itg[a].eval(x).real();
        n2 += gr[a] * gr[a];
      }
      if (n2 < 1e-16)
        throw std::runtime_error("boundary_samples: degenerate gradient at " +
                                 point_string(x));
      for (std::size_t a = 0; a < d; ++a) {
        x[a] -= val * gr[a] / n2;
        x[a] -= g.box[a] * std::floor(x[a] / g.box[a]);
      }
    }
    out.push_back({x});
  }
  return out;
}

std::vector<LeviSample> levi_spectrum(const DefiningFunction& rho) {
  const std::size_t d = rho.dim();
  if (d % 2 != 0 || d < 4)
    throw std::invalid_argument(
        "levi_spectrum: ambient dimension must be 2n with n >= 2");
  const std::size_t nc = d / 2;
  std::vector<BoundarySample> samples = boundary_samples(rho);
  if (samples.empty())
    throw std::invalid_argument("levi_spectrum: no boundary samples");

  // real Hessian values per sample, pair by pair to keep one field in flight
  std::vector<std::vector<double>> hr(samples.size(),
                                      std::vector<double>(d * d, 0.0));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      GridField hf = (a == b) ? fd_second_derivative(rho.rho, a)
                              : fd_derivative(rho.grad[a], b);
      Interpolant ith(hf, 1);
      for (std::size_t s = 0; s < samples.size(); ++s) {
        const double v = ith.eval(samples[s].x).real();
        hr[s][a * d + b] = v;
        hr[s][b * d + a] = v;
      }
    }
  std::vector<std::vector<double>> gs(samples.size(), std::vector<double>(d));
  for (std::size_t a = 0; a < d; ++a) {
    Interpolant itg(rho.grad[a], 1);
    for (std::size_t s = 0; s < samples.size(); ++s)
      gs[s][a] = itg.eval(samples[s].x).real();
  }

  std::vector<LeviSample> out;
  out.reserve(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    Eigen::MatrixXcd H(nc, nc);
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t k = 0; k < nc; ++k) {
        const double re = hr[s][(2 * j) * d + 2 * k] + hr[s][(2 * j + 1) * d + 2 * k + 1];
        const double im = hr[s][(2 * j) * d + 2 * k + 1] - hr[s][(2 * j + 1) * d + 2 * k];
        H(long(j), long(k)) = 0.25 * cplx(re, im);
      }
    Eigen::VectorXcd w(nc);
    for (std::size_t j = 0; j < nc; ++j)
      w(long(j)) = 0.5 * cplx(gs[s][2 * j], -gs[s][2 * j + 1]);
    if (w.norm() < 1e-8)
      throw std::runtime_error("levi_spectrum: degenerate gradient at " +
                               point_string(samples[s].x));

    // tangent space {t : sum t_j w_j = 0} is the orthogonal complement of
    // conj(w); complete it to a unitary frame and restrict
    Eigen::MatrixXcd A = w.conjugate();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd V = Q.rightCols(long(nc - 1));
    Eigen::MatrixXcd B = V.adjoint() * H * V;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);

    LeviSample ls;
    ls.x = samples[s].x;
    ls.hermitian.assign(nc * nc, 0.0);
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t k = 0; k < nc; ++k)
        ls.hermitian[j * nc + k] = H(long(j), long(k));
    ls.dz.assign(nc, 0.0);
    for (std::size_t j = 0; j < nc; ++j) ls.dz[j] = w(long(j));
    ls.restricted_min = es.eigenvalues()(0);
    out.push_back(std::move(ls));
  }
  return out;
}

double levi_min(const DefiningFunction& rho) {
  double m = HUGE_VAL;
  for (const LeviSample& s : levi_spectrum(rho))
    m = std::min(m, s.restricted_min);
  return m;
}

DefiningFunction update_defining(const DefiningFunction& rho, const TorusMap& G) {
  const std::size_t d = rho.dim();
  if (G.disp.size() != d)
    throw std::invalid_argument("update_defining: map dimension mismatch");
  for (std::size_t a = 0; a < d; ++a)
    if (G.disp[a].sup_norm() > rho.rho.box[a] / 8.0)
      throw std::invalid_argument(
          "update_defining: displacement exceeds an eighth of the ambient box");
  // local cubic interpolation only: a defining function carries a periodic
  // closure window whose global trig interpolant rings at affordable
  // resolutions, while the local stencil keeps polynomial regions exact and
  // confines window error to the window band
  return DefiningFunction(G.compose(rho.rho, 1));
}

void StabilityBudget::validate() const {
  if (!(eps_D > 0.0) || !(delta_rho0 > 0.0) || !(levi_floor > 0.0) ||
      !(u_margin > 0.0))
    throw std::invalid_argument("StabilityBudget: all entries must be positive");
}

StabilityBudget make_stability_budget(const DefiningFunction& rho0,
                                      double levi_sensitivity,
                                      double update_sensitivity,
                                      double levi_floor_override) {
  if (!(levi_sensitivity > 0.0) || !(update_sensitivity > 0.0))
    throw std::invalid_argument("make_stability_budget: sensitivities must be positive");
  StabilityBudget b;
  b.levi_floor = levi_floor_override > 0.0 ? levi_floor_override : levi_min(rho0);
  b.eps_D = 0.1 * b.levi_floor / levi_sensitivity;
  const double zeta2 = kTwoPi * kTwoPi / 24.0;  // sum 1/(j+1)^2 = pi^2/6
  b.delta_rho0 = b.eps_D / (update_sensitivity * zeta2);
  b.validate();
  return b;
}

ChainReport check_chain_stability(const std::vector<DefiningFunction>& chain,
                                  const StabilityBudget& budget,
                                  const std::vector<double>& f_norms,
                                  double slack_constant) {
  budget.validate();
  ChainReport rep;
  if (chain.empty()) return rep;
  if (f_norms.size() + 1 != chain.size())
    throw std::invalid_argument(
        "check_chain_stability: expected one map norm per chain step");

  const std::size_t d = chain[0].dim();
  const bool with_levi = d % 2 == 0 && d >= 4;
  std::vector<BoundarySample> base = boundary_samples(chain[0]);
  double dist0 = HUGE_VAL;
  for (const BoundarySample& s : base)
    dist0 = std::min(dist0, min_face_distance(chain[0].rho, s.x));

  // the drift norm lives on a neighbourhood of the initial closure
  std::vector<std::uint8_t> region(chain[0].rho.total());
  for (std::size_t i = 0; i < region.size(); ++i)
    region[i] = chain[0].rho.v[i].real() < budget.u_margin ? 1 : 0;

  char buf[160];
  auto fail = [&](ChainRow& row, const char* what, double got, double bound) {
    std::snprintf(buf, sizeof buf, "step %d: %s %.6g violates bound %.6g",
                  row.step, what, got, bound);
    row.pass = false;
    row.note = buf;
    if (rep.pass) {
      rep.pass = false;
      rep.failure = buf;
    }
  };

  for (std::size_t j = 0; j < f_norms.size(); ++j) {
    ChainRow row;
    row.step = int(j);
    row.f_norm = f_norms[j];
    row.f_budget = budget.delta_rho0 / double((j + 1) * (j + 1));
    if (row.f_norm > row.f_budget * (1.0 + 1e-9))
      fail(row, "map norm", row.f_norm, row.f_budget);

    GridField diff = chain[j + 1].rho;
    diff -= chain[0].rho;
    row.rho_drift = c2_norm(diff, region);
    if (row.pass && row.rho_drift > budget.eps_D * (1.0 + 1e-9))
      fail(row, "defining-function drift", row.rho_drift, budget.eps_D);

    std::vector<BoundarySample> bs = boundary_samples(chain[j + 1]);
    if (bs.empty()) {
      row.levi = std::numeric_limits<double>::quiet_NaN();
      row.dist_boundary = std::numeric_limits<double>::quiet_NaN();
      if (row.note.empty()) row.note = "no boundary";
    } else {
      row.dist_boundary = HUGE_VAL;
      for (const BoundarySample& s : bs)
        row.dist_boundary = std::min(row.dist_boundary,
                                     min_face_distance(chain[j + 1].rho, s.x));
      const double dist_floor = dist0 - slack_constant * budget.eps_D;
      if (row.pass && row.dist_boundary < dist_floor)
        fail(row, "boundary distance", row.dist_boundary, dist_floor);
      if (with_levi) {
        row.levi = levi_min(chain[j + 1]);
        const double levi_floor = budget.levi_floor - slack_constant * budget.eps_D;
        if (row.pass && row.levi < levi_floor)
          fail(row, "Levi minimum", row.levi, levi_floor);
      } else {
        row.levi = std::numeric_limits<double>::quiet_NaN();
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

DefiningFunction make_quadric_domain(std::size_t n_per_axis,
                                     const std::vector<double>& coeffs,
                                     double re_z1sq_amp) {
  if (coeffs.empty())
    throw std::invalid_argument("make_quadric_domain: need at least one coefficient");
  for (double c : coeffs)
    if (!(c >= 0.8) || !(c <= 4.0))
      throw std::invalid_argument(
          "make_quadric_domain: coefficients must lie in [0.8, 4] so the zero "
          "set stays inside the polynomial plateau");
  if (std::abs(re_z1sq_amp) > 0.05)
    throw std::invalid_argument("make_quadric_domain: |perturbation| <= 0.05");

  // plateau sizing: boundary samples sit within |x| <= 1.1, their cubic
  // interpolation stencils reach two cells further, and the finite-difference
  // stencils of those nodes reach two more; 3.05 covers that even at 16 cells
  // per axis, so the Levi data is exactly polynomial end to end
  const double L = 8.0, plateau = 3.05, wend = 3.95, closure = 6.0;
  const std::size_t d = 2 * coeffs.size();
  std::vector<std::size_t> shape(d, n_per_axis);
  std::vector<double> box(d, L);
  GridField g(shape, box);

  // per-axis profile: exactly x^2 (centered) on the plateau, constant closure
  // value outside, one shared table for every axis
  std::vector<double> table(n_per_axis);
  for (std::size_t i = 0; i < n_per_axis; ++i) {
    const double xt = L * double(i) / double(n_per_axis) - L / 2.0;
    const double w = smooth_step((wend - std::abs(xt)) / (wend - plateau));
    table[i] = xt * xt * w + (1.0 - w) * closure;
  }

  std::size_t i = 0;
  for (MultiIndex mi(shape); !mi.done(); mi.next(), ++i) {
    double v = -1.0;
    for (std::size_t a = 0; a < coeffs.size(); ++a)
      v += coeffs[a] * (table[(*mi)[2 * a]] + table[(*mi)[2 * a + 1]]);
    v += re_z1sq_amp * (table[(*mi)[0]] - table[(*mi)[1]]);
    g.v[i] = v;
  }
  return DefiningFunction(std::move(g));
}

DefiningFunction make_torus_domain(const std::vector<std::size_t>& shape,
                                   const std::vector<double>& box) {
  GridField g(shape, box);
  for (auto& z : g.v) z = -1.0;
  return DefiningFunction(std::move(g));
}

double DomainChart::partition_defect(const std::vector<std::uint8_t>& closure) const {
  if (closure.size() != chi0.total())
    throw std::invalid_argument("partition_defect: mask size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    if (!closure[i]) continue;
    double s = chi0.v[i].real() - 1.0;
    for (const Chart& c : charts) {
      const double q = c.chi.v[i].real();
      s += q * q;
    }
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

GraphDomain make_graph_domain(std::size_t n1, std::size_t n2, double box,
                              double height, double amp, int k_mode) {
  const double L = box;
  const double slope = std::abs(amp) * kTwoPi * double(k_mode) / L;
  if (!(slope < 1.0))
    throw std::invalid_argument(
        "make_graph_domain: graph gradient must stay below one (cone condition)");
  const double top = 0.72 * L;
  const double b0 = 0.06 * L, b1 = 0.14 * L;   // boundary band fade
  const double c0 = -0.14 * L, c1 = -0.06 * L;  // outside fade
  if (!(height - std::abs(amp) > b1) || !(height + std::abs(amp) + b1 < top - b1))
    throw std::invalid_argument(
        "make_graph_domain: graph and top bands must stay disjoint");

  GridField rho_graph({n1}, {L});
  for (std::size_t i = 0; i < n1; ++i)
    rho_graph.v[i] = height + amp * std::cos(kTwoPi * double(k_mode) * double(i) / double(n1));

  GridField rho({n1, n2}, {L, L}), chi0({n1, n2}, {L, L});
  GridField chi1 = chi0, chi2 = chi0;
  std::vector<std::uint8_t> mask(rho.total(), 0);
  const double e0 = 0.02 * L, e1 = 0.08 * L, mu = 0.02 * L, far = 0.3 * L;

  std::size_t i = 0;
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    const double rg = rho_graph.v[i1].real();
    for (std::size_t i2 = 0; i2 < n2; ++i2, ++i) {
      const double x2 = L * double(i2) / double(n2);
      const double tau1 = x2 - rg, tau2 = top - x2;
      const double wf = smooth_step((x2 - e0) / (e1 - e0)) *
                        smooth_step((L - e0 - x2) / (e1 - e0));
      const double core = smooth_max(rg - x2, x2 - top, mu);
      rho.v[i] = wf * core + (1.0 - wf) * far;
      mask[i] = rho.v[i].real() < 0.0 ? 1 : 0;

      const double s1 = (1.0 - smooth_step((tau1 - b0) / (b1 - b0))) *
                        smooth_step((tau1 - c0) / (c1 - c0));
      const double s2 = (1.0 - smooth_step((tau2 - b0) / (b1 - b0))) *
                        smooth_step((tau2 - c0) / (c1 - c0));
      const double in0 = smooth_step((tau1 - c0) / (c1 - c0)) *
                         smooth_step((tau2 - c0) / (c1 - c0));
      chi1.v[i] = std::sqrt(std::max(0.0, s1));
      chi2.v[i] = std::sqrt(std::max(0.0, s2));
      chi0.v[i] = (1.0 - s1 - s2) * in0;
    }
  }

  GraphDomain out{DefiningFunction(std::move(rho)), DomainChart{}, std::move(mask),
                  derivative(rho_graph, 0).sup_norm()};
  out.chart.chi0 = std::move(chi0);
  Chart graph_piece{{1.0, 0.0, 0.0, 1.0}, {0.0, 0.0}, rho_graph, std::move(chi1)};
  GridField flat({n1}, {L});
  Chart top_piece{{1.0, 0.0, 0.0, -1.0}, {0.0, top}, std::move(flat), std::move(chi2)};
  out.chart.charts.push_back(std::move(graph_piece));
  out.chart.charts.push_back(std::move(top_piece));
  return out;
}

}  // namespace nnlab
