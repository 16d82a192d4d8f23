#include "nnlab/znorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nnlab {

namespace {

void validate_mask(const GridField& u, const std::vector<std::uint8_t>* mask,
                   const char* who) {
  if (!mask) return;
  if (mask->size() != u.total())
    throw std::invalid_argument(std::string(who) + ": mask size mismatch");
  for (std::uint8_t m : *mask)
    if (m) return;
  throw std::invalid_argument(std::string(who) + ": mask has empty interior");
}

bool masked_in(const std::vector<std::uint8_t>* mask, std::size_t i) {
  return !mask || (*mask)[i];
}

/** Flat index of the point idx + m*e_axis with periodic wrap. */
std::size_t shifted_flat(const GridField& u, const std::vector<std::size_t>& idx,
                         std::size_t axis, std::size_t m) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < u.dim(); ++a) {
    std::size_t c = idx[a];
    if (a == axis) c = (c + m) % u.shape[a];
    flat = flat * u.shape[a] + c;
  }
  return flat;
}

struct SeminormScan {
  double value = 0.0;
  int t_hi = -1;
};

/** Scan axis-aligned dyadic separations sigma = 2*spacing*2^t <= box/4. */
template <typename Quotient>
SeminormScan scan_separations(const GridField& u, const Quotient& q) {
  SeminormScan out;
  for (std::size_t a = 0; a < u.dim(); ++a) {
    for (int t = 0;; ++t) {
      std::size_t m = std::size_t(2) << t;
      if (double(m) * u.spacing(a) > u.box[a] / 4.0) break;
      double sigma = double(m) * u.spacing(a);
      std::size_t i = 0;
      for (MultiIndex mi(u.shape); !mi.done(); mi.next(), ++i)
        out.value = std::max(out.value, q(*mi, i, a, m, sigma));
      out.t_hi = std::max(out.t_hi, t);
    }
  }
  return out;
}

}  // namespace

double sup_masked(const GridField& u, const std::vector<std::uint8_t>* mask) {
  return mask ? u.sup_norm_masked(*mask) : u.sup_norm();
}

NormEstimate zygmund_norm_diff(const GridField& u, double s,
                               const std::vector<std::uint8_t>* mask) {
  u.validate("zygmund_norm_diff");
  if (!(s > 0.0)) throw std::invalid_argument("zygmund_norm_diff: s must be positive");
  validate_mask(u, mask, "zygmund_norm_diff");

  NormEstimate est;
  est.backend = "difference";
  est.resolution = u.shape;

  if (s > 1.0) {
    NormEstimate base = zygmund_norm_diff(u, s - 1.0, mask);
    est.value = base.value;
    est.levels_lo = base.levels_lo;
    est.levels_hi = base.levels_hi;
    for (std::size_t a = 0; a < u.dim(); ++a) {
      NormEstimate part = zygmund_norm_diff(derivative(u, a), s - 1.0, mask);
      est.value += part.value;
      est.levels_hi = std::max(est.levels_hi, part.levels_hi);
    }
    return est;
  }

  SeminormScan scan;
  if (s == 1.0) {
    // midpoint second differences |u(x) + u(y) - 2u((x+y)/2)| / |x-y|
    scan = scan_separations(
        u, [&](const std::vector<std::size_t>& idx, std::size_t i, std::size_t a,
               std::size_t m, double sigma) {
          std::size_t jm = shifted_flat(u, idx, a, m / 2);
          std::size_t j = shifted_flat(u, idx, a, m);
          if (!(masked_in(mask, i) && masked_in(mask, jm) && masked_in(mask, j)))
            return 0.0;
          return std::abs(u.v[i] + u.v[j] - 2.0 * u.v[jm]) / sigma;
        });
  } else {
    scan = scan_separations(
        u, [&](const std::vector<std::size_t>& idx, std::size_t i, std::size_t a,
               std::size_t m, double sigma) {
          std::size_t j = shifted_flat(u, idx, a, m);
          if (!(masked_in(mask, i) && masked_in(mask, j))) return 0.0;
          return std::abs(u.v[j] - u.v[i]) / std::pow(sigma, s);
        });
  }
  est.value = sup_masked(u, mask) + scan.value;
  est.levels_lo = 0;
  est.levels_hi = scan.t_hi;
  return est;
}

NormEstimate zygmund_norm_besov(const GridField& u, double s, const LPFamily& fam,
                                const std::vector<std::uint8_t>* mask) {
  u.validate("zygmund_norm_besov");
  if (!(s > 0.0)) throw std::invalid_argument("zygmund_norm_besov: s must be positive");
  validate_mask(u, mask, "zygmund_norm_besov");

  NormEstimate est;
  est.backend = "besov";
  est.resolution = u.shape;
  est.levels_lo = 0;
  est.levels_hi = std::min(fam.max_level, fam.max_usable_level(u));
  est.value = sup_masked(u, mask);
  for (int j = 0; j <= est.levels_hi; ++j) {
    GridField band = dyadic_convolve(u, fam, j);
    est.value = std::max(est.value, std::exp2(double(j) * s) * sup_masked(band, mask));
  }
  return est;
}

ConvexityReport check_convexity(const GridField& u, double a, double b, double theta,
                                const LPFamily& fam) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("check_convexity: exponents must be positive");
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("check_convexity: theta outside [0, 1]");
  ConvexityReport rep;
  rep.mid = zygmund_norm_besov(u, (1.0 - theta) * a + theta * b, fam).value;
  double na = zygmund_norm_besov(u, a, fam).value;
  double nb = zygmund_norm_besov(u, b, fam).value;
  rep.bound = std::pow(na, 1.0 - theta) * std::pow(nb, theta);
  rep.ratio = rep.bound > 0.0 ? rep.mid / rep.bound : (rep.mid > 0.0 ? HUGE_VAL : 1.0);
  return rep;
}

GridField TorusMap::compose(const GridField& u, std::size_t upsample) const {
  u.validate("TorusMap::compose");
  if (disp.size() != u.dim())
    throw std::invalid_argument("TorusMap::compose: component count != dim");
  for (const GridField& d : disp)
    if (!d.same_layout(u))
      throw std::invalid_argument("TorusMap::compose: displacement layout mismatch");
  Interpolant itp(u, upsample);
  GridField out = u.like_zero();
  std::vector<double> x(u.dim());
  std::size_t i = 0;
  for (MultiIndex mi(u.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    for (std::size_t a = 0; a < u.dim(); ++a)
      x[a] = double(idx[a]) * u.spacing(a) + disp[a].v[i].real();
    out.v[i] = itp.eval(x);
  }
  return out;
}

double TorusMap::map_norm(double r, const LPFamily& fam) const {
  double worst = 0.0;
  for (const GridField& d : disp)
    worst = std::max(worst, zygmund_norm_besov(d, r, fam).value);
  return 1.0 + worst;
}

ProductChainReport check_product_chain(const GridField& u, const GridField& v,
                                       const TorusMap& phi, double a, double eps,
                                       const LPFamily& fam) {
  if (!(a > 0.0)) throw std::invalid_argument("check_product_chain: a must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("check_product_chain: eps must be positive");

  ProductChainReport rep;
  double ua = zygmund_norm_besov(u, a, fam).value;
  double ue = zygmund_norm_besov(u, eps, fam).value;
  double va = zygmund_norm_besov(v, a, fam).value;
  double ve = zygmund_norm_besov(v, eps, fam).value;
  rep.product_lhs = zygmund_norm_besov(pointwise_mul(u, v), a, fam).value;
  rep.product_rhs = ua * ve + ue * va;
  rep.product_ratio =
      rep.product_rhs > 0.0 ? rep.product_lhs / rep.product_rhs
                            : (rep.product_lhs > 0.0 ? HUGE_VAL : 1.0);

  rep.chain_lhs = zygmund_norm_besov(phi.compose(u), a, fam).value;
  if (a < 1.0) {
    rep.chain_rhs = ua * std::pow(phi.map_norm(1.0, fam), a);
  } else if (a == 1.0) {
    rep.chain_rhs =
        ua * (1.0 + std::pow(phi.map_norm(1.0 + eps, fam), 1.0 / (1.0 + eps)));
  } else {
    double phi_semi = 0.0;
    for (const GridField& d : phi.disp)
      phi_semi = std::max(phi_semi, zygmund_norm_besov(d, a, fam).value);
    rep.chain_rhs = ua * std::pow(phi.map_norm(1.0 + eps, fam),
                                  (1.0 + 2.0 * eps) / (1.0 + eps)) +
                    zygmund_norm_besov(u, 1.0 + eps, fam).value * phi_semi +
                    sup_masked(u, nullptr);
  }
  rep.chain_ratio = rep.chain_rhs > 0.0 ? rep.chain_lhs / rep.chain_rhs
                                        : (rep.chain_lhs > 0.0 ? HUGE_VAL : 1.0);
  return rep;
}

}  // namespace nnlab
