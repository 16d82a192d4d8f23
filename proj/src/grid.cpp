#include "nnlab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace nnlab {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Plans are cached per (shape, sign). FFTW_ESTIMATE keeps the algorithm
// choice independent of runtime measurements, so results are reproducible.
struct PlanKey {
  std::vector<std::size_t> shape;
  int sign;
  bool operator<(const PlanKey& o) const {
    if (sign != o.sign) return sign < o.sign;
    return shape < o.shape;
  }
};

fftw_plan get_plan(const std::vector<std::size_t>& shape, int sign, fftw_complex* data) {
  static std::map<PlanKey, fftw_plan> cache;
  PlanKey key{shape, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<int> n(shape.begin(), shape.end());
  // In-place, unnormalized transform; FFTW_UNALIGNED lets one plan serve
  // any buffer of this shape.
  fftw_plan p = fftw_plan_dft(int(n.size()), n.data(), data, data, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

}  // namespace

GridField::GridField(std::vector<std::size_t> shape_, std::vector<double> box_)
    : shape(std::move(shape_)), box(std::move(box_)) {
  if (shape.size() != box.size()) throw std::invalid_argument("GridField: dim mismatch");
  v.assign(total(), cplx(0.0, 0.0));
  validate("GridField");
}

std::size_t GridField::total() const {
  return std::accumulate(shape.begin(), shape.end(), std::size_t(1),
                         std::multiplies<std::size_t>());
}

double GridField::min_spacing() const {
  double h = box[0] / double(shape[0]);
  for (std::size_t a = 1; a < dim(); ++a) h = std::min(h, spacing(a));
  return h;
}

double GridField::nyquist() const {
  double ny = kPi * double(shape[0]) / box[0];
  for (std::size_t a = 1; a < dim(); ++a)
    ny = std::min(ny, kPi * double(shape[a]) / box[a]);
  return ny;
}

std::size_t GridField::flat(std::span<const std::size_t> idx) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < dim(); ++a) f = f * shape[a] + idx[a];
  return f;
}

void GridField::validate(const std::string& who) const {
  if (shape.empty()) throw std::invalid_argument(who + ": empty shape");
  for (std::size_t a = 0; a < dim(); ++a) {
    if (!power_of_two(shape[a]))
      throw std::invalid_argument(who + ": shape[" + std::to_string(a) +
                                  "] = " + std::to_string(shape[a]) + " is not a power of two");
    if (!(box[a] > 0.0)) throw std::invalid_argument(who + ": box length must be positive");
  }
  if (v.size() != total()) throw std::invalid_argument(who + ": value count mismatch");
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument(who + ": non-finite value");
}

bool GridField::same_layout(const GridField& o) const {
  return shape == o.shape && box == o.box;
}

GridField GridField::like_zero() const { return GridField(shape, box); }

GridField& GridField::operator+=(const GridField& o) {
  if (!same_layout(o)) throw std::invalid_argument("GridField+: layout mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  if (!same_layout(o)) throw std::invalid_argument("GridField-: layout mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  return *this;
}

GridField& GridField::operator*=(cplx s) {
  for (cplx& z : v) z *= s;
  return *this;
}

double GridField::sup_norm() const {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

double GridField::sup_norm_masked(const std::vector<std::uint8_t>& mask) const {
  if (mask.empty()) return sup_norm();
  if (mask.size() != v.size()) throw std::invalid_argument("sup_norm_masked: mask size");
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mask[i]) m = std::max(m, std::abs(v[i]));
  return m;
}

cplx GridField::mean() const {
  cplx s(0.0, 0.0);
  for (const cplx& z : v) s += z;
  return s / double(total());
}

void fft_inplace(GridField& u, int sign) {
  fftw_plan p = get_plan(u.shape, sign, reinterpret_cast<fftw_complex*>(u.v.data()));
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(u.v.data()),
                   reinterpret_cast<fftw_complex*>(u.v.data()));
  if (sign == FFTW_BACKWARD) {
    double inv = 1.0 / double(u.total());
    for (cplx& z : u.v) z *= inv;
  }
}

GridField fft(const GridField& u) {
  GridField w = u;
  fft_inplace(w, FFTW_FORWARD);
  return w;
}

GridField ifft(const GridField& u) {
  GridField w = u;
  fft_inplace(w, FFTW_BACKWARD);
  return w;
}

GridField apply_multiplier(const GridField& u,
                           const std::function<cplx(std::span<const double>)>& fn) {
  GridField w = fft(u);
  std::vector<double> xi(u.dim());
  std::size_t i = 0;
  for (MultiIndex mi(u.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    for (std::size_t a = 0; a < u.dim(); ++a) xi[a] = u.freq(a, idx[a]);
    w.v[i] *= fn(xi);
  }
  fft_inplace(w, FFTW_BACKWARD);
  return w;
}

GridField derivative(const GridField& u, std::size_t axis) {
  GridField w = fft(u);
  std::size_t i = 0;
  for (MultiIndex mi(u.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    long k = u.signed_mode(axis, idx[axis]);
    // The unmatched Nyquist mode has no well-defined sign; drop it.
    if (idx[axis] == u.shape[axis] / 2) {
      w.v[i] = 0.0;
      continue;
    }
    w.v[i] *= cplx(0.0, kTwoPi * double(k) / u.box[axis]);
  }
  fft_inplace(w, FFTW_BACKWARD);
  return w;
}

GridField spectral_upsample(const GridField& u, std::size_t factor) {
  if (factor == 1) return u;
  GridField spec = fft(u);
  std::vector<std::size_t> fine_shape(u.shape);
  for (auto& n : fine_shape) n *= factor;
  GridField out(fine_shape, u.box);
  // Copy each coarse mode into the matching slot of the fine spectrum. The
  // unmatched Nyquist mode of each axis is split evenly between +n/2 and
  // -n/2 so the fine field agrees with the coarse samples at every coarse
  // node, whatever the input's spectral content.
  std::size_t i = 0;
  std::vector<std::size_t> fidx(u.dim());
  std::vector<std::size_t> nyq;
  for (MultiIndex mi(u.shape); !mi.done(); mi.next(), ++i) {
    const auto& idx = *mi;
    nyq.clear();
    for (std::size_t a = 0; a < u.dim(); ++a) {
      long k = u.signed_mode(a, idx[a]);
      if (idx[a] == u.shape[a] / 2) nyq.push_back(a);
      fidx[a] = k >= 0 ? std::size_t(k) : fine_shape[a] - std::size_t(-k);
    }
    const cplx share = spec.v[i] / double(std::size_t(1) << nyq.size());
    for (std::size_t bits = 0; bits < (std::size_t(1) << nyq.size()); ++bits) {
      for (std::size_t b = 0; b < nyq.size(); ++b) {
        const std::size_t a = nyq[b];
        const std::size_t half = u.shape[a] / 2;
        fidx[a] = (bits >> b) & 1 ? half : fine_shape[a] - half;
      }
      out.v[out.flat(fidx)] = share;
    }
  }
  fft_inplace(out, FFTW_BACKWARD);
  double scale = double(out.total()) / double(u.total());
  for (cplx& z : out.v) z *= scale;
  return out;
}

GridField conj_field(const GridField& u) {
  GridField w = u;
  for (cplx& z : w.v) z = std::conj(z);
  return w;
}

GridField pointwise_mul(const GridField& a, const GridField& b) {
  if (!a.same_layout(b)) throw std::invalid_argument("pointwise_mul: layout mismatch");
  GridField w = a;
  for (std::size_t i = 0; i < w.v.size(); ++i) w.v[i] *= b.v[i];
  return w;
}

Interpolant::Interpolant(const GridField& u, std::size_t upsample)
    : fine_(spectral_upsample(u, upsample)) {}

cplx Interpolant::eval(std::span<const double> x) const {
  const std::size_t d = fine_.dim();
  if (x.size() != d) throw std::invalid_argument("Interpolant::eval: dim mismatch");
  // 4-point Lagrange weights per axis around the containing cell, with
  // periodic wraparound of the stencil.
  std::vector<std::array<double, 4>> w(d);
  std::vector<std::array<std::size_t, 4>> st(d);
  for (std::size_t a = 0; a < d; ++a) {
    const std::size_t n = fine_.shape[a];
    const double h = fine_.box[a] / double(n);
    double s = x[a] / h;
    double base = std::floor(s);
    double f = s - base;  // in [0,1)
    long i0 = long(base) - 1;
    for (int k = 0; k < 4; ++k) {
      long ik = i0 + k;
      long m = ik % long(n);
      if (m < 0) m += long(n);
      st[a][std::size_t(k)] = std::size_t(m);
    }
    const double t = f + 1.0;  // position relative to the first stencil node
    static const double node[4] = {0.0, 1.0, 2.0, 3.0};
    for (int k = 0; k < 4; ++k) {
      double num = 1.0, den = 1.0;
      for (int j = 0; j < 4; ++j) {
        if (j == k) continue;
        num *= t - node[j];
        den *= node[k] - node[j];
      }
      w[a][std::size_t(k)] = num / den;
    }
  }
  // Tensor contraction over the 4^d stencil.
  cplx acc(0.0, 0.0);
  std::vector<std::size_t> corner(d, 0);
  std::vector<std::size_t> idx(d);
  bool done = false;
  while (!done) {
    double wt = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      wt *= w[a][corner[a]];
      idx[a] = st[a][corner[a]];
    }
    acc += wt * fine_.v[fine_.flat(idx)];
    done = true;
    for (std::size_t a = d; a-- > 0;) {
      if (++corner[a] < 4) { done = false; break; }
      corner[a] = 0;
    }
  }
  return acc;
}

}  // namespace nnlab
