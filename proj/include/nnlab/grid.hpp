#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/** Periodic complex field sampled on a power-of-two tensor grid.
 *
 * Values are row-major with axis 0 slowest. Axis i covers [0, box[i])
 * with spacing box[i]/shape[i]; the frequency lattice of axis i is
 * xi = 2*pi*k/box[i] for signed integer k in [-n/2, n/2).
 */
struct GridField {
  std::vector<std::size_t> shape;
  std::vector<double> box;
  std::vector<cplx> v;

  GridField() = default;
  GridField(std::vector<std::size_t> shape_, std::vector<double> box_);

  std::size_t dim() const { return shape.size(); }
  std::size_t total() const;
  double spacing(std::size_t axis) const { return box[axis] / double(shape[axis]); }
  double min_spacing() const;
  /** Smallest Nyquist frequency pi*n/L over all axes. */
  double nyquist() const;

  /** Signed frequency index for position idx along an axis. */
  long signed_mode(std::size_t axis, std::size_t idx) const {
    return idx < shape[axis] / 2 ? long(idx) : long(idx) - long(shape[axis]);
  }
  double freq(std::size_t axis, std::size_t idx) const {
    return kTwoPi * double(signed_mode(axis, idx)) / box[axis];
  }

  std::size_t flat(std::span<const std::size_t> idx) const;

  /** Throws std::invalid_argument on non power-of-two shape or non-finite data. */
  void validate(const std::string& who = "GridField") const;
  bool same_layout(const GridField& o) const;

  GridField like_zero() const;

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(cplx s);
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(cplx s, GridField a) { return a *= s; }

  double sup_norm() const;
  /** Sup of |v| over points where mask != 0; mask empty means everywhere. */
  double sup_norm_masked(const std::vector<std::uint8_t>& mask) const;
  cplx mean() const;
};

/** Walks a multi-index over a shape in row-major order. */
struct MultiIndex {
  explicit MultiIndex(const std::vector<std::size_t>& shape)
      : shape_(shape), idx_(shape.size(), 0), done_(shape.empty()) {}
  bool done() const { return done_; }
  const std::vector<std::size_t>& operator*() const { return idx_; }
  void next() {
    for (std::size_t a = shape_.size(); a-- > 0;) {
      if (++idx_[a] < shape_[a]) return;
      idx_[a] = 0;
    }
    done_ = true;
  }

 private:
  const std::vector<std::size_t>& shape_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
};

void fft_inplace(GridField& u, int sign);  // sign -1 forward, +1 inverse (normalized)

GridField fft(const GridField& u);
GridField ifft(const GridField& u);

/** Applies fn(xi_vector) as a Fourier multiplier. */
GridField apply_multiplier(const GridField& u,
                           const std::function<cplx(std::span<const double>)>& fn);

/** Spectral partial derivative along one axis (Nyquist mode dropped). */
GridField derivative(const GridField& u, std::size_t axis);

/** Zero-pad the spectrum by `factor` per axis (trigonometric upsampling). */
GridField spectral_upsample(const GridField& u, std::size_t factor);

GridField conj_field(const GridField& u);
GridField pointwise_mul(const GridField& a, const GridField& b);

/** Periodic tensor-product cubic interpolation on a trigonometrically
 * upsampled copy of the field. eval() takes physical coordinates. */
class Interpolant {
 public:
  Interpolant() = default;
  explicit Interpolant(const GridField& u, std::size_t upsample = 2);
  cplx eval(std::span<const double> x) const;
  const GridField& fine() const { return fine_; }

 private:
  GridField fine_;
};

}  // namespace nnlab
