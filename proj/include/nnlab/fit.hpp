#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nnlab {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/** Least-squares line through (x_i, y_i). */
inline SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two points");
  double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  SlopeFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  f.points = x.size();
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

/** Slope of log2(value) against level; nonpositive values are rejected. */
inline SlopeFit fit_log2_slope(const std::vector<double>& level,
                               const std::vector<double>& value) {
  std::vector<double> y(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!(value[i] > 0.0)) throw std::invalid_argument("fit_log2_slope: nonpositive value");
    y[i] = std::log2(value[i]);
  }
  return fit_line(level, y);
}

}  // namespace nnlab
