#pragma once

namespace nnlab {

/** Standard bump w(r) = exp(-1/(1-r^2)) on |r| < 1, else 0. */
double bump_value(double r);

/** int w over the line. */
double bump_integral();

/** Normalized transform B(s) = int w(r) exp(-i s r) dr / int w; real and
 * even. Tabulated once by a zero-padded FFT (w vanishes to all orders at the
 * support edge, so the table is spectrally accurate), cubic interpolation. */
double bump_transform(double s);

/** Largest tabulated |s|; the transform is treated as 0 beyond it. */
double bump_transform_smax();

/** Central moments m_k = int r^k w dr / int w (zero for odd k). */
double bump_central_moment(int k);

}  // namespace nnlab
