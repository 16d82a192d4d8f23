#pragma once
// Model domains carried by a defining function on a periodic ambient box.
// rho < 0 marks the interior. Derivative caches use 4th-order centered finite
// differences: they are local, hence exact wherever the defining field is
// polynomial, and the model builders keep a polynomial plateau around the
// zero set so boundary geometry is measured at machine precision. (Global
// spectral differentiation of any periodic closure window carries O(0.1)
// absolute Hessian error at the resolutions a 4-d ambient grid can afford.)

#include "nnlab/grid.hpp"
#include "nnlab/znorm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nnlab {

// C-infinity step: exactly 0 for t <= 0, exactly 1 for t >= 1
double smooth_step(double t);

// 4th-order centered first/second difference along one axis, periodic wrap
GridField fd_derivative(const GridField& u, std::size_t axis);
GridField fd_second_derivative(const GridField& u, std::size_t axis);

// sup|u| + sum_a sup|d_a u| + sum_{a<=b} sup|d_a d_b u|; the sups run over
// the masked points only (empty mask means everywhere), though stencils
// still read neighbouring values
double c2_norm(const GridField& u, const std::vector<std::uint8_t>& mask = {});

struct DefiningFunction {
  GridField rho;
  std::vector<GridField> grad;  // fd_derivative per axis, cached eagerly

  explicit DefiningFunction(GridField r);
  std::size_t dim() const { return rho.shape.size(); }
};

struct BoundarySample {
  std::vector<double> x;  // Newton-projected onto {rho = 0}, physical coords
};

// grid edges where rho changes sign, projected onto the zero set by two
// Newton steps along the interpolated gradient
std::vector<BoundarySample> boundary_samples(const DefiningFunction& rho);

struct LeviSample {
  std::vector<double> x;
  std::vector<cplx> hermitian;  // complex Hessian, row-major n x n
  std::vector<cplx> dz;         // holomorphic gradient, length n
  double restricted_min;        // smallest eigenvalue on the complex tangent
};

// complex Hessian restricted to the complex tangent space at every boundary
// sample; ambient dimension must be 2n with n >= 2. Throws when the gradient
// degenerates at a sample (the message names the point).
std::vector<LeviSample> levi_spectrum(const DefiningFunction& rho);
double levi_min(const DefiningFunction& rho);

// rho composed with the inverse map G = I + g; the displacement must stay
// under an eighth of the box so the chain remains compactly inside
DefiningFunction update_defining(const DefiningFunction& rho, const TorusMap& G);

struct StabilityBudget {
  double eps_D;       // allowed C2 drift of the defining function
  double delta_rho0;  // scale for the per-step map-norm budget delta/(j+1)^2
  double levi_floor;  // baseline minimum Levi eigenvalue
  // drift is measured on the sublevel neighbourhood {rho_0 < u_margin} of the
  // initial closure rather than the whole periodic box, which also carries
  // the artificial closure window
  double u_margin = 0.5;
  void validate() const;
};

// eps = a tenth of the Levi floor over the fitted Levi sensitivity; delta by
// backward induction: sum_j delta/(j+1)^2 = delta pi^2/6 worth of updates may
// spend at most eps of C2 drift at the fitted update sensitivity
StabilityBudget make_stability_budget(const DefiningFunction& rho0,
                                      double levi_sensitivity,
                                      double update_sensitivity,
                                      double levi_floor_override = 0.0);

// fitted over the model quadric at production resolution; tests re-measure
// and assert these stay valid ceilings. The map norm is the max over
// displacement components, so the update constant absorbs a dimension factor
// (measured: 9.9 over random four-component maps, 2.9 single-component).
inline constexpr double kQuadricLeviSensitivity = 2.0;
inline constexpr double kQuadricUpdateSensitivity = 12.0;

struct ChainRow {
  int step = 0;
  double f_norm = 0.0, f_budget = 0.0;
  double rho_drift = 0.0;
  double levi = 0.0;           // NaN when the ambient has no complex tangent
  double dist_boundary = 0.0;  // NaN when the domain has no boundary
  bool pass = true;
  std::string note;
};

struct ChainReport {
  std::vector<ChainRow> rows;
  bool pass = true;
  std::string failure;  // first violated budget, naming step and quantity
};

// per-step map-norm budget, cumulative C2 drift, Levi floor and boundary
// distance floor (the latter two with slack_constant * eps_D of slack)
ChainReport check_chain_stability(const std::vector<DefiningFunction>& chain,
                                  const StabilityBudget& budget,
                                  const std::vector<double>& f_norms,
                                  double slack_constant = 4.0);

// sum_a c_a |z_a|^2 - 1 + amp Re(z_1^2) on an 8-wide box, exactly polynomial
// on the plateau max_a |x_a - L/2| <= 3.05 and closed up to a positive
// constant outside; dimension 2 * coeffs.size()
DefiningFunction make_quadric_domain(std::size_t n_per_axis,
                                     const std::vector<double>& coeffs,
                                     double re_z1sq_amp = 0.0);

// whole periodic box as the domain: rho = -1, no boundary
DefiningFunction make_torus_domain(const std::vector<std::size_t>& shape,
                                   const std::vector<double>& box);

struct Chart {
  std::vector<double> phi_linear;  // row-major d x d, invertible
  std::vector<double> phi_offset;
  GridField rho_graph;  // graph function on the (d-1)-dim section
  GridField chi;        // boundary cutoff on the ambient grid
};

struct DomainChart {
  GridField chi0;  // interior cutoff
  std::vector<Chart> charts;
  // max |chi0 + sum chi_nu^2 - 1| over the flagged samples
  double partition_defect(const std::vector<std::uint8_t>& closure) const;
};

struct GraphDomain {
  DefiningFunction rho;
  DomainChart chart;
  std::vector<std::uint8_t> mask;  // rho < 0
  double graph_grad_sup;           // cone condition: < 1
};

// band between a cosine graph x2 = height + amp cos(2 pi k x1 / L) and a flat
// top, with a two-chart partition chi0 + chi1^2 + chi2^2 = 1 on the closure
GraphDomain make_graph_domain(std::size_t n1, std::size_t n2, double box,
                              double height, double amp, int k_mode);

}  // namespace nnlab
