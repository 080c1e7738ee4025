#pragma once

#include <vector>

#include "semiaut/sampled_domain.hpp"

namespace semiaut {

struct DiscMapOptions {
  /// Certificate threshold on | |f| - 1 | at interpolated boundary midpoints.
  double max_residual = 1e-4;
  int newton_iterations = 30;
  double newton_tol = 1e-13;
};

/// Riemann map of the interior of a smooth Jordan curve onto the unit disc, w0 -> 0, f'(w0) > 0.
///
/// f(z) = (z - w0) exp(F(z)) with Re F = -log|z - w0| on the curve. Re F is a double-layer
/// potential whose real density solves a second-kind Nystrom system on the trapezoid nodes;
/// interior values use the barycentric Cauchy formula, which stays accurate near the curve.
class DiscMap {
 public:
  /// The samples are read as a 2 pi-periodic parametrization (trigonometric interpolation).
  /// Throws InvalidCurve for non-simple input, PreconditionError when w0 is not inside,
  /// SolverFailure when the boundary certificate exceeds options.max_residual.
  DiscMap(Curve curve, cplx w0, DiscMapOptions options = {});

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  /// Barycentric inverse on the image nodes followed by Newton refinement.
  cplx inverse(cplx w) const;

  bool contains(cplx z) const { return point_in_curve(curve_, z); }
  cplx basepoint() const { return w0_; }
  const Curve& curve() const { return curve_; }
  /// f at the curve samples, in input order.
  const std::vector<cplx>& boundary_image() const { return boundary_image_; }
  /// max | |f| - 1 | at spectrally interpolated midpoints.
  double residual() const { return residual_; }
  /// f at curve parameter t in [0, 2 pi), by trigonometric interpolation of the boundary values.
  cplx boundary_value(double t) const;
  std::size_t nodes() const { return curve_.size(); }

 private:
  cplx log_part(cplx z) const;  // F(z) - i Im F(w0)
  cplx log_part_derivative(cplx z, cplx fz) const;

  Curve curve_;          // counterclockwise working copy
  bool reversed_ = false;
  cplx w0_;
  DiscMapOptions options_;
  std::vector<cplx> dz_;       // zeta'(t)
  std::vector<cplx> boundary_F_;
  std::vector<cplx> boundary_image_;  // input order
  std::vector<cplx> image_nodes_;     // working order
  std::vector<cplx> image_weights_;   // d f(zeta(t)) / dt
  std::vector<cplx> boundary_coeffs_;
  double rotation_ = 0.0;  // Im F(w0)
  double residual_ = 0.0;
};

}  // namespace semiaut
