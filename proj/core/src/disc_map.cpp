#include "semiaut/disc_map.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "semiaut/errors.hpp"
#include "semiaut/spectral.hpp"

namespace semiaut {

namespace {
constexpr cplx kI{0.0, 1.0};
}

DiscMap::DiscMap(Curve curve, cplx w0, DiscMapOptions options)
    : curve_(std::move(curve)), w0_(w0), options_(options) {
  check_simple(curve_);
  if (signed_area(curve_) < 0.0) {
    std::reverse(curve_.begin(), curve_.end());
    reversed_ = true;
  }
  if (!point_in_curve(curve_, w0_)) throw PreconditionError("disc map basepoint is not inside the curve");

  const std::size_t n = curve_.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  dz_ = spectral::derivative(curve_, 1);
  const auto d2z = spectral::derivative(curve_, 2);

  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd rhs(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) {
        a(s, s) = 0.5 + inv_n * std::imag(d2z[s] / (2.0 * dz_[s]));
      } else {
        a(s, t) = inv_n * std::imag(dz_[t] / (curve_[t] - curve_[s]));
      }
    }
    rhs(s) = -std::log(std::abs(curve_[s] - w0_));
  }
  const Eigen::VectorXd mu = a.partialPivLu().solve(rhs);
  const double solve_res = (a * mu - rhs).cwiseAbs().maxCoeff();
  if (!std::isfinite(solve_res) || solve_res > 1e-8) {
    throw SolverFailure("disc map integral equation solve failed", solve_res);
  }

  std::vector<double> mu_v(mu.data(), mu.data() + n);
  const auto dmu = spectral::derivative(mu_v, 1);
  boundary_F_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    cplx sum = dmu[s];
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s) continue;
      sum += (mu_v[t] - mu_v[s]) * dz_[t] / (curve_[t] - curve_[s]);
    }
    boundary_F_[s] = mu_v[s] + sum * inv_n / kI;
  }
  rotation_ = 0.0;
  rotation_ = log_part(w0_).imag();

  image_nodes_.resize(n);
  image_weights_.resize(n);
  const auto dF = spectral::derivative(boundary_F_, 1);
  for (std::size_t s = 0; s < n; ++s) {
    const cplx e = std::exp(boundary_F_[s] - kI * rotation_);
    image_nodes_[s] = (curve_[s] - w0_) * e;
    image_weights_[s] = e * (dz_[s] + (curve_[s] - w0_) * dF[s]);
  }
  boundary_image_ = image_nodes_;
  if (reversed_) std::reverse(boundary_image_.begin(), boundary_image_.end());
  boundary_coeffs_ = spectral::coefficients(image_nodes_);

  const auto mid_z = spectral::shifted(curve_, 0.5);
  const auto mid_F = spectral::shifted(boundary_F_, 0.5);
  residual_ = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    residual_ = std::max(residual_, std::abs(std::abs(image_nodes_[s]) - 1.0));
    residual_ = std::max(residual_, std::abs(std::abs(mid_z[s] - w0_) * std::exp(mid_F[s].real()) - 1.0));
  }
  if (!(residual_ <= options_.max_residual)) {
    throw SolverFailure("disc map boundary certificate above threshold; increase the node count", residual_);
  }
}

cplx DiscMap::log_part(cplx z) const {
  cplx num = 0.0, den = 0.0;
  for (std::size_t s = 0; s < curve_.size(); ++s) {
    const cplx diff = curve_[s] - z;
    if (diff == cplx(0.0)) return boundary_F_[s] - kI * rotation_;
    const cplx w = dz_[s] / diff;
    num += boundary_F_[s] * w;
    den += w;
  }
  return num / den - kI * rotation_;
}

cplx DiscMap::log_part_derivative(cplx z, cplx fz) const {
  cplx num = 0.0, den = 0.0;
  for (std::size_t s = 0; s < curve_.size(); ++s) {
    const cplx diff = curve_[s] - z;
    const cplx w = dz_[s] / diff;
    num += (boundary_F_[s] - kI * rotation_ - fz) * w / diff;
    den += w;
  }
  return num / den;
}

cplx DiscMap::operator()(cplx z) const { return (z - w0_) * std::exp(log_part(z)); }

cplx DiscMap::derivative(cplx z) const {
  for (std::size_t s = 0; s < curve_.size(); ++s) {
    if (curve_[s] == z) return image_weights_[s] / dz_[s];
  }
  const cplx F = log_part(z);
  return std::exp(F) * (1.0 + (z - w0_) * log_part_derivative(z, F));
}

cplx DiscMap::boundary_value(double t) const {
  const double n = static_cast<double>(curve_.size());
  const double tt = reversed_ ? -t - 2.0 * std::numbers::pi / n : t;
  return spectral::evaluate(boundary_coeffs_, tt);
}

cplx DiscMap::inverse(cplx w) const {
  if (!(std::abs(w) < 1.0)) throw PreconditionError("disc map inverse needs |w| < 1");
  cplx num = 0.0, den = 0.0;
  for (std::size_t s = 0; s < curve_.size(); ++s) {
    const cplx diff = image_nodes_[s] - w;
    if (diff == cplx(0.0)) return curve_[s];
    const cplx v = image_weights_[s] / diff;
    num += curve_[s] * v;
    den += v;
  }
  cplx z = num / den;
  if (!contains(z)) z = w0_;
  for (int it = 0; it < options_.newton_iterations; ++it) {
    const cplx r = (*this)(z) - w;
    if (std::abs(r) < options_.newton_tol) break;
    cplx step = r / derivative(z);
    double damp = 1.0;
    while (!contains(z - damp * step) && damp > 1e-6) damp *= 0.5;
    z -= damp * step;
    if (std::abs(damp * step) < 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

}  // namespace semiaut
