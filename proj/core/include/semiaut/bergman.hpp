#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <random>
#include <vector>

#include "semiaut/circle.hpp"

namespace semiaut {

/// Truncation degrees: ((z - c_0)/R)^n for 0 <= n <= outer_degree, (r_k/(z - c_k))^n for
/// 1 <= n <= hole_degrees[k].
struct BasisSpec {
  int outer_degree = 30;
  std::vector<int> hole_degrees;
  /// assembly refuses a scaled Gram whose condition number exceeds this
  double condition_limit = 1e14;

  static BasisSpec uniform(const CircleDomain& cd, int n);
  std::size_t size() const;
};

/// K_ab = d^a/dz^a d^b/d conj(w)^b K(z, w) at w = z, for a, b <= 2.
using KernelJet = std::array<std::array<cplx, 3>, 3>;

/// Metric g |dz|^2 with g = d^2 log K / dz d conj(z); curvature -(2/g) d^2 log g / dz d conj(z).
struct MetricSample {
  cplx z;
  double kernel = 0.0;
  double metric = 0.0;
  double curvature = 0.0;
  /// same curvature from a Richardson-extrapolated finite-difference Laplacian of log g
  double curvature_fd = 0.0;
};

/// Truncated Bergman kernel of a circle domain from an orthonormalized Laurent-type basis.
class BergmanModel {
 public:
  /// Gram entries come from boundary integrals (complex Green identity); the factorization is a
  /// pivoted Cholesky of the unit-diagonal Gram that drops pivots below 1e-13.
  /// Throws TruncationTooLarge when the scaled Gram has condition number above spec.condition_limit.
  static BergmanModel assemble(const CircleDomain& cd, const BasisSpec& spec);
  static BergmanModel assemble(const CircleDomain& cd, int n) { return assemble(cd, BasisSpec::uniform(cd, n)); }

  const CircleDomain& domain() const { return domain_; }
  const BasisSpec& basis() const { return spec_; }
  std::size_t basis_size() const { return spec_.size(); }
  std::size_t rank() const { return perm_.size(); }
  double condition_number() const { return condition_; }
  /// max |G - G^*| before symmetrization
  double gram_asymmetry() const { return asymmetry_; }
  /// unscaled Gram matrix (Hermitian)
  const Eigen::MatrixXcd& gram() const { return gram_; }

  /// Basis values and first two derivatives at z (columns 0, 1, 2).
  Eigen::MatrixXcd basis_values(cplx z, int max_order = 0) const;

  /// Throws OutOfDomain for points outside the domain.
  cplx kernel(cplx z, cplx w) const;
  KernelJet jet(cplx z) const;
  MetricSample metric(cplx z) const;

  /// Coefficients u with K(z, w) = sum_p conj(y_p(w)) u_p, y = scaled and permuted basis at w.
  Eigen::VectorXcd kernel_row(cplx z) const;
  Eigen::VectorXcd scaled_basis(cplx w) const;

 private:
  Eigen::VectorXcd orthonormal_values(cplx z) const;
  double metric_value(cplx z) const;
  void check_inside(cplx z) const;

  CircleDomain domain_;
  BasisSpec spec_;
  Eigen::MatrixXcd gram_;
  Eigen::VectorXd scale_;  // 1/sqrt(G_aa)
  std::vector<int> perm_;
  Eigen::MatrixXcd chol_;  // rank x rank lower factor
  double condition_ = 1.0;
  double asymmetry_ = 0.0;
};

BergmanModel assemble_model(const CircleDomain& cd, int n);
cplx kernel_eval(const BergmanModel& m, cplx z, cplx w);
MetricSample metric_eval(const BergmanModel& m, cplx z);

/// |int K(z, w) f(w) dA(w) - f(z)| by an independent polar quadrature about the outer center.
/// f is the polynomial with the given coefficients in w.
struct QuadratureOptions {
  int angular_nodes = 256;
  int radial_panels = 4;
};
double reproducing_check(const BergmanModel& m, const std::vector<cplx>& poly, cplx z,
                         const QuadratureOptions& q = {});

/// Area integral of f over the circle domain by the same polar quadrature.
cplx area_integral(const CircleDomain& cd, const std::function<cplx(cplx)>& f, const QuadratureOptions& q = {});

/// Probe points at distance in [band_lo, band_hi) * local gap from a boundary circle, spread
/// round robin over the circles at golden-angle positions.
std::vector<cplx> near_boundary_probes(const CircleDomain& cd, std::size_t count, double band_lo = 0.04,
                                       double band_hi = 0.05);

}  // namespace semiaut
