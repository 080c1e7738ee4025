#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "semiaut/defining_grid.hpp"

namespace semiaut {

using cplx = std::complex<double>;

struct PointC2 {
  cplx z1{0.0, 0.0};
  cplx z2{0.0, 0.0};

  double norm2() const { return std::norm(z1) + std::norm(z2); }
  double norm() const { return std::sqrt(norm2()); }
  /// real coordinates (Re z1, Im z1, Re z2, Im z2)
  std::array<double, 4> real() const { return {z1.real(), z1.imag(), z2.real(), z2.imag()}; }
  static PointC2 from_real(const std::array<double, 4>& x) { return {{x[0], x[1]}, {x[2], x[3]}}; }

  friend PointC2 operator+(const PointC2& a, const PointC2& b) { return {a.z1 + b.z1, a.z2 + b.z2}; }
  friend PointC2 operator-(const PointC2& a, const PointC2& b) { return {a.z1 - b.z1, a.z2 - b.z2}; }
  friend PointC2 operator*(double s, const PointC2& p) { return {s * p.z1, s * p.z2}; }
};

/// exp(1 - 1/(1 - |p|^2)) inside the unit ball, 0 outside.
double psi_eval(const PointC2& p);
/// Same profile as a function of u = |p|^2.
double psi_profile(double u);
/// max |grad psi|, computed numerically (about 2.170).
double psi_lipschitz_constant();

/// Power `power` of the ball automorphism
/// (z1, z2) -> ((z1 - a)/(1 - conj(a) z1), sqrt(1 - |a|^2) z2 / (1 - conj(a) z1)).
class BallAutomorphism {
 public:
  /// Throws ParameterDomainError unless |a| < 1.
  explicit BallAutomorphism(cplx a, std::int64_t power = 1);

  cplx a() const { return a_; }
  std::int64_t power() const { return power_; }
  BallAutomorphism inverse() const { return BallAutomorphism(a_, -power_); }
  BallAutomorphism pow(std::int64_t n) const { return BallAutomorphism(a_, power_ * n); }

  /// Closed-form iterate; valid on the closed ball and wherever the denominator is nonzero.
  PointC2 operator()(const PointC2& p) const;
  /// |D(p)|^2 where 1 - |Psi p|^2 = (1 - |p|^2) / |D(p)|^2.
  double denominator_norm2(const PointC2& p) const;
  /// 1 / |D(p)|^2, computed without overflow.
  double inverse_denominator_norm2(const PointC2& p) const;

 private:
  cplx a_;
  std::int64_t power_;
  cplx rot_;      // a / |a|
  double s_;      // power * artanh|a|
};

/// The automorphism Psi_{1/10} the construction is built on.
BallAutomorphism base_automorphism(std::int64_t power = 1);

/// Bump center (sqrt(2^{1-k} - 4^{-k}), 1 - 2^{-k}); lies on the unit sphere.
PointC2 bump_center(int k);
double bump_amplitude(int k);
double bump_dilation(int k);
/// 10^{-k} psi(10^k (p - c_k))
double bump_term(int k, const PointC2& p);
/// -1 + |p|^2 - 10^{-k} psi(10^k (p - c_k))
double eta_eval(int k, const PointC2& p);

/// Truncated stage: levels 1..k, level-i pieces at powers m in 2^{i-1} Z with |m| <= bound.
/// The default bound J 2^{k-1} counts J steps of the stage generator Psi^{2^{k-1}}.
struct DomainStage {
  int k = 1;
  int J = 12;
  /// explicit power bound; 0 selects J 2^{k-1}
  std::int64_t power_bound = 0;
};
std::int64_t stage_power_bound(const DomainStage& stage);
/// Stage k + 1 over the same power range, so that it adds exactly the level-(k+1) pieces.
DomainStage refine_stage(const DomainStage& stage);
/// One piece Psi^m(U_level) of a stage.
struct StagePiece {
  int level = 1;
  std::int64_t power = 0;
};

std::vector<StagePiece> stage_pieces(const DomainStage& stage);
/// Exponent step of the generator of the listed automorphisms at stage k: 2^{k-1}.
std::int64_t generator_power(int k);

/// inside iff some piece has eta_i(Psi^{-m} p) < 0
bool membership(const DomainStage& stage, const PointC2& p);
/// |p|^2 - 1 - max over pieces of bump_i(Psi^{-m} p) / |D_m(Psi^{-m} p)|^2.
/// Same sign as the min over pieces of the pulled-back eta values.
double stage_defining_value(const DomainStage& stage, const PointC2& p);

/// A 2-plane slice of R^4: coordinates u, v vary over the given axes, the rest fixed at `base`.
struct SliceSpec {
  std::array<double, 4> base{0.0, 0.0, 0.0, 0.0};
  int axis_u = 0;
  int axis_v = 2;
  double u_min = -1.2, u_max = 1.2;
  double v_min = -1.2, v_max = 1.2;
};

/// Slices through c_{k+1}, windowed to resolve the bump that distinguishes stage k from k + 1:
/// (Re z1, Re z2) and (Re z1, Im z1).
std::vector<SliceSpec> default_stage_slices(int k);

/// Throws PreconditionError when resolution < 8.
DefiningGrid defining_grid(const DomainStage& stage, const SliceSpec& slice, std::size_t resolution);
/// Full 4-D grid over [lo, hi]^4.
DefiningGrid defining_grid(const DomainStage& stage, double lo, double hi, std::size_t resolution);

/// Minimum eigenvalue of the Levi form of eta_k at p (complex tangent of the level set).
/// Throws PreconditionError when |eta_k(p)| > tol, NumericalDegeneracy on vanishing gradient.
double levi_form_min_eigen(int k, const PointC2& p, double tol = 1e-8);

/// Boundary point of U_k along the ray through `direction` (bisection on t in [0.5, 1.5]).
PointC2 boundary_point(int k, const PointC2& direction);

/// Psi^{j 2^{k-1}}_{1/10}(c_k) for j in [j_lo, j_hi].
std::vector<PointC2> bump_orbit_centers(int k, int j_lo, int j_hi);
PointC2 bump_orbit_center(int k, std::int64_t power);

/// Random points of Omega_k(J): half uniform in the ball, half inside bump pieces whose
/// hyperbolic shift |m| artanh(1/10) stays below max_shift (beyond that double precision
/// cannot separate a piece from the accumulation point).
std::vector<PointC2> sample_stage_points(const DomainStage& stage, std::size_t n, std::mt19937_64& rng,
                                         double max_shift = 8.0);

}  // namespace semiaut
