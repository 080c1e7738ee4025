#pragma once

#include <complex>
#include <iosfwd>
#include <optional>

namespace semiaut {

using cplx = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or infinity.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  constexpr ExtendedComplex(cplx z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  constexpr ExtendedComplex(double x) : z_(x) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; meaningless for infinity.
  constexpr cplx value() const { return z_; }

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  cplx z_{0.0, 0.0};
  bool infinite_ = false;
};

/// z -> (az + b) / (cz + d), stored with ad - bc = 1 (unique up to a global sign).
class MobiusMap {
 public:
  MobiusMap() = default;
  /// Throws PreconditionError when ad - bc vanishes (relative to the coefficient scale).
  MobiusMap(cplx a, cplx b, cplx c, cplx d);

  static MobiusMap identity() { return {}; }
  static MobiusMap translation(cplx shift) { return {1.0, shift, 0.0, 1.0}; }
  static MobiusMap affine(cplx scale, cplx shift) { return {scale, shift, 0.0, 1.0}; }
  /// z -> 1/z
  static MobiusMap reciprocal() { return {0.0, 1.0, 1.0, 0.0}; }
  /// Disc automorphism z -> e^{i theta} (z - alpha) / (1 - conj(alpha) z), |alpha| < 1.
  static MobiusMap disc_automorphism(double theta, cplx alpha);
  static MobiusMap rotation(double theta) { return disc_automorphism(theta, 0.0); }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx determinant() const { return a_ * d_ - b_ * c_; }

  ExtendedComplex operator()(const ExtendedComplex& z) const;
  /// Finite-to-finite evaluation; throws PreconditionError at the pole.
  cplx apply(cplx z) const;
  /// m'(z) = 1 / (cz + d)^2 for a determinant-one map.
  cplx derivative(cplx z) const;

  MobiusMap inverse() const { return {d_, -b_, -c_, a_}; }
  /// Pole -d/c, or nullopt for affine maps.
  std::optional<cplx> pole() const;
  bool is_affine() const { return c_ == cplx(0.0); }

 private:
  cplx a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

/// first after second: z -> first(second(z)).
MobiusMap compose(const MobiusMap& first, const MobiusMap& second);
inline MobiusMap operator*(const MobiusMap& first, const MobiusMap& second) {
  return compose(first, second);
}

/// Max coefficient difference between two maps, minimized over the global sign.
double coefficient_distance(const MobiusMap& m1, const MobiusMap& m2);
bool approx_equal(const MobiusMap& m1, const MobiusMap& m2, double tol = 1e-9);

std::ostream& operator<<(std::ostream& os, const MobiusMap& m);

}  // namespace semiaut
