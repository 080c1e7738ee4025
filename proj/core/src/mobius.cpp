#include "semiaut/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "semiaut/errors.hpp"

namespace semiaut {

MobiusMap::MobiusMap(cplx a, cplx b, cplx c, cplx d) {
  const cplx det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(scale > 0.0) || std::abs(det) <= 1e-14 * scale * scale || !std::isfinite(std::abs(det))) {
    throw PreconditionError("degenerate Mobius coefficients: ad - bc = 0");
  }
  const cplx s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

MobiusMap MobiusMap::disc_automorphism(double theta, cplx alpha) {
  if (!(std::abs(alpha) < 1.0)) {
    throw ParameterDomainError("disc automorphism needs |alpha| < 1");
  }
  const cplx u = std::polar(1.0, theta);
  return {u, -u * alpha, -std::conj(alpha), 1.0};
}

ExtendedComplex MobiusMap::operator()(const ExtendedComplex& z) const {
  if (z.is_infinite()) {
    if (c_ == cplx(0.0)) return ExtendedComplex::infinity();
    return a_ / c_;
  }
  const cplx den = c_ * z.value() + d_;
  if (den == cplx(0.0)) return ExtendedComplex::infinity();
  return (a_ * z.value() + b_) / den;
}

cplx MobiusMap::apply(cplx z) const {
  const cplx den = c_ * z + d_;
  if (den == cplx(0.0)) throw PreconditionError("Mobius map evaluated at its pole");
  return (a_ * z + b_) / den;
}

cplx MobiusMap::derivative(cplx z) const {
  const cplx den = c_ * z + d_;
  if (den == cplx(0.0)) throw PreconditionError("Mobius derivative evaluated at its pole");
  return 1.0 / (den * den);
}

std::optional<cplx> MobiusMap::pole() const {
  if (c_ == cplx(0.0)) return std::nullopt;
  return -d_ / c_;
}

MobiusMap compose(const MobiusMap& f, const MobiusMap& g) {
  return {f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(),
          f.c() * g.a() + f.d() * g.c(), f.c() * g.b() + f.d() * g.d()};
}

double coefficient_distance(const MobiusMap& m1, const MobiusMap& m2) {
  auto dist = [&](double sign) {
    return std::max({std::abs(m1.a() - sign * m2.a()), std::abs(m1.b() - sign * m2.b()),
                     std::abs(m1.c() - sign * m2.c()), std::abs(m1.d() - sign * m2.d())});
  };
  return std::min(dist(1.0), dist(-1.0));
}

bool approx_equal(const MobiusMap& m1, const MobiusMap& m2, double tol) {
  return coefficient_distance(m1, m2) <= tol;
}

std::ostream& operator<<(std::ostream& os, const MobiusMap& m) {
  return os << "[" << m.a() << ", " << m.b() << "; " << m.c() << ", " << m.d() << "]";
}

}  // namespace semiaut
