#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "semiaut/circle.hpp"

namespace semiaut {

using Curve = std::vector<cplx>;

/// Signed area of the closed polygon (positive when counterclockwise).
double signed_area(const Curve& c);
/// Crossing-number test against the closed polygon.
bool point_in_curve(const Curve& c, cplx z);
/// Throws InvalidCurve when the closed polygon crosses itself or has fewer than 8 points.
void check_simple(const Curve& c);
bool curves_intersect(const Curve& a, const Curve& b);
/// Smallest interior angle at a vertex, measured on the left of the curve's orientation.
double min_interior_angle(const Curve& c);

/// n equispaced samples of a circle, counterclockwise.
Curve sample_circle(const Circle& c, std::size_t n, bool clockwise = false);
/// center + radius (1 + sum_k a_k cos(k t) + b_k sin(k t)) e^{i t}
Curve sample_fourier_curve(cplx center, double radius, const std::vector<double>& cos_coeffs,
                           const std::vector<double>& sin_coeffs, std::size_t n, bool clockwise = false);

/// Finitely connected planar domain given by sampled Jordan curves and an interior basepoint.
/// The outer curve is stored counterclockwise, holes clockwise.
class SampledDomain {
 public:
  SampledDomain() = default;
  /// Validates and fixes orientation; throws InvalidDomain / InvalidCurve.
  SampledDomain(Curve outer, std::vector<Curve> holes, cplx basepoint);

  static SampledDomain from_circle_domain(const CircleDomain& cd, cplx basepoint, std::size_t n);

  const Curve& outer() const { return outer_; }
  const std::vector<Curve>& holes() const { return holes_; }
  cplx basepoint() const { return basepoint_; }
  std::size_t connectivity() const { return 1 + holes_.size(); }
  bool contains(cplx z) const;

  /// Every curve mapped pointwise by f (no validation of the result).
  template <class F>
  SampledDomain transformed(F&& f, cplx new_basepoint) const {
    SampledDomain out;
    out.outer_.reserve(outer_.size());
    for (auto z : outer_) out.outer_.push_back(f(z));
    for (const auto& h : holes_) {
      Curve c;
      c.reserve(h.size());
      for (auto z : h) c.push_back(f(z));
      out.holes_.push_back(std::move(c));
    }
    out.basepoint_ = new_basepoint;
    return out;
  }
  /// Re-runs validation (for domains built by transformed()).
  SampledDomain validated() const { return SampledDomain(outer_, holes_, basepoint_); }
  /// Trigonometric resampling of every curve to n points.
  SampledDomain resampled(std::size_t n) const;

  void write(std::ostream& os) const;
  static SampledDomain read(std::istream& is);
  static SampledDomain load(const std::string& path);
  void save(const std::string& path) const;

 private:
  Curve outer_;
  std::vector<Curve> holes_;
  cplx basepoint_{0.0, 0.0};
};

/// max over curves of sup|delta| + max |delta_{j+1} - delta_j| / |p_{j+1} - p_j|, delta = d - d0.
/// Throws PreconditionError unless the sample layouts agree.
double boundary_sample_distance(const SampledDomain& d0, const SampledDomain& d);

}  // namespace semiaut
