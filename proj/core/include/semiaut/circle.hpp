#pragma once

#include <span>
#include <variant>
#include <vector>

#include "semiaut/mobius.hpp"

namespace semiaut {

struct Circle {
  cplx center{0.0, 0.0};
  double radius = 1.0;

  /// Throws PreconditionError for non-positive or non-finite radius.
  static Circle make(cplx center, double radius);
  cplx point(double t) const { return center + std::polar(radius, t); }
  bool contains(cplx z) const { return std::abs(z - center) < radius; }
};

/// Line through `point` with unit `direction`.
struct Line {
  cplx point{0.0, 0.0};
  cplx direction{1.0, 0.0};

  double distance(cplx z) const;
};

using CircleOrLine = std::variant<Circle, Line>;

/// Image of a circle under a Mobius map, in closed form.
CircleOrLine circle_image(const MobiusMap& m, const Circle& c);
/// Same, but throws DegenerateConfiguration when the image is a line.
Circle circle_image_strict(const MobiusMap& m, const Circle& c);

/// Algebraic least-squares circle fit (Kasa). Needs >= 3 non-collinear points.
Circle fit_circle(std::span<const cplx> pts);
/// max | |p - center| - radius | / radius against the Kasa fit.
double circularity_defect(std::span<const cplx> pts);
double circularity_defect(std::span<const cplx> pts, const Circle& fit);

/// Inversive distance |(|ca - cb|^2 - ra^2 - rb^2) / (2 ra rb)|; invariant under Mobius maps.
double inversive_distance(const Circle& a, const Circle& b);

/// Outer circle with finitely many disjoint closed discs removed.
class CircleDomain {
 public:
  CircleDomain() = default;
  /// Validates nesting and disjointness; throws InvalidDomain.
  CircleDomain(Circle outer, std::vector<Circle> holes);

  static CircleDomain disc() { return CircleDomain(Circle{}, {}); }
  static CircleDomain annulus(double inner_radius);

  const Circle& outer() const { return outer_; }
  const std::vector<Circle>& holes() const { return holes_; }
  std::size_t connectivity() const { return 1 + holes_.size(); }
  /// outer followed by holes
  std::vector<Circle> circles() const;

  bool contains(cplx z) const;
  /// Distance to the nearest boundary circle (meaningful for interior points).
  double boundary_distance(cplx z) const;
  /// Smallest Euclidean gap between two boundary circles (outer radius for the disc).
  double min_gap() const;
  /// Gap between the boundary circle nearest to z and the next-nearest one; for the disc, the outer radius.
  double local_gap(cplx z) const;
  bool is_normalized(double tol = 1e-7) const;

 private:
  Circle outer_{};
  std::vector<Circle> holes_;
};

/// Euclidean gap between two circles of a circle domain (boundaries, taking nesting into account).
double circle_gap(const Circle& outer_or_hole, const Circle& other, bool first_is_outer);

}  // namespace semiaut
