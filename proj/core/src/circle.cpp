#include "semiaut/circle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "semiaut/errors.hpp"

namespace semiaut {

Circle Circle::make(cplx center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(std::abs(center))) {
    throw PreconditionError("circle radius must be positive and finite");
  }
  return {center, radius};
}

double Line::distance(cplx z) const {
  const cplx rel = (z - point) * std::conj(direction);
  return std::abs(rel.imag());
}

CircleOrLine circle_image(const MobiusMap& m, const Circle& c) {
  const auto pole = m.pole();
  if (!pole) {
    return Circle{m.apply(c.center), std::abs(m.a() / m.d()) * c.radius};
  }
  const cplx p = *pole;
  const double off = std::abs(p - c.center);
  if (std::abs(off - c.radius) <= 1e-12 * std::max(c.radius, off)) {
    // image is a line; pick two image points away from the pole
    const cplx dir_to_pole = (p - c.center) / off;
    const cplx q1 = c.center + c.radius * dir_to_pole * cplx(0.0, 1.0);
    const cplx q2 = c.center - c.radius * dir_to_pole * cplx(0.0, 1.0);
    const cplx w1 = m.apply(q1);
    const cplx w2 = m.apply(q2);
    return Line{w1, (w2 - w1) / std::abs(w2 - w1)};
  }
  // the center of the image is the image of the reflection of the pole in c
  cplx center;
  if (off == 0.0) {
    center = m.a() / m.c();
  } else {
    const cplx reflected = c.center + c.radius * c.radius / std::conj(p - c.center);
    center = m.apply(reflected);
  }
  const cplx q = c.center + c.radius * (c.center - p) / std::max(off, 1e-300);
  const cplx q_img = off == 0.0 ? m.apply(c.center + c.radius) : m.apply(q);
  return Circle{center, std::abs(q_img - center)};
}

Circle circle_image_strict(const MobiusMap& m, const Circle& c) {
  auto img = circle_image(m, c);
  if (const auto* circ = std::get_if<Circle>(&img)) return *circ;
  throw DegenerateConfiguration("circle image is a line");
}

Circle fit_circle(std::span<const cplx> pts) {
  if (pts.size() < 3) throw PreconditionError("circle fit needs at least 3 points");
  // shift to the centroid for conditioning
  cplx mean = 0.0;
  for (auto p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::MatrixXd a(pts.size(), 3);
  Eigen::VectorXd rhs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx q = pts[i] - mean;
    a(i, 0) = q.real();
    a(i, 1) = q.imag();
    a(i, 2) = 1.0;
    rhs(i) = std::norm(q);
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(rhs);
  const double cx = sol(0) / 2.0, cy = sol(1) / 2.0;
  const double r2 = sol(2) + cx * cx + cy * cy;
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw NumericalDegeneracy("circle fit failed (collinear points?)");
  return {mean + cplx(cx, cy), std::sqrt(r2)};
}

double circularity_defect(std::span<const cplx> pts, const Circle& fit) {
  double worst = 0.0;
  for (auto p : pts) worst = std::max(worst, std::abs(std::abs(p - fit.center) - fit.radius));
  return worst / fit.radius;
}

double circularity_defect(std::span<const cplx> pts) {
  return circularity_defect(pts, fit_circle(pts));
}

double inversive_distance(const Circle& a, const Circle& b) {
  const double d2 = std::norm(a.center - b.center);
  return std::abs((d2 - a.radius * a.radius - b.radius * b.radius) / (2.0 * a.radius * b.radius));
}

double circle_gap(const Circle& a, const Circle& b, bool first_is_outer) {
  const double d = std::abs(a.center - b.center);
  if (first_is_outer) return a.radius - d - b.radius;
  return d - a.radius - b.radius;
}

CircleDomain::CircleDomain(Circle outer, std::vector<Circle> holes)
    : outer_(outer), holes_(std::move(holes)) {
  if (!(outer_.radius > 0.0)) throw InvalidDomain("outer radius must be positive");
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    if (!(holes_[i].radius > 0.0)) throw InvalidDomain("hole radius must be positive");
    if (!(circle_gap(outer_, holes_[i], true) > 0.0)) {
      throw InvalidDomain("hole " + std::to_string(i) + " is not inside the outer circle");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!(circle_gap(holes_[i], holes_[j], false) > 0.0)) {
        throw InvalidDomain("holes " + std::to_string(j) + " and " + std::to_string(i) + " intersect");
      }
    }
  }
}

CircleDomain CircleDomain::annulus(double inner_radius) {
  return CircleDomain(Circle{}, {Circle::make(0.0, inner_radius)});
}

std::vector<Circle> CircleDomain::circles() const {
  std::vector<Circle> out{outer_};
  out.insert(out.end(), holes_.begin(), holes_.end());
  return out;
}

bool CircleDomain::contains(cplx z) const {
  if (!(std::abs(z - outer_.center) < outer_.radius)) return false;
  return std::none_of(holes_.begin(), holes_.end(),
                      [&](const Circle& h) { return std::abs(z - h.center) <= h.radius; });
}

double CircleDomain::boundary_distance(cplx z) const {
  double d = std::abs(outer_.radius - std::abs(z - outer_.center));
  for (const auto& h : holes_) d = std::min(d, std::abs(std::abs(z - h.center) - h.radius));
  return d;
}

double CircleDomain::min_gap() const {
  if (holes_.empty()) return outer_.radius;
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    g = std::min(g, circle_gap(outer_, holes_[i], true));
    for (std::size_t j = 0; j < i; ++j) g = std::min(g, circle_gap(holes_[i], holes_[j], false));
  }
  return g;
}

double CircleDomain::local_gap(cplx z) const {
  if (holes_.empty()) return outer_.radius;
  const auto all = circles();
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double d = std::abs(std::abs(z - all[i].center) - all[i].radius);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (j == nearest) continue;
    if (nearest == 0) g = std::min(g, circle_gap(all[0], all[j], true));
    else if (j == 0) g = std::min(g, circle_gap(all[0], all[nearest], true));
    else g = std::min(g, circle_gap(all[nearest], all[j], false));
  }
  return g;
}

bool CircleDomain::is_normalized(double tol) const {
  return std::abs(outer_.center) <= tol && std::abs(outer_.radius - 1.0) <= tol;
}

}  // namespace semiaut
