#include "semiaut/koebe.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <memory>
#include <numeric>
#include <ostream>

#include "semiaut/errors.hpp"

namespace semiaut {

namespace {

double max_defect(const std::vector<Curve>& curves) {
  double d = 0.0;
  for (const auto& c : curves) d = std::max(d, circularity_defect(c));
  return d;
}

void map_all(std::vector<Curve>& curves, cplx& base, const MobiusMap& m) {
  for (auto& c : curves) {
    for (auto& z : c) z = m.apply(z);
  }
  base = m.apply(base);
}

cplx point_inside(const Curve& c) {
  const Circle fit = fit_circle(c);
  if (point_in_curve(c, fit.center)) return fit.center;
  const cplx mean = std::accumulate(c.begin(), c.end(), cplx(0.0)) / static_cast<double>(c.size());
  if (point_in_curve(c, mean)) return mean;
  throw NumericalDegeneracy("could not find an interior point of a boundary image");
}

// rounds curves[index] (a hole); the rest of the picture stays outside the new circle
void hole_step(std::vector<Curve>& curves, cplx& base, std::size_t index, ConformalMapChain& chain,
               const DiscMapOptions& opts) {
  const Circle before = fit_circle(curves[index]);
  const cplx p = point_inside(curves[index]);
  const MobiusMap invert(0.0, 1.0, 1.0, -p);
  map_all(curves, base, invert);
  chain.push(invert);

  auto disc = std::make_shared<const DiscMap>(curves[index], 0.0, opts);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i == index) {
      curves[i] = disc->boundary_image();
      continue;
    }
    for (auto& z : curves[i]) {
      if (!disc->contains(z)) throw NumericalDegeneracy("boundary image left the region of a hole step");
      z = (*disc)(z);
    }
  }
  base = (*disc)(base);
  chain.push(disc);

  // back outside the unit circle, then roughly where the hole was
  const MobiusMap restore(before.center, before.radius, 1.0, 0.0);
  map_all(curves, base, restore);
  chain.push(restore);
}

void outer_step(std::vector<Curve>& curves, cplx& base, ConformalMapChain& chain, const DiscMapOptions& opts) {
  auto disc = std::make_shared<const DiscMap>(curves[0], base, opts);
  curves[0] = disc->boundary_image();
  for (std::size_t i = 1; i < curves.size(); ++i) {
    for (auto& z : curves[i]) {
      if (!disc->contains(z)) throw NumericalDegeneracy("hole image left the outer curve");
      z = (*disc)(z);
    }
  }
  base = (*disc)(base);
  chain.push(disc);
}

}  // namespace

MobiusMap concentric_normalization(const Circle& hole) {
  const double c = std::abs(hole.center);
  if (c < 1e-15) return MobiusMap::identity();
  const double s = (1.0 + c * c - hole.radius * hole.radius) / c;
  const double x = (s - std::sqrt(s * s - 4.0)) / 2.0;  // symmetric point inside the unit disc
  const cplx beta = x * hole.center / c;
  return MobiusMap::disc_automorphism(0.0, beta);
}

MobiusMap canonical_normalization(const std::vector<Curve>& curves, cplx basepoint_image,
                                  cplx chain_derivative_at_basepoint) {
  const Circle outer = fit_circle(curves.at(0));
  const MobiusMap to_unit = MobiusMap::affine(1.0 / outer.radius, -outer.center / outer.radius);
  if (curves.size() == 2) {
    const Circle hole = circle_image_strict(to_unit, fit_circle(curves[1]));
    const MobiusMap m = concentric_normalization(hole) * to_unit;
    const cplx w = m.apply(basepoint_image);
    const double theta = std::abs(w) > 0.0 ? -std::arg(w) : -std::arg(chain_derivative_at_basepoint * m.derivative(basepoint_image));
    return MobiusMap::rotation(theta) * m;
  }
  const MobiusMap m = MobiusMap::disc_automorphism(0.0, to_unit.apply(basepoint_image)) * to_unit;
  const cplx d = chain_derivative_at_basepoint * m.derivative(basepoint_image);
  return MobiusMap::rotation(-std::arg(d)) * m;
}

UniformizationResult koebe_uniformize(const SampledDomain& input, double tol, int max_iter,
                                      const KoebeOptions& options) {
  if (!(tol > 0.0)) throw PreconditionError("uniformization tolerance must be positive");
  if (max_iter < 0) throw PreconditionError("max_iter must be non-negative");
  const SampledDomain d = options.nodes > 0 ? input.resampled(options.nodes) : input;

  std::vector<Curve> curves{d.outer()};
  for (const auto& h : d.holes()) curves.push_back(h);
  cplx base = d.basepoint();
  ConformalMapChain chain;

  std::vector<std::size_t> order(d.holes().size());
  std::iota(order.begin(), order.end(), std::size_t{1});
  if (options.reverse_hole_order) std::reverse(order.begin(), order.end());

  UniformizationResult result;
  double res = max_defect(curves);
  while (result.iterations < options.min_sweeps || !(res < tol)) {
    if (result.iterations >= max_iter) break;
    for (std::size_t idx : order) hole_step(curves, base, idx, chain, options.disc_map);
    outer_step(curves, base, chain, options.disc_map);
    ++result.iterations;
    res = max_defect(curves);
  }

  const MobiusMap norm = canonical_normalization(curves, base, chain.derivative(d.basepoint()));
  const Circle last_hole = curves.size() == 2 ? fit_circle(curves[1]) : Circle{};
  chain.push(norm);
  map_all(curves, base, norm);

  std::vector<Circle> holes;
  for (std::size_t i = 1; i < curves.size(); ++i) {
    const Circle fit = fit_circle(curves[i]);
    holes.push_back(fit);
  }
  if (curves.size() == 2) {
    // concentric by construction; drop the rounding-level offset of the refit
    holes[0] = circle_image_strict(norm, last_hole);
  }
  result.residual = max_defect(curves);
  result.converged = result.residual < tol;
  result.circle_domain = CircleDomain(Circle{0.0, 1.0}, std::move(holes));
  result.map = std::move(chain);
  result.image_curves = std::move(curves);
  return result;
}

double modulus_of_annulus(const CircleDomain& cd) {
  if (cd.holes().size() != 1) throw PreconditionError("annulus modulus needs exactly one hole");
  const Circle& h = cd.holes()[0];
  if (std::abs(h.center - cd.outer().center) >= 1e-9) throw PreconditionError("annulus is not concentric");
  return std::log(cd.outer().radius / h.radius);
}

void write_result(std::ostream& os, const UniformizationResult& r) {
  os << std::setprecision(17);
  os << "converged " << (r.converged ? "true" : "false") << "\n";
  os << "iterations " << r.iterations << "\n";
  os << "residual " << r.residual << "\n";
  os << "connectivity " << r.circle_domain.connectivity() << "\n";
  const Circle& o = r.circle_domain.outer();
  os << "outer " << o.center.real() << " " << o.center.imag() << " " << o.radius << "\n";
  for (const auto& h : r.circle_domain.holes()) {
    os << "hole " << h.center.real() << " " << h.center.imag() << " " << h.radius << "\n";
  }
  os << "chain_steps " << r.map.size() << "\n";
}

}  // namespace semiaut
