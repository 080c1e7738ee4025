#include "semiaut/sampled_domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "semiaut/errors.hpp"
#include "semiaut/spectral.hpp"

namespace semiaut {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

Curve oriented(Curve c, bool ccw) {
  if ((signed_area(c) > 0.0) != ccw) std::reverse(c.begin(), c.end());
  return c;
}

}  // namespace

double signed_area(const Curve& c) {
  double a = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) a += cross(c[i], c[(i + 1) % c.size()]);
  return 0.5 * a;
}

bool point_in_curve(const Curve& c, cplx z) {
  bool inside = false;
  const std::size_t n = c.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const cplx a = c[i], b = c[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

void check_simple(const Curve& c) {
  const std::size_t n = c.size();
  if (n < 8) throw InvalidCurve("curve needs at least 8 samples");
  for (auto z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidCurve("curve has non-finite samples");
  }
  // all segment pairs; the O(n^2) cost is negligible at the node counts used here
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] == c[(i + 1) % n]) throw InvalidCurve("curve has repeated consecutive samples");
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n])) {
        throw InvalidCurve("curve intersects itself near samples " + std::to_string(i) + " and " +
                           std::to_string(j));
      }
    }
  }
  if (std::abs(signed_area(c)) <= 0.0) throw InvalidCurve("curve degenerates to zero area");
}

bool curves_intersect(const Curve& a, const Curve& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_cross(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
    }
  }
  return false;
}

double min_interior_angle(const Curve& c) {
  const std::size_t n = c.size();
  double worst = 2.0 * kPi;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx in = c[i] - c[(i + n - 1) % n];
    const cplx out = c[(i + 1) % n] - c[i];
    const double turn = std::arg(out / in);
    worst = std::min(worst, kPi - turn);
  }
  return worst;
}

Curve sample_circle(const Circle& c, std::size_t n, bool clockwise) {
  return sample_fourier_curve(c.center, c.radius, {}, {}, n, clockwise);
}

Curve sample_fourier_curve(cplx center, double radius, const std::vector<double>& cos_coeffs,
                           const std::vector<double>& sin_coeffs, std::size_t n, bool clockwise) {
  Curve out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n) * (clockwise ? -1.0 : 1.0);
    double r = 1.0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) r += cos_coeffs[k] * std::cos(static_cast<double>(k + 1) * t);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) r += sin_coeffs[k] * std::sin(static_cast<double>(k + 1) * t);
    out[j] = center + radius * r * std::polar(1.0, t);
  }
  return out;
}

SampledDomain::SampledDomain(Curve outer, std::vector<Curve> holes, cplx basepoint)
    : outer_(std::move(outer)), holes_(std::move(holes)), basepoint_(basepoint) {
  check_simple(outer_);
  outer_ = oriented(std::move(outer_), true);
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    check_simple(holes_[i]);
    holes_[i] = oriented(std::move(holes_[i]), false);
    if (!point_in_curve(outer_, holes_[i].front()) || curves_intersect(outer_, holes_[i])) {
      throw InvalidDomain("hole " + std::to_string(i) + " is not inside the outer curve");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (curves_intersect(holes_[i], holes_[j]) || point_in_curve(holes_[i], holes_[j].front()) ||
          point_in_curve(holes_[j], holes_[i].front())) {
        throw InvalidDomain("holes " + std::to_string(j) + " and " + std::to_string(i) + " overlap or nest");
      }
    }
  }
  if (!contains(basepoint_)) throw InvalidDomain("basepoint is not inside the domain");
  auto check_angle = [](const Curve& c, const std::string& name) {
    if (min_interior_angle(c) < kPi / 4.0) {
      throw InvalidDomain(name + " has a corner sharper than pi/4; refine or smooth the boundary");
    }
  };
  check_angle(outer_, "outer curve");
  for (std::size_t i = 0; i < holes_.size(); ++i) check_angle(holes_[i], "hole " + std::to_string(i));
}

SampledDomain SampledDomain::from_circle_domain(const CircleDomain& cd, cplx basepoint, std::size_t n) {
  std::vector<Curve> holes;
  for (const auto& h : cd.holes()) holes.push_back(sample_circle(h, n, true));
  return {sample_circle(cd.outer(), n), std::move(holes), basepoint};
}

bool SampledDomain::contains(cplx z) const {
  if (!point_in_curve(outer_, z)) return false;
  return std::none_of(holes_.begin(), holes_.end(), [&](const Curve& h) { return point_in_curve(h, z); });
}

SampledDomain SampledDomain::resampled(std::size_t n) const {
  std::vector<Curve> holes;
  for (const auto& h : holes_) holes.push_back(spectral::resample(h, n));
  return {spectral::resample(outer_, n), std::move(holes), basepoint_};
}

void SampledDomain::write(std::ostream& os) const {
  os << std::setprecision(17);
  os << "basepoint " << basepoint_.real() << " " << basepoint_.imag() << "\n";
  auto put = [&](const char* kind, const Curve& c) {
    os << "curve " << kind << " " << c.size() << "\n";
    for (auto z : c) os << z.real() << " " << z.imag() << "\n";
  };
  put("outer", outer_);
  for (const auto& h : holes_) put("hole", h);
}

SampledDomain SampledDomain::read(std::istream& is) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> SampledDomain {
    throw InvalidDomain("domain file line " + std::to_string(line_no) + ": " + what);
  };
  bool have_base = false;
  cplx base;
  Curve outer;
  bool have_outer = false;
  std::vector<Curve> holes;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "basepoint") {
      double x, y;
      if (!(ls >> x >> y)) return fail("expected 'basepoint x y'");
      base = {x, y};
      have_base = true;
    } else if (key == "curve") {
      std::string kind;
      std::size_t n = 0;
      if (!(ls >> kind >> n) || (kind != "outer" && kind != "hole")) return fail("expected 'curve outer|hole N'");
      Curve c;
      c.reserve(n);
      while (c.size() < n && std::getline(is, line)) {
        ++line_no;
        std::istringstream ps(line);
        double x, y;
        if (!(ps >> x >> y)) return fail("expected a point 'x y'");
        c.emplace_back(x, y);
      }
      if (c.size() != n) return fail("curve ended early");
      if (kind == "outer") {
        if (have_outer) return fail("second outer curve");
        outer = std::move(c);
        have_outer = true;
      } else {
        holes.push_back(std::move(c));
      }
    } else {
      return fail("unknown record '" + key + "'");
    }
  }
  if (!have_base) return fail("missing basepoint");
  if (!have_outer) return fail("missing outer curve");
  return {std::move(outer), std::move(holes), base};
}

SampledDomain SampledDomain::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidDomain("cannot read domain file " + path);
  return read(is);
}

void SampledDomain::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw PreconditionError("cannot write domain file " + path);
  write(os);
}

double boundary_sample_distance(const SampledDomain& d0, const SampledDomain& d) {
  if (d0.holes().size() != d.holes().size()) throw PreconditionError("domains have different connectivity");
  auto curve_dist = [](const Curve& a, const Curve& b) {
    if (a.size() != b.size()) throw PreconditionError("curves have different sample counts");
    double sup = 0.0, lip = 0.0;
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j) {
      const cplx dj = b[j] - a[j];
      const cplx dn = b[(j + 1) % n] - a[(j + 1) % n];
      sup = std::max(sup, std::abs(dj));
      lip = std::max(lip, std::abs(dn - dj) / std::abs(a[(j + 1) % n] - a[j]));
    }
    return sup + lip;
  };
  double out = curve_dist(d0.outer(), d.outer());
  for (std::size_t i = 0; i < d0.holes().size(); ++i) out = std::max(out, curve_dist(d0.holes()[i], d.holes()[i]));
  return out;
}

}  // namespace semiaut
