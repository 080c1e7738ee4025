#include "semiaut/aut_group.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "semiaut/errors.hpp"
#include "semiaut/koebe.hpp"

namespace semiaut {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double circle_distance(const Circle& a, const Circle& b) {
  return std::abs(a.center - b.center) + std::abs(a.radius - b.radius);
}

double reach(const Circle& c) { return std::abs(c.center) + c.radius; }

// a point well inside the domain, for the orientation check of candidate automorphisms
cplx interior_probe(const CircleDomain& cd) {
  cplx best = cd.outer().center;
  double best_d = -1.0;
  const double r = cd.outer().radius;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const cplx z = cd.outer().center + r * cplx(-1.0 + i / 20.0, -1.0 + j / 20.0);
      if (!cd.contains(z)) continue;
      const double d = cd.boundary_distance(z);
      if (d > best_d) {
        best_d = d;
        best = z;
      }
    }
  }
  return best;
}

struct Assignment {
  std::vector<std::size_t> target;  // per source hole (index into targets)
};

// residual vector of psi = R_theta A_alpha against the fixed assignment
Eigen::VectorXd matching_residual(const Eigen::Vector3d& x, const std::vector<Circle>& sources,
                                  const std::vector<Circle>& targets, const std::vector<std::size_t>& assign) {
  Eigen::VectorXd r(3 * sources.size());
  const cplx alpha(x(1), x(2));
  if (!(std::abs(alpha) < 1.0)) {
    r.setConstant(1e3);
    return r;
  }
  const MobiusMap psi = MobiusMap::disc_automorphism(x(0), alpha);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto img = circle_image(psi, sources[i]);
    const auto* c = std::get_if<Circle>(&img);
    if (!c) {
      r.segment(3 * i, 3).setConstant(1e3);
      continue;
    }
    const Circle& t = targets[assign[i]];
    r(3 * i) = c->center.real() - t.center.real();
    r(3 * i + 1) = c->center.imag() - t.center.imag();
    r(3 * i + 2) = c->radius - t.radius;
  }
  return r;
}

Eigen::Vector3d levenberg_marquardt(Eigen::Vector3d x, const std::vector<Circle>& sources,
                                    const std::vector<Circle>& targets, const std::vector<std::size_t>& assign,
                                    int iterations) {
  double lambda = 1e-3;
  Eigen::VectorXd r = matching_residual(x, sources, targets, assign);
  double cost = r.squaredNorm();
  for (int it = 0; it < iterations && cost > 1e-30; ++it) {
    Eigen::MatrixXd jac(r.size(), 3);
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d xp = x;
      const double h = 1e-7;
      xp(k) += h;
      jac.col(k) = (matching_residual(xp, sources, targets, assign) - r) / h;
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      const Eigen::Vector3d step = a.ldlt().solve(-g);
      const Eigen::Vector3d xn = x + step;
      const Eigen::VectorXd rn = matching_residual(xn, sources, targets, assign);
      if (rn.squaredNorm() < cost) {
        x = xn;
        r = rn;
        cost = rn.squaredNorm();
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return x;
}

bool multisets_agree(std::vector<double> a, std::vector<double> b, double tol) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol * (1.0 + std::abs(a[i]))) return false;
  }
  return true;
}

void add_unique(std::vector<MobiusMap>& out, const MobiusMap& m) {
  for (const auto& e : out) {
    if (coefficient_distance(e, m) < 1e-6) return;
  }
  out.push_back(m);
}

std::vector<MobiusMap> search_finite(const CircleDomain& cd, double tol, const AutSearchOptions& opt) {
  const auto circles = cd.circles();
  const std::size_t nc = circles.size();
  const std::vector<Circle> sources(circles.begin() + 1, circles.end());
  std::vector<std::vector<double>> inv(nc, std::vector<double>(nc, 0.0));
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      if (i != j) inv[i][j] = inversive_distance(circles[i], circles[j]);
    }
  }
  double reach_src = 0.0;
  for (const auto& s : sources) reach_src = std::max(reach_src, reach(s));

  std::vector<MobiusMap> found;
  for (std::size_t j = 0; j < nc; ++j) {
    std::vector<double> from_outer, from_j;
    for (std::size_t i = 1; i < nc; ++i) from_outer.push_back(inv[0][i]);
    for (std::size_t t = 0; t < nc; ++t) {
      if (t != j) from_j.push_back(inv[j][t]);
    }
    if (!multisets_agree(from_outer, from_j, opt.invariant_tol)) continue;

    const MobiusMap jmap = j == 0 ? MobiusMap::identity() : MobiusMap(circles[j].center, circles[j].radius, 1.0, 0.0);
    const MobiusMap jinv = jmap.inverse();
    std::vector<Circle> targets;
    std::vector<std::size_t> target_index;
    double reach_tgt = 0.0;
    for (std::size_t t = 0; t < nc; ++t) {
      if (t == j) continue;
      const Circle img = circle_image_strict(jinv, circles[t]);
      targets.push_back(img);
      target_index.push_back(t);
      reach_tgt = std::max(reach_tgt, reach(img));
    }
    // allowed[i][t]: inversive distances to the outer circle / its image must agree
    std::vector<std::vector<bool>> allowed(sources.size(), std::vector<bool>(targets.size()));
    for (std::size_t i = 0; i < sources.size(); ++i) {
      for (std::size_t t = 0; t < targets.size(); ++t) {
        const double a = inv[0][i + 1], b = inv[j][target_index[t]];
        allowed[i][t] = std::abs(a - b) <= opt.invariant_tol * (1.0 + a);
      }
    }
    const double bound = std::min(std::tanh(std::atanh(std::min(reach_src, 1.0 - 1e-15)) +
                                            std::atanh(std::min(reach_tgt, 1.0 - 1e-15))),
                                  1.0 - 1e-9);

    const int na = opt.alpha_radial, nb = opt.alpha_angular, nt = opt.theta_steps;
    std::vector<double> res(static_cast<std::size_t>(na) * nb * nt, kInf);
    auto at = [&](int a, int b, int t) -> double& {
      return res[(static_cast<std::size_t>(a) * nb + b) * nt + t];
    };
    auto alpha_of = [&](int a, int b) {
      return std::polar(bound * a / std::max(1, na - 1), 2.0 * kPi * b / nb);
    };
    std::vector<Circle> imgs(sources.size());
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < nb; ++b) {
        const MobiusMap am = MobiusMap::disc_automorphism(0.0, alpha_of(a, b));
        for (std::size_t i = 0; i < sources.size(); ++i) imgs[i] = circle_image_strict(am, sources[i]);
        for (int t = 0; t < nt; ++t) {
          const cplx rot = std::polar(1.0, 2.0 * kPi * t / nt);
          double worst = 0.0;
          for (std::size_t i = 0; i < sources.size() && worst < opt.seed_threshold * 4; ++i) {
            const Circle rc{rot * imgs[i].center, imgs[i].radius};
            double best = kInf;
            for (std::size_t k = 0; k < targets.size(); ++k) {
              if (allowed[i][k]) best = std::min(best, circle_distance(rc, targets[k]));
            }
            worst = std::max(worst, best);
          }
          at(a, b, t) = worst;
        }
      }
    }

    struct Seed {
      double value;
      int a, b, t;
    };
    std::vector<Seed> seeds;
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < nb; ++b) {
        for (int t = 0; t < nt; ++t) {
          const double v = at(a, b, t);
          if (!(v < opt.seed_threshold)) continue;
          bool is_min = true;
          for (int da = -1; da <= 1 && is_min; ++da) {
            const int aa = a + da;
            if (aa < 0 || aa >= na) continue;
            for (int db = -1; db <= 1 && is_min; ++db) {
              const int bb = (b + db + nb) % nb;
              for (int dt = -1; dt <= 1; ++dt) {
                const int tt = (t + dt + nt) % nt;
                if (at(aa, bb, tt) < v) {
                  is_min = false;
                  break;
                }
              }
            }
          }
          if (is_min) seeds.push_back({v, a, b, t});
        }
      }
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) { return x.value < y.value; });
    if (seeds.size() > 400) seeds.resize(400);

    for (const auto& s : seeds) {
      const cplx alpha = alpha_of(s.a, s.b);
      const double theta = 2.0 * kPi * s.t / nt;
      // assignment from the seed
      const MobiusMap psi0 = MobiusMap::disc_automorphism(theta, alpha);
      std::vector<std::size_t> assign(sources.size());
      for (std::size_t i = 0; i < sources.size(); ++i) {
        const Circle img = circle_image_strict(psi0, sources[i]);
        double best = kInf;
        for (std::size_t k = 0; k < targets.size(); ++k) {
          if (!allowed[i][k]) continue;
          const double d = circle_distance(img, targets[k]);
          if (d < best) {
            best = d;
            assign[i] = k;
          }
        }
      }
      const Eigen::Vector3d x = levenberg_marquardt(Eigen::Vector3d(theta, alpha.real(), alpha.imag()), sources,
                                                    targets, assign, opt.polish_iterations);
      const cplx a_pol(x(1), x(2));
      if (!(std::abs(a_pol) < 1.0)) continue;
      const MobiusMap phi = jmap * MobiusMap::disc_automorphism(x(0), a_pol);
      if (is_automorphism(cd, phi, tol)) add_unique(found, phi);
    }
  }
  return found;
}

}  // namespace

AutGroupDescriptor enumerate_automorphisms(const CircleDomain& cd, double tol, const AutSearchOptions& options) {
  if (!cd.is_normalized(1e-7)) throw PreconditionError("automorphism search needs the outer circle to be the unit circle");
  if (!cd.holes().empty() && cd.min_gap() < 1e-6) {
    throw DegenerateConfiguration("boundary circles are closer than 1e-6");
  }
  if (cd.holes().empty()) return FullDiscGroup{};
  if (cd.holes().size() == 1) {
    const MobiusMap conj = concentric_normalization(cd.holes()[0]);
    const Circle h = circle_image_strict(conj, cd.holes()[0]);
    return AnnulusGroup{std::log(1.0 / h.radius), h.radius, conj};
  }
  FiniteGroup g;
  g.elements = search_finite(cd, tol, options);
  // identity first, then by coefficient order for stable output
  std::stable_sort(g.elements.begin(), g.elements.end(), [](const MobiusMap& x, const MobiusMap& y) {
    const double dx = coefficient_distance(x, MobiusMap::identity());
    const double dy = coefficient_distance(y, MobiusMap::identity());
    return dx < dy;
  });
  g.note = "search-complete at stated resolution: theta " + std::to_string(options.theta_steps) + ", alpha " +
           std::to_string(options.alpha_radial) + "x" + std::to_string(options.alpha_angular) + ", tol " +
           std::to_string(tol);
  return g;
}

bool is_automorphism(const CircleDomain& cd, const MobiusMap& m, double tol) {
  const auto circles = cd.circles();
  std::vector<bool> used(circles.size(), false);
  for (const auto& c : circles) {
    const auto img = circle_image(m, c);
    const auto* ic = std::get_if<Circle>(&img);
    if (!ic) return false;
    std::size_t best_k = circles.size();
    double best = kInf;
    for (std::size_t k = 0; k < circles.size(); ++k) {
      const double err = std::max(std::abs(ic->center - circles[k].center), std::abs(ic->radius - circles[k].radius));
      if (err < best) {
        best = err;
        best_k = k;
      }
    }
    if (!(best < tol) || used[best_k]) return false;
    used[best_k] = true;
  }
  const cplx p = interior_probe(cd);
  const auto mp = m(ExtendedComplex(p));
  return !mp.is_infinite() && cd.contains(mp.value());
}

std::string group_kind(const AutGroupDescriptor& g) {
  if (std::holds_alternative<FullDiscGroup>(g)) return "FullDiscGroup";
  if (std::holds_alternative<AnnulusGroup>(g)) return "AnnulusGroup";
  return "FiniteGroup";
}

std::vector<MobiusMap> sample_elements(const AutGroupDescriptor& g, std::size_t n) {
  std::vector<MobiusMap> out;
  if (const auto* f = std::get_if<FiniteGroup>(&g)) return f->elements;
  if (const auto* a = std::get_if<AnnulusGroup>(&g)) {
    const MobiusMap inv_conj = a->conjugator.inverse();
    const MobiusMap flip(0.0, a->inner_radius, 1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const MobiusMap rot = MobiusMap::rotation(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
      out.push_back(inv_conj * rot * a->conjugator);
      out.push_back(inv_conj * rot * flip * a->conjugator);
    }
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(MobiusMap::rotation(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n)));
  }
  return out;
}

std::pair<MobiusMap, double> nearest_element(const AutGroupDescriptor& g, const MobiusMap& m) {
  if (const auto* f = std::get_if<FiniteGroup>(&g)) {
    if (f->elements.empty()) throw PreconditionError("empty finite group");
    std::pair<MobiusMap, double> best{f->elements.front(), kInf};
    for (const auto& e : f->elements) {
      const double d = coefficient_distance(e, m);
      if (d < best.second) best = {e, d};
    }
    return best;
  }
  if (const auto* a = std::get_if<AnnulusGroup>(&g)) {
    const MobiusMap n = a->conjugator * m * a->conjugator.inverse();
    const MobiusMap inv_conj = a->conjugator.inverse();
    // determinant one: a/d = a^2 for a rotation, b/c = -b^2 for z -> r e^{i phi} / z
    const MobiusMap rot = MobiusMap::rotation(2.0 * std::arg(n.a()));
    const MobiusMap flip =
        MobiusMap::rotation(kPi + 2.0 * std::arg(n.b())) * MobiusMap(0.0, a->inner_radius, 1.0, 0.0);
    const MobiusMap c1 = inv_conj * rot * a->conjugator;
    const MobiusMap c2 = inv_conj * flip * a->conjugator;
    const double d1 = coefficient_distance(c1, m), d2 = coefficient_distance(c2, m);
    return d1 <= d2 ? std::pair{c1, d1} : std::pair{c2, d2};
  }
  const auto alpha = m.inverse()(ExtendedComplex(0.0));
  if (alpha.is_infinite() || !(std::abs(alpha.value()) < 1.0)) return {MobiusMap::identity(), kInf};
  const cplx al = alpha.value();
  const double theta = std::arg(m.derivative(al) * (1.0 - std::norm(al)));
  const MobiusMap e = MobiusMap::disc_automorphism(theta, al);
  return {e, coefficient_distance(e, m)};
}

GroupDefects group_defects(const std::vector<MobiusMap>& elements) {
  GroupDefects d;
  auto dist_to_list = [&](const MobiusMap& m) {
    double best = kInf;
    for (const auto& e : elements) best = std::min(best, coefficient_distance(e, m));
    return best;
  };
  for (const auto& e : elements) {
    d.inverse = std::max(d.inverse, dist_to_list(e.inverse()));
    for (const auto& f : elements) d.closure = std::max(d.closure, dist_to_list(e * f));
  }
  d.has_identity = dist_to_list(MobiusMap::identity()) < 1e-9;
  return d;
}

bool three_point_identity_check(const MobiusMap& m, cplx p1, cplx p2, cplx p3) {
  const std::array<cplx, 3> p{p1, p2, p3};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(p[i] - p[j]) < 1e-12) throw PreconditionError("three-point check needs distinct points");
    }
  }
  for (const auto& z : p) {
    const auto w = m(ExtendedComplex(z));
    if (w.is_infinite() || !(std::abs(w.value() - z) <= 1e-10)) return false;
  }
  if (coefficient_distance(m, MobiusMap::identity()) > 1e-9) {
    throw ClaimViolation("Mobius map fixes three points but is not the identity");
  }
  return true;
}

WongRosayVerdict wong_rosay_classify(const CircleDomain& cd) {
  WongRosayVerdict v;
  switch (cd.holes().size()) {
    case 0:
      v = {'a', false, true, "disc: automorphism group acts transitively, orbits accumulate at every boundary point"};
      break;
    case 1:
      v = {'b', true, false, "annulus: two circles of automorphisms, compact, no boundary orbit accumulation"};
      break;
    default:
      v = {'d', true, false, "connectivity >= 3: finite automorphism group, no boundary orbit accumulation"};
      break;
  }
  v.description += " (unbounded case excluded: circle domains here are bounded)";
  return v;
}

OrbitStats orbit_probe(const CircleDomain& cd, const std::vector<MobiusMap>& elements, cplx x) {
  if (!cd.contains(x) || cd.boundary_distance(x) < 1e-12) throw PreconditionError("orbit probe point must be interior");
  OrbitStats s;
  s.min_boundary_distance = kInf;
  for (const auto& e : elements) {
    const cplx y = e.apply(x);
    s.orbit.push_back(y);
    s.min_boundary_distance = std::min(s.min_boundary_distance, cd.boundary_distance(y));
  }
  s.count = s.orbit.size();
  for (std::size_t i = 0; i < s.orbit.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) s.max_spread = std::max(s.max_spread, std::abs(s.orbit[i] - s.orbit[j]));
  }
  s.distance_ratio = s.min_boundary_distance / cd.boundary_distance(x);
  return s;
}

OrbitStats orbit_probe(const CircleDomain& cd, const AutGroupDescriptor& g, cplx x, std::size_t n) {
  if (std::holds_alternative<FullDiscGroup>(g)) return orbit_probe(cd, disc_escape_sequence(n), x);
  const std::size_t per_family = std::holds_alternative<AnnulusGroup>(g) ? std::max<std::size_t>(1, n / 2) : n;
  return orbit_probe(cd, sample_elements(g, per_family), x);
}

std::vector<MobiusMap> disc_escape_sequence(std::size_t n) {
  std::vector<MobiusMap> out;
  for (std::size_t j = 1; j <= n; ++j) {
    out.push_back(MobiusMap::disc_automorphism(0.0, 1.0 - std::ldexp(1.0, -static_cast<int>(j))));
  }
  return out;
}

void write_group(std::ostream& os, const AutGroupDescriptor& g) {
  os << std::setprecision(17);
  os << "kind " << group_kind(g) << "\n";
  if (const auto* a = std::get_if<AnnulusGroup>(&g)) {
    os << "modulus " << a->modulus << "\n";
    os << "inner_radius " << a->inner_radius << "\n";
    const auto& c = a->conjugator;
    os << "conjugator " << c.a().real() << " " << c.a().imag() << " " << c.b().real() << " " << c.b().imag() << " "
       << c.c().real() << " " << c.c().imag() << " " << c.d().real() << " " << c.d().imag() << "\n";
  }
  if (const auto* f = std::get_if<FiniteGroup>(&g)) {
    os << "order " << f->elements.size() << "\n";
    os << "note " << f->note << "\n";
    for (const auto& e : f->elements) {
      os << "element " << e.a().real() << " " << e.a().imag() << " " << e.b().real() << " " << e.b().imag() << " "
         << e.c().real() << " " << e.c().imag() << " " << e.d().real() << " " << e.d().imag() << "\n";
    }
  }
}

}  // namespace semiaut
