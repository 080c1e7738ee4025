#include "semiaut/semicontinuity.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "semiaut/errors.hpp"

namespace semiaut {

namespace {

AutGroupDescriptor normalized_group(const SampledDomain& d, const SemicontinuityOptions& opt, const char* which) {
  try {
    const auto u = koebe_uniformize(d, opt.uniformize_tol, opt.max_sweeps, opt.koebe);
    if (!u.converged) throw SolverFailure("uniformization did not converge", u.residual);
    return enumerate_automorphisms(u.circle_domain, opt.aut_tol, opt.search);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("semicontinuity, ") + which + " domain: " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("semicontinuity, ") + which + " domain: " + e.what());
  }
}

std::size_t order_of(const AutGroupDescriptor& g) {
  if (const auto* f = std::get_if<FiniteGroup>(&g)) return f->elements.size();
  return 0;
}

Curve pair_hole(double rel_amplitude, std::size_t n) {
  return sample_fourier_curve(0.5, 0.15, {0.0, 0.6 * rel_amplitude}, {0.0, 0.0, 0.4 * rel_amplitude}, n, true);
}

Curve negated(const Curve& c) {
  Curve out(c);
  for (auto& z : out) z = -z;
  return out;
}

}  // namespace

HomomorphismCertificate match_groups(const AutGroupDescriptor& base, const AutGroupDescriptor& perturbed, double tol,
                                     std::size_t continuous_samples) {
  HomomorphismCertificate c;
  c.base_kind = group_kind(base);
  c.perturbed_kind = group_kind(perturbed);
  c.base_order = order_of(base);
  c.perturbed_order = order_of(perturbed);
  const auto elements = sample_elements(perturbed, continuous_samples);
  for (const auto& e : elements) {
    const auto [m, d] = nearest_element(base, e);
    c.pairs.push_back({e, m, d});
    c.max_matching_distance = std::max(c.max_matching_distance, d);
  }
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (coefficient_distance(c.pairs[i].match, c.pairs[j].match) < 1e-6) c.injective = false;
    }
  }
  for (const auto& p : c.pairs) {
    for (const auto& q : c.pairs) {
      const MobiusMap lhs = nearest_element(base, p.element * q.element).first;
      c.composition_defect = std::max(c.composition_defect, coefficient_distance(lhs, p.match * q.match));
    }
  }
  if (std::holds_alternative<FiniteGroup>(perturbed)) {
    const auto gd = group_defects(elements);
    c.closure_defect = gd.closure;
    c.inverse_defect = gd.inverse;
    if (!gd.has_identity) c.closure_defect = std::numeric_limits<double>::infinity();
  }
  c.passed = std::isfinite(c.max_matching_distance) && c.injective && c.composition_defect < tol && c.closure_defect < tol && c.inverse_defect < tol;
  std::ostringstream r;
  if (c.passed) {
    r << "Aut(perturbed) of kind " << c.perturbed_kind << " embeds injectively into Aut(base) of kind " << c.base_kind;
  } else {
    r << "counterexample:";
    if (!std::isfinite(c.max_matching_distance)) r << " an element has no counterpart in the base group;";
    if (!c.injective) r << " matching is not injective;";
    if (!(c.composition_defect < tol)) r << " composition table violated (" << c.composition_defect << ");";
    if (!(c.closure_defect < tol) || !(c.inverse_defect < tol)) r << " perturbed list is not a group;";
  }
  c.report = r.str();
  return c;
}

HomomorphismCertificate semicontinuity_experiment(const SampledDomain& d0, const SampledDomain& d, double tol,
                                                  const SemicontinuityOptions& options) {
  const double dist = boundary_sample_distance(d0, d);
  if (!(dist <= options.epsilon_threshold)) {
    throw PreconditionError("perturbation too large: boundary-sample distance " + std::to_string(dist));
  }
  const auto g0 = normalized_group(d0, options, "base");
  const auto g = normalized_group(d, options, "perturbed");
  auto cert = match_groups(g0, g, tol, options.continuous_samples);
  cert.domain_distance = dist;
  return cert;
}

SampledDomain symmetric_pair_domain(std::size_t n) { return symmetric_pair_perturbation(0.0, n); }

SampledDomain symmetric_pair_perturbation(double eps, std::size_t n) {
  const Curve outer = sample_fourier_curve(0.0, 1.0, {0.0, 0.6 * eps}, {0.0, 0.0, 0.0, 0.4 * eps}, n);
  const Curve h1 = pair_hole(eps, n);
  SampledDomain raw(outer, {h1, negated(h1)}, 0.0);
  const MobiusMap shift(1.0, eps, eps, 1.0);
  return raw.transformed([&](cplx z) { return shift.apply(z); }, 0.0).validated();
}

SampledDomain asymmetric_pair_perturbation(double amplitude, std::size_t n) {
  const Curve outer = sample_circle(Circle{}, n);
  return {outer, {pair_hole(amplitude, n), negated(pair_hole(0.0, n))}, 0.0};
}

void write_certificate(std::ostream& os, const HomomorphismCertificate& c) {
  os << std::setprecision(17);
  os << "passed " << (c.passed ? "true" : "false") << "\n";
  os << "base_kind " << c.base_kind << "\n";
  os << "base_order " << c.base_order << "\n";
  os << "perturbed_kind " << c.perturbed_kind << "\n";
  os << "perturbed_order " << c.perturbed_order << "\n";
  os << "domain_distance " << c.domain_distance << "\n";
  os << "injective " << (c.injective ? "true" : "false") << "\n";
  os << "max_matching_distance " << c.max_matching_distance << "\n";
  os << "composition_defect " << c.composition_defect << "\n";
  os << "closure_defect " << c.closure_defect << "\n";
  os << "inverse_defect " << c.inverse_defect << "\n";
  os << "report " << c.report << "\n";
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    const auto& e = c.pairs[i].element;
    const auto& m = c.pairs[i].match;
    os << "pair " << i << " distance " << c.pairs[i].distance << " element " << e.a() << " " << e.b() << " " << e.c()
       << " " << e.d() << " match " << m.a() << " " << m.b() << " " << m.c() << " " << m.d() << "\n";
  }
}

}  // namespace semiaut
