#include <cmath>
#include <sstream>
#include <string>
#include <variant>

#include "semiaut/aut_group.hpp"
#include "semiaut/errors.hpp"
#include "semiaut/koebe.hpp"
#include "semiaut/semicontinuity.hpp"
#include "semiaut_tools/experiments.hpp"

namespace semiaut::tools {

namespace {

CsvTable circle_table(const std::string& name, const CircleDomain& cd) {
  CsvTable t(name, {{"index", ColumnKind::integer},
                    {"role", ColumnKind::text},
                    {"center_x", ColumnKind::real},
                    {"center_y", ColumnKind::real},
                    {"radius", ColumnKind::real}});
  const auto cs = cd.circles();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    t.add({static_cast<std::int64_t>(i), std::string(i == 0 ? "outer" : "hole"), cs[i].center.real(),
           cs[i].center.imag(), cs[i].radius});
  }
  return t;
}

std::vector<Column> mobius_columns() {
  std::vector<Column> cols;
  for (const char* n : {"a", "b", "c", "d"}) {
    cols.push_back({std::string("re_") + n, ColumnKind::real});
    cols.push_back({std::string("im_") + n, ColumnKind::real});
  }
  return cols;
}

std::vector<Cell> mobius_cells(const MobiusMap& m) {
  return {m.a().real(), m.a().imag(), m.b().real(), m.b().imag(),
          m.c().real(), m.c().imag(), m.d().real(), m.d().imag()};
}

template <class F>
std::string to_text(F&& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

cplx point_of(const std::vector<double>& xy) { return {xy[0], xy[1]}; }

}  // namespace

void run_uniformize(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims) {
  const auto nodes = static_cast<std::size_t>(cfg.integer("uniformize", "nodes"));
  const std::string& file = cfg.text("uniformize", "file");
  const SampledDomain d =
      file.empty()
          ? SampledDomain::from_circle_domain(
                CircleDomain(cfg.circle("uniformize", "outer"), cfg.circle_list("uniformize", "holes")),
                point_of(cfg.real_list("uniformize", "basepoint")), nodes)
          : SampledDomain::load(file);
  KoebeOptions opts;
  opts.nodes = nodes;
  const double tol = cfg.real("uniformize", "tol");
  const auto res = koebe_uniformize(d, tol, static_cast<int>(cfg.integer("uniformize", "max_sweeps")), opts);

  out.write_text("uniformization.txt", to_text([&](std::ostream& os) { write_result(os, res); }));
  out.write(circle_table("circle_domain", res.circle_domain));
  CsvTable summary("summary", {{"connectivity", ColumnKind::integer},
                               {"nodes", ColumnKind::integer},
                               {"sweeps", ColumnKind::integer},
                               {"residual", ColumnKind::real},
                               {"converged", ColumnKind::boolean},
                               {"modulus", ColumnKind::real, true}});
  const bool doubly = res.circle_domain.connectivity() == 2;
  summary.add({static_cast<std::int64_t>(d.connectivity()), static_cast<std::int64_t>(nodes),
               std::int64_t{res.iterations}, res.residual, res.converged,
               doubly ? modulus_of_annulus(res.circle_domain) : std::nan("")});
  out.write(summary);

  claims.require("iteration converged", res.converged);
  claims.check("circularity residual", res.residual, "<", tol);
  claims.require("image is a normalized circle domain", res.circle_domain.is_normalized());
  if (doubly) claims.check("hole concentric", std::abs(res.circle_domain.holes()[0].center), "<", 1e-8);
}

void run_autgroup(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims) {
  const CircleDomain cd(cfg.circle("autgroup", "outer"), cfg.circle_list("autgroup", "holes"));
  AutSearchOptions opts;
  opts.theta_steps = static_cast<int>(cfg.integer("autgroup", "theta_steps"));
  opts.alpha_radial = opts.alpha_angular = static_cast<int>(cfg.integer("autgroup", "alpha_grid"));
  const double tol = cfg.real("autgroup", "tol");
  const auto g = enumerate_automorphisms(cd, tol, opts);

  out.write_text("group.txt", to_text([&](std::ostream& os) { write_group(os, g); }));
  const auto els = sample_elements(g, static_cast<std::size_t>(cfg.integer("autgroup", "samples")));
  auto cols = mobius_columns();
  cols.insert(cols.begin(), Column{"index", ColumnKind::integer});
  cols.push_back({"is_automorphism", ColumnKind::boolean});
  CsvTable elements("elements", cols);
  bool all_aut = true;
  for (std::size_t i = 0; i < els.size(); ++i) {
    const bool ok = is_automorphism(cd, els[i], tol);
    all_aut = all_aut && ok;
    auto row = mobius_cells(els[i]);
    row.insert(row.begin(), static_cast<std::int64_t>(i));
    row.push_back(ok);
    elements.add(std::move(row));
  }
  out.write(elements);

  const auto defects = group_defects(els);
  CsvTable summary("summary", {{"kind", ColumnKind::text},
                               {"listed", ColumnKind::integer},
                               {"closure_defect", ColumnKind::real},
                               {"inverse_defect", ColumnKind::real},
                               {"has_identity", ColumnKind::boolean}});
  summary.add({group_kind(g), static_cast<std::int64_t>(els.size()), defects.closure, defects.inverse,
               defects.has_identity});
  out.write(summary);

  claims.require("listed elements are automorphisms", all_aut);
  claims.require("identity present", defects.has_identity);
  claims.check("closure defect", defects.closure, "<=", cfg.real("autgroup", "axiom_tol"));
  claims.check("inverse defect", defects.inverse, "<=", cfg.real("autgroup", "axiom_tol"));
}

void run_semicont(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims) {
  const auto nodes = static_cast<std::size_t>(cfg.integer("semicont", "nodes"));
  const bool symmetric = cfg.text("semicont", "family") == "symmetric";
  const double tol = cfg.real("semicont", "tol");
  const auto& eps = cfg.real_list("semicont", "epsilons");
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (!(eps[i] < eps[i - 1])) throw PreconditionError("semicont.epsilons must be strictly decreasing");
  }
  const SampledDomain base = symmetric_pair_domain(nodes);
  CsvTable summary("summary", {{"epsilon", ColumnKind::real},
                               {"domain_distance", ColumnKind::real},
                               {"base_kind", ColumnKind::text},
                               {"perturbed_kind", ColumnKind::text},
                               {"base_order", ColumnKind::integer},
                               {"perturbed_order", ColumnKind::integer},
                               {"max_matching_distance", ColumnKind::real, true},
                               {"composition_defect", ColumnKind::real, true},
                               {"injective", ColumnKind::boolean},
                               {"passed", ColumnKind::boolean}});
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const SampledDomain d = symmetric ? symmetric_pair_perturbation(eps[i], nodes)
                                      : asymmetric_pair_perturbation(eps[i], nodes);
    const auto cert = semicontinuity_experiment(base, d, tol);
    out.write_text("certificate_" + std::to_string(i) + ".txt",
                   to_text([&](std::ostream& os) { write_certificate(os, cert); }));
    summary.add({eps[i], cert.domain_distance, cert.base_kind, cert.perturbed_kind,
                 static_cast<std::int64_t>(cert.base_order), static_cast<std::int64_t>(cert.perturbed_order),
                 cert.max_matching_distance, cert.composition_defect, cert.injective, cert.passed});
    const std::string tag = " at eps " + std::to_string(eps[i]);
    claims.require("certificate passed" + tag, cert.passed);
    claims.require("matching injective" + tag, cert.injective);
    claims.check("composition defect" + tag, cert.composition_defect, "<", tol);
    // the symmetric family carries a nontrivial element whose match moves with eps
    if (symmetric && i > 0) claims.check("matching distance decreases" + tag, cert.max_matching_distance, "<", prev);
    prev = cert.max_matching_distance;
  }
  out.write(summary);
}

void run_wongrosay(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims) {
  struct Case {
    std::string name;
    CircleDomain cd;
    char expected;
  };
  const std::vector<Case> cases{
      {"disc", CircleDomain::disc(), 'a'},
      {"annulus", CircleDomain::annulus(cfg.real("wongrosay", "annulus_radius")), 'b'},
      {"generic", CircleDomain(Circle{}, cfg.circle_list("wongrosay", "generic_holes")), 'd'},
      {"symmetric", CircleDomain(Circle{}, cfg.circle_list("wongrosay", "symmetric_holes")), 'd'},
  };
  const cplx x = point_of(cfg.real_list("wongrosay", "point"));
  const double tol = cfg.real("wongrosay", "tol");
  const auto samples = static_cast<std::size_t>(cfg.integer("wongrosay", "orbit_samples"));

  CsvTable table("cases", {{"case", ColumnKind::text},
                           {"label", ColumnKind::text},
                           {"group_kind", ColumnKind::text},
                           {"compact", ColumnKind::boolean},
                           {"accumulation_possible", ColumnKind::boolean},
                           {"orbit_size", ColumnKind::integer},
                           {"min_boundary_distance", ColumnKind::real},
                           {"distance_ratio", ColumnKind::real},
                           {"description", ColumnKind::text}});
  CsvTable orbits("orbits", {{"case", ColumnKind::text},
                             {"index", ColumnKind::integer},
                             {"x", ColumnKind::real},
                             {"y", ColumnKind::real}});
  for (const auto& c : cases) {
    if (!c.cd.contains(x)) throw PreconditionError("wongrosay.point lies outside the " + c.name + " case");
    const auto verdict = wong_rosay_classify(c.cd);
    const auto g = enumerate_automorphisms(c.cd, tol);
    // the disc case follows the escaping sequence; the others their (sampled) group
    const OrbitStats st = c.expected == 'a'
                              ? orbit_probe(c.cd, disc_escape_sequence(static_cast<std::size_t>(
                                                      cfg.integer("wongrosay", "escape_steps"))),
                                            x)
                              : orbit_probe(c.cd, g, x, samples);
    table.add({c.name, std::string(1, verdict.label), group_kind(g), verdict.compact,
               verdict.boundary_accumulation_possible, static_cast<std::int64_t>(st.count), st.min_boundary_distance,
               st.distance_ratio, verdict.description});
    for (std::size_t i = 0; i < st.orbit.size(); ++i) {
      orbits.add({c.name, static_cast<std::int64_t>(i), st.orbit[i].real(), st.orbit[i].imag()});
    }
    claims.require(c.name + " classified as (" + std::string(1, c.expected) + ")", verdict.label == c.expected);
    if (c.expected == 'a') {
      claims.check("disc orbit accumulates at the boundary", st.min_boundary_distance, "<",
                   cfg.real("wongrosay", "accumulation_tol"));
    } else {
      claims.require(c.name + " group compact", verdict.compact && !verdict.boundary_accumulation_possible);
      claims.check(c.name + " orbit stays away from the boundary", st.distance_ratio, ">=",
                   cfg.real("wongrosay", "compact_ratio"));
    }
    if (c.name == "generic") {
      claims.check("generic group order", static_cast<double>(std::get<FiniteGroup>(g).elements.size()), "==", 1.0);
    }
    if (c.name == "symmetric") {
      const auto& els = std::get<FiniteGroup>(g).elements;
      const MobiusMap neg(cplx(0.0, 1.0), 0.0, 0.0, cplx(0.0, -1.0));  // z -> -z
      claims.check("symmetric group order", static_cast<double>(els.size()), "==", 2.0);
      claims.require("z -> -z maps the boundary circles onto each other", is_automorphism(c.cd, neg, 1e-12));
    }
  }
  out.write(table);
  out.write(orbits);
}

}  // namespace semiaut::tools
