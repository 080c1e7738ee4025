#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <variant>

#include <sys/wait.h>

#include "semiaut/aut_group.hpp"
#include "semiaut/ball_bumps.hpp"
#include "semiaut/bergman.hpp"
#include "semiaut/errors.hpp"
#include "semiaut/koebe.hpp"
#include "semiaut/semicontinuity.hpp"
#include "semiaut/transfer_map.hpp"

using namespace semiaut;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::string detail;

  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

cplx random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

const CircleDomain kTriple(Circle{}, {Circle{{0.45, 0.1}, 0.12}, Circle{{-0.3, -0.2}, 0.18}});
const CircleDomain kSymmetric(Circle{}, {Circle{0.5, 0.15}, Circle{-0.5, 0.15}});

// gap from circle i to its nearest neighbour, computed from the circle data alone
double neighbour_gap(const CircleDomain& cd, std::size_t i) {
  const auto cs = cd.circles();
  if (cs.size() == 1) return cs[0].radius;
  double g = 1e300;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (j == i) continue;
    const double d = std::abs(cs[i].center - cs[j].center);
    if (i == 0) g = std::min(g, cs[0].radius - d - cs[j].radius);
    else if (j == 0) g = std::min(g, cs[0].radius - d - cs[i].radius);
    else g = std::min(g, d - cs[i].radius - cs[j].radius);
  }
  return g;
}

std::size_t nearest_circle(const CircleDomain& cd, cplx z) {
  const auto cs = cd.circles();
  std::size_t best = 0;
  double bd = 1e300;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const double d = std::abs(std::abs(z - cs[i].center) - cs[i].radius);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

Verdict criterion1() {
  Verdict v;
  std::mt19937_64 rng(101);
  std::vector<std::pair<cplx, cplx>> pairs;
  std::vector<cplx> expect;
  for (int i = 0; i < 100; ++i) {
    const cplx z = random_in_disc(rng, 0.6), w = random_in_disc(rng, 0.6);
    const cplx q = 1.0 - z * std::conj(w);
    pairs.emplace_back(z, w);
    expect.push_back(1.0 / (kPi * q * q));
  }
  const auto m = assemble_model(CircleDomain::disc(), 30);
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    worst = std::max(worst, std::abs(kernel_eval(m, pairs[i].first, pairs[i].second) - expect[i]));
  }
  v.need(worst < 1e-8, "kernel error " + num(worst) + " >= 1e-8");
  v.note("max |K - 1/(pi (1 - z conj w)^2)| = " + num(worst) + " over 100 pairs, N = 30");
  return v;
}

Verdict criterion2() {
  Verdict v;
  std::mt19937_64 rng(202);
  std::vector<cplx> probes;
  for (int i = 0; i < 50; ++i) probes.push_back(random_in_disc(rng, 0.6));
  const auto m = assemble_model(CircleDomain::disc(), 30);
  double worst = 0.0, worst_g = 0.0;
  for (const cplx z : probes) {
    const double g_exact = 2.0 / std::pow(1.0 - std::norm(z), 2);
    const MetricSample s = metric_eval(m, z);
    worst = std::max(worst, std::abs(s.curvature + 2.0));
    worst_g = std::max(worst_g, std::abs(s.metric - g_exact) / g_exact);
  }
  v.need(worst < 1e-6, "curvature deviation " + num(worst));
  v.need(worst_g < 1e-8, "metric deviation " + num(worst_g));
  v.note("max |kappa + 2| = " + num(worst) + ", max relative metric error " + num(worst_g));
  return v;
}

Verdict criterion3() {
  Verdict v;
  struct Case {
    std::string name;
    CircleDomain cd;
    BasisSpec spec;
  };
  BasisSpec ann;
  ann.outer_degree = 500;
  ann.hole_degrees = {300};
  BasisSpec tri;
  tri.outer_degree = 800;
  tri.hole_degrees = {200, 200};
  for (const Case& c : {Case{"annulus", CircleDomain::annulus(0.4), ann}, Case{"triple", kTriple, tri}}) {
    const auto m = BergmanModel::assemble(c.cd, c.spec);
    const auto probes = near_boundary_probes(c.cd, 64);
    v.need(probes.size() == 64, c.name + " probe count");
    double worst_kappa = -1e300, worst_frac = 0.0;
    for (const cplx z : probes) {
      const std::size_t i = nearest_circle(c.cd, z);
      const Circle ci = c.cd.circles()[i];
      const double d = std::abs(std::abs(z - ci.center) - ci.radius);
      worst_frac = std::max(worst_frac, d / neighbour_gap(c.cd, i));
      worst_kappa = std::max(worst_kappa, m.metric(z).curvature);
    }
    v.need(worst_frac < 0.1, c.name + " probe boundary distance fraction " + num(worst_frac));
    v.need(worst_kappa < 0.0, c.name + " curvature " + num(worst_kappa) + " not negative");
    v.note(c.name + ": max kappa " + num(worst_kappa) + ", max distance/gap " + num(worst_frac));
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto base = CircleDomain::annulus(0.4);
  const auto probes = default_probe_pairs(CircleDomain::annulus(0.4 * 1.01), 40);
  const auto r1 = stability_experiment(base, CircleDomain::annulus(0.4 * 1.01), 60, probes);
  const auto r2 = stability_experiment(base, CircleDomain::annulus(0.4 * 1.005), 60, probes);
  const double ratio = r1.kernel_distance / r2.kernel_distance;
  v.need(ratio >= 1.6 && ratio <= 2.4, "ratio " + num(ratio) + " outside [1.6, 2.4]");
  v.note("sup kernel distance " + num(r1.kernel_distance) + " at eps 0.01, " + num(r2.kernel_distance) +
         " at eps 0.005, ratio " + num(ratio));
  return v;
}

// inner radius of the concentric image of {|z| < 1, |z - c| > r}: the disc automorphism
// centred at the common symmetric point x (x + 1/x = (1 + c^2 - r^2)/c) makes both circles concentric
double symmetrized_inner_radius(double c, double r) {
  const double s = (1.0 + c * c - r * r) / c;
  const double x = 0.5 * (s - std::sqrt(s * s - 4.0));
  return std::abs((c + r - x) / (1.0 - x * (c + r)));
}

Verdict criterion5() {
  Verdict v;
  const double expect = -std::log(symmetrized_inner_radius(0.3, 0.2));
  const CircleDomain ecc(Circle{}, {Circle{0.3, 0.2}});
  const auto res = koebe_uniformize(SampledDomain::from_circle_domain(ecc, -0.4, 256), 1e-10, 40);
  v.need(res.converged, "eccentric annulus did not converge");
  const double mod = modulus_of_annulus(res.circle_domain);
  v.need(std::abs(mod - expect) < 1e-6, "modulus error " + num(std::abs(mod - expect)));
  v.note("modulus " + num(mod) + " vs oracle " + num(expect) + " (error " + num(std::abs(mod - expect)) + ")");
  for (const auto& [name, cd] : {std::pair{std::string("annulus"), CircleDomain::annulus(0.4)},
                                 std::pair{std::string("triple"), kTriple}}) {
    const cplx base = name == "annulus" ? cplx(0.7, 0.0) : cplx(0.0, 0.0);
    const auto r = koebe_uniformize(SampledDomain::from_circle_domain(cd, base, 256), 1e-8, 2);
    v.need(r.converged && r.iterations <= 2 && r.residual < 1e-8,
           name + " circular input: " + std::to_string(r.iterations) + " sweeps, residual " + num(r.residual));
    v.note(name + " circular input: " + std::to_string(r.iterations) + " sweep(s), residual " + num(r.residual));
  }
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto base = symmetric_pair_domain(256);
  double prev = 1e300;
  for (const double eps : {0.02, 0.01, 0.005}) {
    const auto cert = semicontinuity_experiment(base, symmetric_pair_perturbation(eps, 256), 1e-6);
    v.need(cert.passed, "certificate at eps " + num(eps));
    v.need(cert.injective, "injectivity at eps " + num(eps));
    v.need(cert.composition_defect < 1e-6, "composition defect " + num(cert.composition_defect));
    v.need(cert.max_matching_distance < prev, "matching distance not decreasing at eps " + num(eps));
    prev = cert.max_matching_distance;
    v.note("eps " + num(eps) + ": matching " + num(cert.max_matching_distance) + ", table defect " +
           num(cert.composition_defect) + ", order " + std::to_string(cert.perturbed_order));
  }
  return v;
}

// (z - z1)(z2 - z3) / ((z - z3)(z2 - z1)) sends z1, z2, z3 to 0, 1, infinity
MobiusMap to_standard(cplx z1, cplx z2, cplx z3) { return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)}; }

double identity_distance(const MobiusMap& m) {
  // normalized coefficients are defined up to a global sign
  const cplx s = std::sqrt(m.determinant());
  const cplx a = m.a() / s, b = m.b() / s, c = m.c() / s, d = m.d() / s;
  const double plus = std::abs(a - 1.0) + std::abs(b) + std::abs(c) + std::abs(d - 1.0);
  const double minus = std::abs(a + 1.0) + std::abs(b) + std::abs(c) + std::abs(d + 1.0);
  return std::min(plus, minus);
}

Verdict criterion7() {
  Verdict v;
  const cplx p1(0.2, 0.0), p2(0.5, 0.1), p3(-0.7, 0.0);
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> lg(-14.0, -4.0);
  int false_positive = 0, accepted = 0, violations = 0;
  for (int i = 0; i < 1000; ++i) {
    MobiusMap m;
    if (i % 2 == 0) {
      m = MobiusMap(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
    } else {
      // fixes p1 and p2 exactly, moves p3 by a tiny amount
      const cplx q3 = p3 + std::polar(std::pow(10.0, lg(rng)), u(rng) * kPi);
      m = to_standard(p1, p2, q3).inverse() * to_standard(p1, p2, p3);
    }
    try {
      const bool fixes = three_point_identity_check(m, p1, p2, p3);
      accepted += fixes ? 1 : 0;
      if (fixes && identity_distance(m) > 1e-8) ++false_positive;
    } catch (const ClaimViolation&) {
      ++violations;
    }
  }
  v.need(false_positive == 0, std::to_string(false_positive) + " false positives");
  v.need(violations == 0, std::to_string(violations) + " claim violations");
  v.need(three_point_identity_check(MobiusMap::identity(), p1, p2, p3), "identity rejected");
  v.note("1000 maps, " + std::to_string(accepted) + " accepted as fixing all three points, 0 false positives");
  return v;
}

Verdict criterion8() {
  Verdict v;
  v.need(std::holds_alternative<FullDiscGroup>(enumerate_automorphisms(CircleDomain::disc(), 1e-9)), "disc group");
  const auto ann = CircleDomain::annulus(0.4);
  const auto ga = enumerate_automorphisms(ann, 1e-9);
  v.need(std::holds_alternative<AnnulusGroup>(ga), "annulus group");
  const auto gg = enumerate_automorphisms(kTriple, 1e-9);
  const auto* fg = std::get_if<FiniteGroup>(&gg);
  v.need(fg && fg->elements.size() == 1 && identity_distance(fg->elements[0]) < 1e-9, "generic group is trivial");
  const auto gs = enumerate_automorphisms(kSymmetric, 1e-9);
  const auto* fs = std::get_if<FiniteGroup>(&gs);
  v.need(fs && fs->elements.size() == 2, "symmetric group has order 2");
  if (fs && fs->elements.size() == 2) {
    const MobiusMap& e = identity_distance(fs->elements[0]) < 1e-9 ? fs->elements[1] : fs->elements[0];
    // z -> -z: coefficients proportional to (1, 0, 0, -1)
    const cplx s = std::sqrt(e.determinant());
    const double off = std::abs(e.b() / s) + std::abs(e.c() / s);
    v.need(off < 1e-9 && std::abs(e.a() / e.d() + 1.0) < 1e-9, "nontrivial element is z -> -z");
  }
  // exact circle images under z -> -z: centre negated, radius kept
  const auto& h = kSymmetric.holes();
  v.need(-h[0].center == h[1].center && h[0].radius == h[1].radius, "z -> -z swaps the holes exactly");

  const cplx x(0.0, 0.6);
  const auto ob = orbit_probe(ann, ga, x, 64);
  const auto od = orbit_probe(kSymmetric, gs, x, 64);
  const double dx_a = std::min(1.0 - std::abs(x), std::abs(x) - 0.4);
  v.need(ob.min_boundary_distance > 0.5 * dx_a, "annulus orbit approaches the boundary");
  v.need(od.min_boundary_distance > 0.05, "symmetric orbit approaches the boundary");
  const auto esc = orbit_probe(CircleDomain::disc(), disc_escape_sequence(30), 0.0);
  v.need(esc.min_boundary_distance < 1e-6, "disc sequence does not accumulate");
  v.note("orbit boundary distances: annulus " + num(ob.min_boundary_distance) + ", symmetric " +
         num(od.min_boundary_distance) + ", disc escape " + num(esc.min_boundary_distance));
  return v;
}

PointC2 random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  PointC2 p{{n(rng), n(rng)}, {n(rng), n(rng)}};
  return (1.0 / p.norm()) * p;
}

// max |grad psi| = 2|x| f(u) / (1 - u)^2 with f(u) = exp(1 - 1/(1 - u)); stationary at u = 1/sqrt(3)
double psi_gradient_bound() {
  const double u = 1.0 / std::sqrt(3.0);
  return 2.0 * std::sqrt(u) * std::exp(1.0 - 1.0 / (1.0 - u)) / ((1.0 - u) * (1.0 - u));
}

Verdict criterion9() {
  Verdict v;
  const double cpsi = psi_gradient_bound();
  double center = 0.0;
  for (int k = 1; k <= 12; ++k) center = std::max(center, std::abs(bump_center(k).norm() - 1.0));
  v.need(center <= 1e-12, "bump center off the sphere by " + num(center));

  std::mt19937_64 rng(909);
  double levi = 1e300;
  for (int k = 1; k <= 4; ++k) {
    for (int i = 0; i < 20; ++i) levi = std::min(levi, levi_form_min_eigen(k, boundary_point(k, random_sphere_point(rng))));
  }
  v.need(levi > 0.0, "Levi eigenvalue " + num(levi));

  double ratio = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const DomainStage s{k, 12};
    for (const auto& slice : default_stage_slices(k)) {
      const double d = lipschitz_distance(defining_grid(s, slice, 65), defining_grid(refine_stage(s), slice, 65));
      const double bound = std::pow(10.0, -(k + 1)) * cpsi;
      v.need(d <= bound, "stage distance " + num(d) + " above " + num(bound) + " at k = " + std::to_string(k));
      ratio = std::max(ratio, d / bound);
    }
  }

  double reach = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (const int e : {20, 24, 30}) {
      for (const std::int64_t m : {std::int64_t{1} << e, -(std::int64_t{1} << e)}) {
        const PointC2 c = bump_orbit_center(k, m);
        reach = std::max(reach, std::min(std::abs(c.z1 - 1.0), std::abs(c.z1 + 1.0)));
      }
    }
  }
  v.need(reach < 1e-3, "orbit first coordinate " + num(reach) + " from +-1");

  std::size_t outside = 0;
  for (int k = 1; k <= 4; ++k) {
    const DomainStage s{k, 12};
    const auto pts = sample_stage_points(s, 200, rng);
    for (const std::int64_t sign : {1, -1}) {
      const auto g = base_automorphism(sign * generator_power(k));
      for (const auto& p : pts) outside += membership({k, 13}, g(p)) ? 0 : 1;
    }
  }
  v.need(outside == 0, std::to_string(outside) + " generator images outside the J + 1 truncation");
  v.note("max center defect " + num(center) + ", min Levi eigenvalue " + num(levi) +
         ", max stage distance / bound " + num(ratio) + ", orbit reach " + num(reach));
  return v;
}

Verdict criterion10(const std::string& cli) {
  Verdict v;
  if (cli.empty()) {
    v.need(false, "no CLI path configured");
    return v;
  }
  const auto dir = std::filesystem::temp_directory_path() / "semiaut_acceptance_smoke";
  std::filesystem::remove_all(dir);
  const std::string cmd = "\"" + cli + "\" smoke --quick --out \"" + dir.string() + "\" > \"" +
                          (dir.string() + ".log") + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  v.need(code == 0, "smoke exit code " + std::to_string(code));
  std::ifstream in(dir / "smoke.csv");
  std::string line;
  std::getline(in, line);
  int subs = 0;
  while (std::getline(in, line)) {
    ++subs;
    v.need(line.size() > 2 && line.substr(line.size() - 2) == ",0", "subcommand row '" + line + "'");
  }
  v.need(subs == 8, std::to_string(subs) + " subcommands reported");
  v.note(std::to_string(subs) + " subcommands, exit code " + std::to_string(code));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> which;
  std::string cli = SEMIAUT_CLI_PATH;
  app.add_option("--criterion", which, "criterion numbers to run (1-10); all when omitted")->check(CLI::Range(1, 10));
  app.add_option("--cli", cli, "path of the semiaut executable for criterion 10");
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) {
    for (int i = 1; i <= 10; ++i) which.push_back(i);
  }
  // runtime limits in seconds
  const double limit[11] = {0, 5, 10, 60, 60, 120, 300, 5, 120, 180, 600};
  bool all = true;
  for (const int c : which) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      switch (c) {
        case 1: v = criterion1(); break;
        case 2: v = criterion2(); break;
        case 3: v = criterion3(); break;
        case 4: v = criterion4(); break;
        case 5: v = criterion5(); break;
        case 6: v = criterion6(); break;
        case 7: v = criterion7(); break;
        case 8: v = criterion8(); break;
        case 9: v = criterion9(); break;
        default: v = criterion10(cli); break;
      }
    } catch (const std::exception& e) {
      v.need(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.need(secs < limit[c], "runtime " + num(secs) + " s over " + num(limit[c]) + " s");
    std::cout << "criterion " << c << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail << "; " << num(secs)
              << " s)" << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
