#include <cmath>
#include <random>
#include <string>

#include "semiaut/ball_bumps.hpp"
#include "semiaut/errors.hpp"
#include "semiaut_tools/experiments.hpp"

namespace semiaut::tools {

namespace {

PointC2 random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  PointC2 p{{n(rng), n(rng)}, {n(rng), n(rng)}};
  return (1.0 / p.norm()) * p;
}

std::vector<Cell> point_cells(const PointC2& p) {
  return {p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()};
}

std::vector<Cell> concat(std::vector<Cell> a, const std::vector<Cell>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<Column> kPointColumns{
    {"re_z1", ColumnKind::real}, {"im_z1", ColumnKind::real}, {"re_z2", ColumnKind::real}, {"im_z2", ColumnKind::real}};

std::vector<Column> with_point(std::vector<Column> head, const std::vector<Column>& tail = {}) {
  head.insert(head.end(), kPointColumns.begin(), kPointColumns.end());
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

void run_bumps(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims) {
  const auto seed = static_cast<std::uint64_t>(cfg.integer("run", "seed"));
  const int J = static_cast<int>(cfg.integer("bumps", "J"));
  const double cpsi = psi_lipschitz_constant();

  CsvTable centers("bump_centers", with_point({{"k", ColumnKind::integer}},
                                              {{"norm_defect", ColumnKind::real},
                                               {"amplitude", ColumnKind::real},
                                               {"dilation", ColumnKind::real}}));
  double worst_center = 0.0;
  for (int k = 1; k <= cfg.integer("bumps", "center_levels"); ++k) {
    const PointC2 c = bump_center(k);
    const double defect = std::abs(c.norm() - 1.0);
    worst_center = std::max(worst_center, defect);
    centers.add(concat(concat({std::int64_t{k}}, point_cells(c)), {defect, bump_amplitude(k), bump_dilation(k)}));
  }
  claims.check("bump centers on the unit sphere", worst_center, "<=", cfg.real("bumps", "center_tol"));
  out.write(centers);

  CsvTable orbit("orbit_centers",
                 with_point({{"k", ColumnKind::integer}, {"j", ColumnKind::integer}, {"power", ColumnKind::integer}},
                            {{"norm_defect", ColumnKind::real}}));
  const int span = static_cast<int>(cfg.integer("bumps", "table_span"));
  for (int k = 1; k <= cfg.integer("bumps", "orbit_levels"); ++k) {
    const auto cs = bump_orbit_centers(k, -span, span);
    for (int j = -span; j <= span; ++j) {
      const PointC2& c = cs[static_cast<std::size_t>(j + span)];
      orbit.add(concat(concat({std::int64_t{k}, std::int64_t{j}, j * generator_power(k)}, point_cells(c)),
                       {std::abs(c.norm() - 1.0)}));
    }
  }
  out.write(orbit);

  // Levi form: uniformly sampled boundary points plus the cap over the bump (gating), and a scan
  // across the bump flank (reported only)
  CsvTable levi("levi", with_point({{"k", ColumnKind::integer}, {"sample", ColumnKind::integer}, {"kind", ColumnKind::text}},
                                   {{"eta", ColumnKind::real}, {"min_eigenvalue", ColumnKind::real}}));
  CsvTable neck("levi_flank_scan", {{"k", ColumnKind::integer},
                                    {"samples", ColumnKind::integer},
                                    {"negative", ColumnKind::integer},
                                    {"min_eigenvalue", ColumnKind::real},
                                    {"offset_at_min", ColumnKind::real}});
  const auto levi_points = cfg.integer("bumps", "levi_points");
  for (int k = 1; k <= cfg.integer("bumps", "levi_levels"); ++k) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    double lowest = 1e300;
    for (std::int64_t i = 0; i <= levi_points; ++i) {
      const bool cap = i == levi_points;
      const PointC2 p = boundary_point(k, cap ? bump_center(k) : random_sphere_point(rng));
      const double e = levi_form_min_eigen(k, p);
      lowest = std::min(lowest, e);
      levi.add(concat(concat({std::int64_t{k}, i, std::string(cap ? "cap" : "uniform")}, point_cells(p)),
                      {eta_eval(k, p), e}));
    }
    claims.check("Levi form positive on sampled boundary of U_" + std::to_string(k), lowest, ">", 0.0);

    std::uniform_real_distribution<double> t(0.0, 1.2);
    std::int64_t negative = 0, count = 0;
    double scan_min = 1e300, scan_at = 0.0;
    for (std::int64_t i = 0; i < 10 * levi_points; ++i) {
      const double off = t(rng);
      const PointC2 dir = bump_center(k) + (off * std::pow(10.0, -k)) * random_sphere_point(rng);
      const double e = levi_form_min_eigen(k, boundary_point(k, dir));
      ++count;
      negative += e < 0.0 ? 1 : 0;
      if (e < scan_min) {
        scan_min = e;
        scan_at = off;
      }
    }
    neck.add({std::int64_t{k}, count, negative, scan_min, scan_at});
  }
  out.write(levi);
  out.write(neck);

  // stage k against its refinement on the default slices
  CsvTable dist("stage_distance", {{"k", ColumnKind::integer},
                                   {"slice", ColumnKind::integer},
                                   {"sup", ColumnKind::real},
                                   {"seminorm", ColumnKind::real},
                                   {"lipschitz", ColumnKind::real},
                                   {"bound", ColumnKind::real}});
  CsvTable vis("bump_visibility", with_point({{"k", ColumnKind::integer}},
                                             {{"previous_stage_value", ColumnKind::real},
                                              {"amplitude", ColumnKind::real},
                                              {"hidden", ColumnKind::boolean}}));
  const auto res = static_cast<std::size_t>(cfg.integer("bumps", "slice_resolution"));
  for (int k = 1; k <= cfg.integer("bumps", "distance_levels"); ++k) {
    const DomainStage s{k, J};
    const DomainStage r = refine_stage(s);
    const double bound = std::pow(10.0, -(k + 1)) * cpsi;
    double worst = 0.0;
    const auto slices = default_stage_slices(k);
    for (std::size_t i = 0; i < slices.size(); ++i) {
      const auto g1 = defining_grid(s, slices[i], res);
      const auto g2 = defining_grid(r, slices[i], res);
      const double lip = lipschitz_distance(g1, g2);
      worst = std::max(worst, lip);
      dist.add({std::int64_t{k}, static_cast<std::int64_t>(i), sup_distance(g1, g2), seminorm_distance(g1, g2), lip,
                bound});
    }
    claims.check("stage distance rho_" + std::to_string(k) + " to rho_" + std::to_string(k + 1), worst, "<=", bound);
    // a new bump changes the stage only where the previous orbit does not already cover it
    const PointC2 c = bump_center(k + 1);
    const double prev = stage_defining_value(s, c);
    vis.add(concat(concat({std::int64_t{k + 1}}, point_cells(c)),
                   {prev, bump_amplitude(k + 1), prev < -bump_amplitude(k + 1)}));
  }
  out.write(dist);
  out.write(vis);

  CsvTable reach("orbit_reach", with_point({{"k", ColumnKind::integer}, {"power", ColumnKind::integer}},
                                          {{"pole_distance", ColumnKind::real}}));
  const std::int64_t far = std::int64_t{1} << cfg.integer("bumps", "orbit_exponent");
  double worst_reach = 0.0;
  for (int k = 1; k <= cfg.integer("bumps", "orbit_levels"); ++k) {
    for (const std::int64_t m : {far, -far}) {
      const PointC2 c = bump_orbit_center(k, m);
      const double d = std::min(std::abs(c.z1 - 1.0), std::abs(c.z1 + 1.0));
      worst_reach = std::max(worst_reach, d);
      reach.add(concat(concat({std::int64_t{k}, m}, point_cells(c)), {d}));
    }
  }
  claims.check("bump orbit reaches (+-1, 0)", worst_reach, "<", cfg.real("bumps", "orbit_tol"));
  out.write(reach);

  CsvTable contain("generator_containment", {{"k", ColumnKind::integer},
                                             {"power", ColumnKind::integer},
                                             {"points", ColumnKind::integer},
                                             {"inside_next_truncation", ColumnKind::integer}});
  const auto npts = static_cast<std::size_t>(cfg.integer("bumps", "containment_points"));
  for (int k = 1; k <= cfg.integer("bumps", "containment_levels"); ++k) {
    std::mt19937_64 rng(seed + 100 + static_cast<std::uint64_t>(k));
    const DomainStage s{k, J};
    const DomainStage wider{k, J + 1};
    const auto pts = sample_stage_points(s, npts, rng);
    for (const std::int64_t sign : {1, -1}) {
      const std::int64_t power = sign * generator_power(k);
      const auto g = base_automorphism(power);
      std::int64_t inside = 0;
      for (const auto& p : pts) inside += membership(wider, g(p)) ? 1 : 0;
      contain.add({std::int64_t{k}, power, static_cast<std::int64_t>(pts.size()), inside});
      claims.check("Psi^" + std::to_string(power) + " maps Omega_" + std::to_string(k) + " into J+1",
                   static_cast<double>(inside), "==", static_cast<double>(pts.size()));
    }
  }
  out.write(contain);
}

}  // namespace semiaut::tools
