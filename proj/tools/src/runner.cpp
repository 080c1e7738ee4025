#include <Eigen/Core>
#include <boost/version.hpp>

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "semiaut/errors.hpp"
#include "semiaut_tools/experiments.hpp"

namespace semiaut::tools {

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> list{
      {"bumps", "bumped-ball construction: centers, Levi form, stage distances, orbits", run_bumps},
      {"uniformize", "Koebe iteration onto a normalized circle domain", run_uniformize},
      {"autgroup", "automorphism group of a circle domain", run_autgroup},
      {"semicont", "semicontinuity certificates for a perturbation family", run_semicont},
      {"bergman", "truncated Bergman kernel and metric at interior probes", run_bergman},
      {"stability", "kernel stability under boundary perturbation", run_stability},
      {"curvature", "Bergman curvature sign at near-boundary probes", run_curvature},
      {"wongrosay", "classification case table and orbit probes", run_wongrosay},
  };
  return list;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Outcome {
  int code = exit_ok;
  std::string error;
};

Outcome run_one(const Subcommand& sc, const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims) {
  try {
    sc.run(cfg, out, claims);
  } catch (const ConfigError& e) {
    return {exit_validation, e.what()};
  } catch (const PreconditionError& e) {
    return {exit_validation, e.what()};
  } catch (const ClaimViolation& e) {
    return {exit_claim, e.what()};
  } catch (const std::exception& e) {
    return {exit_numerical, e.what()};
  }
  return {claims.all_passed() ? exit_ok : exit_claim, ""};
}

void write_manifest(ArtifactWriter& out, const std::string& name, const ExperimentConfig& cfg,
                    const std::string& source, const ClaimSet& claims, const Outcome& o, double seconds,
                    const std::vector<std::string>& sections) {
  std::ostringstream m;
  m << "subcommand: " << name << "\n";
  m << "semiaut: " << SEMIAUT_VERSION << "\n";
  m << "compiler: " << __VERSION__ << "\n";
  m << "eigen: " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "." << EIGEN_MINOR_VERSION << "\n";
  m << "boost: " << BOOST_VERSION / 100000 << "." << BOOST_VERSION / 100 % 1000 << "." << BOOST_VERSION % 100 << "\n";
  m << "config: " << (source.empty() ? "<defaults>" : source) << "\n";
  m << "quick: " << (cfg.quick() ? "true" : "false") << "\n";
  m << "exit_code: " << o.code << "\n";
  if (!o.error.empty()) m << "error: " << o.error << "\n";
  m << "claims: " << claims.claims().size() << " checked, " << claims.failures() << " failed\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  m << "wall_seconds: " << buf << "\n";
  m << "parameters:\n";
  for (const auto& sec : sections) {
    for (const auto& line : cfg.effective(sec)) m << "  " << line << "\n";
  }
  m << "artifacts:\n";
  for (const auto& e : out.entries()) m << "  " << e.file << " " << e.bytes << " fnv1a64:" << hex64(e.fnv1a) << "\n";
  out.write_text("manifest.txt", m.str());
}

int run_single(const Subcommand& sc, const ExperimentConfig& cfg, const std::filesystem::path& dir,
               const std::string& source, std::ostream& log) {
  ArtifactWriter out(dir);
  ClaimSet claims;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = run_one(sc, cfg, out, claims);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.write(claims.table());
  write_manifest(out, sc.name, cfg, source, claims, o, secs, {"run", sc.name});
  if (!o.error.empty()) log << sc.name << ": error: " << o.error << "\n";
  for (const auto& c : claims.claims()) {
    if (!c.passed) {
      log << sc.name << ": claim failed: " << c.name << " (" << c.value << " " << c.relation << " " << c.bound
          << ")\n";
    }
  }
  log << sc.name << ": exit " << o.code << " (" << claims.claims().size() - claims.failures() << "/"
      << claims.claims().size() << " claims hold)\n";
  return o.code;
}

}  // namespace

int run_subcommand(const std::string& name, const ExperimentConfig& cfg, const std::filesystem::path& out,
                   const std::string& config_source, std::ostream& log) {
  const std::string& target = cfg.text("run", "experiment");
  if (!target.empty() && target != name) {
    log << config_source << ": run.experiment is '" << target << "' but the subcommand is '" << name << "'\n";
    return exit_validation;
  }
  for (const auto& sc : subcommands()) {
    if (sc.name == name) return run_single(sc, cfg, out, config_source, log);
  }
  if (name != "smoke") {
    log << "unknown subcommand '" << name << "'\n";
    return exit_validation;
  }
  ArtifactWriter top(out);
  CsvTable suite("smoke", {{"subcommand", ColumnKind::text}, {"exit_code", ColumnKind::integer}});
  int worst = exit_ok;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& sc : subcommands()) {
    const int code = run_single(sc, cfg, out / sc.name, config_source, log);
    suite.add({sc.name, std::int64_t{code}});
    worst = std::max(worst, code);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  top.write(suite);
  const ClaimSet none;  // per-subcommand claims live in the subdirectories
  std::vector<std::string> sections{"run"};
  for (const auto& sc : subcommands()) sections.push_back(sc.name);
  write_manifest(top, "smoke", cfg, config_source, none, {worst, ""}, secs, sections);
  log << "smoke: exit " << worst << "\n";
  return worst;
}

}  // namespace semiaut::tools
