#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "semiaut_tools/artifacts.hpp"
#include "semiaut_tools/config.hpp"

namespace semiaut::tools {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_numerical = 2, exit_claim = 3 };

using ExperimentFn = void (*)(const ExperimentConfig&, ArtifactWriter&, ClaimSet&);

struct Subcommand {
  std::string name;
  std::string summary;
  ExperimentFn run = nullptr;
};

/// Every experiment subcommand, in smoke-suite order (smoke itself is not listed).
const std::vector<Subcommand>& subcommands();

void run_bumps(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);
void run_uniformize(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);
void run_autgroup(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);
void run_semicont(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);
void run_bergman(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);
void run_stability(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);
void run_curvature(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);
void run_wongrosay(const ExperimentConfig& cfg, ArtifactWriter& out, ClaimSet& claims);

/// Runs one subcommand (or "smoke", which runs all of them into subdirectories), writes
/// claims.csv and manifest.txt next to the results and returns the exit code.
/// Module errors are reported on `log`: precondition failures map to exit_validation,
/// numerical failures to exit_numerical, violated claims to exit_claim.
int run_subcommand(const std::string& name, const ExperimentConfig& cfg, const std::filesystem::path& out,
                   const std::string& config_source, std::ostream& log);

}  // namespace semiaut::tools
