#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "semiaut/aut_group.hpp"
#include "semiaut/koebe.hpp"
#include "semiaut/sampled_domain.hpp"

namespace semiaut {

struct HomomorphismCertificate {
  struct Pair {
    MobiusMap element;  // in Aut of the perturbed normalization
    MobiusMap match;    // nearest element of the base group
    double distance = 0.0;
  };
  std::vector<Pair> pairs;
  double max_matching_distance = 0.0;
  bool injective = true;
  /// max over element pairs of d(match(f g), match(f) match(g))
  double composition_defect = 0.0;
  /// group-axiom defects of the perturbed group
  double closure_defect = 0.0;
  double inverse_defect = 0.0;
  std::string base_kind;
  std::string perturbed_kind;
  std::size_t base_order = 0;  // 0 for continuous groups
  std::size_t perturbed_order = 0;
  double domain_distance = 0.0;
  bool passed = false;
  std::string report;
};

struct SemicontinuityOptions {
  /// refuse perturbations whose boundary-sample distance exceeds this
  double epsilon_threshold = 1.0;
  double uniformize_tol = 1e-10;
  int max_sweeps = 40;
  KoebeOptions koebe{};
  /// exact circle-image acceptance tolerance of the automorphism search
  double aut_tol = 1e-6;
  AutSearchOptions search{};
  /// elements sampled from continuous groups
  std::size_t continuous_samples = 8;
};

/// Uniformizes both domains, enumerates both groups and matches every element of the perturbed
/// group to its nearest base element. passed requires an injective matching, composition defect
/// below tol and a perturbed group that satisfies the group axioms to tol.
HomomorphismCertificate semicontinuity_experiment(const SampledDomain& d0, const SampledDomain& d, double tol,
                                                  const SemicontinuityOptions& options = {});

/// Same, starting from already enumerated groups.
HomomorphismCertificate match_groups(const AutGroupDescriptor& base, const AutGroupDescriptor& perturbed, double tol,
                                     std::size_t continuous_samples = 8);

/// Unit circle with holes circle(+-0.5, 0.15), basepoint 0.
SampledDomain symmetric_pair_domain(std::size_t n);
/// Fourier perturbation of size eps that keeps the samples odd (hole 2 = -hole 1), followed by
/// the disc automorphism z -> (z + eps) / (1 + eps z); basepoint stays at 0.
SampledDomain symmetric_pair_perturbation(double eps, std::size_t n);
/// Only hole 1 perturbed (relative amplitude `amplitude`): breaks the symmetry.
SampledDomain asymmetric_pair_perturbation(double amplitude, std::size_t n);

void write_certificate(std::ostream& os, const HomomorphismCertificate& c);

}  // namespace semiaut
