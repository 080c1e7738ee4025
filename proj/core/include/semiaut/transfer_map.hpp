#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "semiaut/bergman.hpp"
#include "semiaut/circle.hpp"
#include "semiaut/mobius.hpp"

namespace semiaut {

/// Correspondence from a perturbed circle domain onto a base circle domain.
///
/// The interpolating kind is z + sum_i chi_i(z) (A_i(z) - z), where A_i is the affine map taking
/// boundary circle i of the perturbed domain onto circle i of the base and chi_i is a smootherstep
/// cutoff in the distance to that circle, supported within half the smallest gap.
class TransferMap {
 public:
  enum class Kind { interpolation, mobius };

  /// Holes are matched by nearest center; throws PreconditionError on connectivity mismatch or an
  /// ambiguous matching.
  static TransferMap interpolation(const CircleDomain& perturbed, const CircleDomain& base);
  /// Exact correspondence by a Mobius map sending the perturbed domain onto the base.
  static TransferMap mobius(const CircleDomain& perturbed, const CircleDomain& base, const MobiusMap& m);

  Kind kind() const { return kind_; }
  const CircleDomain& perturbed() const { return perturbed_; }
  const CircleDomain& base() const { return base_; }
  /// base circle index matched to perturbed circle i (index 0 is the outer circle)
  const std::vector<std::size_t>& matching() const { return match_; }

  cplx forward(cplx z) const;
  /// Newton solve of forward(z) = w; throws SolverFailure without convergence.
  cplx inverse(cplx w) const;
  /// Wirtinger derivative d/dz of the map, in closed form for both kinds.
  cplx dz(cplx z) const;

  /// max distance of forward-mapped boundary samples from their matched base circles
  double boundary_defect(int samples_per_circle = 64) const;
  /// sup |forward(z) - z| over the given points
  double identity_defect(const std::vector<cplx>& points) const;

 private:
  Kind kind_ = Kind::interpolation;
  CircleDomain perturbed_;
  CircleDomain base_;
  std::vector<std::size_t> match_;
  std::vector<double> band_;  // blend width per perturbed circle
  MobiusMap mobius_ = MobiusMap::identity();
};

struct StabilityReport {
  /// max over matched circles of |center shift| + |radius change|
  double epsilon = 0.0;
  /// sup |K(z, w) - K0(Pi z, Pi w)|
  double kernel_distance = 0.0;
  /// sup of the same difference for the x-derivative in z (central differences)
  double derivative_distance = 0.0;
  /// sup |K(z, w) - Pi'(z) K0(Pi z, Pi w) conj(Pi'(w))|; zero for a biholomorphic Pi
  double weighted_distance = 0.0;
  double identity_defect = 0.0;
  double boundary_defect = 0.0;
  std::size_t probes = 0;
  int truncation = 0;
};

using ProbePairs = std::vector<std::pair<cplx, cplx>>;

/// Pseudo-random pairs of points at boundary distance at least margin * min_gap, reproducible for a seed.
ProbePairs default_probe_pairs(const CircleDomain& cd, std::size_t count, std::uint64_t seed = 20240601,
                               double margin = 0.2);

/// Builds the interpolating TransferMap and compares the two truncated kernels at the probe pairs.
StabilityReport stability_experiment(const CircleDomain& base, const CircleDomain& perturbed, int n,
                                     const ProbePairs& probes);
/// Same comparison with a caller-supplied correspondence.
StabilityReport stability_experiment(const TransferMap& pi, int n, const ProbePairs& probes);

}  // namespace semiaut
