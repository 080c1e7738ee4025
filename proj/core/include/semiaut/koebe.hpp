#pragma once

#include <iosfwd>
#include <vector>

#include "semiaut/circle.hpp"
#include "semiaut/conformal_chain.hpp"
#include "semiaut/sampled_domain.hpp"

namespace semiaut {

struct KoebeOptions {
  /// Holes are rounded in index order unless this is set; the outer curve is always last.
  bool reverse_hole_order = false;
  int min_sweeps = 1;
  /// Resample every curve to this many nodes first (0 keeps the input sampling).
  std::size_t nodes = 0;
  DiscMapOptions disc_map{};
};

struct UniformizationResult {
  CircleDomain circle_domain;
  ConformalMapChain map;
  /// max circularity defect of the normalized boundary images
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  /// boundary images after normalization: outer first, then holes
  std::vector<Curve> image_curves;
};

/// Koebe iteration followed by the canonical normalization. Each sweep rounds every hole (map
/// the complement of the hole to a disc complement: inversion, disc map, inversion) and then the
/// outer curve (disc map with the current basepoint image).
/// Stops once every boundary image has circularity defect below tol; when max_iter sweeps do not
/// get there the result carries converged = false and the best residual.
UniformizationResult koebe_uniformize(const SampledDomain& d, double tol, int max_iter,
                                      const KoebeOptions& options = {});

/// Normalizing Mobius map for nearly circular boundary images.
/// Connectivity other than 2: outer -> unit circle, basepoint -> 0, chain derivative at the
/// basepoint positive. Connectivity 2: outer -> unit circle, hole concentric at 0, basepoint image
/// on the positive real axis.
MobiusMap canonical_normalization(const std::vector<Curve>& curves, cplx basepoint_image,
                                  cplx chain_derivative_at_basepoint);

/// Disc automorphism sending the hole circle (inside the unit disc) to a circle centered at 0;
/// built from the common symmetric points of the two circles.
MobiusMap concentric_normalization(const Circle& hole);

/// log(R / r); throws PreconditionError unless there is exactly one concentric hole.
double modulus_of_annulus(const CircleDomain& cd);

void write_result(std::ostream& os, const UniformizationResult& r);

}  // namespace semiaut
