#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "semiaut/circle.hpp"

namespace semiaut {

/// Connectivity 1: every disc automorphism.
struct FullDiscGroup {};

/// Connectivity 2: `conjugator` maps the domain onto {inner_radius < |z| < 1}, whose group is
/// {rotations} U {rotations composed with z -> inner_radius / z}.
struct AnnulusGroup {
  double modulus = 0.0;
  double inner_radius = 0.0;
  MobiusMap conjugator{};
};

/// Connectivity >= 3: the certified elements found by the search.
struct FiniteGroup {
  std::vector<MobiusMap> elements;
  std::string note;
};

using AutGroupDescriptor = std::variant<FullDiscGroup, AnnulusGroup, FiniteGroup>;

struct AutSearchOptions {
  int theta_steps = 720;
  int alpha_radial = 41;
  int alpha_angular = 41;
  /// seeds are grid local minima of the circle-matching residual below this value
  double seed_threshold = 0.25;
  int polish_iterations = 60;
  /// inversive-distance agreement needed to consider a boundary assignment
  double invariant_tol = 1e-4;
};

/// Throws PreconditionError for non-normalized input (outer circle not the unit circle, 1e-7) and
/// DegenerateConfiguration when two boundary circles are closer than 1e-6.
AutGroupDescriptor enumerate_automorphisms(const CircleDomain& cd, double tol, const AutSearchOptions& options = {});

std::string group_kind(const AutGroupDescriptor& g);
/// Elements for finite groups, an evenly spaced sample otherwise (rotations and, for the
/// annulus, rotations composed with the inversion; n of each).
std::vector<MobiusMap> sample_elements(const AutGroupDescriptor& g, std::size_t n);
/// Nearest element of the group and its coefficient distance.
std::pair<MobiusMap, double> nearest_element(const AutGroupDescriptor& g, const MobiusMap& m);

/// Max over element pairs of the distance from the product to the list (closure), and over
/// elements of the distance from the inverse to the list.
struct GroupDefects {
  double closure = 0.0;
  double inverse = 0.0;
  bool has_identity = false;
};
GroupDefects group_defects(const std::vector<MobiusMap>& elements);

/// True iff every boundary circle maps onto a boundary circle (bijectively, center/radius error
/// below tol) and an interior point stays inside.
bool is_automorphism(const CircleDomain& cd, const MobiusMap& m, double tol);

/// true iff m fixes the three points to 1e-10; throws ClaimViolation if such an m is not the
/// identity to 1e-9. Coincident points raise PreconditionError.
bool three_point_identity_check(const MobiusMap& m, cplx p1, cplx p2, cplx p3);

struct WongRosayVerdict {
  char label = 'a';  // 'a' disc, 'b' annulus, 'd' finite
  bool compact = false;
  bool boundary_accumulation_possible = false;
  std::string description;
};
WongRosayVerdict wong_rosay_classify(const CircleDomain& cd);

struct OrbitStats {
  std::size_t count = 0;
  double min_boundary_distance = 0.0;
  double max_spread = 0.0;
  /// min_boundary_distance / dist(X, boundary)
  double distance_ratio = 0.0;
  std::vector<cplx> orbit;
};
/// Orbit of X under n sampled group elements (all elements for finite groups).
OrbitStats orbit_probe(const CircleDomain& cd, const AutGroupDescriptor& g, cplx x, std::size_t n);
/// Orbit of X under an explicit element sequence.
OrbitStats orbit_probe(const CircleDomain& cd, const std::vector<MobiusMap>& elements, cplx x);
/// phi_j(z) = (z - a_j) / (1 - a_j z), a_j = 1 - 2^{-j}, j = 1..n
std::vector<MobiusMap> disc_escape_sequence(std::size_t n);

void write_group(std::ostream& os, const AutGroupDescriptor& g);

}  // namespace semiaut
