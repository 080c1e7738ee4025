#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "semiaut/disc_map.hpp"
#include "semiaut/mobius.hpp"

namespace semiaut {

enum class Direction { forward, inverse };

/// Ordered composition of Mobius maps and numerical disc maps; step 0 is applied first.
class ConformalMapChain {
 public:
  using Step = std::variant<MobiusMap, std::shared_ptr<const DiscMap>>;

  ConformalMapChain() = default;

  void push(const MobiusMap& m);
  void push(std::shared_ptr<const DiscMap> d);
  /// Appends all steps of `other` after this chain's steps.
  void append(const ConformalMapChain& other);

  std::size_t size() const { return steps_.size(); }
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t disc_map_count() const;

  /// Throws OutOfDomain carrying the index of the first step that cannot take its input.
  cplx forward(cplx z) const;
  /// Per-step inverses, then Newton refinement against forward() to newton_tol.
  cplx inverse(cplx w) const;
  cplx eval(cplx z, Direction dir) const { return dir == Direction::forward ? forward(z) : inverse(z); }
  /// Product of step derivatives.
  cplx derivative(cplx z) const;

  double newton_tol = 1e-10;

 private:
  std::vector<Step> steps_;
};

cplx chain_eval(const ConformalMapChain& map, cplx z, Direction dir);

}  // namespace semiaut
