#include "semiaut/conformal_chain.hpp"

#include <cmath>

#include "semiaut/errors.hpp"

namespace semiaut {

namespace {

cplx step_forward(const ConformalMapChain::Step& step, cplx z, std::size_t index) {
  if (const auto* m = std::get_if<MobiusMap>(&step)) {
    const auto pole = m->pole();
    if (pole && std::abs(z - *pole) <= 1e-300) throw OutOfDomain("point at the pole of a Mobius step", index);
    return m->apply(z);
  }
  const auto& d = std::get<std::shared_ptr<const DiscMap>>(step);
  if (!d->contains(z)) throw OutOfDomain("point outside the curve of a disc-map step", index);
  return (*d)(z);
}

cplx step_derivative(const ConformalMapChain::Step& step, cplx z) {
  if (const auto* m = std::get_if<MobiusMap>(&step)) return m->derivative(z);
  return std::get<std::shared_ptr<const DiscMap>>(step)->derivative(z);
}

}  // namespace

void ConformalMapChain::push(const MobiusMap& m) { steps_.emplace_back(m); }

void ConformalMapChain::push(std::shared_ptr<const DiscMap> d) {
  if (!d) throw PreconditionError("null disc map step");
  steps_.emplace_back(std::move(d));
}

void ConformalMapChain::append(const ConformalMapChain& other) {
  steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
}

std::size_t ConformalMapChain::disc_map_count() const {
  std::size_t n = 0;
  for (const auto& s : steps_) n += std::holds_alternative<std::shared_ptr<const DiscMap>>(s) ? 1 : 0;
  return n;
}

cplx ConformalMapChain::forward(cplx z) const {
  for (std::size_t i = 0; i < steps_.size(); ++i) z = step_forward(steps_[i], z, i);
  return z;
}

cplx ConformalMapChain::derivative(cplx z) const {
  cplx d = 1.0;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    d *= step_derivative(steps_[i], z);
    z = step_forward(steps_[i], z, i);
  }
  return d;
}

cplx ConformalMapChain::inverse(cplx w) const {
  const cplx target = w;
  for (std::size_t i = steps_.size(); i-- > 0;) {
    if (const auto* m = std::get_if<MobiusMap>(&steps_[i])) {
      const MobiusMap inv = m->inverse();
      const auto pole = inv.pole();
      if (pole && w == *pole) throw OutOfDomain("point at the pole of an inverse Mobius step", i);
      w = inv.apply(w);
    } else {
      const auto& d = std::get<std::shared_ptr<const DiscMap>>(steps_[i]);
      if (!(std::abs(w) < 1.0)) throw OutOfDomain("point outside the unit disc of a disc-map step", i);
      w = d->inverse(w);
    }
  }
  cplx z = w;
  for (int it = 0; it < 20; ++it) {
    const cplx r = forward(z) - target;
    if (std::abs(r) <= newton_tol * 1e-2) break;
    const cplx step = r / derivative(z);
    z -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

cplx chain_eval(const ConformalMapChain& map, cplx z, Direction dir) {
  return dir == Direction::forward ? map.forward(z) : map.inverse(z);
}

}  // namespace semiaut
