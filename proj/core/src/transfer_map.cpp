#include "semiaut/transfer_map.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "semiaut/errors.hpp"

namespace semiaut {

namespace {

double smootherstep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

double smootherstep_slope(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 30.0 * x * x * (1.0 - x) * (1.0 - x);
}

std::vector<std::size_t> match_circles(const CircleDomain& perturbed, const CircleDomain& base) {
  if (perturbed.connectivity() != base.connectivity()) {
    throw PreconditionError("transfer map needs domains of equal connectivity (" +
                            std::to_string(perturbed.connectivity()) + " vs " +
                            std::to_string(base.connectivity()) + ")");
  }
  std::vector<std::size_t> match{0};
  std::vector<bool> used(base.holes().size(), false);
  for (const auto& h : perturbed.holes()) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < base.holes().size(); ++j) {
      const double d = std::abs(base.holes()[j].center - h.center);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (used[best]) throw PreconditionError("nearest-center hole matching is not one-to-one");
    used[best] = true;
    match.push_back(best + 1);
  }
  return match;
}

}  // namespace

TransferMap TransferMap::interpolation(const CircleDomain& perturbed, const CircleDomain& base) {
  TransferMap t;
  t.kind_ = Kind::interpolation;
  t.perturbed_ = perturbed;
  t.base_ = base;
  t.match_ = match_circles(perturbed, base);
  const double half_gap = 0.5 * perturbed.min_gap();
  t.band_.assign(perturbed.connectivity(), half_gap);
  return t;
}

TransferMap TransferMap::mobius(const CircleDomain& perturbed, const CircleDomain& base, const MobiusMap& m) {
  TransferMap t;
  t.kind_ = Kind::mobius;
  t.perturbed_ = perturbed;
  t.base_ = base;
  t.match_ = match_circles(perturbed, base);
  t.mobius_ = m;
  return t;
}

cplx TransferMap::forward(cplx z) const {
  if (kind_ == Kind::mobius) return mobius_.apply(z);
  const auto pc = perturbed_.circles();
  const auto bc = base_.circles();
  cplx out = z;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Circle& p = pc[i];
    const Circle& b = bc[match_[i]];
    if (p.center == b.center && p.radius == b.radius) continue;
    const double d = std::abs(std::abs(z - p.center) - p.radius);
    const double chi = smootherstep(1.0 - d / band_[i]);
    if (chi == 0.0) continue;
    const cplx a = b.center + (b.radius / p.radius) * (z - p.center);
    out += chi * (a - z);
  }
  return out;
}

cplx TransferMap::dz(cplx z) const {
  if (kind_ == Kind::mobius) return mobius_.derivative(z);
  const auto pc = perturbed_.circles();
  const auto bc = base_.circles();
  cplx out = 1.0;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Circle& p = pc[i];
    const Circle& b = bc[match_[i]];
    if (p.center == b.center && p.radius == b.radius) continue;
    const cplx u = z - p.center;
    const double ru = std::abs(u);
    const double t = 1.0 - std::abs(ru - p.radius) / band_[i];
    const double chi = smootherstep(t);
    const double slope = smootherstep_slope(t);
    if (chi == 0.0 && slope == 0.0) continue;
    // d_z |u| = conj(u) / (2|u|)
    const double sign = ru >= p.radius ? 1.0 : -1.0;
    const cplx dchi = -slope / band_[i] * sign * std::conj(u) / (2.0 * ru);
    const double ratio = b.radius / p.radius;
    const cplx a = b.center + ratio * u;
    out += dchi * (a - z) + chi * (ratio - 1.0);
  }
  return out;
}

cplx TransferMap::inverse(cplx w) const {
  if (kind_ == Kind::mobius) return mobius_.inverse().apply(w);
  cplx z = w;
  const double h = 1e-7 * std::max(1.0, perturbed_.outer().radius);
  for (int it = 0; it < 50; ++it) {
    const cplx r = forward(z) - w;
    if (std::abs(r) < 1e-14 * std::max(1.0, std::abs(w))) return z;
    const cplx fx = (forward(z + h) - forward(z - h)) / (2.0 * h);
    const cplx fy = (forward(z + cplx(0, h)) - forward(z - cplx(0, h))) / (2.0 * h);
    Eigen::Matrix2d j;
    j << fx.real(), fy.real(), fx.imag(), fy.imag();
    const Eigen::Vector2d step = j.partialPivLu().solve(Eigen::Vector2d(r.real(), r.imag()));
    z -= cplx(step(0), step(1));
  }
  const double res = std::abs(forward(z) - w);
  if (res > 1e-10) throw SolverFailure("transfer map inverse did not converge", res);
  return z;
}

double TransferMap::boundary_defect(int samples_per_circle) const {
  const auto pc = perturbed_.circles();
  const auto bc = base_.circles();
  double worst = 0.0;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Circle& b = bc[match_[i]];
    for (int j = 0; j < samples_per_circle; ++j) {
      const cplx z = pc[i].point(2.0 * std::numbers::pi * j / samples_per_circle);
      worst = std::max(worst, std::abs(std::abs(forward(z) - b.center) - b.radius));
    }
  }
  return worst;
}

double TransferMap::identity_defect(const std::vector<cplx>& points) const {
  double worst = 0.0;
  for (cplx z : points) worst = std::max(worst, std::abs(forward(z) - z));
  return worst;
}

ProbePairs default_probe_pairs(const CircleDomain& cd, std::size_t count, std::uint64_t seed, double margin) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Circle& o = cd.outer();
  const double need = margin * cd.min_gap();
  auto draw = [&] {
    for (int tries = 0; tries < 100000; ++tries) {
      const cplx z = o.center + o.radius * cplx(u(rng), u(rng));
      if (cd.contains(z) && cd.boundary_distance(z) >= need) return z;
    }
    throw DegenerateConfiguration("no probe points satisfy the boundary margin");
  };
  ProbePairs out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const cplx z = draw();
    out.emplace_back(z, draw());
  }
  return out;
}

StabilityReport stability_experiment(const CircleDomain& base, const CircleDomain& perturbed, int n,
                                     const ProbePairs& probes) {
  return stability_experiment(TransferMap::interpolation(perturbed, base), n, probes);
}

StabilityReport stability_experiment(const TransferMap& pi, int n, const ProbePairs& probes) {
  const BergmanModel k = BergmanModel::assemble(pi.perturbed(), n);
  const BergmanModel k0 = BergmanModel::assemble(pi.base(), n);
  StabilityReport rep;
  rep.truncation = n;
  rep.probes = probes.size();
  const auto pc = pi.perturbed().circles();
  const auto bc = pi.base().circles();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Circle& b = bc[pi.matching()[i]];
    rep.epsilon = std::max(rep.epsilon, std::abs(pc[i].center - b.center) + std::abs(pc[i].radius - b.radius));
  }
  std::vector<cplx> pts;
  for (const auto& [z, w] : probes) {
    pts.push_back(z);
    pts.push_back(w);
    const cplx pz = pi.forward(z), pw = pi.forward(w);
    const cplx kz = k.kernel(z, w);
    const cplx kb = k0.kernel(pz, pw);
    rep.kernel_distance = std::max(rep.kernel_distance, std::abs(kz - kb));
    rep.weighted_distance =
        std::max(rep.weighted_distance, std::abs(kz - pi.dz(z) * kb * std::conj(pi.dz(w))));
    const double h = 1e-4 * pi.perturbed().boundary_distance(z);
    const cplx dk = (k.kernel(z + h, w) - k.kernel(z - h, w)) / (2.0 * h);
    const cplx dk0 = (k0.kernel(pi.forward(z + h), pw) - k0.kernel(pi.forward(z - h), pw)) / (2.0 * h);
    rep.derivative_distance = std::max(rep.derivative_distance, std::abs(dk - dk0));
  }
  rep.identity_defect = pi.identity_defect(pts);
  rep.boundary_defect = pi.boundary_defect();
  return rep;
}

}  // namespace semiaut
