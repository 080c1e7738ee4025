#include <gtest/gtest.h>

#include <cmath>

#include "semiaut/errors.hpp"
#include "semiaut/transfer_map.hpp"

using namespace semiaut;

namespace {

const CircleDomain kTriple(Circle{}, {Circle{{0.45, 0.1}, 0.12}, Circle{{-0.3, -0.2}, 0.18}});

CircleDomain nudged(double eps) {
  return CircleDomain(Circle{{0.2 * eps, 0.0}, 1.0 + eps},
                      {Circle{cplx(0.45, 0.1) + cplx(eps, -eps), 0.12 * (1 + eps)}, Circle{{-0.3, -0.2}, 0.18 - eps}});
}

}  // namespace

TEST(TransferMap, BoundaryCirclesCorrespond) {
  const auto pi = TransferMap::interpolation(nudged(0.01), kTriple);
  EXPECT_LT(pi.boundary_defect(), 1e-12);
  EXPECT_EQ(pi.matching(), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(TransferMap, TendsToIdentity) {
  const auto probes = default_probe_pairs(kTriple, 30);
  std::vector<cplx> pts;
  for (const auto& [z, w] : probes) pts.push_back(z);
  double prev = 1.0;
  for (double eps : {0.02, 0.01, 0.005, 0.0025}) {
    const double d = TransferMap::interpolation(nudged(eps), kTriple).identity_defect(pts);
    EXPECT_LT(d, prev);
    EXPECT_LT(d, 3 * eps);
    prev = d;
  }
}

TEST(TransferMap, InverseRoundTrip) {
  const auto pi = TransferMap::interpolation(nudged(0.01), kTriple);
  for (const auto& [z, w] : default_probe_pairs(nudged(0.01), 20)) {
    EXPECT_NEAR(std::abs(pi.inverse(pi.forward(z)) - z), 0.0, 1e-10);
  }
}

TEST(TransferMap, WirtingerDerivativeMatchesDifferences) {
  const auto pi = TransferMap::interpolation(nudged(0.01), kTriple);
  // points inside the blend bands as well as outside them
  for (const cplx z : {cplx(0.45, 0.235), cplx(-0.3, -0.39), cplx(0.0, 0.97), cplx(0.1, 0.2), cplx(0.6, 0.1)}) {
    const double h = 1e-6;
    const cplx fx = (pi.forward(z + h) - pi.forward(z - h)) / (2 * h);
    const cplx fy = (pi.forward(z + cplx(0, h)) - pi.forward(z - cplx(0, h))) / (2 * h);
    EXPECT_NEAR(std::abs(pi.dz(z) - 0.5 * (fx - cplx(0, 1) * fy)), 0.0, 1e-7) << z;
  }
}

TEST(TransferMap, ConnectivityMismatch) {
  EXPECT_THROW(TransferMap::interpolation(CircleDomain::annulus(0.4), kTriple), PreconditionError);
  EXPECT_THROW(stability_experiment(kTriple, CircleDomain::disc(), 10, {}), PreconditionError);
}

TEST(Stability, IdenticalDomainsGiveZero) {
  const auto rep = stability_experiment(kTriple, kTriple, 20, default_probe_pairs(kTriple, 20));
  EXPECT_EQ(rep.epsilon, 0.0);
  EXPECT_EQ(rep.kernel_distance, 0.0);
  EXPECT_EQ(rep.derivative_distance, 0.0);
  EXPECT_EQ(rep.weighted_distance, 0.0);
}

TEST(Stability, AnnulusLinearOrder) {
  const auto base = CircleDomain::annulus(0.4);
  const auto probes = default_probe_pairs(base, 40);
  const auto r1 = stability_experiment(base, CircleDomain::annulus(0.4 * 1.01), 60, probes);
  const auto r2 = stability_experiment(base, CircleDomain::annulus(0.4 * 1.005), 60, probes);
  const double ratio = r1.kernel_distance / r2.kernel_distance;
  EXPECT_GE(ratio, 1.6);
  EXPECT_LE(ratio, 2.4);
  EXPECT_LT(r1.kernel_distance / r1.epsilon, 100.0) << "C = " << r1.kernel_distance / r1.epsilon;
  EXPECT_GT(r1.derivative_distance, r2.derivative_distance);
}

TEST(Stability, TranslatedDiscByMobius) {
  const CircleDomain shifted(Circle{{0.3, 0.2}, 1.0}, {});
  const auto pi = TransferMap::mobius(shifted, CircleDomain::disc(), MobiusMap::translation({-0.3, -0.2}));
  const auto rep = stability_experiment(pi, 30, default_probe_pairs(shifted, 40, 7, 0.4));
  EXPECT_LT(rep.kernel_distance, 1e-8);
  EXPECT_LT(rep.boundary_defect, 1e-12);
}

TEST(Stability, DiscAutomorphismTransformationLaw) {
  const auto disc = CircleDomain::disc();
  const auto pi = TransferMap::mobius(disc, disc, MobiusMap::disc_automorphism(0.5, {0.1, -0.15}));
  const auto rep = stability_experiment(pi, 30, default_probe_pairs(disc, 40, 9, 0.6));
  EXPECT_LT(rep.weighted_distance, 1e-8);
  EXPECT_GT(rep.kernel_distance, 1e-3);
}
