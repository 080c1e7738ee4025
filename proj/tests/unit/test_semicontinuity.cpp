#include <gtest/gtest.h>

#include <cmath>

#include "semiaut/errors.hpp"
#include "semiaut/semicontinuity.hpp"

using namespace semiaut;

TEST(Semicontinuity, IdenticalDomainsGiveIsomorphism) {
  const auto d0 = symmetric_pair_domain(256);
  const auto c = semicontinuity_experiment(d0, d0, 1e-6);
  EXPECT_TRUE(c.passed) << c.report;
  EXPECT_EQ(c.base_order, 2u);
  EXPECT_EQ(c.perturbed_order, 2u);
  EXPECT_LT(c.max_matching_distance, 1e-8);
  EXPECT_LT(c.composition_defect, 1e-8);
  EXPECT_EQ(c.domain_distance, 0.0);
}

TEST(Semicontinuity, AsymmetricPerturbationEmbedsTrivially) {
  const auto c = semicontinuity_experiment(symmetric_pair_domain(256), asymmetric_pair_perturbation(0.005, 256), 1e-6);
  EXPECT_TRUE(c.passed) << c.report;
  EXPECT_EQ(c.perturbed_order, 1u);
  EXPECT_TRUE(c.injective);
}

TEST(Semicontinuity, SymmetricFamilyMatchingShrinksWithEpsilon) {
  const auto d0 = symmetric_pair_domain(256);
  double prev = 1e9;
  for (double eps : {0.02, 0.01, 0.005}) {
    const auto c = semicontinuity_experiment(d0, symmetric_pair_perturbation(eps, 256), 1e-6);
    EXPECT_TRUE(c.passed) << c.report;
    EXPECT_EQ(c.perturbed_order, 2u);
    EXPECT_TRUE(c.injective);
    EXPECT_LT(c.composition_defect, 1e-6);
    EXPECT_LT(c.max_matching_distance, prev);
    prev = c.max_matching_distance;
  }
}

TEST(Semicontinuity, ThresholdEnforced) {
  SemicontinuityOptions opts;
  opts.epsilon_threshold = 1e-4;
  EXPECT_THROW(semicontinuity_experiment(symmetric_pair_domain(256), symmetric_pair_perturbation(0.02, 256), 1e-6, opts),
               PreconditionError);
}

TEST(Semicontinuity, ContinuousGroups) {
  const AnnulusGroup ann{std::log(2.5), 0.4, MobiusMap::identity()};
  const auto same = match_groups(ann, ann, 1e-9, 8);
  EXPECT_TRUE(same.passed) << same.report;
  EXPECT_LT(same.max_matching_distance, 1e-12);
  // the inversions z -> r/z do not preserve the unit disc, so no embedding into the disc group
  const auto into_disc = match_groups(FullDiscGroup{}, ann, 1e-9, 8);
  EXPECT_FALSE(std::isfinite(into_disc.max_matching_distance));
  EXPECT_FALSE(into_disc.passed);
  EXPECT_NE(into_disc.report.find("counterexample"), std::string::npos);
}

TEST(Semicontinuity, FamilyIsOddBeforeRecentering) {
  const double eps = 0.01;
  const auto d = symmetric_pair_perturbation(eps, 128);
  ASSERT_EQ(d.holes().size(), 2u);
  const MobiusMap back = MobiusMap(1.0, eps, eps, 1.0).inverse();
  const auto& h1 = d.holes()[0];
  const auto& h2 = d.holes()[1];
  ASSERT_EQ(h1.size(), h2.size());
  for (std::size_t j = 0; j < h1.size(); ++j) EXPECT_NEAR(std::abs(back.apply(h1[j]) + back.apply(h2[j])), 0.0, 1e-14);
  EXPECT_EQ(d.basepoint(), cplx(0.0));
}
