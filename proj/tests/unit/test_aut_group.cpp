#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "semiaut/aut_group.hpp"
#include "semiaut/errors.hpp"

using namespace semiaut;

namespace {

const CircleDomain kSymmetric(Circle{}, {Circle{0.5, 0.15}, Circle{-0.5, 0.15}});
const CircleDomain kGeneric(Circle{}, {Circle{{0.45, 0.1}, 0.12}, Circle{{-0.3, -0.2}, 0.18}});

MobiusMap random_mobius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  for (;;) {
    const cplx a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
    if (std::abs(a * d - b * c) > 0.1) return {a, b, c, d};
  }
}

// conjugate a circle domain by a disc automorphism
CircleDomain conjugated(const CircleDomain& cd, const MobiusMap& t) {
  std::vector<Circle> holes;
  for (const auto& h : cd.holes()) holes.push_back(circle_image_strict(t, h));
  return CircleDomain(Circle{}, holes);
}

}  // namespace

TEST(AutGroup, DiscAndAnnulus) {
  EXPECT_TRUE(std::holds_alternative<FullDiscGroup>(enumerate_automorphisms(CircleDomain::disc(), 1e-9)));
  const auto g = enumerate_automorphisms(CircleDomain::annulus(0.4), 1e-9);
  ASSERT_TRUE(std::holds_alternative<AnnulusGroup>(g));
  EXPECT_NEAR(std::get<AnnulusGroup>(g).modulus, std::log(1 / 0.4), 1e-12);
  for (const auto& m : sample_elements(g, 12)) EXPECT_TRUE(is_automorphism(CircleDomain::annulus(0.4), m, 1e-10));
}

TEST(AutGroup, EccentricAnnulusConjugatedToRound) {
  const CircleDomain cd(Circle{}, {Circle{0.3, 0.2}});
  const auto g = enumerate_automorphisms(cd, 1e-9);
  ASSERT_TRUE(std::holds_alternative<AnnulusGroup>(g));
  for (const auto& m : sample_elements(g, 10)) EXPECT_TRUE(is_automorphism(cd, m, 1e-9));
}

TEST(AutGroup, SymmetricPairHasOrderTwo) {
  const auto g = enumerate_automorphisms(kSymmetric, 1e-9);
  ASSERT_TRUE(std::holds_alternative<FiniteGroup>(g));
  const auto& els = std::get<FiniteGroup>(g).elements;
  ASSERT_EQ(els.size(), 2u);
  EXPECT_TRUE(approx_equal(els[0], MobiusMap::identity()));
  const MobiusMap neg(-1.0, 0.0, 0.0, 1.0);
  EXPECT_TRUE(approx_equal(els[1], neg));
  // exact circle images
  const Circle h0 = circle_image_strict(neg, kSymmetric.holes()[0]);
  EXPECT_NEAR(std::abs(h0.center - kSymmetric.holes()[1].center), 0.0, 1e-15);
  EXPECT_NEAR(h0.radius, 0.15, 1e-15);
  EXPECT_TRUE(is_automorphism(kSymmetric, neg, 1e-12));
}

TEST(AutGroup, GenericTripleIsTrivial) {
  const auto g = enumerate_automorphisms(kGeneric, 1e-9);
  ASSERT_TRUE(std::holds_alternative<FiniteGroup>(g));
  const auto& fg = std::get<FiniteGroup>(g);
  ASSERT_EQ(fg.elements.size(), 1u);
  EXPECT_TRUE(approx_equal(fg.elements[0], MobiusMap::identity()));
  EXPECT_NE(fg.note.find("search-complete at stated resolution"), std::string::npos);
}

TEST(AutGroup, ThreeFoldSymmetry) {
  std::vector<Circle> holes;
  for (int k = 0; k < 3; ++k) holes.push_back(Circle{std::polar(0.5, 2 * std::numbers::pi * k / 3), 0.12});
  const CircleDomain cd(Circle{}, holes);
  const auto g = enumerate_automorphisms(cd, 1e-9);
  const auto& els = std::get<FiniteGroup>(g).elements;
  EXPECT_EQ(els.size(), 3u);
  const auto def = group_defects(els);
  EXPECT_TRUE(def.has_identity);
  EXPECT_LT(def.closure, 1e-9);
  EXPECT_LT(def.inverse, 1e-9);
}

TEST(AutGroup, ConjugationConsistent) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const auto base = std::get<FiniteGroup>(enumerate_automorphisms(kSymmetric, 1e-9)).elements;
  for (int t = 0; t < 3; ++t) {
    const MobiusMap c = MobiusMap::disc_automorphism(u(rng) * 10, {u(rng), u(rng)});
    const auto els = std::get<FiniteGroup>(enumerate_automorphisms(conjugated(kSymmetric, c), 1e-9)).elements;
    ASSERT_EQ(els.size(), base.size());
    for (const auto& e : base) {
      const MobiusMap expect = c * e * c.inverse();
      double best = 1e9;
      for (const auto& f : els) best = std::min(best, coefficient_distance(f, expect));
      EXPECT_LT(best, 1e-8);
    }
  }
}

TEST(AutGroup, Preconditions) {
  EXPECT_THROW(enumerate_automorphisms(CircleDomain(Circle{0.0, 2.0}, {}), 1e-9), PreconditionError);
  const CircleDomain tight(Circle{}, {Circle{0.3, 0.2}, Circle{-0.1 - 5e-7, 0.2}});
  EXPECT_THROW(enumerate_automorphisms(tight, 1e-9), DegenerateConfiguration);
}

TEST(ThreePoint, Examples) {
  EXPECT_TRUE(three_point_identity_check(MobiusMap::identity(), 0.0, 1.0, -1.0));
  EXPECT_FALSE(three_point_identity_check(MobiusMap(-1.0, 0.0, 0.0, 1.0), 0.0, 1.0, -1.0));
  EXPECT_THROW(three_point_identity_check(MobiusMap::identity(), 0.0, 0.0, 1.0), PreconditionError);
}

TEST(ThreePoint, NoFalsePositives) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const MobiusMap m = random_mobius(rng);
    const cplx p1(u(rng), u(rng)), p2(u(rng), u(rng)), p3(u(rng), u(rng));
    EXPECT_NO_THROW({
      if (three_point_identity_check(m, p1, p2, p3)) EXPECT_TRUE(approx_equal(m, MobiusMap::identity()));
    });
  }
}

TEST(ThreePoint, NearIdentityMapsFixingTwoPoints) {
  // maps fixing 0.2 and 0.5+0.1i exactly, moving -0.7 by a tiny amount: never accepted unless
  // the motion is below the fix tolerance, and then they are the identity to 1e-9
  const cplx p(0.2), q(0.5, 0.1), r(-0.7);
  for (double k : {1e-3, 1e-6, 1e-9, 1e-12}) {
    // multiplier 1 + k at the fixed points p, q
    const cplx lam = 1.0 + k;
    const MobiusMap to(1.0, -p, 1.0, -q);  // p -> 0, q -> inf
    const MobiusMap m = to.inverse() * MobiusMap(lam, 0.0, 0.0, 1.0) * to;
    const bool fixed = three_point_identity_check(m, p, q, r);
    EXPECT_EQ(fixed, std::abs(m.apply(r) - r) <= 1e-10);
  }
}

TEST(WongRosay, Classification) {
  EXPECT_EQ(wong_rosay_classify(CircleDomain::disc()).label, 'a');
  EXPECT_TRUE(wong_rosay_classify(CircleDomain::disc()).boundary_accumulation_possible);
  const auto b = wong_rosay_classify(CircleDomain::annulus(0.4));
  EXPECT_EQ(b.label, 'b');
  EXPECT_TRUE(b.compact);
  EXPECT_FALSE(b.boundary_accumulation_possible);
  const auto d = wong_rosay_classify(kSymmetric);
  EXPECT_EQ(d.label, 'd');
  EXPECT_TRUE(d.compact);
  EXPECT_NE(d.description.find("unbounded"), std::string::npos);
}

TEST(Orbit, AnnulusOrbitStaysOnTwoCircles) {
  const auto cd = CircleDomain::annulus(0.4);
  const auto g = enumerate_automorphisms(cd, 1e-9);
  const cplx x = std::polar(0.6, 0.3);
  const auto st = orbit_probe(cd, g, x, 36);
  for (cplx z : st.orbit) {
    const double r = std::abs(z);
    EXPECT_TRUE(std::abs(r - 0.6) < 1e-12 || std::abs(r - 0.4 / 0.6) < 1e-12) << r;
  }
  EXPECT_NEAR(st.min_boundary_distance, std::min(cd.boundary_distance(x), cd.boundary_distance(0.4 / 0.6)), 1e-12);
  EXPECT_GT(st.distance_ratio, 0.0);
}

TEST(Orbit, TrivialGroupAndDiscEscape) {
  const auto one = orbit_probe(kGeneric, enumerate_automorphisms(kGeneric, 1e-9), cplx(0.0, 0.5), 10);
  ASSERT_EQ(one.orbit.size(), 1u);
  EXPECT_EQ(one.orbit[0], cplx(0.0, 0.5));
  const auto esc = orbit_probe(CircleDomain::disc(), disc_escape_sequence(30), 0.0);
  for (std::size_t j = 0; j < esc.orbit.size(); ++j) {
    EXPECT_NEAR(std::abs(esc.orbit[j] + (1.0 - std::ldexp(1.0, -static_cast<int>(j) - 1))), 0.0, 1e-15);
  }
  EXPECT_LT(esc.min_boundary_distance, 1e-8);
  EXPECT_THROW(orbit_probe(CircleDomain::disc(), disc_escape_sequence(3), 1.0), PreconditionError);
}
