#include "dwc/adhm_equivariant.hpp"

#include <gtest/gtest.h>

using namespace dwc;

TEST(Link, EtaSquaresReduce) {
  EquivariantContext eq;
  const auto& L = eq.link();
  auto T = eq.dictionary().at("T");
  // (eL - eR)^2 -> -cL - 2 eL eR - cR
  EXPECT_EQ(L.multiply(T, T), L.gen("cL", -1) - L.monomial({{"eL", 1}, {"eR", 1}}, 2) - L.gen("cR"));
}

TEST(Link, DictionarySatisfiesClassRelations) {
  for (auto kr : {KrSign::plus, KrSign::minus})
    for (auto kl : {KlSign::plus, KlSign::minus}) {
      EquivariantContext eq({kr, kl, CapRelation::squared});
      const auto& L = eq.link();
      auto dict = eq.dictionary();
      auto T2 = L.multiply(dict.at("T"), dict.at("T"));
      auto kr2 = L.multiply(dict.at("KR"), dict.at("KR")) + L.multiply(T2, L.gen("cR"));
      auto kl2 = L.multiply(dict.at("KL"), dict.at("KL")) + L.multiply(T2, L.gen("cL"));
      // The plus signs satisfy K^2 + T^2 c = 0; the minus signs do not.
      EXPECT_EQ(kr2.is_zero(), kr == KrSign::plus);
      EXPECT_EQ(kl2.is_zero(), kl == KlSign::plus);
    }
}

TEST(Link, PushforwardReadsEtaProductCoefficient) {
  EquivariantContext eq;
  const auto& L = eq.link();
  auto e = L.monomial({{"eL", 1}, {"eR", 1}, {"cR", 1}}, 3) + L.gen("cL", 5) + L.monomial({{"eL", 3}, {"eR", 1}});
  // eL^3 eR = -cL eL eR
  EXPECT_EQ(eq.p3_pushforward(e), eq.base().gen("cR", 3) - eq.base().gen("cL"));
  EXPECT_THROW(eq.p3_pushforward(L.gen("eL")), InvariantViolation);
}

TEST(Wp, SquareAndCube) {
  EquivariantContext eq;
  const auto& B = eq.base();
  auto w2 = eq.wp_power_pushforward(2);
  EXPECT_EQ(w2.before_division, B.constant(-10));
  EXPECT_EQ(w2.value, B.constant(Rational(-5, 2)));
  auto w3 = eq.wp_power_pushforward(3);
  EXPECT_EQ(w3.before_division, B.gen("cL", 16) + B.gen("cR", 320));
  EXPECT_EQ(w3.value, B.gen("cL", 4) + B.gen("cR", 80));
  EXPECT_EQ(eq.pull_to_manifold(w2.value), (PulledClass{Rational(-5, 2), 0, 0}));
  EXPECT_EQ(eq.pull_to_manifold(w3.value), (PulledClass{0, 48, -25}));
  EXPECT_THROW(eq.wp_power_pushforward(4), InputError);
}

TEST(Wp, PullbackWithoutIdentityAgreesOnEveryManifold) {
  EquivariantContext eq;
  auto v = eq.wp_power_pushforward(3).value;
  for (int b = 0; b <= 9; ++b) {
    ManifoldModel M(b);
    EXPECT_EQ(eq.pull_to_manifold(v, M), eq.pull_to_manifold(v).top_value().eval(Rational(M.p_plus())));
  }
}

TEST(Wp, SignOptionsChangeTheCube) {
  EquivariantContext minus({KrSign::minus, KlSign::plus, CapRelation::squared});
  auto w3 = minus.wp_power_pushforward(3);
  EXPECT_EQ(w3.before_division, minus.base().gen("cL", 16) + minus.base().gen("cR", 272));
  EXPECT_NE(minus.pull_to_manifold(w3.value), (PulledClass{0, 48, -25}));
}

TEST(Cap, VanishesUnderSquaredRelation) {
  EquivariantContext eq;
  for (int k : {2, 3}) {
    auto c = eq.cap_contribution(k);
    EXPECT_TRUE(c.normal_form.is_zero()) << c.normal_form.dump();
    EXPECT_TRUE(c.pushed.is_zero());
  }
}

TEST(Cap, PrintedLinearRelationLeavesATerm) {
  EquivariantContext eq({KrSign::plus, KlSign::plus, CapRelation::printed_linear});
  EXPECT_TRUE(eq.cap_contribution(2).pushed.is_zero());
  EXPECT_EQ(eq.cap_contribution(3).pushed, eq.base().gen("cR", 64));
  EquivariantContext single({KrSign::plus, KlSign::plus, CapRelation::single_cross});
  EXPECT_FALSE(single.cap_contribution(2).normal_form.is_zero());
}

TEST(Skeleton, DropsHighCDegree) {
  EquivariantContext eq;
  const auto& C = eq.classes();
  auto e = C.monomial({{"T", 2}, {"cR", 2}}) + C.monomial({{"T", 2}, {"cR", 1}});
  EXPECT_EQ(EquivariantContext::skeleton_restrict(e, C, 3), C.monomial({{"T", 2}, {"cR", 1}}));
  EXPECT_TRUE(EquivariantContext::skeleton_restrict(e, C, 2).is_zero());
}

TEST(Options, Parse) {
  EXPECT_EQ(parse_kr_sign("minus"), KrSign::minus);
  EXPECT_EQ(parse_cap_relation("printed_linear"), CapRelation::printed_linear);
  EXPECT_THROW(parse_cap_relation("linear"), InputError);
  EXPECT_THROW(parse_kl_sign(""), InputError);
}
