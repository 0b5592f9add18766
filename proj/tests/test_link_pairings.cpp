#include "dwc/testing/oracles.hpp"

#include <gtest/gtest.h>

using namespace dwc;

TEST(R1, KnownCoefficients) {
  DerivationOptions o;
  o.basis = Convention::normalized;
  SymForm f = derive_r1(4, 0, false, o);
  EXPECT_EQ(f.coeff(0), (PolyQ{Rational(-7, 8), Rational(-1, 8)}));
  EXPECT_EQ(f.coeff(1), PolyQ(-3));
  EXPECT_EQ(f.coeff(2), PolyQ());
  EXPECT_EQ(f.meta.alpha_sq, -3);
}

TEST(R1, ObstructionCaseUnderPermutationSum) {
  SymForm a = derive_r1(2, 0, true);
  EXPECT_EQ(a.basis, Convention::permutation_sum);
  EXPECT_EQ(a.coeff(0), (PolyQ{Rational(5, 4), Rational(1, 4)}));
  EXPECT_EQ(a.coeff(1), PolyQ(1));
  SymForm b = derive_r1(2, 1, true);
  EXPECT_EQ(b.m, 0);
  EXPECT_EQ(b.coeff(0), (PolyQ{Rational(7, 2), Rational(-1, 2)}));
}

TEST(Ranges, Rejected) {
  EXPECT_THROW(derive_r1(2, 0, false), InputError);
  EXPECT_THROW(derive_r1(3, 0, true), InputError);
  EXPECT_THROW(derive_r1(5, 3, false), InputError);
  EXPECT_THROW(derive_r2_upper(6, 0, false), InputError);
  EXPECT_THROW(derive_r2_lower(7, 0, true), InputError);
  EXPECT_THROW(derive_r2_upper(21, 0, false), InputError);
  EXPECT_THROW(detail::check_range(3, 7, 0, false), InputError);
}

TEST(R2Upper, KnownBracket) {
  DerivationOptions o;
  o.basis = Convention::normalized;
  SymForm f = derive_r2_upper(7, 0, false, o);
  // (-1)^7 2^-7 (744 + 88 p+ + 2 p+^2)
  EXPECT_EQ(f.coeff(0) * Rational(-128), (PolyQ{744, 88, 2}));
}

TEST(R2Upper, FactorOrderDoesNotMatter) {
  DerivationOptions a, b;
  b.swap_factors = true;
  for (int d : {6, 7, 8})
    for (int l = 0; 2 * l <= d; l += 2) {
      bool obs = d == 6;
      EXPECT_EQ(derive_r2_upper(d, l, obs, a), derive_r2_upper(d, l, obs, b)) << d << " " << l;
    }
}

TEST(R2Lower, UsesTheEquivariantPushforwards) {
  R2LowerModel model(7, 0, false);
  EXPECT_EQ(model.wp_image(2), (PulledClass{Rational(-5, 2), 0, 0}));
  EXPECT_EQ(model.wp_image(3), (PulledClass{0, 48, -25}));
  R2LowerModel flipped(7, 0, false, {KrSign::minus, KlSign::plus, CapRelation::squared});
  EXPECT_NE(flipped.wp_image(3), model.wp_image(3));
}

TEST(R2Lower, KnownBracket) {
  DerivationOptions o;
  o.basis = Convention::normalized;
  for (int d = 7; d <= 9; ++d)
    for (int l = 0; 2 * l <= d; ++l) {
      SymForm f = derive_r2_lower(d, l, false, o);
      Rational pre = sign_power(d + l) / Rational(Integer(1) << d);
      EXPECT_EQ(f.coeff(0), (PolyQ{Rational(-15 * d - 429 + 280 * l), -50}) * pre) << d << " " << l;
    }
}

TEST(Assembly, IsTheSumOfStrata) {
  DerivationOptions o;
  o.basis = Convention::matching_sum;
  for (int l = 0; l <= 3; ++l) {
    SymForm s = assemble_delta_r2(7, l, false, o);
    SymForm u = derive_r2_upper(7, l, false, o), w = derive_r2_lower(7, l, false, o);
    EXPECT_EQ(s, u + w);
  }
}

TEST(Trace, RecordsEveryStage) {
  DerivationTrace tr;
  DerivationOptions o;
  o.trace = &tr;
  derive_r2_lower(7, 1, false, o);
  std::vector<std::string> seen;
  for (const auto& s : tr)
    if (s.slot == 0) seen.push_back(s.stage);
  EXPECT_EQ(seen, (std::vector<std::string>{"expand", "thom-divide", "descend", "pushforward", "pair"}));
  tr.clear();
  derive_r1(3, 0, false, o);
  ASSERT_FALSE(tr.empty());
  EXPECT_EQ(tr.front().stage, "expand");
  EXPECT_EQ(tr.back().stage, "pair");
}

// The indicator-table extraction must reproduce the raw pipeline on arbitrary tables.
template <class Model>
void check_extraction(const Model& model, const SymForm& f, std::mt19937_64& rng, int cases) {
  const int m = f.m;
  for (int i = 0; i < cases; ++i) {
    PairingTable t = oracle::random_table(rng, m);
    t.alpha_sq = model.context().alpha_sq;
    PolyQ raw = model.value(t);
    PairingTable tp = t;
    for (int p = -2; p <= 2; ++p) {
      tp.p_plus = p;
      ASSERT_EQ(raw.eval(Rational(p)), evaluate_sym_form(f, tp, f.basis));
    }
  }
}

TEST(Extraction, AgreesWithDirectPipelineOnRandomTables) {
  std::mt19937_64 rng(17);
  DerivationOptions o;
  o.basis = Convention::matching_sum;
  check_extraction(R1Model(5, 1, false), derive_r1(5, 1, false, o), rng, 20);
  check_extraction(R1Model(2, 0, true), derive_r1(2, 0, true, o), rng, 20);
  check_extraction(R2UpperModel(7, 1, false), derive_r2_upper(7, 1, false, o), rng, 10);
  check_extraction(R2UpperModel(6, 0, true), derive_r2_upper(6, 0, true, o), rng, 5);
  check_extraction(R2LowerModel(8, 1, false), derive_r2_lower(8, 1, false, o), rng, 10);
  check_extraction(R2LowerModel(6, 1, true), derive_r2_lower(6, 1, true, o), rng, 10);
}
