#include "dwc/testing/oracles.hpp"

#include <gtest/gtest.h>

using namespace dwc;

TEST(Manifold, DefaultFormAndCharacteristicNumbers) {
  ManifoldModel M(2);
  EXPECT_EQ(M.rank(), 3u);
  EXPECT_EQ(M.dot(HomologyClass{1, 2, 3}, HomologyClass{1, 2, 3}), Integer(1 - 4 - 9));
  EXPECT_EQ(M.p_plus(), 7);
  EXPECT_EQ(M.p_minus(), -13);
  // p+ = 9 - b- and p- = -3 - 5 b- satisfy 5 p+ - p- = 48 for every b-.
  for (int b = 0; b < 10; ++b) EXPECT_EQ(5 * ManifoldModel(b).p_plus() - ManifoldModel(b).p_minus(), 48);
}

TEST(Manifold, RejectsBadForms) {
  EXPECT_THROW(ManifoldModel(1, IntMatrix{{1, 0}, {0, 1}}), InputError);
  EXPECT_THROW(ManifoldModel(1, IntMatrix{{1, 1}, {0, -1}}), InputError);
  EXPECT_THROW(ManifoldModel(1, IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), InputError);
  EXPECT_THROW(ManifoldModel(-1), InputError);
  // Hyperbolic plane has signature (1,1) with zero diagonal.
  EXPECT_NO_THROW(ManifoldModel(1, IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_THROW(ManifoldModel(2, IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}), InputError);
}

TEST(Inertia, CountsSigns) {
  auto s = inertia({{2, 1, 0}, {1, 2, 0}, {0, 0, -3}});
  EXPECT_EQ(s.positive, 2);
  EXPECT_EQ(s.negative, 1);
  EXPECT_EQ(s.zero, 0);
  auto z = inertia({{0, 0}, {0, 0}});
  EXPECT_EQ(z.zero, 2);
}

TEST(Conventions, PartitionCountsAndWeights) {
  EXPECT_EQ(partition_count(4, 2), 3);
  EXPECT_EQ(partition_count(5, 1), 10);
  EXPECT_EQ(partition_count(6, 3), 15);
  for (int m = 0; m <= 10; ++m)
    for (int k = 0; 2 * k <= m; ++k)
      EXPECT_EQ(Rational(partition_count(m, k)),
                Rational(factorial(m)) / (Rational(Integer(1) << k) * Rational(factorial(k)) * Rational(factorial(m - 2 * k))));
  EXPECT_EQ(basis_weight(Convention::permutation_sum, 4, 1), Rational(2 * 1 * 2));
  EXPECT_EQ(basis_weight(Convention::normalized, 4, 1), Rational(1, 6));
  EXPECT_EQ(parse_convention("matching_sum"), Convention::matching_sum);
  EXPECT_THROW(parse_convention("other"), InputError);
}

TEST(SymForm, RebaseRoundTripsAndAdds) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    int m = i % 7;
    SymForm f = oracle::random_form(rng, m, Convention::normalized);
    EXPECT_EQ(f.rebased(Convention::permutation_sum).rebased(Convention::normalized).coeffs, f.coeffs);
    SymForm g = oracle::random_form(rng, m, Convention::matching_sum);
    PairingTable t = oracle::random_table(rng, m);
    EXPECT_EQ(evaluate_sym_form(f + g, t), evaluate_sym_form(f, t) + evaluate_sym_form(g, t));
  }
  SymForm a;
  a.m = 2;
  EXPECT_THROW(a.set(2, PolyQ(1)), InvariantViolation);
  SymForm b;
  b.m = 3;
  EXPECT_THROW(a + b, InvariantViolation);
}

TEST(Evaluation, MatchingSumsAgreeWithExplicitPartitions) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    int m = i % 9;
    PairingTable t = oracle::random_table(rng, m);
    auto e = matching_sums(t);
    for (int k = 0; 2 * k <= m; ++k) ASSERT_EQ(e[k], oracle::matching_value(t, k)) << "m=" << m << " k=" << k;
  }
}

TEST(Evaluation, MatchingEvaluatorAgreesWithPermutationBruteForce) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    int m = i % 7;
    PairingTable t = oracle::random_table(rng, m);
    for (auto c : {Convention::matching_sum, Convention::permutation_sum, Convention::normalized}) {
      SymForm f = oracle::random_form(rng, m, c);
      ASSERT_EQ(evaluate_sym_form(f, t), oracle::permutation_evaluate(f, t));
    }
  }
}

TEST(Evaluation, ArityAndTableChecks) {
  SymForm f;
  f.m = 2;
  f.set(0, PolyQ(1));
  EXPECT_THROW(evaluate_sym_form(f, PairingTable::unit(3)), InputError);
  PairingTable t = PairingTable::unit(2);
  t.q[0][1] = 2;
  EXPECT_THROW(matching_sums(t), InputError);
}

TEST(Evaluation, PairingTableFromClasses) {
  ManifoldModel M(2);
  auto t = pairing_table_for({0, -2, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}}, M);
  EXPECT_EQ(t.alpha_sq, -4);
  EXPECT_EQ(t.b, (std::vector<Rational>{0, 2, 2}));
  EXPECT_EQ(t.q[1][2], -1);
  EXPECT_EQ(t.p_plus, 7);
}

TEST(ProductPairing, FactorialOverPowerOfTwoTimesMatchingAverage) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int b = 1; b <= 3; ++b) {
    ManifoldModel M(b);
    for (int r = 1; r <= 3; ++r)
      for (int rep = 0; rep < 10; ++rep) {
        std::vector<HomologyClass> xs(2 * r, HomologyClass(M.rank()));
        for (auto& x : xs)
          for (auto& c : x) c = coord(rng);
        PairingTable t = pairing_table_for(HomologyClass(M.rank(), 0), xs, M);
        Rational avg = matching_sums(t)[r] / Rational(partition_count(2 * r, r));
        EXPECT_EQ(symmetrized_product_pairing(xs, r, M),
                  Rational(factorial(2 * r)) / Rational(Integer(1) << r) * avg);
      }
  }
  EXPECT_THROW(symmetrized_product_pairing({{1, 0}}, 1, ManifoldModel(1)), InputError);
}
