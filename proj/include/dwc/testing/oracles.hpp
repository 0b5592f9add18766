#ifndef DWC_TESTING_ORACLES_HPP
#define DWC_TESTING_ORACLES_HPP

// Independent reference computations used by the tests and the acceptance suite.
// None of these share code paths with the engine beyond the Rational type.

#include "dwc/wallcross.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace dwc::oracle {

/// q^k alpha^(m-2k) under full polarization: sum over all orderings of the classes.
inline Rational permutation_basis_value(const PairingTable& t, int k) {
  const int m = static_cast<int>(t.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    Rational v = 1;
    for (int j = 0; j < k; ++j) v *= t.q[perm[2 * j]][perm[2 * j + 1]];
    for (int i = 2 * k; i < m; ++i) v *= t.b[perm[i]];
    total += v;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// A form whose coefficients are read under the permutation convention, evaluated by brute force.
inline Rational permutation_evaluate(const SymForm& f, const PairingTable& t) {
  SymForm g = f.rebased(Convention::permutation_sum);
  Rational total = 0;
  for (const auto& [k, a] : g.coeffs) total += a.eval(t.p_plus) * permutation_basis_value(t, k);
  return total;
}

/// Matching sum E_k by explicit recursion over set partitions (no memoization).
inline Rational matching_value(const PairingTable& t, int k) {
  const int m = static_cast<int>(t.size());
  std::vector<bool> used(m, false);
  std::function<Rational(int, int)> rec = [&](int pairs_left, int idx) -> Rational {
    while (idx < m && used[idx]) ++idx;
    if (idx == m) return pairs_left == 0 ? Rational(1) : Rational(0);
    used[idx] = true;
    Rational acc = t.b[idx] * rec(pairs_left, idx + 1);
    if (pairs_left > 0)
      for (int j = idx + 1; j < m; ++j) {
        if (used[j]) continue;
        used[j] = true;
        acc += t.q[idx][j] * rec(pairs_left - 1, idx + 1);
        used[j] = false;
      }
    used[idx] = false;
    return acc;
  };
  return rec(k, 0);
}

/// Walls by scanning a fixed coordinate box, with no bound derivation.
inline std::vector<std::pair<HomologyClass, int>> box_walls(const CrossingProblem& p, int r_max, long long K) {
  std::vector<std::pair<HomologyClass, int>> out;
  const size_t n = p.M.rank();
  HomologyClass a(n, -K);
  while (true) {
    bool parity = true;
    for (size_t i = 0; i < n; ++i) parity = parity && ((a[i] - p.c[i]) % 2 == 0);
    if (parity) {
      Integer sq = p.M.dot(a, a);
      for (int r = 0; r <= r_max; ++r) {
        if (sq != p.p1 + 4 * r || sq >= 0) continue;
        Rational dm = p.M.dot(a, p.omega_minus), dp = p.M.dot(a, p.omega_plus);
        if (dm < 0 && dp > 0) out.push_back({a, r});
      }
    }
    size_t i = 0;
    while (i < n && ++a[i] > K) a[i++] = -K;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Fiber integral of h^e over the projectivization of a bundle with Chern roots summing to c1,
/// product c2 and N trivial summands: (-1)^(rank-1) times the complete symmetric polynomial.
inline GradedElement segre_pushforward(const RingPresentation& p, const GradedElement& c1, const GradedElement& c2,
                                       int rank, int e) {
  int j = e - (rank - 1);
  if (j < 0) return p.zero();
  std::vector<GradedElement> s{p.constant(1), c1};
  for (int i = 2; i <= j; ++i)
    s.push_back(p.multiply(c1, s[i - 1]) - p.multiply(c2, s[i - 2]));
  return sign_power(rank - 1) * s[j];
}

/// Random small rational.
inline Rational small_rational(std::mt19937_64& rng, int span = 5, int den = 4) {
  std::uniform_int_distribution<int> n(-span, span), d(1, den);
  return Rational(n(rng), d(rng));
}

inline PairingTable random_table(std::mt19937_64& rng, int m) {
  PairingTable t;
  t.alpha_sq = small_rational(rng);
  t.p_plus = small_rational(rng);
  for (int i = 0; i < m; ++i) t.b.push_back(small_rational(rng));
  t.q.assign(m, std::vector<Rational>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) t.q[i][j] = t.q[j][i] = small_rational(rng);
  return t;
}

inline SymForm random_form(std::mt19937_64& rng, int m, Convention basis) {
  SymForm f;
  f.m = m;
  f.basis = basis;
  for (int k = 0; 2 * k <= m; ++k) f.set(k, PolyQ{small_rational(rng), small_rational(rng)});
  return f;
}

/// Test ring: fiber h over base a, x, y, pt with h^3 = a h^2 - u h, u = (a^2 - P)/4, base truncated at 4.
struct KernelRing {
  RingPresentation p{{{"h", 2, GeneratorKind::fiber, 0},
                      {"a", 2, GeneratorKind::base, 1},
                      {"x", 2, GeneratorKind::base, 1},
                      {"y", 2, GeneratorKind::base, 1},
                      {"pt", 4, GeneratorKind::base, 1},
                      {"P", 4, GeneratorKind::formal_number_carrier, 1}}};
  KernelRing() {
    p.set_factor_budget(1, 4);
    GradedElement u = Rational(1, 4) * (p.monomial({{"a", 2}}) - p.gen("P"));
    p.add_relation("h", 3, p.multiply_raw(p.gen("a"), p.monomial({{"h", 2}})) - p.multiply_raw(u, p.gen("h")));
    p.set_fiber_top("h", 2, 1);
  }
  GradedElement random(std::mt19937_64& rng, int terms = 4) const {
    static const char* ids[] = {"h", "a", "x", "y", "pt", "P"};
    std::uniform_int_distribution<int> g(0, 5), e(0, 3), nf(1, 3);
    GradedElement out = p.zero();
    for (int t = 0; t < terms; ++t) {
      std::vector<std::pair<std::string, int>> pw;
      int factors = nf(rng);
      for (int f = 0; f < factors; ++f) pw.push_back({ids[g(rng)], e(rng)});
      out += p.monomial(pw, small_rational(rng));
    }
    return out;
  }
};

}  // namespace dwc::oracle

#endif  // DWC_TESTING_ORACLES_HPP
