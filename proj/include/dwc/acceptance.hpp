#ifndef DWC_ACCEPTANCE_HPP
#define DWC_ACCEPTANCE_HPP

// The acceptance suite: one check per criterion, each returning pass/fail with detail.
// All comparisons are exact; randomized checks use fixed seeds.

#include "dwc/testing/oracles.hpp"
#include "dwc/wallcross.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace dwc::acceptance {

struct Result {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct Options {
  AdhmOptions adhm;
  EpsilonRule epsilon_rule = EpsilonRule::paper_half;
};

namespace detail {

inline std::string show(const SymForm& f) {
  std::string s;
  for (int k = 0; 2 * k <= f.m; ++k) s += (s.empty() ? "" : ", ") + ("k" + std::to_string(k) + ": " + f.coeff(k).str());
  return "[" + s + "] (" + to_string(f.basis) + ")";
}

/// Compares a derived form with a printed display on every (d, l) of `ds`; returns mismatch lines.
inline std::vector<std::string> compare_display(const std::string& location, Stratum s, bool obstruction,
                                                const std::vector<int>& ds, const DerivationOptions& opts,
                                                int* points = nullptr) {
  std::vector<std::string> bad;
  const auto& disp = printed_display(location);
  for (int d : ds)
    for (int l = 0; 2 * l <= d; ++l) {
      if (!disp.covers(d, l)) continue;
      if (points) ++*points;
      SymForm derived = derive_stratum(s, d, l, obstruction, opts).rebased(Convention::normalized);
      SymForm printed = disp.form(d, l, Convention::normalized);
      for (int k = 0; 2 * k <= derived.m; ++k)
        if (!(derived.coeff(k) == printed.coeff(k)))
          bad.push_back("d=" + std::to_string(d) + " l=" + std::to_string(l) + " k=" + std::to_string(k) +
                        ": derived " + derived.coeff(k).str() + ", printed " + printed.coeff(k).str());
      for (const auto& [k, c] : derived.coeffs)
        if (2 * k > derived.m) bad.push_back("negative alpha exponent at k=" + std::to_string(k));
    }
  return bad;
}

inline std::string summarize(const std::vector<std::string>& bad, size_t keep = 6) {
  std::string s;
  for (size_t i = 0; i < bad.size() && i < keep; ++i) s += "\n    " + bad[i];
  if (bad.size() > keep) s += "\n    ... " + std::to_string(bad.size() - keep) + " more";
  return s;
}

inline DerivationOptions derivation(const Options& o) {
  DerivationOptions d;
  d.adhm = o.adhm;
  return d;
}

}  // namespace detail

inline Result criterion1(const Options& o) {
  Result r{1, "r=1 closed form over 3 <= d <= 12", false, ""};
  // The normalized reading is fixed by the product-pairing oracle: the symmetrized product over
  // X^r equals (2r)!/2^r times the matching average, so printed = matching * partition count.
  int points = 0;
  auto bad = detail::compare_display("r1.general", Stratum::r1, false, dwc::detail::range(3, 12), detail::derivation(o),
                                     &points);
  r.passed = bad.empty();
  r.detail = std::to_string(points) + " (d,l) points, convention constant 1 per q-power in the normalized reading" +
             detail::summarize(bad);
  return r;
}

inline Result criterion2(const Options& o) {
  Result r{2, "r=1 alpha^2=-1 case under permutation_sum", false, ""};
  DerivationOptions opt = detail::derivation(o);
  opt.basis = Convention::permutation_sum;
  SymForm a = derive_r1(2, 0, true, opt);
  SymForm b = derive_r1(2, 1, true, opt);
  const auto& p0 = printed_display("r1.obstruction.l0");
  const auto& p1 = printed_display("r1.obstruction.l1");
  SymForm pa = p0.form(2, 0, Convention::permutation_sum), pb = p1.form(2, 1, Convention::permutation_sum);
  // (1/4)((5+p+) alpha^2 + 4q) and -(1/4)(2p+ - 14), written out directly
  bool lit_a = a.coeff(0) == PolyQ{Rational(5, 4), Rational(1, 4)} && a.coeff(1) == PolyQ{1};
  bool lit_b = b.coeff(0) == PolyQ{Rational(7, 2), Rational(-1, 2)};
  std::string text = p1.printed_text(2, 1, 0);
  r.passed = a == pa && b == pb && lit_a && lit_b && text == "-(2*p+ - 14)/4";
  r.detail = "d=2 l=0 derived " + detail::show(a) + "\n    d=2 l=1 derived " + detail::show(b) +
             "\n    printed delta(1) text " + text;
  return r;
}

inline Result criterion3(const Options& o) {
  Result r{3, "equivariant wp pushforwards", false, ""};
  EquivariantContext eq(o.adhm);
  const auto& B = eq.base();
  auto w2 = eq.wp_power_pushforward(2);
  auto w3 = eq.wp_power_pushforward(3);
  bool ok2 = w2.value == B.constant(Rational(-5, 2));
  bool pre3 = w3.before_division == B.gen("cL", 16) + B.gen("cR", 320);
  bool ok3 = w3.value == B.gen("cL", 4) + B.gen("cR", 80);
  PulledClass pulled = eq.pull_to_manifold(w3.value);
  bool okp = pulled == PulledClass{0, 48, -25};
  r.passed = ok2 && pre3 && ok3 && okp;
  r.detail = "wp^2 -> " + w2.value.dump() + "    wp^3 before division -> " + w3.before_division.dump() +
             "    wp^3 -> " + w3.value.dump() + "    pulled back: " + pulled.top_value().str() +
             " with pt -> 1, P+ -> p+ (expected -25*p+ + 48)";
  for (auto& ch : r.detail)
    if (ch == '\n') ch = ';';
  return r;
}

inline Result criterion4(const Options& o) {
  Result r{4, "cap contributions vanish", false, ""};
  EquivariantContext eq(o.adhm);
  auto c2 = eq.cap_contribution(2), c3 = eq.cap_contribution(3);
  r.passed = c2.pushed.is_zero() && c3.pushed.is_zero();
  r.detail = "cap relation " + to_string(o.adhm.cap_relation) + ": k=2 -> " +
             (c2.pushed.is_zero() ? std::string("0") : c2.pushed.dump()) + ", k=3 -> " +
             (c3.pushed.is_zero() ? std::string("0") : c3.pushed.dump());
  for (auto& ch : r.detail)
    if (ch == '\n') ch = ' ';
  return r;
}

inline Result criterion5(const Options& o) {
  Result r{5, "r=2 upper stratum", false, ""};
  int pg = 0, po = 0;
  auto gen = detail::compare_display("r2.upper.general", Stratum::upper, false, dwc::detail::range(7, 12),
                                     detail::derivation(o), &pg);
  auto obs = detail::compare_display("r2.upper.obstruction", Stratum::upper, true, {6}, detail::derivation(o), &po);
  r.passed = gen.empty() && obs.empty();
  r.detail = "general: " + std::to_string(pg) + " points, " + std::to_string(gen.size()) + " mismatches" +
             detail::summarize(gen) + "\n    alpha^2=-1: " + std::to_string(po) + " points, " +
             std::to_string(obs.size()) + " mismatches" + detail::summarize(obs);
  if (!obs.empty())
    r.detail += "\n    the derived alpha^2=-1 alpha slot equals the general upper bracket at d=6; see the erratum report";
  return r;
}

inline Result criterion6(const Options& o, const ErratumReport& rep) {
  Result r{6, "r=2 lower stratum and erratum adjudication", false, ""};
  DerivationOptions opt = detail::derivation(o);
  const auto& disp = printed_display("r2.lower.general");
  std::vector<std::string> bad;
  // Every slot except the p+-linear one must match the print.
  for (int d = 7; d <= 12; ++d)
    for (int l = 0; 2 * l <= d; ++l) {
      SymForm f = derive_r2_lower(d, l, false, opt);
      for (const auto& s : disp.slots) {
        int m = d - 2 * l;
        if (m - 2 * s.k < 0) continue;
        Rational scale = disp.prefactor(d, l) * slot_weight(s.weight, m) * basis_weight(s.reading, m, s.k);
        PolyQ bracket = f.rebased(Convention::matching_sum).coeff(s.k) * (Rational(1) / scale);
        PolyQ printed = s.bracket.at(d, l);
        Rational dp = bracket.coeff(1), pp = printed.coeff(1);
        PolyQ rest_d = bracket - PolyQ{0, dp}, rest_p = printed - PolyQ{0, pp};
        std::string at = "d=" + std::to_string(d) + " l=" + std::to_string(l) + " k=" + std::to_string(s.k);
        if (!(rest_d == rest_p)) bad.push_back(at + ": non-p+ part " + rest_d.str() + " vs " + rest_p.str());
        if (s.k == 0 && dp != -50) bad.push_back(at + ": p+ coefficient derives to " + dp.str());
        if (s.k != 0 && dp != pp) bad.push_back(at + ": q-slot p+ coefficient " + dp.str() + " vs " + pp.str());
      }
    }
  Rational obs_p = printed_display("r2.lower.obstruction").slot(0)->bracket.coeff({0, 0, 1});
  Rational sum_p = printed_display("r2.total.general").slot(0)->bracket.coeff({0, 0, 1}) -
                   printed_display("r2.upper.general").slot(0)->bracket.coeff({0, 0, 1});
  bool corr = obs_p == -50 && sum_p == -50;
  const ErratumEntry* lower = rep.find("r2.lower.general", 0, "p+");
  const ErratumEntry* total = rep.find("r2.total.obstruction", 0, "p+");
  bool entries = rep.entries.size() == 2 && lower && lower->paper == -32 && lower->derived == -50 && total &&
                 total->paper == -58 && total->derived == -158;
  r.passed = bad.empty() && corr && entries;
  std::ostringstream os;
  os << "lower slots: " << (bad.empty() ? "match (p+ derives to -50)" : "mismatch") << detail::summarize(bad)
     << "\n    corroboration: alpha^2=-1 display p+ coefficient " << obs_p.str()
     << ", total minus upper general p+ coefficient " << sum_p.str()
     << "\n    erratum report: " << rep.entries.size() << " entries (expected exactly 2):";
  for (const auto& e : rep.entries)
    os << "\n      " << e.location << " k" << e.slot << " " << e.monomial << ": printed " << e.paper.str()
       << ", derived " << e.derived.str();
  if (total && total->derived != -158)
    os << "\n    the alpha^2=-1 total derives to " << total->derived.str()
       << "*p+, not the sum -158 of the printed stratum values";
  r.detail = os.str();
  return r;
}

inline Result criterion7(const Options& o) {
  Result r{7, "assembly of the two strata", false, ""};
  int points = 0;
  auto bad = detail::compare_display("r2.total.general", Stratum::total, false, dwc::detail::range(7, 12),
                                     detail::derivation(o), &points);
  r.passed = bad.empty();
  r.detail = std::to_string(points) + " (d,l) points, all slots including q^2 and the vanishing of negative exponents" +
             detail::summarize(bad);
  return r;
}

inline Result criterion8(const Options&) {
  Result r{8, "symmetrization oracle", false, ""};
  std::mt19937_64 rng(8);
  int cases = 0, bad = 0;
  for (int m = 0; m <= 6; ++m)
    for (int rep = 0; rep < 20; ++rep, ++cases) {
      PairingTable t = oracle::random_table(rng, m);
      SymForm f = oracle::random_form(rng, m, Convention::matching_sum);
      if (evaluate_sym_form(f, t, Convention::matching_sum) != oracle::permutation_evaluate(f, t)) ++bad;
      auto e = matching_sums(t);
      for (int k = 0; 2 * k <= m; ++k)
        if (e[k] != oracle::matching_value(t, k)) ++bad;
    }
  int lemma_bad = 0;
  ManifoldModel M(3);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int rr = 1; rr <= 3; ++rr)
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<HomologyClass> xs(2 * rr, HomologyClass(4));
      for (auto& x : xs)
        for (auto& c : x) c = coord(rng);
      PairingTable t = pairing_table_for(HomologyClass(4, 0), xs, M);
      Rational avg = matching_sums(t)[rr] / Rational(partition_count(2 * rr, rr));
      Rational expect = Rational(factorial(2 * rr)) / Rational(Integer(1) << rr) * avg;
      if (symmetrized_product_pairing(xs, rr, M) != expect) ++lemma_bad;
    }
  r.passed = bad == 0 && lemma_bad == 0;
  r.detail = std::to_string(cases) + " random tables with m <= 6: " + std::to_string(bad) +
             " disagreements; product pairing on X^r for r <= 3: " + std::to_string(lemma_bad) + " disagreements";
  return r;
}

inline CrossingProblem worked_example() {
  CrossingProblem p;
  p.M = ManifoldModel(2);
  p.p1 = -8;
  p.c = {0, 0, 0};
  p.omega_minus = {1, Rational(-3, 10), Rational(1, 10)};
  p.omega_plus = {1, Rational(3, 10), Rational(1, 10)};
  return p;
}

inline Result criterion9(const Options& o) {
  Result r{9, "wall enumeration on diag(1,-1,-1)", false, ""};
  CrossingProblem p = worked_example();
  auto walls = enumerate_walls(p, 2, o.epsilon_rule);
  std::vector<std::pair<HomologyClass, int>> got;
  bool flags = true;
  for (const auto& w : walls) {
    got.push_back({w.alpha, w.r});
    flags = flags && (w.supported == (w.r != 0));
  }
  std::vector<std::pair<HomologyClass, int>> expect{{{0, -2, -2}, 0}, {{0, -2, 0}, 1}, {{0, -2, 2}, 0}};
  auto box = oracle::box_walls(p, 2, 4);
  bool degenerate = false;
  CrossingProblem q = p;
  q.omega_minus = {1, 0, Rational(1, 10)};  // orthogonal to (0,2,0)
  try {
    enumerate_walls(q, 2);
  } catch (const DegenerateChamber&) {
    degenerate = true;
  }
  r.passed = got == expect && box == expect && flags && degenerate;
  std::string s;
  for (const auto& w : walls) s += " " + to_string(w.alpha) + " r=" + std::to_string(w.r) + (w.supported ? "" : " (unsupported)");
  r.detail = "crossed:" + s + "; box search |coords| <= 4 " + (box == expect ? "agrees" : "disagrees") +
             "; degenerate period point " + (degenerate ? "rejected" : "accepted");
  return r;
}

inline Result criterion10(const Options&) {
  Result r{10, "sign law under the literal rule", false, ""};
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> bm(1, 4), coord(-5, 5);
  int minus = 0;
  const int cases = 1000;
  for (int i = 0; i < cases; ++i) {
    ManifoldModel M(bm(rng));
    HomologyClass a(M.rank()), c(M.rank());
    for (size_t j = 0; j < M.rank(); ++j) {
      a[j] = coord(rng);
      c[j] = a[j] + 2 * coord(rng);
    }
    if (epsilon_sign(c, a, M, EpsilonRule::paper_half) != 1) ++minus;
  }
  r.passed = minus == 0;
  r.detail = std::to_string(cases) + " random pairs, " + std::to_string(minus) +
             " returned -1; (c-alpha)^2/2 = 2 beta^2 is always even, so this rule is identically +1";
  return r;
}

inline Result criterion11(const Options&) {
  Result r{11, "ring kernel properties", false, ""};
  std::mt19937_64 rng(11);
  oracle::KernelRing R;
  const auto& p = R.p;
  const int cases = 1000;
  int idem = 0, comm = 0, assoc = 0, lin = 0, kill = 0, segre = 0;
  for (int i = 0; i < cases; ++i) {
    GradedElement a = R.random(rng), b = R.random(rng), c = R.random(rng);
    GradedElement na = p.normalize(a);
    if (!(p.normalize(na) == na)) ++idem;
    if (!(p.multiply(a, b) == p.multiply(b, a))) ++comm;
    if (!(p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c)))) ++assoc;
    Rational s = oracle::small_rational(rng);
    GradedElement nb = p.normalize(b);
    if (!(p.fiber_integrate(p.normalize(na + s * nb)) == p.fiber_integrate(na) + s * p.fiber_integrate(nb))) ++lin;
    GradedElement low = p.zero();
    for (const auto& [m, co] : na.terms())
      if (m[p.index("h")] < 2) low.add_term(m, co);
    if (!p.fiber_integrate(low).is_zero()) ++kill;
    int e = i % 5;
    GradedElement u = Rational(1, 4) * (p.monomial({{"a", 2}}) - p.gen("P"));
    if (!(p.fiber_integrate(p.normalize(p.monomial({{"h", e}}))) ==
          oracle::segre_pushforward(p, p.gen("a"), u, 3, e)))
      ++segre;
  }
  r.passed = idem + comm + assoc + lin + kill + segre == 0;
  r.detail = std::to_string(cases) + " cases each; failures: idempotence " + std::to_string(idem) + ", commutativity " +
             std::to_string(comm) + ", associativity " + std::to_string(assoc) + ", fiber linearity " +
             std::to_string(lin) + ", degree kill " + std::to_string(kill) + ", Segre oracle " + std::to_string(segre);
  return r;
}

inline std::vector<int> all_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}; }

inline Result run(int id, const Options& o, const ErratumReport* rep = nullptr) {
  switch (id) {
    case 1: return criterion1(o);
    case 2: return criterion2(o);
    case 3: return criterion3(o);
    case 4: return criterion4(o);
    case 5: return criterion5(o);
    case 6: {
      if (rep) return criterion6(o, *rep);
      ErratumOptions eo;
      eo.derivation.adhm = o.adhm;
      return criterion6(o, erratum_report(eo));
    }
    case 7: return criterion7(o);
    case 8: return criterion8(o);
    case 9: return criterion9(o);
    case 10: return criterion10(o);
    case 11: return criterion11(o);
  }
  throw InputError("no acceptance criterion " + std::to_string(id));
}

}  // namespace dwc::acceptance

#endif  // DWC_ACCEPTANCE_HPP
