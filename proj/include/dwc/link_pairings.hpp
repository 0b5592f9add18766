#ifndef DWC_LINK_PAIRINGS_HPP
#define DWC_LINK_PAIRINGS_HPP

// Difference terms derived from first principles: the r=1 projective-bundle model,
// the r=2 upper stratum over X^2, and the r=2 lower stratum over X.
//
// Every pipeline evaluates a pairing table (alpha^2, b_i = <alpha,x_i>, q(x_i,x_j)) with
// p+ kept symbolic. Coefficients are read off with indicator tables: for the q^k slot,
// b_i = 0 on the first 2k classes, q = 1 on the pairs (0,1),(2,3),... and 0 elsewhere.
// Exactly one partition then contributes, so the pipeline value is the matching-sum
// coefficient itself.

#include "dwc/adhm_equivariant.hpp"
#include "dwc/geometry.hpp"
#include "dwc/ring_core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dwc {

struct TraceStage {
  std::string stage;  // expand, leray-hirsch, thom-divide, descend, pushforward, pair
  int slot;           // q-power whose indicator table was used
  std::string body;
};
using DerivationTrace = std::vector<TraceStage>;

struct DerivationOptions {
  Convention basis = Convention::permutation_sum;
  AdhmOptions adhm;
  bool swap_factors = false;  // upper stratum: declare the second factor's classes first
  DerivationTrace* trace = nullptr;
};

struct DerivationContext {
  int d = 0, l = 0, r = 0, N = 0;
  bool obstruction = false;
  Rational prefactor = 1;
  Rational alpha_sq = 0;
  int m() const { return d - 2 * l; }
};

inline PairingTable indicator_table(int m, int k, const Rational& alpha_sq) {
  PairingTable t;
  t.alpha_sq = alpha_sq;
  t.b.assign(m, 0);
  for (int i = 2 * k; i < m; ++i) t.b[i] = 1;
  t.q.assign(m, std::vector<Rational>(m, 0));
  for (int j = 0; j < k; ++j) t.q[2 * j][2 * j + 1] = t.q[2 * j + 1][2 * j] = 1;
  return t;
}

namespace detail {

inline void check_range(int r, int d, int l, bool obstruction) {
  const std::string where = "r=" + std::to_string(r) + " d=" + std::to_string(d) + " l=" + std::to_string(l);
  if (r == 1) {
    if (obstruction && d != 2) throw InputError(where + ": the alpha^2=-1 case needs d=2");
    if (!obstruction && d < 3) throw InputError(where + ": needs d >= 3 (alpha^2 = 1-d < -1)");
  } else if (r == 2) {
    if (obstruction && d != 6) throw InputError(where + ": the alpha^2=-1 case needs d=6");
    if (!obstruction && d < 7) throw InputError(where + ": needs d >= 7 (alpha^2 = 5-d < -1)");
  } else {
    throw InputError("unsupported level r=" + std::to_string(r));
  }
  if (l < 0 || 2 * l > d) throw InputError(where + ": needs 0 <= 2l <= d");
  if (d > 20) throw InputError(where + ": d above 20 is not supported");
}

inline std::string sfx(int factor) { return factor == 0 ? "" : "_" + std::to_string(factor); }

/// a (the class alpha), pt (point class), P (the p+ carrier) and x0..x{m-1}.
inline void add_base_generators(std::vector<Generator>& g, int m, int factor) {
  const std::string s = sfx(factor);
  g.push_back({"a" + s, 2, GeneratorKind::base, factor});
  g.push_back({"pt" + s, 4, GeneratorKind::base, factor});
  g.push_back({"P" + s, 4, GeneratorKind::formal_number_carrier, factor});
  for (int i = 0; i < m; ++i) g.push_back({"x" + std::to_string(i) + s, 2, GeneratorKind::base, factor});
}

/// Pairs top-degree monomials on X or X^2, one degree-4 product per factor.
class BasePairing {
 public:
  BasePairing(const GeneratorTable& table, const PairingTable& t) : t_(t) {
    for (size_t i = 0; i < table.size(); ++i) {
      const auto& g = table[i];
      Role r{-1, g.factor, -1};
      std::string stem = g.id.substr(0, g.id.find('_'));
      if (stem == "a") r.kind = 0;
      else if (stem == "pt") r.kind = 1;
      else if (stem == "P") r.kind = 2;
      else if (stem[0] == 'x') r.kind = 3, r.index = std::stoi(stem.substr(1));
      roles_.push_back(r);
    }
  }

  std::optional<PolyQ> operator()(const Monomial& m) const {
    std::map<int, std::vector<const Role*>> per;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (roles_[i].kind < 0) return std::nullopt;
      for (int e = 0; e < m[i]; ++e) per[roles_[i].factor].push_back(&roles_[i]);
    }
    PolyQ v = 1;
    for (auto& [f, items] : per) {
      auto fv = factor_value(items);
      if (!fv) return std::nullopt;
      v *= *fv;
    }
    return v;
  }

 private:
  struct Role {
    int kind;  // 0 alpha, 1 pt, 2 P, 3 x
    int factor;
    int index;
  };
  std::optional<PolyQ> factor_value(std::vector<const Role*> it) const {
    std::sort(it.begin(), it.end(), [](const Role* a, const Role* b) { return a->kind < b->kind; });
    if (it.size() == 1 && it[0]->kind == 1) return PolyQ(1);
    if (it.size() == 1 && it[0]->kind == 2) return PolyQ::var();
    if (it.size() != 2) return std::nullopt;
    if (it[0]->kind == 0 && it[1]->kind == 0) return PolyQ(t_.alpha_sq);
    if (it[0]->kind == 0 && it[1]->kind == 3) return PolyQ(t_.b.at(it[1]->index));
    if (it[0]->kind == 3 && it[1]->kind == 3) return PolyQ(t_.q.at(it[0]->index).at(it[1]->index));
    return std::nullopt;
  }
  const PairingTable& t_;
  std::vector<Role> roles_;
};

inline void record(DerivationTrace* tr, const std::string& stage, int slot, std::string body) {
  if (tr) tr->push_back({stage, slot, std::move(body)});
}

inline SymForm collect(const DerivationContext& ctx, const DerivationOptions& opts,
                       const std::function<PolyQ(const PairingTable&, int)>& value) {
  SymForm f;
  f.m = ctx.m();
  f.basis = Convention::matching_sum;
  f.meta = {ctx.d, ctx.l, ctx.r, ctx.alpha_sq, ctx.obstruction};
  for (int k = 0; 2 * k <= f.m; ++k) f.set(k, value(indicator_table(f.m, k, ctx.alpha_sq), k));
  return f.rebased(opts.basis);
}

}  // namespace detail

/// Projectivization P(C^N + E~) over X with N = d-3 (or P(E~) when alpha^2 = -1).
class R1Model {
 public:
  R1Model(int d, int l, bool obstruction) {
    detail::check_range(1, d, l, obstruction);
    ctx_ = {d, l, 1, obstruction ? 0 : d - 3, obstruction, 0, Rational(1 - d)};
    ctx_.prefactor = -Rational(1) / Rational(Integer(1) << ctx_.N);
    rank_ = ctx_.N + 2;
    std::vector<Generator> g{{"h", 2, GeneratorKind::fiber, 0}};
    detail::add_base_generators(g, ctx_.m(), 1);
    pres_.emplace(std::move(g));
    auto& p = *pres_;
    p.set_factor_budget(1, 4);
    // c1 = alpha, c2 = (alpha^2 - p+)/4; h^rank = c1 h^(rank-1) - c2 h^(rank-2).
    GradedElement c1 = p.gen("a_1");
    GradedElement c2 = Rational(1, 4) * (p.monomial({{"a_1", 2}}) - p.gen("P_1"));
    p.add_relation("h", rank_,
                   p.multiply_raw(c1, p.monomial({{"h", rank_ - 1}})) -
                       p.multiply_raw(c2, p.monomial({{"h", rank_ - 2}})));
    p.set_fiber_top("h", rank_ - 1, sign_power(rank_ - 1));
  }

  const DerivationContext& context() const { return ctx_; }
  const RingPresentation& presentation() const { return *pres_; }

  PolyQ value(const PairingTable& t, DerivationTrace* tr = nullptr, int slot = 0) const {
    const auto& p = *pres_;
    GradedElement e = p.constant(1);
    for (int i = 0; i < ctx_.m(); ++i) e = p.multiply_raw(e, p.gen("h", t.b[i]) + p.gen(xname(i)));
    GradedElement point = p.monomial({{"h", 2}}, -1) + p.gen("pt_1");
    for (int j = 0; j < ctx_.l; ++j) e = p.multiply_raw(e, point);
    if (ctx_.obstruction) e = p.multiply_raw(e, p.gen("h", 2));
    detail::record(tr, "expand", slot, e.dump());
    GradedElement n = p.normalize(e);
    detail::record(tr, "leray-hirsch", slot, n.dump());
    GradedElement base = p.fiber_integrate(n);
    detail::BasePairing pair(p.generators(), t);
    PolyQ v = ctx_.prefactor * pair_top<PolyQ>(base, 4, std::cref(pair));
    detail::record(tr, "pair", slot, base.dump() + "value = " + v.str() + "\n");
    return v;
  }

 private:
  static std::string xname(int i) { return "x" + std::to_string(i) + "_1"; }
  DerivationContext ctx_;
  int rank_ = 0;
  std::optional<RingPresentation> pres_;
};

/// Projectivization of C^N + E~_1 + E~_2 over X^2 with N = d-7 (no trivial summand at alpha^2 = -1).
class R2UpperModel {
 public:
  R2UpperModel(int d, int l, bool obstruction, bool swap_factors = false) {
    detail::check_range(2, d, l, obstruction);
    ctx_ = {d, l, 2, obstruction ? 0 : d - 7, obstruction, 0, Rational(5 - d)};
    ctx_.prefactor = Rational(1) / Rational(Integer(1) << (ctx_.N + 2));
    rank_ = ctx_.N + 4;
    std::vector<Generator> g{{"h", 2, GeneratorKind::fiber, 0}};
    for (int s : swap_factors ? std::vector<int>{2, 1} : std::vector<int>{1, 2})
      detail::add_base_generators(g, ctx_.m(), s);
    pres_.emplace(std::move(g));
    auto& p = *pres_;
    p.set_factor_budget(1, 4).set_factor_budget(2, 4);
    GradedElement a1 = p.gen("a_1"), a2 = p.gen("a_2");
    GradedElement u1 = Rational(1, 4) * (p.monomial({{"a_1", 2}}) - p.gen("P_1"));
    GradedElement u2 = Rational(1, 4) * (p.monomial({{"a_2", 2}}) - p.gen("P_2"));
    std::vector<GradedElement> c{a1 + a2, p.multiply_raw(a1, a2) + u1 + u2,
                                 p.multiply_raw(a1, u2) + p.multiply_raw(a2, u1), p.multiply_raw(u1, u2)};
    GradedElement rep = p.zero();
    for (int i = 1; i <= 4; ++i)
      rep += sign_power(i + 1) * p.multiply_raw(c[i - 1], p.monomial({{"h", rank_ - i}}));
    p.add_relation("h", rank_, rep);
    p.set_fiber_top("h", rank_ - 1, sign_power(rank_ - 1));
  }

  const DerivationContext& context() const { return ctx_; }
  const RingPresentation& presentation() const { return *pres_; }

  PolyQ value(const PairingTable& t, DerivationTrace* tr = nullptr, int slot = 0) const {
    const auto& p = *pres_;
    GradedElement e = p.constant(1);
    for (int i = 0; i < ctx_.m(); ++i) {
      const std::string x = "x" + std::to_string(i);
      e = p.multiply_raw(e, p.gen("h", t.b[i]) + p.gen(x + "_1") + p.gen(x + "_2"));
    }
    GradedElement point = p.monomial({{"h", 2}}, -1) + p.gen("pt_1") + p.gen("pt_2");
    for (int j = 0; j < ctx_.l; ++j) e = p.multiply_raw(e, point);
    if (ctx_.obstruction) e = p.multiply_raw(e, p.gen("h", 2));
    detail::record(tr, "expand", slot, e.dump());
    GradedElement n = p.normalize(e);
    detail::record(tr, "leray-hirsch", slot, n.dump());
    GradedElement base = p.fiber_integrate(n);
    detail::BasePairing pair(p.generators(), t);
    PolyQ v = ctx_.prefactor * pair_top<PolyQ>(base, 8, std::cref(pair));
    detail::record(tr, "pair", slot, base.dump() + "value = " + v.str() + "\n");
    return v;
  }

 private:
  DerivationContext ctx_;
  int rank_ = 0;
  std::optional<RingPresentation> pres_;
};

/// Lower stratum: integrand in the circle class c, Thom division by (-c)^N, c = alpha - h,
/// descent h^(2j+1) -> 2 wp^j, then the equivariant pushforwards of wp^2 and wp^3.
class R2LowerModel {
 public:
  R2LowerModel(int d, int l, bool obstruction, const AdhmOptions& adhm = {}) {
    detail::check_range(2, d, l, obstruction);
    ctx_ = {d, l, 2, obstruction ? 0 : d - 7, obstruction, 1, Rational(5 - d)};
    std::vector<Generator> gu{{"c", 2, GeneratorKind::fiber, 0}};
    detail::add_base_generators(gu, ctx_.m(), 1);
    gamma_.emplace(std::move(gu));
    gamma_->set_factor_budget(1, 4);
    std::vector<Generator> gb{{"h", 2, GeneratorKind::fiber, 0}, {"w", 4, GeneratorKind::fiber, 0}};
    detail::add_base_generators(gb, ctx_.m(), 1);
    link_.emplace(std::move(gb));
    link_->set_factor_budget(1, 4).set_factor_budget(0, 14);
    EquivariantContext eq(adhm);
    for (int k = 2; k <= 3; ++k) wp_[k] = eq.pull_to_manifold(eq.wp_power_pushforward(k).value);
  }

  const DerivationContext& context() const { return ctx_; }
  const PulledClass& wp_image(int k) const { return wp_.at(k); }

  PolyQ value(const PairingTable& t, DerivationTrace* tr = nullptr, int slot = 0) const {
    const auto& u = *gamma_;
    const auto& b = *link_;
    GradedElement e = u.constant(1);
    for (int i = 0; i < ctx_.m(); ++i)
      e = u.multiply_raw(e, u.gen("c", t.b[i] / 2) + u.gen("x" + std::to_string(i) + "_1", 2));
    GradedElement point = u.monomial({{"c", 2}}, Rational(-1, 4)) + u.gen("pt_1", 2);
    for (int j = 0; j < ctx_.l; ++j) e = u.multiply_raw(e, point);
    if (ctx_.obstruction) e = u.multiply_raw(e, u.gen("c"));
    detail::record(tr, "expand", slot, e.dump());

    const int ci = u.index("c");
    GradedElement divided = u.zero();
    for (const auto& [m, c] : e.terms()) {
      if (m[ci] < ctx_.N) throw InvariantViolation("integrand term not divisible by the Thom class");
      Monomial n = m;
      n[ci] -= ctx_.N;
      divided.add_term(n, sign_power(ctx_.N) * c);
    }
    detail::record(tr, "thom-divide", slot, divided.dump());

    GradedElement sub = u.substitute(divided, b, {{"c", b.gen("a_1") - b.gen("h")}});
    const int hi = b.index("h"), wi = b.index("w");
    GradedElement descended = b.zero();
    for (const auto& [m, c] : sub.terms()) {
      if (m[hi] % 2 == 0) continue;
      Monomial n = m;
      n[wi] += (m[hi] - 1) / 2;
      n[hi] = 0;
      descended.add_term(n, 2 * c);
    }
    detail::record(tr, "descend", slot, descended.dump());

    GradedElement pushed = b.zero();
    for (const auto& [m, c] : descended.terms()) {
      auto it = wp_.find(m[wi]);
      if (it == wp_.end()) continue;  // wp^j with j < 2 or j > 3 pushes to zero on X
      Monomial n = m;
      n[wi] = 0;
      GradedElement rest = b.zero();
      rest.add_term(n, c);
      const PulledClass& img = it->second;
      GradedElement cls = b.constant(img.constant) + b.gen("pt_1", img.pt) + b.gen("P_1", img.p_plus);
      pushed += b.multiply(rest, cls);
    }
    detail::record(tr, "pushforward", slot, pushed.dump());

    detail::BasePairing pair(b.generators(), t);
    PolyQ v = pair_top<PolyQ>(pushed, 4, std::cref(pair));
    detail::record(tr, "pair", slot, "value = " + v.str() + "\n");
    return v;
  }

 private:
  DerivationContext ctx_;
  std::optional<RingPresentation> gamma_, link_;
  std::map<int, PulledClass> wp_;
};

inline SymForm derive_r1(int d, int l, bool obstruction, const DerivationOptions& opts = {}) {
  R1Model model(d, l, obstruction);
  return detail::collect(model.context(), opts,
                         [&](const PairingTable& t, int k) { return model.value(t, opts.trace, k); });
}

inline SymForm derive_r2_upper(int d, int l, bool obstruction, const DerivationOptions& opts = {}) {
  R2UpperModel model(d, l, obstruction, opts.swap_factors);
  return detail::collect(model.context(), opts,
                         [&](const PairingTable& t, int k) { return model.value(t, opts.trace, k); });
}

inline SymForm derive_r2_lower(int d, int l, bool obstruction, const DerivationOptions& opts = {}) {
  R2LowerModel model(d, l, obstruction, opts.adhm);
  return detail::collect(model.context(), opts,
                         [&](const PairingTable& t, int k) { return model.value(t, opts.trace, k); });
}

/// Upper plus lower stratum; the correction term between them is dropped.
inline SymForm assemble_delta_r2(int d, int l, bool obstruction, const DerivationOptions& opts = {}) {
  return (derive_r2_upper(d, l, obstruction, opts) + derive_r2_lower(d, l, obstruction, opts)).rebased(opts.basis);
}

}  // namespace dwc

#endif  // DWC_LINK_PAIRINGS_HPP
