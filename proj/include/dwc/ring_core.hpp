#ifndef DWC_RING_CORE_HPP
#define DWC_RING_CORE_HPP

// Graded commutative polynomial rings over an exact coefficient ring, with
// triangular rewrite relations, degree truncation and fiber integration.

#include "dwc/rational.hpp"

#include <concepts>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dwc {

template <class C>
concept CoefficientRing = requires(C a, C b) {
  { a + b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { a == b } -> std::convertible_to<bool>;
  C(0);
  C(1);
};

enum class GeneratorKind { fiber, base, formal_number_carrier };

struct Generator {
  std::string id;
  int degree = 2;
  GeneratorKind kind = GeneratorKind::base;
  // Truncation group; a presentation may cap the degree carried by each group.
  int factor = 0;
};

/// Ordered generator list shared by a presentation and all of its elements.
class GeneratorTable {
 public:
  explicit GeneratorTable(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (size_t i = 0; i < gens_.size(); ++i) {
      const auto& g = gens_[i];
      if (g.degree < 2 || g.degree % 2 != 0)
        throw InputError("generator '" + g.id + "' must have even degree >= 2");
      if (!index_.emplace(g.id, static_cast<int>(i)).second)
        throw InputError("duplicate generator id '" + g.id + "'");
    }
  }
  size_t size() const { return gens_.size(); }
  const Generator& operator[](size_t i) const { return gens_[i]; }
  const std::vector<Generator>& all() const { return gens_; }
  std::optional<int> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int index(const std::string& id) const {
    auto i = find(id);
    if (!i) throw InputError("undeclared generator '" + id + "'");
    return *i;
  }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, int> index_;
};

using Monomial = std::vector<int>;  // exponents in declaration order

template <CoefficientRing C>
class BasicGradedElement {
 public:
  using Terms = std::map<Monomial, C>;  // lexicographic on declaration order

  BasicGradedElement() = default;
  explicit BasicGradedElement(std::shared_ptr<const GeneratorTable> t) : table_(std::move(t)) {}

  const std::shared_ptr<const GeneratorTable>& table() const { return table_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const C& c) {
    if (c == C(0)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }
  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  int degree_of(const Monomial& m) const {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * (*table_)[i].degree;
    return d;
  }
  std::optional<int> max_degree() const {
    std::optional<int> best;
    for (const auto& [m, c] : terms_) best = std::max(best.value_or(0), degree_of(m));
    return best;
  }
  BasicGradedElement homogeneous_component(int deg) const {
    BasicGradedElement out(table_);
    for (const auto& [m, c] : terms_)
      if (degree_of(m) == deg) out.terms_.emplace(m, c);
    return out;
  }

  BasicGradedElement& operator+=(const BasicGradedElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicGradedElement& operator-=(const BasicGradedElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend BasicGradedElement operator+(BasicGradedElement a, const BasicGradedElement& b) {
    return a += b;
  }
  friend BasicGradedElement operator-(BasicGradedElement a, const BasicGradedElement& b) {
    return a -= b;
  }
  friend BasicGradedElement operator*(const C& s, const BasicGradedElement& e) {
    BasicGradedElement out(e.table_);
    for (const auto& [m, c] : e.terms_) out.add_term(m, s * c);
    return out;
  }
  friend bool operator==(const BasicGradedElement& a, const BasicGradedElement& b) {
    return a.terms_ == b.terms_;
  }

  /// Debug dump, one term per line: "coeff * gen^e gen^e". The zero element dumps as "0".
  std::string dump() const {
    if (terms_.empty()) return "0\n";
    std::ostringstream os;
    for (const auto& [m, c] : terms_) {
      os << coeff_text(c);
      bool first = true;
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << (first ? " * " : " ") << (*table_)[i].id << '^' << m[i];
        first = false;
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  void adopt(const BasicGradedElement& o) {
    if (!table_) table_ = o.table_;
    if (o.table_ && o.table_ != table_ && !o.terms_.empty())
      throw InvariantViolation("mixing elements of different generator tables");
  }
  static std::string coeff_text(const C& c) {
    if constexpr (requires { c.str(); })
      return c.str();
    else {
      std::ostringstream os;
      os << c;
      return os.str();
    }
  }

  std::shared_ptr<const GeneratorTable> table_;
  Terms terms_;
};

template <CoefficientRing C>
struct BasicRewriteRule {
  int generator;  // leading generator g; the rule reads g^exponent -> replacement
  int exponent;
  BasicGradedElement<C> replacement;
};

template <CoefficientRing C>
struct FiberTop {
  int generator;
  int exponent;
  C value;
};

/// One computation context: generators, triangular relations, truncation, fiber top.
template <CoefficientRing C>
class BasicPresentation {
 public:
  using Element = BasicGradedElement<C>;
  using Rule = BasicRewriteRule<C>;

  explicit BasicPresentation(std::vector<Generator> gens)
      : table_(std::make_shared<GeneratorTable>(std::move(gens))) {}

  const std::shared_ptr<const GeneratorTable>& table() const { return table_; }
  const GeneratorTable& generators() const { return *table_; }
  const std::vector<Rule>& relations() const { return rules_; }
  std::optional<int> truncation_degree() const { return truncation_; }
  const std::map<int, int>& factor_budgets() const { return budgets_; }
  const std::optional<FiberTop<C>>& fiber_top() const { return top_; }
  int index(const std::string& id) const { return table_->index(id); }

  // --- construction -------------------------------------------------------

  /// Adds g^exponent -> replacement. Rejects rules that do not lower the
  /// leading exponent, reuse a leading generator, or close a rewriting cycle.
  BasicPresentation& add_relation(const std::string& gen, int exponent, const Element& replacement) {
    int g = index(gen);
    if (exponent < 1) throw InputError("relation on '" + gen + "' needs a positive exponent");
    for (const auto& r : rules_)
      if (r.generator == g) throw InputError("second relation with leading generator '" + gen + "'");
    Element rep = import(replacement);
    for (const auto& [m, c] : rep.terms())
      if (m[g] >= exponent)
        throw InputError("relation on '" + gen + "' does not decrease the leading exponent");
    rules_.push_back({g, exponent, rep});
    if (has_cycle()) {
      rules_.pop_back();
      throw InputError("relation on '" + gen + "' makes rewriting non-terminating");
    }
    check_truncation();
    return *this;
  }
  BasicPresentation& set_truncation_degree(int deg) {
    truncation_ = deg;
    check_truncation();
    return *this;
  }
  BasicPresentation& set_factor_budget(int factor, int max_degree) {
    budgets_[factor] = max_degree;
    if (budgets_.size() > kMaxBudgets) throw InputError("too many truncation groups");
    slot_.assign(table_->size(), -1);
    budget_value_.clear();
    for (const auto& [f, b] : budgets_) {
      for (size_t i = 0; i < table_->size(); ++i)
        if ((*table_)[i].factor == f) slot_[i] = static_cast<int>(budget_value_.size());
      budget_value_.push_back(b);
    }
    return *this;
  }
  BasicPresentation& set_fiber_top(const std::string& gen, int exponent, const C& value) {
    top_ = FiberTop<C>{index(gen), exponent, value};
    return *this;
  }

  // --- element builders ---------------------------------------------------

  Element zero() const { return Element(table_); }
  Element constant(const C& c) const {
    Element e(table_);
    e.add_term(Monomial(table_->size(), 0), c);
    return e;
  }
  Element monomial(const std::vector<std::pair<std::string, int>>& powers, const C& c = C(1)) const {
    Monomial m(table_->size(), 0);
    for (const auto& [id, e] : powers) m[index(id)] += e;
    Element out(table_);
    out.add_term(m, c);
    return out;
  }
  Element gen(const std::string& id, const C& c = C(1)) const { return monomial({{id, 1}}, c); }

  /// Re-expresses an element of another table in this one, matching generators by id.
  Element import(const Element& e) const {
    if (!e.table() || e.table() == table_) {
      Element out(table_);
      for (const auto& [m, c] : e.terms()) out.add_term(m, c);
      return out;
    }
    std::vector<int> map(e.table()->size(), -1);
    for (const auto& [m, c] : e.terms())
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0 && map[i] < 0) {
          auto j = table_->find((*e.table())[i].id);
          if (!j) throw InputError("undeclared generator '" + (*e.table())[i].id + "'");
          map[i] = *j;
        }
    Element out(table_);
    for (const auto& [m, c] : e.terms()) {
      Monomial n(table_->size(), 0);
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) n[map[i]] += m[i];
      out.add_term(n, c);
    }
    return out;
  }

  // --- arithmetic ---------------------------------------------------------

  bool truncated(const Monomial& m) const {
    if (!truncation_ && budgets_.empty()) return false;
    int total = 0;
    int used[kMaxBudgets] = {};
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      int d = m[i] * (*table_)[i].degree;
      total += d;
      if (!slot_.empty() && slot_[i] >= 0 && (used[slot_[i]] += d) > budget_value_[slot_[i]]) return true;
    }
    return truncation_ && total > *truncation_;
  }

  /// Product with truncation but without rewriting.
  Element multiply_raw(const Element& a, const Element& b) const {
    const Element& x = same(a);
    const Element& y = same(b);
    Element out(table_);
    Monomial m(table_->size());
    for (const auto& [ma, ca] : x.terms())
      for (const auto& [mb, cb] : y.terms()) {
        for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        if (!truncated(m)) out.add_term(m, ca * cb);
      }
    return out;
  }

  Element normalize(const Element& e) const {
    Element input = import(e);
    std::map<Monomial, C> work(input.terms().begin(), input.terms().end());
    Element out(table_);
    while (!work.empty()) {
      auto node = work.extract(work.begin());
      const Monomial& m = node.key();
      if (truncated(m)) continue;
      const Rule* hit = nullptr;
      for (const auto& r : rules_)
        if (m[r.generator] >= r.exponent) {
          hit = &r;
          break;
        }
      if (!hit) {
        out.add_term(m, node.mapped());
        continue;
      }
      Monomial rest = m;
      rest[hit->generator] -= hit->exponent;
      Monomial n(rest.size());
      for (const auto& [mr, cr] : hit->replacement.terms()) {
        for (size_t i = 0; i < n.size(); ++i) n[i] = rest[i] + mr[i];
        if (truncated(n)) continue;
        C c = node.mapped() * cr;
        auto [it, fresh] = work.try_emplace(n, c);
        if (!fresh) {
          it->second = it->second + c;
          if (it->second == C(0)) work.erase(it);
        }
      }
    }
    return out;
  }

  Element multiply(const Element& a, const Element& b) const {
    return normalize(multiply_raw(normalize(a), normalize(b)));
  }
  Element power(const Element& a, int k) const {
    Element acc = constant(C(1));
    for (int i = 0; i < k; ++i) acc = multiply(acc, a);
    return acc;
  }

  /// Coefficient of g^m scaled by the stored fiber value; lower fiber powers vanish.
  Element fiber_integrate(const Element& e) const {
    if (!top_) throw InvariantViolation("presentation has no fiber top");
    const Element& x = same(e);
    Element out(table_);
    for (const auto& [m, c] : x.terms()) {
      int ex = m[top_->generator];
      if (ex > top_->exponent)
        throw InvariantViolation("fiber exponent " + std::to_string(ex) + " exceeds top " +
                                 std::to_string(top_->exponent));
      if (ex < top_->exponent) continue;
      Monomial base = m;
      base[top_->generator] = 0;
      out.add_term(base, top_->value * c);
    }
    return out;
  }

  bool is_base_only(const Element& e) const {
    for (const auto& [m, c] : same(e).terms())
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0 && (*table_)[i].kind == GeneratorKind::fiber) return false;
    return true;
  }

  /// Ring homomorphism into `target`: every generator used by `e` must appear in `images`
  /// or be declared in the target (then it maps to itself).
  template <class Target>
  typename Target::Element substitute(const Element& e, const Target& target,
                                      const std::map<std::string, typename Target::Element>& images) const {
    const Element& x = same(e);
    std::vector<std::optional<typename Target::Element>> img(table_->size());
    auto out = target.zero();
    for (const auto& [m, c] : x.terms()) {
      auto term = target.constant(c);
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!img[i]) {
          const auto& id = (*table_)[i].id;
          auto it = images.find(id);
          img[i] = it != images.end() ? target.import(it->second) : target.gen(id);
        }
        for (int k = 0; k < m[i]; ++k) term = target.multiply(term, *img[i]);
      }
      out += term;
    }
    return target.normalize(out);
  }

 private:
  const Element& same(const Element& e) const {
    if (e.table() && e.table() != table_ && !e.is_zero())
      throw InvariantViolation("element belongs to a different presentation");
    return e;
  }
  void check_truncation() const {
    if (!truncation_) return;
    for (const auto& r : rules_) {
      int d = r.exponent * (*table_)[r.generator].degree;
      if (d > *truncation_)
        throw InputError("truncation degree below relation degree of '" + (*table_)[r.generator].id + "'");
    }
  }
  // Edge g -> g' when the rule for g introduces the leading generator g'.
  bool has_cycle() const {
    std::map<int, std::vector<int>> edges;
    std::map<int, int> lead;
    for (const auto& r : rules_) lead[r.generator] = 1;
    for (const auto& r : rules_)
      for (const auto& [m, c] : r.replacement.terms())
        for (size_t i = 0; i < m.size(); ++i)
          if (m[i] != 0 && static_cast<int>(i) != r.generator && lead.count(static_cast<int>(i)))
            edges[r.generator].push_back(static_cast<int>(i));
    std::map<int, int> state;
    std::function<bool(int)> visit = [&](int v) {
      state[v] = 1;
      for (int w : edges[v]) {
        if (state[w] == 1) return true;
        if (state[w] == 0 && visit(w)) return true;
      }
      state[v] = 2;
      return false;
    };
    for (const auto& [v, _] : lead)
      if (state[v] == 0 && visit(v)) return true;
    return false;
  }

  std::shared_ptr<const GeneratorTable> table_;
  std::vector<Rule> rules_;
  std::optional<int> truncation_;
  static constexpr size_t kMaxBudgets = 8;
  std::map<int, int> budgets_;
  std::vector<int> slot_;  // generator -> budget slot, -1 when unbudgeted
  std::vector<int> budget_value_;
  std::optional<FiberTop<C>> top_;
};

using GradedElement = BasicGradedElement<Rational>;
using RingPresentation = BasicPresentation<Rational>;
using RewriteRule = BasicRewriteRule<Rational>;

/// Pairs the top-degree part of a base-only element. Lower-degree terms contribute zero;
/// a top-degree monomial without a pairing value is rejected by name.
template <class V, CoefficientRing C>
V pair_top(const BasicGradedElement<C>& e, int top_degree,
           const std::function<std::optional<V>(const Monomial&)>& pairing) {
  V acc = V(0);
  const auto& table = *e.table();
  for (const auto& [m, c] : e.terms()) {
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0 && table[i].kind == GeneratorKind::fiber)
        throw InvariantViolation("pair_top on a class with fiber generator '" + table[i].id + "'");
    int d = e.degree_of(m);
    if (d < top_degree) continue;
    if (d > top_degree) throw InvariantViolation("class above top degree reached pair_top");
    auto v = pairing(m);
    if (!v) {
      BasicGradedElement<C> one(e.table());
      one.add_term(m, C(1));
      auto text = one.dump();
      text.pop_back();
      throw InputError("no pairing value for top-degree monomial '" + text.substr(4) + "'");
    }
    acc = acc + V(c) * *v;
  }
  return acc;
}

}  // namespace dwc

#endif  // DWC_RING_CORE_HPP
