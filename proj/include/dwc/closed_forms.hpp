#ifndef DWC_CLOSED_FORMS_HPP
#define DWC_CLOSED_FORMS_HPP

// Printed closed forms for the difference terms, stored verbatim, and the
// comparison of each printed slot against the derivation pipelines.

#include "dwc/link_pairings.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dwc {

struct UnsupportedLevel : InputError {
  using InputError::InputError;
};

/// Polynomial in d, l and p+ used for printed brackets; keys are (deg d, deg l, deg p+).
class DLPoly {
 public:
  using Key = std::array<int, 3>;
  DLPoly() = default;
  DLPoly(std::initializer_list<std::pair<Rational, Key>> terms) {
    for (const auto& [c, k] : terms) add(k, c);
  }
  void add(const Key& k, const Rational& c) {
    if (c == 0) return;
    c_[k] += c;
    if (c_[k] == 0) c_.erase(k);
  }
  Rational coeff(const Key& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rational(0) : it->second;
  }
  const std::map<Key, Rational>& terms() const { return c_; }
  PolyQ at(int d, int l) const {
    std::vector<Rational> out;
    for (const auto& [k, c] : c_) {
      if (static_cast<int>(out.size()) <= k[2]) out.resize(k[2] + 1);
      out[k[2]] += c * pow(Rational(d), k[0]) * pow(Rational(l), k[1]);
    }
    return PolyQ::from_coeffs(std::move(out));
  }
  static std::string monomial_name(const Key& k) {
    std::string s;
    auto part = [&](const char* v, int e) {
      if (e == 0) return;
      if (!s.empty()) s += "*";
      s += v;
      if (e > 1) s += "^" + std::to_string(e);
    };
    part("d", k[0]);
    part("l", k[1]);
    part("p+", k[2]);
    return s.empty() ? "1" : s;
  }

 private:
  std::map<Key, Rational> c_;
};

enum class SlotWeight { one, binom_m_2, falling_m_4 };

inline Rational slot_weight(SlotWeight w, int m) {
  switch (w) {
    case SlotWeight::one: return 1;
    case SlotWeight::binom_m_2: return Rational(binomial(m, 2));
    case SlotWeight::falling_m_4: return m < 4 ? Rational(0) : Rational(factorial(m) / factorial(m - 4));
  }
  return 1;
}

struct PrintedSlot {
  int k;             // q-power
  DLPoly bracket;
  SlotWeight weight; // printed factor outside the bracket
  Convention reading;
};

enum class Stratum { r1, upper, lower, total };

inline std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::r1: return "r1";
    case Stratum::upper: return "upper";
    case Stratum::lower: return "lower";
    case Stratum::total: return "total";
  }
  return "?";
}

/// Printed coefficient of q^k alpha^(m-2k) = prefactor(d,l) * bracket(d,l,p+) * weight(m).
struct PrintedDisplay {
  std::string location;
  std::string title;
  Stratum stratum;
  bool obstruction;
  std::vector<int> ds;                   // d values the display covers
  std::function<bool(int)> l_allowed;    // extra restriction on l
  int sign_shift;                        // prefactor (-1)^(sign_shift + l [+ d]) / 2^pow2
  bool sign_has_d;
  int pow2;                              // 0 means 2^d
  Rational extra = 1;                    // additional rational factor
  std::vector<PrintedSlot> slots;

  Rational prefactor(int d, int l) const {
    long e = sign_shift + l + (sign_has_d ? d : 0);
    Rational den = Rational(Integer(1) << (pow2 == 0 ? d : pow2));
    return extra * sign_power(e) / den;
  }
  bool covers(int d, int l) const {
    bool dok = false;
    for (int x : ds) dok = dok || x == d;
    return dok && l >= 0 && 2 * l <= d && (!l_allowed || l_allowed(l));
  }
  const PrintedSlot* slot(int k) const {
    for (const auto& s : slots)
      if (s.k == k) return &s;
    return nullptr;
  }

  /// The display as a SymForm in `basis`; slots with m - 2k < 0 are absent.
  SymForm form(int d, int l, Convention basis) const {
    if (!covers(d, l)) throw InputError(location + " does not cover d=" + std::to_string(d) + " l=" + std::to_string(l));
    SymForm f;
    f.m = d - 2 * l;
    f.basis = Convention::matching_sum;
    f.meta = {d, l, stratum == Stratum::r1 ? 1 : 2, Rational(stratum == Stratum::r1 ? 1 - d : 5 - d), obstruction};
    for (const auto& s : slots) {
      if (f.m - 2 * s.k < 0) continue;
      Rational scale = prefactor(d, l) * slot_weight(s.weight, f.m) * basis_weight(s.reading, f.m, s.k);
      f.set(s.k, s.bracket.at(d, l) * scale);
    }
    return f.rebased(basis);
  }

  /// Verbatim printed text of one slot, e.g. "-(2*p+ - 14)/4".
  std::string printed_text(int d, int l, int k) const {
    const PrintedSlot* s = slot(k);
    if (!s) return "0";
    Rational pf = prefactor(d, l);
    std::string t = pf < 0 ? "-" : "";
    Rational mag = pf < 0 ? Rational(-pf) : pf;
    t += "(" + s->bracket.at(d, l).str() + ")";
    Rational w = slot_weight(s->weight, d - 2 * l);
    if (w != 1) t += "*" + w.str();
    if (boost::multiprecision::numerator(mag) != 1) t += "*" + Rational(boost::multiprecision::numerator(mag)).str();
    if (boost::multiprecision::denominator(mag) != 1) t += "/" + Rational(boost::multiprecision::denominator(mag)).str();
    return t;
  }
};

namespace detail {
using K = DLPoly::Key;
inline std::vector<int> range(int a, int b) {
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}
}  // namespace detail

/// Every display of the difference terms, keyed by location.
inline const std::map<std::string, PrintedDisplay>& printed_displays() {
  using detail::K;
  using detail::range;
  static const std::map<std::string, PrintedDisplay> table = [] {
    const auto N = Convention::normalized;
    const auto M = Convention::matching_sum;
    const auto P = Convention::permutation_sum;
    std::map<std::string, PrintedDisplay> t;
    auto put = [&](PrintedDisplay d) { t.emplace(d.location, std::move(d)); };

    put({"r1.general", "first-order reducible, alpha^2 < -1", Stratum::r1, false, range(3, 12), {}, -1, true, 0, 1,
         {{0, DLPoly{{2, K{1, 0, 0}}, {2, K{0, 0, 1}}, {6, K{0, 0, 0}}, {-24, K{0, 1, 0}}}, SlotWeight::one, N},
          // 4(d-2l)(d-2l-1)
          {1,
           DLPoly{{4, K{2, 0, 0}}, {-16, K{1, 1, 0}}, {16, K{0, 2, 0}}, {-4, K{1, 0, 0}}, {8, K{0, 1, 0}}},
           SlotWeight::one, N}}});
    put({"r1.obstruction.l0", "first-order reducible, alpha^2 = -1, two classes", Stratum::r1, true, {2},
         [](int l) { return l == 0; }, 0, false, 2, 1,
         {{0, DLPoly{{5, K{0, 0, 0}}, {1, K{0, 0, 1}}}, SlotWeight::one, P},
          {1, DLPoly{{4, K{0, 0, 0}}}, SlotWeight::one, P}}});
    put({"r1.obstruction.l1", "first-order reducible, alpha^2 = -1, one point class", Stratum::r1, true, {2},
         [](int l) { return l == 1; }, 0, false, 2, 1,
         {{0, DLPoly{{2, K{0, 0, 1}}, {-14, K{0, 0, 0}}}, SlotWeight::one, P}}});

    DLPoly up0{{450, K{0, 0, 0}}, {28, K{1, 0, 0}}, {60, K{0, 0, 1}}, {2, K{2, 0, 0}}, {4, K{1, 0, 1}},
               {2, K{0, 0, 2}}, {-688, K{0, 1, 0}}, {-48, K{1, 1, 0}}, {-48, K{0, 1, 1}}, {288, K{0, 2, 0}}};
    put({"r2.upper.general", "second-order upper stratum, alpha^2 < -1", Stratum::upper, false, range(7, 12), {}, 0,
         true, 0, 1,
         {{0, up0, SlotWeight::one, N},
          {1, DLPoly{{16, K{1, 0, 0}}, {16, K{0, 0, 1}}, {112, K{0, 0, 0}}, {-192, K{0, 1, 0}}}, SlotWeight::binom_m_2, N},
          {2, DLPoly{{8, K{0, 0, 0}}}, SlotWeight::falling_m_4, N}}});
    put({"r2.upper.obstruction", "second-order upper stratum, alpha^2 = -1", Stratum::upper, true, {6}, {}, 3, false,
         6, 1,
         {{0,
           DLPoly{{690, K{0, 0, 0}}, {-108, K{0, 0, 1}}, {2, K{0, 0, 2}}, {-624, K{0, 1, 0}}, {16, K{0, 1, 1}},
                  {160, K{0, 2, 0}}},
           SlotWeight::one, N},
          {1, DLPoly{{16, K{0, 0, 1}}, {208, K{0, 0, 0}}, {-192, K{0, 1, 0}}}, SlotWeight::binom_m_2, N},
          {2, DLPoly{{8, K{0, 0, 0}}}, SlotWeight::falling_m_4, N}}});
    put({"r2.lower.general", "second-order lower stratum, alpha^2 < -1", Stratum::lower, false, range(7, 12), {}, 0,
         true, 0, 1,
         {{0, DLPoly{{-32, K{0, 0, 1}}, {-15, K{1, 0, 0}}, {-429, K{0, 0, 0}}, {280, K{0, 1, 0}}}, SlotWeight::one, N},
          {1, DLPoly{{-80, K{0, 0, 0}}}, SlotWeight::binom_m_2, N}}});
    put({"r2.lower.obstruction", "second-order lower stratum, alpha^2 = -1", Stratum::lower, true, {6}, {}, 7, false,
         6, 1,
         {{0, DLPoly{{-50, K{0, 0, 1}}, {-519, K{0, 0, 0}}, {280, K{0, 1, 0}}}, SlotWeight::one, N},
          {1, DLPoly{{-80, K{0, 0, 0}}}, SlotWeight::binom_m_2, N}}});
    put({"r2.total.general", "second-order difference term, alpha^2 < -1", Stratum::total, false, range(7, 12), {}, 0,
         true, 0, 1,
         {{0,
           DLPoly{{2, K{2, 0, 0}}, {4, K{1, 0, 1}}, {2, K{0, 0, 2}}, {13, K{1, 0, 0}}, {10, K{0, 0, 1}},
                  {21, K{0, 0, 0}}, {-408, K{0, 1, 0}}, {-48, K{1, 1, 0}}, {-48, K{0, 1, 1}}, {288, K{0, 2, 0}}},
           SlotWeight::one, N},
          {1, DLPoly{{16, K{0, 0, 1}}, {16, K{1, 0, 0}}, {32, K{0, 0, 0}}, {-192, K{0, 1, 0}}}, SlotWeight::one, M},
          {2, DLPoly{{8, K{0, 0, 0}}}, SlotWeight::falling_m_4, N}}});
    put({"r2.total.obstruction", "second-order difference term, alpha^2 = -1", Stratum::total, true, {6}, {}, 3, false,
         6, 1,
         {{0,
           DLPoly{{2, K{0, 0, 2}}, {-58, K{0, 0, 1}}, {171, K{0, 0, 0}}, {-344, K{0, 1, 0}}, {16, K{0, 1, 1}},
                  {160, K{0, 2, 0}}},
           SlotWeight::one, N},
          {1, DLPoly{{16, K{0, 0, 1}}, {128, K{0, 0, 0}}, {-192, K{0, 1, 0}}}, SlotWeight::one, M},
          {2, DLPoly{{8, K{0, 0, 0}}}, SlotWeight::falling_m_4, N}}});
    return t;
  }();
  return table;
}

inline const PrintedDisplay& printed_display(const std::string& location) {
  auto it = printed_displays().find(location);
  if (it == printed_displays().end()) throw InputError("no printed display '" + location + "'");
  return it->second;
}

/// The display covering (stratum, d, l, obstruction).
inline const PrintedDisplay& printed_display_for(Stratum s, int d, int l, bool obstruction) {
  for (const auto& [loc, disp] : printed_displays())
    if (disp.stratum == s && disp.obstruction == obstruction && disp.covers(d, l)) return disp;
  // General displays are stated for every admissible d; the grid above is only the checked range.
  for (const auto& [loc, disp] : printed_displays())
    if (disp.stratum == s && disp.obstruction == obstruction && !obstruction && l >= 0 && 2 * l <= d) return disp;
  throw InputError("no printed display for " + to_string(s) + " d=" + std::to_string(d) + " l=" + std::to_string(l));
}

/// Printed form without the grid restriction (general displays hold for every admissible d).
inline SymForm printed_form(const PrintedDisplay& disp, int d, int l, Convention basis) {
  if (disp.covers(d, l)) return disp.form(d, l, basis);
  PrintedDisplay wide = disp;
  wide.ds = {d};
  return wide.form(d, l, basis);
}

enum class DeltaSource { paper, derived };

inline DeltaSource parse_source(const std::string& s) {
  if (s == "paper") return DeltaSource::paper;
  if (s == "derived") return DeltaSource::derived;
  throw InputError("source must be 'paper' or 'derived', got '" + s + "'");
}

inline SymForm derive_stratum(Stratum s, int d, int l, bool obstruction, const DerivationOptions& opts) {
  switch (s) {
    case Stratum::r1: return derive_r1(d, l, obstruction, opts);
    case Stratum::upper: return derive_r2_upper(d, l, obstruction, opts);
    case Stratum::lower: return derive_r2_lower(d, l, obstruction, opts);
    case Stratum::total: return assemble_delta_r2(d, l, obstruction, opts);
  }
  throw InvariantViolation("unknown stratum");
}

/// Difference term of level r from the printed propositions or from the pipelines.
inline SymForm closed_form_delta(int r, int d, int l, bool obstruction, DeltaSource source,
                                 const DerivationOptions& opts = {}) {
  if (r == 0)
    throw UnsupportedLevel("r=0 difference terms are not computed here (they come from earlier work)");
  if (r != 1 && r != 2) throw UnsupportedLevel("unsupported level r=" + std::to_string(r));
  detail::check_range(r, d, l, obstruction);
  Stratum s = r == 1 ? Stratum::r1 : Stratum::total;
  if (source == DeltaSource::derived) return derive_stratum(s, d, l, obstruction, opts);
  return printed_form(printed_display_for(s, d, l, obstruction), d, l, opts.basis);
}

// --- erratum adjudication -------------------------------------------------

struct ErratumEntry {
  std::string location;
  int slot = 0;
  std::string monomial;
  Rational paper = 0;
  Rational derived = 0;
  std::string corroboration;
};

struct DisplayCheck {
  std::string location;
  int grid_points = 0;
  int slots_compared = 0;
  int mismatched_values = 0;
  bool consistent() const { return mismatched_values == 0; }
};

struct ErratumReport {
  std::vector<ErratumEntry> entries;
  std::vector<DisplayCheck> checks;

  const ErratumEntry* find(const std::string& location, int slot, const std::string& monomial) const {
    for (const auto& e : entries)
      if (e.location == location && e.slot == slot && e.monomial == monomial) return &e;
    return nullptr;
  }
};

namespace detail {

/// Exact solve of an overdetermined linear system by elimination; free unknowns are set to zero.
/// Returns nullopt when the system is inconsistent.
inline std::optional<std::vector<PolyQ>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<PolyQ> rhs) {
  const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(rhs[p], rhs[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      rhs[i] -= rhs[r] * f;
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (!rhs[i].is_zero()) return std::nullopt;
  std::vector<PolyQ> x(cols);
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i] * (Rational(1) / a[i][pivot_col[i]]);
  return x;
}

struct DerivedGrid {
  // (d, l) -> matching-sum SymForm from the pipeline
  std::map<std::pair<int, int>, SymForm> forms;
};

}  // namespace detail

/// Derived bracket of one printed slot, fitted as a polynomial in (d, l) of degree <= 2.
struct SlotFit {
  bool polynomial = true;
  DLPoly derived;
  int points = 0;
  int mismatched = 0;
};

inline SlotFit fit_slot(const PrintedDisplay& disp, const PrintedSlot& s, const detail::DerivedGrid& grid) {
  std::vector<DLPoly::Key> basis;
  const bool vary_d = disp.ds.size() > 1;
  for (int i = 0; i <= (vary_d ? 2 : 0); ++i)
    for (int j = 0; i + j <= 2; ++j) basis.push_back({i, j, 0});
  std::vector<std::vector<Rational>> rows;
  std::vector<PolyQ> rhs;
  SlotFit out;
  for (const auto& [dl, f] : grid.forms) {
    auto [d, l] = dl;
    int m = d - 2 * l;
    if (m - 2 * s.k < 0 || !disp.covers(d, l)) continue;
    Rational scale = disp.prefactor(d, l) * slot_weight(s.weight, m) * basis_weight(s.reading, m, s.k);
    PolyQ bracket = f.rebased(Convention::matching_sum).coeff(s.k) * (Rational(1) / scale);
    std::vector<Rational> row;
    for (const auto& b : basis) row.push_back(pow(Rational(d), b[0]) * pow(Rational(l), b[1]));
    rows.push_back(row);
    rhs.push_back(bracket);
    ++out.points;
    if (!(bracket == s.bracket.at(d, l))) ++out.mismatched;
  }
  auto x = detail::solve_exact(rows, rhs);
  if (!x) {
    out.polynomial = false;
    return out;
  }
  for (size_t i = 0; i < basis.size(); ++i)
    for (int p = 0; p <= (*x)[i].degree(); ++p) out.derived.add({basis[i][0], basis[i][1], p}, (*x)[i].coeff(p));
  return out;
}

namespace detail {

inline Rational coeff_at_d(const DLPoly& p, int d, int lpow, int ppow) {
  Rational v = 0;
  for (const auto& [k, c] : p.terms())
    if (k[1] == lpow && k[2] == ppow) v += c * pow(Rational(d), k[0]);
  return v;
}

inline std::string verdict(const Rational& witness, const Rational& derived, const Rational& paper) {
  if (witness == derived) return "supports derived";
  if (witness == paper) return "supports printed";
  return "supports neither";
}

/// Cross-checks of a mismatching monomial against the other printed displays.
inline std::string corroborate(const std::string& loc, int slot, const DLPoly::Key& key, const Rational& paper,
                               const Rational& derived) {
  auto pd = [](const std::string& l) -> const PrintedDisplay& { return printed_display(l); };
  auto br = [&](const std::string& l) -> const DLPoly& {
    static const DLPoly empty;
    const PrintedSlot* s = pd(l).slot(slot);
    return s ? s->bracket : empty;
  };
  std::vector<std::string> notes;
  auto note = [&](const std::string& what, const Rational& w) {
    notes.push_back(what + " gives " + w.str() + " (" + verdict(w, derived, paper) + ")");
  };
  const std::string name = DLPoly::monomial_name(key);
  if (loc == "r2.lower.general" && key[0] == 0) {
    note("lower alpha^2=-1 display, " + name + " coefficient", br("r2.lower.obstruction").coeff(key));
    note("total general display minus upper general display",
         br("r2.total.general").coeff(key) - br("r2.upper.general").coeff(key));
  }
  if (loc == "r2.upper.obstruction" && key[0] == 0) {
    note("upper general display at d=6", coeff_at_d(br("r2.upper.general"), 6, key[1], key[2]));
    note("total alpha^2=-1 display minus lower alpha^2=-1 display",
         br("r2.total.obstruction").coeff(key) - br("r2.lower.obstruction").coeff(key));
  }
  if (loc == "r2.total.obstruction" && key[0] == 0) {
    note("sum of printed upper and lower alpha^2=-1 displays",
         br("r2.upper.obstruction").coeff(key) + br("r2.lower.obstruction").coeff(key));
  }
  std::string out;
  for (const auto& n : notes) out += (out.empty() ? "" : "; ") + n;
  return out.empty() ? "no cross-check available" : out;
}

}  // namespace detail

struct ErratumOptions {
  DerivationOptions derivation;
  std::vector<std::string> locations;  // empty means all
};

/// Compares every printed display with the pipelines over its grid.
inline ErratumReport erratum_report(const ErratumOptions& opts = {}) {
  ErratumReport rep;
  std::map<std::pair<Stratum, bool>, detail::DerivedGrid> cache;
  DerivationOptions dopt = opts.derivation;
  dopt.basis = Convention::matching_sum;
  dopt.trace = nullptr;
  for (const auto& [loc, disp] : printed_displays()) {
    if (!opts.locations.empty() &&
        std::find(opts.locations.begin(), opts.locations.end(), loc) == opts.locations.end())
      continue;
    auto& grid = cache[{disp.stratum, disp.obstruction}];
    DisplayCheck chk{loc};
    for (int d : disp.ds)
      for (int l = 0; 2 * l <= d; ++l) {
        if (!disp.covers(d, l)) continue;
        if (!grid.forms.count({d, l})) grid.forms[{d, l}] = derive_stratum(disp.stratum, d, l, disp.obstruction, dopt);
        ++chk.grid_points;
      }
    for (const auto& s : disp.slots) {
      SlotFit fit = fit_slot(disp, s, grid);
      chk.slots_compared += fit.points;
      chk.mismatched_values += fit.mismatched;
      if (fit.mismatched == 0) continue;
      if (!fit.polynomial) {
        rep.entries.push_back({loc, s.k, "(not polynomial in d,l)", 0, 0, "derived bracket could not be fitted"});
        continue;
      }
      std::map<DLPoly::Key, int> keys;
      for (const auto& [k, c] : s.bracket.terms()) keys[k] = 1;
      for (const auto& [k, c] : fit.derived.terms()) keys[k] = 1;
      for (const auto& [k, one] : keys) {
        Rational pv = s.bracket.coeff(k), dv = fit.derived.coeff(k);
        if (pv == dv) continue;
        rep.entries.push_back(
            {loc, s.k, DLPoly::monomial_name(k), pv, dv, detail::corroborate(loc, s.k, k, pv, dv)});
      }
    }
    rep.checks.push_back(chk);
  }
  return rep;
}

}  // namespace dwc

#endif  // DWC_CLOSED_FORMS_HPP
