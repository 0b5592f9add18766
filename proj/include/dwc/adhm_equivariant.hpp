#ifndef DWC_ADHM_EQUIVARIANT_HPP
#define DWC_ADHM_EQUIVARIANT_HPP

// Equivariant classes on the charge-two link and the pushforwards of powers of
// the framing Pontrjagin class wp = T^2 - 4 K_R - 4 c_R.

#include "dwc/geometry.hpp"
#include "dwc/ring_core.hpp"

#include <string>

namespace dwc {

enum class KrSign { plus, minus };  // i*K_R = eta_L eta_R +/- c_R
enum class KlSign { plus, minus };  // i*K_L = c_L +/- eta_L eta_R
enum class CapRelation {
  squared,        // H^2 + 2 H c_R + c_R^2 = 0
  printed_linear, // H^2 + 2 H c_R + c_R = 0
  single_cross,   // H^2 + H c_R + c_R^2 = 0
};

inline std::string to_string(KrSign s) { return s == KrSign::plus ? "plus" : "minus"; }
inline std::string to_string(KlSign s) { return s == KlSign::plus ? "plus" : "minus"; }
inline std::string to_string(CapRelation c) {
  switch (c) {
    case CapRelation::squared: return "squared";
    case CapRelation::printed_linear: return "printed_linear";
    case CapRelation::single_cross: return "single_cross";
  }
  return "?";
}
inline KrSign parse_kr_sign(const std::string& s) {
  if (s == "plus") return KrSign::plus;
  if (s == "minus") return KrSign::minus;
  throw InputError("kr_sign must be 'plus' or 'minus', got '" + s + "'");
}
inline KlSign parse_kl_sign(const std::string& s) {
  if (s == "plus") return KlSign::plus;
  if (s == "minus") return KlSign::minus;
  throw InputError("kl_sign must be 'plus' or 'minus', got '" + s + "'");
}
inline CapRelation parse_cap_relation(const std::string& s) {
  if (s == "squared") return CapRelation::squared;
  if (s == "printed_linear") return CapRelation::printed_linear;
  if (s == "single_cross") return CapRelation::single_cross;
  throw InputError("cap_relation must be squared, printed_linear or single_cross, got '" + s + "'");
}

struct AdhmOptions {
  KrSign kr_sign = KrSign::plus;
  KlSign kl_sign = KlSign::plus;
  CapRelation cap_relation = CapRelation::squared;
};

/// A class on the manifold: constant + pt_coeff * pt + p_coeff * P+, whose top pairing is
/// pt_coeff + p_coeff * p+.
struct PulledClass {
  Rational constant = 0;
  Rational pt = 0;
  Rational p_plus = 0;

  PolyQ top_value() const { return PolyQ{pt, p_plus}; }
  friend bool operator==(const PulledClass&, const PulledClass&) = default;
};

struct CapContribution {
  GradedElement normal_form;  // (-4H - 4c_R)^k reduced by the cap relation
  GradedElement restricted;   // after the skeleton restriction
  GradedElement pushed;       // H-coefficient, in the base ring
};

struct WpPushforward {
  int k = 0;
  GradedElement expansion;        // (T^2 - 4K_R - 4c_R)^k in the class ring
  GradedElement restricted;       // skeleton-restricted
  GradedElement cofactor;         // x with restricted = T^2 x
  GradedElement link_value;       // (p_2)_*(T^2 x)
  CapContribution cap;
  GradedElement before_division;  // link_value + cap.pushed
  GradedElement value;            // divided by the branched-cover degree
};

class EquivariantContext {
 public:
  static constexpr int kCoverDegree = 4;

  explicit EquivariantContext(AdhmOptions opts = {})
      : opts_(opts),
        base_({{"cL", 4, GeneratorKind::base}, {"cR", 4, GeneratorKind::base}}),
        link_({{"eL", 2, GeneratorKind::fiber},
               {"eR", 2, GeneratorKind::fiber},
               {"cL", 4, GeneratorKind::base},
               {"cR", 4, GeneratorKind::base}}),
        classes_({{"T", 2, GeneratorKind::fiber},
                  {"KR", 4, GeneratorKind::fiber},
                  {"KL", 4, GeneratorKind::fiber},
                  {"cL", 4, GeneratorKind::base},
                  {"cR", 4, GeneratorKind::base}}),
        cap_({{"H", 4, GeneratorKind::fiber}, {"cL", 4, GeneratorKind::base}, {"cR", 4, GeneratorKind::base}}) {
    link_.add_relation("eL", 2, link_.gen("cL", -1));
    link_.add_relation("eR", 2, link_.gen("cR", -1));
    classes_.add_relation("KR", 2, classes_.monomial({{"T", 2}, {"cR", 1}}, -1));
    classes_.add_relation("KL", 2, classes_.monomial({{"T", 2}, {"cL", 1}}, -1));
    GradedElement hc = cap_.monomial({{"H", 1}, {"cR", 1}});
    GradedElement h2;
    switch (opts_.cap_relation) {
      case CapRelation::squared: h2 = Rational(-2) * hc - cap_.monomial({{"cR", 2}}); break;
      case CapRelation::printed_linear: h2 = Rational(-2) * hc - cap_.gen("cR"); break;
      case CapRelation::single_cross: h2 = Rational(-1) * hc - cap_.monomial({{"cR", 2}}); break;
    }
    cap_.add_relation("H", 2, h2);
  }

  const AdhmOptions& options() const { return opts_; }
  const RingPresentation& base() const { return base_; }
  const RingPresentation& link() const { return link_; }
  const RingPresentation& classes() const { return classes_; }
  const RingPresentation& cap() const { return cap_; }

  /// i*-images of T, K_R, K_L in the link ring.
  std::map<std::string, GradedElement> dictionary() const {
    GradedElement ee = link_.monomial({{"eL", 1}, {"eR", 1}});
    Rational kr = opts_.kr_sign == KrSign::plus ? 1 : -1;
    Rational kl = opts_.kl_sign == KlSign::plus ? 1 : -1;
    return {{"T", link_.gen("eL") - link_.gen("eR")},
            {"KR", ee + kr * link_.gen("cR")},
            {"KL", link_.gen("cL") + kl * ee}};
  }

  /// Coefficient of eta_L eta_R after eta^2 reduction; pure c-terms push to zero.
  GradedElement p3_pushforward(const GradedElement& e) const {
    GradedElement n = link_.normalize(e);
    GradedElement out = base_.zero();
    const int eL = link_.index("eL"), eR = link_.index("eR");
    for (const auto& [m, c] : n.terms()) {
      if (m[eL] == 0 && m[eR] == 0) continue;
      if (m[eL] != 1 || m[eR] != 1)
        throw InvariantViolation("residual eta-degree (" + std::to_string(m[eL]) + "," + std::to_string(m[eR]) +
                                 ") in link pushforward");
      out += base_.monomial({{"cL", m[link_.index("cL")]}, {"cR", m[link_.index("cR")]}}, c);
    }
    return out;
  }

  /// (p_2)_*(T^2 x) = (p_3)_*(i* x) for x in the class ring.
  GradedElement p2_pushforward_T2(const GradedElement& x) const {
    return p3_pushforward(classes_.substitute(classes_.normalize(x), link_, dictionary()));
  }

  /// Drops c_L^i c_R^j-multiples whose c-degree exceeds the skeleton budget 4k - 8.
  template <class P>
  static GradedElement skeleton_restrict(const GradedElement& e, const P& pres, int k) {
    const int budget = 4 * k - 8;
    const int cL = pres.index("cL"), cR = pres.index("cR");
    GradedElement out = pres.zero();
    for (const auto& [m, c] : e.terms())
      if (4 * (m[cL] + m[cR]) <= budget) out.add_term(m, c);
    return out;
  }

  CapContribution cap_contribution(int k) const {
    check_k(k);
    CapContribution out;
    GradedElement lin = cap_.gen("H", -4) - cap_.gen("cR", 4);
    out.normal_form = cap_.power(lin, k);
    out.restricted = skeleton_restrict(out.normal_form, cap_, k);
    out.pushed = base_.zero();
    const int H = cap_.index("H");
    for (const auto& [m, c] : out.restricted.terms()) {
      if (m[H] != 1) continue;
      out.pushed += base_.monomial({{"cL", m[cap_.index("cL")]}, {"cR", m[cap_.index("cR")]}}, c);
    }
    return out;
  }

  WpPushforward wp_power_pushforward(int k) const {
    check_k(k);
    WpPushforward out;
    out.k = k;
    GradedElement wp = classes_.monomial({{"T", 2}}) - classes_.gen("KR", 4) - classes_.gen("cR", 4);
    out.expansion = classes_.power(wp, k);
    out.restricted = skeleton_restrict(out.expansion, classes_, k);
    out.cofactor = classes_.zero();
    const int T = classes_.index("T");
    for (const auto& [m, c] : out.restricted.terms()) {
      if (m[T] < 2) throw InvariantViolation("restricted class term without a T^2 factor");
      Monomial n = m;
      n[T] -= 2;
      out.cofactor.add_term(n, c);
    }
    out.link_value = p2_pushforward_T2(out.cofactor);
    out.cap = cap_contribution(k);
    out.before_division = out.link_value + out.cap.pushed;
    out.value = Rational(1, kCoverDegree) * out.before_division;
    return out;
  }

  /// c_R -> -p+/4 and c_L -> -p-/4 with p- = -48 + 5 p+ (b+ = 1).
  PulledClass pull_to_manifold(const GradedElement& e) const {
    GradedElement n = base_.normalize(e);
    PulledClass out;
    const int cL = base_.index("cL"), cR = base_.index("cR");
    for (const auto& [m, c] : n.terms()) {
      int deg = 4 * (m[cL] + m[cR]);
      if (deg == 0)
        out.constant += c;
      else if (deg > 4)
        throw InputError("class of degree " + std::to_string(deg) + " does not pull back to a 4-manifold");
      else if (m[cR] == 1)
        out.p_plus += c * Rational(-1, 4);
      else {
        out.pt += c * Rational(12);
        out.p_plus += c * Rational(-5, 4);
      }
    }
    return out;
  }

  /// Top pairing of the degree-4 part using the manifold's own p+ and p- (no identity substituted).
  Rational pull_to_manifold(const GradedElement& e, const ManifoldModel& M) const {
    GradedElement n = base_.normalize(e);
    Rational top = 0;
    const int cL = base_.index("cL"), cR = base_.index("cR");
    for (const auto& [m, c] : n.terms()) {
      if (4 * (m[cL] + m[cR]) > 4) throw InputError("class of degree above 4 does not pull back to a 4-manifold");
      if (m[cR] == 1) top += c * Rational(-M.p_plus(), 4);
      if (m[cL] == 1) top += c * Rational(-M.p_minus(), 4);
    }
    return top;
  }

 private:
  static void check_k(int k) {
    if (k != 2 && k != 3) throw InputError("wp power must be 2 or 3, got " + std::to_string(k));
  }

  AdhmOptions opts_;
  RingPresentation base_, link_, classes_, cap_;
};

}  // namespace dwc

#endif  // DWC_ADHM_EQUIVARIANT_HPP
