#ifndef DWC_RATIONAL_HPP
#define DWC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwc {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Errors surfaced to callers; the CLI maps them onto exit codes.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateChamber : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "n" or "n/d" (optional sign, no spaces inside).
inline Rational parse_rational(const std::string& text) {
  static const std::regex re(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::smatch mt;
  if (!std::regex_match(text, mt, re))
    throw InputError("not a rational: '" + text + "'");
  Integer num(mt[1].str());
  Integer den = mt[2].matched ? Integer(mt[2].str()) : Integer(1);
  if (den == 0) throw InputError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

inline Rational sign_power(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

inline Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

/// Polynomial in the single symbol p+ with rational coefficients.
/// Stored dense, lowest power first, trailing zeros trimmed.
class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(const Rational& c) {  // NOLINT(implicit)
    if (c != 0) c_.push_back(c);
  }
  PolyQ(long c) : PolyQ(Rational(c)) {}  // NOLINT(implicit)
  PolyQ(std::initializer_list<Rational> low_to_high) : c_(low_to_high) { trim(); }
  static PolyQ from_coeffs(std::vector<Rational> low_to_high) {
    PolyQ p;
    p.c_ = std::move(low_to_high);
    p.trim();
    return p;
  }
  static PolyQ var() { return PolyQ{Rational(0), Rational(1)}; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& p) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * p + *it;
    return acc;
  }

  PolyQ& operator+=(const PolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PolyQ& operator-=(const PolyQ& o) { return *this += -o; }
  PolyQ& operator*=(const PolyQ& o) { return *this = *this * o; }
  PolyQ& operator*=(const Rational& s) {
    if (s == 0) c_.clear();
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator-(PolyQ a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return from_coeffs(std::move(out));
  }
  friend PolyQ operator*(PolyQ a, const Rational& s) { return a *= s; }
  friend PolyQ operator*(const Rational& s, PolyQ a) { return a *= s; }
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

  /// Canonical text, highest power first: "2*p+^2 - 1/2*p+ + 7".
  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& a = c_[i];
      if (a == 0) continue;
      Rational mag = a < 0 ? Rational(-a) : a;
      if (out.empty())
        out += a < 0 ? "-" : "";
      else
        out += a < 0 ? " - " : " + ";
      if (i == 0) {
        out += mag.str();
        continue;
      }
      if (mag != 1) out += mag.str() + "*";
      out += "p+";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace dwc

#endif  // DWC_RATIONAL_HPP
