#ifndef DWC_GEOMETRY_HPP
#define DWC_GEOMETRY_HPP

#include "dwc/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dwc {

using IntMatrix = std::vector<std::vector<long long>>;
using HomologyClass = std::vector<long long>;
using RationalVector = std::vector<Rational>;

/// Counts (positive, negative, zero) eigenvalue signs of a symmetric rational matrix
/// by exact congruence diagonalization.
struct Inertia {
  int positive = 0, negative = 0, zero = 0;
};

inline Inertia inertia(const std::vector<std::vector<Rational>>& input) {
  auto a = input;
  const size_t n = a.size();
  Inertia out;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = n;
    for (size_t i = k; i < n && piv == n; ++i)
      if (a[i][i] != 0) piv = i;
    if (piv == n) {
      // Zero diagonal: add row/column j to i to create a nonzero diagonal entry 2 a_ij.
      for (size_t i = k; i < n && piv == n; ++i)
        for (size_t j = i + 1; j < n && piv == n; ++j)
          if (a[i][j] != 0) {
            for (size_t t = 0; t < n; ++t) a[i][t] += a[j][t];
            for (size_t t = 0; t < n; ++t) a[t][i] += a[t][j];
            piv = i;
          }
      if (piv == n) {
        out.zero += static_cast<int>(n - k);
        return out;
      }
    }
    std::swap(a[k], a[piv]);
    for (auto& row : a) std::swap(row[k], row[piv]);
    (a[k][k] > 0 ? out.positive : out.negative)++;
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (size_t i = k + 1; i < n; ++i) a[k][i] = 0, a[i][k] = 0;
  }
  return out;
}

class ManifoldModel {
 public:
  /// Without a matrix the form is diag(1, -1, ..., -1).
  explicit ManifoldModel(int b_minus, std::optional<IntMatrix> matrix = std::nullopt) : b_minus_(b_minus) {
    if (b_minus < 0) throw InputError("b_minus must be non-negative");
    const size_t n = static_cast<size_t>(b_minus) + 1;
    if (!matrix) {
      matrix_.assign(n, std::vector<long long>(n, 0));
      matrix_[0][0] = 1;
      for (size_t i = 1; i < n; ++i) matrix_[i][i] = -1;
    } else {
      matrix_ = *matrix;
    }
    if (matrix_.size() != n) throw InputError("intersection_matrix must have size 1 + b_minus");
    std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i) {
      if (matrix_[i].size() != n) throw InputError("intersection_matrix must be square");
      for (size_t j = 0; j < n; ++j) q[i][j] = matrix_[i][j];
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < i; ++j)
        if (matrix_[i][j] != matrix_[j][i]) throw InputError("intersection_matrix must be symmetric");
    Inertia s = inertia(q);
    if (s.positive != 1 || s.negative != b_minus || s.zero != 0)
      throw InputError("intersection form must have signature (1, " + std::to_string(b_minus) + "), got (" +
                       std::to_string(s.positive) + ", " + std::to_string(s.negative) + ") with " +
                       std::to_string(s.zero) + " null directions");
  }

  int b_minus() const { return b_minus_; }
  size_t rank() const { return matrix_.size(); }
  const IntMatrix& intersection_matrix() const { return matrix_; }
  // Characteristic numbers p1 + 2e and p1 - 2e of a b+ = 1, b1 = 0 manifold.
  long long p_plus() const { return 9 - b_minus_; }
  long long p_minus() const { return -3 - 5LL * b_minus_; }

  void check(const HomologyClass& x) const {
    if (x.size() != rank())
      throw InputError("class has " + std::to_string(x.size()) + " coordinates, lattice rank is " +
                       std::to_string(rank()));
  }
  Integer dot(const HomologyClass& x, const HomologyClass& y) const {
    check(x);
    check(y);
    Integer s = 0;
    for (size_t i = 0; i < rank(); ++i)
      for (size_t j = 0; j < rank(); ++j)
        if (matrix_[i][j] != 0) s += Integer(matrix_[i][j]) * x[i] * y[j];
    return s;
  }
  Rational dot(const RationalVector& x, const RationalVector& y) const {
    if (x.size() != rank() || y.size() != rank()) throw InputError("vector length does not match lattice rank");
    Rational s = 0;
    for (size_t i = 0; i < rank(); ++i)
      for (size_t j = 0; j < rank(); ++j)
        if (matrix_[i][j] != 0) s += Rational(matrix_[i][j]) * x[i] * y[j];
    return s;
  }
  Rational dot(const HomologyClass& x, const RationalVector& y) const {
    check(x);
    RationalVector xr(x.begin(), x.end());
    return dot(xr, y);
  }

 private:
  int b_minus_;
  IntMatrix matrix_;
};

/// How the coefficient A_k of q^k alpha^(m-2k) is read.
///  matching_sum:    E_k = sum over partitions into k pairs and m-2k singletons
///  permutation_sum: 2^k k! (m-2k)! times the matching value
///  normalized:      matching value divided by the number of such partitions
enum class Convention { permutation_sum, matching_sum, normalized };

inline std::string to_string(Convention c) {
  switch (c) {
    case Convention::permutation_sum: return "permutation_sum";
    case Convention::matching_sum: return "matching_sum";
    case Convention::normalized: return "normalized";
  }
  return "?";
}
inline Convention parse_convention(const std::string& s) {
  if (s == "permutation_sum") return Convention::permutation_sum;
  if (s == "matching_sum") return Convention::matching_sum;
  if (s == "normalized") return Convention::normalized;
  throw InputError("unknown convention '" + s + "'");
}

struct PairingTable {
  Rational alpha_sq;
  std::vector<Rational> b;               // <alpha, x_i>
  std::vector<std::vector<Rational>> q;  // q(x_i, x_j)
  Rational p_plus;

  size_t size() const { return b.size(); }
  void validate() const {
    if (q.size() != b.size()) throw InputError("pairing table: q has wrong size");
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i].size() != b.size()) throw InputError("pairing table: q is not square");
      for (size_t j = 0; j < i; ++j)
        if (q[i][j] != q[j][i]) throw InputError("pairing table: q is not symmetric");
    }
  }
  static PairingTable unit(size_t m) {
    return {1, std::vector<Rational>(m, 1), std::vector<std::vector<Rational>>(m, std::vector<Rational>(m, 1)), 0};
  }
};

/// E_k for k = 0..m/2 under the matching convention, by dynamic programming over
/// subsets: the lowest unused index is either a singleton or paired with a later one.
inline std::vector<Rational> matching_sums(const PairingTable& t) {
  t.validate();
  const size_t m = t.size();
  if (m > 20) throw InputError("matching enumeration supports at most 20 classes");
  const size_t kmax = m / 2;
  const size_t full = (size_t{1} << m) - 1;
  std::vector<std::vector<Rational>> memo(full + 1);
  memo[full] = std::vector<Rational>(kmax + 1, 0);
  memo[full][0] = 1;
  // Masks are processed from the top down so every successor is already known.
  for (size_t mask = full; mask-- > 0;) {
    size_t i = 0;
    while (mask & (size_t{1} << i)) ++i;
    std::vector<Rational> acc(kmax + 1, 0);
    const auto& single = memo[mask | (size_t{1} << i)];
    if (t.b[i] != 0)
      for (size_t k = 0; k <= kmax; ++k) acc[k] += t.b[i] * single[k];
    for (size_t j = i + 1; j < m; ++j) {
      if (mask & (size_t{1} << j) || t.q[i][j] == 0) continue;
      const auto& pair = memo[mask | (size_t{1} << i) | (size_t{1} << j)];
      for (size_t k = 0; k < kmax; ++k) acc[k + 1] += t.q[i][j] * pair[k];
    }
    memo[mask] = std::move(acc);
  }
  return memo[0];
}

/// Number of partitions of m points into k pairs and m-2k singletons, counted by the enumerator.
inline Integer partition_count(int m, int k) {
  if (k < 0 || 2 * k > m) return 0;
  auto e = matching_sums(PairingTable::unit(static_cast<size_t>(m)));
  return boost::multiprecision::numerator(e[static_cast<size_t>(k)]);
}

/// Value of the basis element q^k alpha^(m-2k) under `c`, in units of the matching value.
inline Rational basis_weight(Convention c, int m, int k) {
  switch (c) {
    case Convention::matching_sum: return 1;
    case Convention::permutation_sum:
      return Rational(Integer(1) << k) * Rational(factorial(k)) * Rational(factorial(m - 2 * k));
    case Convention::normalized: return Rational(1) / Rational(partition_count(m, k));
  }
  return 1;
}

struct SymFormMeta {
  int d = 0;
  int l = 0;
  int r = 0;
  Rational alpha_sq = 0;
  bool obstruction = false;
};

/// sum_k A_k(p+) q^k alpha^(m-2k), coefficients read in `basis`.
struct SymForm {
  int m = 0;
  std::map<int, PolyQ> coeffs;
  Convention basis = Convention::permutation_sum;
  SymFormMeta meta;

  PolyQ coeff(int k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? PolyQ() : it->second;
  }
  void set(int k, const PolyQ& a) {
    if (k < 0 || 2 * k > m) throw InvariantViolation("q-power outside 0 <= 2k <= m");
    if (a.is_zero())
      coeffs.erase(k);
    else
      coeffs[k] = a;
  }
  SymForm rebased(Convention to) const {
    SymForm out = *this;
    out.basis = to;
    out.coeffs.clear();
    for (const auto& [k, a] : coeffs) out.set(k, a * (basis_weight(basis, m, k) / basis_weight(to, m, k)));
    return out;
  }
  friend SymForm operator+(const SymForm& a, const SymForm& b) {
    if (a.m != b.m) throw InvariantViolation("adding forms of different arity");
    SymForm out = a;
    SymForm bb = b.rebased(a.basis);
    for (const auto& [k, c] : bb.coeffs) out.set(k, out.coeff(k) + c);
    return out;
  }
  friend bool operator==(const SymForm& a, const SymForm& b) {
    return a.m == b.m && a.coeffs == b.rebased(a.basis).coeffs;
  }
};

/// sum_k A_k(p+) E_k with the coefficients read under `convention`.
inline Rational evaluate_sym_form(const SymForm& f, const PairingTable& t, Convention convention) {
  if (static_cast<int>(t.size()) != f.m)
    throw InputError("form takes " + std::to_string(f.m) + " classes, got " + std::to_string(t.size()));
  auto e = matching_sums(t);
  Rational total = 0;
  for (const auto& [k, a] : f.coeffs)
    total += a.eval(t.p_plus) * basis_weight(convention, f.m, k) * e[static_cast<size_t>(k)];
  return total;
}
inline Rational evaluate_sym_form(const SymForm& f, const PairingTable& t) {
  return evaluate_sym_form(f, t, f.basis);
}

inline PairingTable pairing_table_for(const HomologyClass& alpha, const std::vector<HomologyClass>& xs,
                                      const ManifoldModel& M,
                                      const std::optional<Rational>& alpha_sq_override = std::nullopt) {
  PairingTable t;
  t.alpha_sq = alpha_sq_override ? *alpha_sq_override : Rational(M.dot(alpha, alpha));
  for (const auto& x : xs) t.b.emplace_back(M.dot(alpha, x));
  t.q.assign(xs.size(), std::vector<Rational>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < xs.size(); ++j) t.q[i][j] = Rational(M.dot(xs[i], xs[j]));
  t.p_plus = M.p_plus();
  return t;
}

inline Rational evaluate_sym_form(const SymForm& f, const std::vector<HomologyClass>& xs,
                                  const HomologyClass& alpha, const ManifoldModel& M,
                                  Convention convention = Convention::permutation_sum) {
  return evaluate_sym_form(f, pairing_table_for(alpha, xs, M), convention);
}

/// <prod_i (sum_j pi_j^* x_i), [X^r]> expanded over all r^(2r) coordinate assignments.
inline Rational symmetrized_product_pairing(const std::vector<HomologyClass>& classes, int r,
                                            const ManifoldModel& M) {
  if (classes.size() % 2 != 0) throw InputError("symmetrized pairing needs an even number of classes");
  if (r < 1 || r > 3) throw InputError("symmetrized pairing oracle supports 1 <= r <= 3");
  if (static_cast<int>(classes.size()) != 2 * r) throw InputError("symmetrized pairing needs 2r classes");
  const int n = 2 * r;
  std::vector<int> slot(n, 0);
  Rational total = 0;
  while (true) {
    std::vector<std::vector<int>> at(r);
    for (int i = 0; i < n; ++i) at[slot[i]].push_back(i);
    bool ok = true;
    Rational v = 1;
    for (int j = 0; j < r && ok; ++j) {
      if (at[j].size() != 2) {
        ok = false;
        break;
      }
      v *= Rational(M.dot(classes[at[j][0]], classes[at[j][1]]));
    }
    if (ok) total += v;
    int i = 0;
    while (i < n && ++slot[i] == r) slot[i++] = 0;
    if (i == n) break;
  }
  return total;
}

}  // namespace dwc

#endif  // DWC_GEOMETRY_HPP
