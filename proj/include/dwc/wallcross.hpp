#ifndef DWC_WALLCROSS_HPP
#define DWC_WALLCROSS_HPP

// Walls between two period points, wall signs, and the chamber-difference sum.

#include "dwc/closed_forms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace dwc {

enum class EpsilonRule { paper_half, quarter };

inline std::string to_string(EpsilonRule e) { return e == EpsilonRule::paper_half ? "paper_half" : "quarter"; }
inline EpsilonRule parse_epsilon_rule(const std::string& s) {
  if (s == "paper_half") return EpsilonRule::paper_half;
  if (s == "quarter") return EpsilonRule::quarter;
  throw InputError("epsilon_rule must be 'paper_half' or 'quarter', got '" + s + "'");
}

inline std::string to_string(const HomologyClass& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

/// (-1)^((c-alpha)^2/2) or (-1)^((c-alpha)^2/4).
inline int epsilon_sign(const HomologyClass& c, const HomologyClass& alpha, const ManifoldModel& M,
                        EpsilonRule rule = EpsilonRule::paper_half) {
  M.check(c);
  M.check(alpha);
  HomologyClass diff(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    diff[i] = c[i] - alpha[i];
    if (diff[i] % 2 != 0)
      throw InputError("parity error: c=" + to_string(c) + " and alpha=" + to_string(alpha) + " differ mod 2");
  }
  Integer sq = M.dot(diff, diff);
  // sq = 4 beta^2
  Integer e = rule == EpsilonRule::paper_half ? Integer(sq / 2) : Integer(sq / 4);
  return e % 2 == 0 ? 1 : -1;
}

struct WallDatum {
  HomologyClass alpha;
  int r = 0;
  long long alpha_sq = 0;
  int epsilon = 1;
  bool supported = false;
  Rational dot_minus = 0, dot_plus = 0;
};

struct CrossingProblem {
  ManifoldModel M{1};
  long long p1 = 0;
  HomologyClass c;
  RationalVector omega_minus, omega_plus;
  int l = 0;
  std::vector<HomologyClass> xs;

  int d() const { return static_cast<int>(-p1 - 3); }

  void validate() const {
    M.check(c);
    if (omega_minus.size() != M.rank() || omega_plus.size() != M.rank())
      throw InputError("period points must have " + std::to_string(M.rank()) + " coordinates");
    if (M.dot(omega_minus, omega_minus) <= 0) throw InputError("omega_minus must have positive square");
    if (M.dot(omega_plus, omega_plus) <= 0) throw InputError("omega_plus must have positive square");
    if (M.dot(omega_minus, omega_plus) <= 0)
      throw InputError("omega_minus and omega_plus lie in opposite components of the positive cone");
    for (const auto& x : xs) M.check(x);
    if (l < 0) throw InputError("l must be non-negative");
  }
};

namespace detail {

/// Per-coordinate bound on classes alpha with alpha^2 >= -B orthogonal to some point on the segment.
/// For a piece of the segment with midpoint w and half-length h, alpha.w = (t_m - t) alpha.v with
/// v = w+ - w-, so G_w(alpha) = -alpha^2 + 2 (alpha.w)^2 / w^2 <= B / (1 - 2 h^2 |Qv|^2_{G^-1} / w^2).
inline std::vector<long long> wall_box(const CrossingProblem& prob, long long B) {
  const size_t n = prob.M.rank();
  Eigen::MatrixXd Q(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Q(i, j) = static_cast<double>(prob.M.intersection_matrix()[i][j]);
  Eigen::VectorXd wm(n), wp(n);
  for (size_t i = 0; i < n; ++i) {
    wm(i) = prob.omega_minus[i].convert_to<double>();
    wp(i) = prob.omega_plus[i].convert_to<double>();
  }
  Eigen::VectorXd v = wp - wm;
  for (int pieces = 1; pieces <= (1 << 16); pieces *= 2) {
    std::vector<double> bound(n, 0.0);
    bool ok = true;
    const double h = 0.5 / pieces;
    for (int s = 0; s < pieces && ok; ++s) {
      double t = (s + 0.5) / pieces;
      Eigen::VectorXd w = (1 - t) * wm + t * wp;
      double w2 = w.dot(Q * w);
      Eigen::VectorXd qw = Q * w;
      Eigen::MatrixXd G = -Q + 2.0 * qw * qw.transpose() / w2;
      Eigen::LLT<Eigen::MatrixXd> llt(G);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      Eigen::MatrixXd Ginv = llt.solve(Eigen::MatrixXd::Identity(n, n));
      Eigen::VectorXd qv = Q * v;
      double c = 2 * h * h * qv.dot(Ginv * qv) / w2;
      if (c > 0.5) {
        ok = false;
        break;
      }
      double gmax = static_cast<double>(B) / (1 - c);
      for (size_t i = 0; i < n; ++i) bound[i] = std::max(bound[i], std::sqrt(gmax * Ginv(i, i)));
    }
    if (!ok) continue;
    std::vector<long long> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = static_cast<long long>(std::ceil(2.0 * bound[i])) + 1;
    return out;
  }
  throw InputError("period segment too close to the light cone for the wall search");
}

}  // namespace detail

/// Every +/- pair {alpha, -alpha} with alpha = c mod 2, alpha^2 = p1 + 4r < 0 (r <= r_max)
/// whose sign against the period point changes along the segment; normalized to alpha.w+ > 0.
inline std::vector<WallDatum> enumerate_walls(const CrossingProblem& prob, int r_max,
                                              EpsilonRule rule = EpsilonRule::paper_half) {
  if (r_max < 0 || r_max > 2) throw InputError("r_max must be 0, 1 or 2");
  prob.validate();
  long long B = 0;
  for (int r = 0; r <= r_max; ++r)
    if (prob.p1 + 4 * r < 0) B = std::max(B, -(prob.p1 + 4 * r));
  std::vector<WallDatum> out;
  if (B == 0) return out;
  const auto box = detail::wall_box(prob, B);
  const size_t n = prob.M.rank();
  HomologyClass a(n);
  auto start = [&](size_t i) {
    long long lo = -box[i];
    if (((lo - prob.c[i]) % 2 + 2) % 2 != 0) ++lo;
    return lo;
  };
  for (size_t i = 0; i < n; ++i) a[i] = start(i);
  while (true) {
    Integer sq = prob.M.dot(a, a);
    if (sq < 0 && (sq - prob.p1) % 4 == 0) {
      long long r = static_cast<long long>((sq - prob.p1) / 4);
      if (r >= 0 && r <= r_max) {
        Rational dm = prob.M.dot(a, prob.omega_minus), dp = prob.M.dot(a, prob.omega_plus);
        if (dm == 0 || dp == 0)
          throw DegenerateChamber("period point " + std::string(dm == 0 ? "omega_minus" : "omega_plus") +
                                  " lies on the wall of alpha=" + to_string(a));
        if (dm < 0 && dp > 0) {
          WallDatum w;
          w.alpha = a;
          w.r = static_cast<int>(r);
          w.alpha_sq = static_cast<long long>(sq);
          w.epsilon = epsilon_sign(prob.c, a, prob.M, rule);
          w.supported = r != 0;
          w.dot_minus = dm;
          w.dot_plus = dp;
          out.push_back(w);
        }
      }
    }
    size_t i = 0;
    for (; i < n; ++i) {
      a[i] += 2;
      if (a[i] <= box[i]) break;
      a[i] = start(i);
    }
    if (i == n) break;
  }
  std::sort(out.begin(), out.end(), [](const WallDatum& x, const WallDatum& y) { return x.alpha < y.alpha; });
  return out;
}

struct CrossingOptions {
  int r_max = 2;
  EpsilonRule epsilon_rule = EpsilonRule::paper_half;
  DeltaSource source = DeltaSource::derived;
  DerivationOptions derivation;  // basis and ADHM sign options
};

struct WallContribution {
  WallDatum wall;
  std::optional<SymForm> delta;  // absent for unsupported walls
  Rational value = 0;            // epsilon * delta(xs, l point classes)
};

struct CrossingReport {
  std::vector<WallContribution> walls;
  Rational total = 0;
  std::vector<std::string> warnings;
};

/// Sum over supported walls of epsilon(c, alpha) delta(alpha) on the problem's classes.
inline CrossingReport chamber_difference(const CrossingProblem& prob, const CrossingOptions& opts = {}) {
  CrossingReport rep;
  const int d = prob.d();
  for (const auto& w : enumerate_walls(prob, opts.r_max, opts.epsilon_rule)) {
    WallContribution wc{w, std::nullopt, 0};
    if (!w.supported) {
      rep.warnings.push_back("r=0 wall alpha=" + to_string(w.alpha) + " is crossed but not summed");
      rep.walls.push_back(wc);
      continue;
    }
    if (static_cast<int>(prob.xs.size()) != d - 2 * prob.l)
      throw InputError("arity mismatch: wall alpha=" + to_string(w.alpha) + " needs d-2l=" +
                       std::to_string(d - 2 * prob.l) + " classes, got " + std::to_string(prob.xs.size()));
    bool obstruction = w.alpha_sq == -1;
    wc.delta = closed_form_delta(w.r, d, prob.l, obstruction, opts.source, opts.derivation);
    PairingTable t = pairing_table_for(w.alpha, prob.xs, prob.M);
    wc.value = Rational(w.epsilon) * evaluate_sym_form(*wc.delta, t);
    rep.total += wc.value;
    rep.walls.push_back(std::move(wc));
  }
  if (opts.epsilon_rule == EpsilonRule::quarter)
    rep.warnings.push_back("quarter epsilon rule: the sign can depend on the choice of alpha versus -alpha");
  return rep;
}

}  // namespace dwc

#endif  // DWC_WALLCROSS_HPP
