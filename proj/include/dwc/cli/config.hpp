#ifndef DWC_CLI_CONFIG_HPP
#define DWC_CLI_CONFIG_HPP

// Run configuration for the crossing commands, read from a YAML file.
//
//   manifold:      { b_minus: 2, intersection_matrix: [[1,0,0],[0,-1,0],[0,0,-1]] }   # matrix optional
//   bundle:        { p1: -8, c: [0,0,0] }
//   period_points: { omega_minus: [1, -3/10, 1/10], omega_plus: [1, 3/10, 1/10] }
//   classes:       [[1,0,0], [0,1,0]]
//   l: 0
//   options:       { convention, epsilon_rule, r_max, emit_trace, kr_sign, kl_sign, cap_relation, source }

#include "dwc/wallcross.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <string>

namespace dwc::cli {

struct RunOptions {
  Convention convention = Convention::permutation_sum;
  EpsilonRule epsilon_rule = EpsilonRule::paper_half;
  int r_max = 2;
  bool emit_trace = false;
  AdhmOptions adhm;
  DeltaSource source = DeltaSource::derived;
};

struct RunConfig {
  CrossingProblem problem;
  RunOptions options;

  CrossingOptions crossing() const {
    CrossingOptions c;
    c.r_max = options.r_max;
    c.epsilon_rule = options.epsilon_rule;
    c.source = options.source;
    c.derivation.basis = options.convention;
    c.derivation.adhm = options.adhm;
    return c;
  }
};

namespace detail {

inline std::string where(const YAML::Node& n, const std::string& field) {
  auto m = n.Mark();
  std::string loc = m.is_null() ? "" : "line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ": ";
  return loc + "field '" + field + "'";
}

inline YAML::Node require(const YAML::Node& parent, const std::string& key, const std::string& path) {
  if (!parent.IsMap()) throw InputError(where(parent, path) + " must be a mapping");
  YAML::Node n = parent[key];
  if (!n) throw InputError(where(parent, path.empty() ? key : path + "." + key) + " is missing");
  return n;
}

template <class T>
T scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw InputError(where(n, field) + " must be a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw InputError(where(n, field) + " has an invalid value '" + n.Scalar() + "'");
  }
}

inline Rational rational(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw InputError(where(n, field) + " must be a rational 'a/b'");
  try {
    return parse_rational(n.Scalar());
  } catch (const InputError& e) {
    throw InputError(where(n, field) + ": " + e.what());
  }
}

inline HomologyClass int_vector(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) throw InputError(where(n, field) + " must be a list of integers");
  HomologyClass v;
  for (size_t i = 0; i < n.size(); ++i) v.push_back(scalar<long long>(n[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

inline RationalVector rational_vector(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) throw InputError(where(n, field) + " must be a list of rationals");
  RationalVector v;
  for (size_t i = 0; i < n.size(); ++i) v.push_back(rational(n[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

template <class F>
auto located(const YAML::Node& n, const std::string& field, F parse) {
  try {
    return parse(scalar<std::string>(n, field));
  } catch (const InputError& e) {
    throw InputError(where(n, field) + ": " + e.what());
  }
}

}  // namespace detail

/// DWC_KR_SIGN, DWC_KL_SIGN, DWC_CAP_RELATION and DWC_EPSILON_RULE override the file.
inline void apply_env_overrides(RunOptions& o) {
  if (const char* v = std::getenv("DWC_KR_SIGN")) o.adhm.kr_sign = parse_kr_sign(v);
  if (const char* v = std::getenv("DWC_KL_SIGN")) o.adhm.kl_sign = parse_kl_sign(v);
  if (const char* v = std::getenv("DWC_CAP_RELATION")) o.adhm.cap_relation = parse_cap_relation(v);
  if (const char* v = std::getenv("DWC_EPSILON_RULE")) o.epsilon_rule = parse_epsilon_rule(v);
}

inline RunConfig parse_config(const YAML::Node& root) {
  using namespace detail;
  RunConfig cfg;
  if (!root.IsMap()) throw InputError("configuration must be a mapping at the top level");

  YAML::Node man = require(root, "manifold", "");
  int b_minus = scalar<int>(require(man, "b_minus", "manifold"), "manifold.b_minus");
  std::optional<IntMatrix> matrix;
  if (YAML::Node q = man["intersection_matrix"]) {
    if (!q.IsSequence()) throw InputError(where(q, "manifold.intersection_matrix") + " must be a list of rows");
    IntMatrix m;
    for (size_t i = 0; i < q.size(); ++i)
      m.push_back(int_vector(q[i], "manifold.intersection_matrix[" + std::to_string(i) + "]"));
    matrix = m;
  }
  try {
    cfg.problem.M = ManifoldModel(b_minus, matrix);
  } catch (const InputError& e) {
    throw InputError(where(man, "manifold") + ": " + e.what());
  }

  YAML::Node bundle = require(root, "bundle", "");
  cfg.problem.p1 = scalar<long long>(require(bundle, "p1", "bundle"), "bundle.p1");
  YAML::Node c = require(bundle, "c", "bundle");
  cfg.problem.c = int_vector(c, "bundle.c");
  if (cfg.problem.c.size() != cfg.problem.M.rank())
    throw InputError(where(c, "bundle.c") + " needs " + std::to_string(cfg.problem.M.rank()) + " entries");

  YAML::Node pp = require(root, "period_points", "");
  YAML::Node wm = require(pp, "omega_minus", "period_points"), wp = require(pp, "omega_plus", "period_points");
  cfg.problem.omega_minus = rational_vector(wm, "period_points.omega_minus");
  cfg.problem.omega_plus = rational_vector(wp, "period_points.omega_plus");
  for (auto [node, vec, name] : {std::tuple{wm, &cfg.problem.omega_minus, "period_points.omega_minus"},
                                 std::tuple{wp, &cfg.problem.omega_plus, "period_points.omega_plus"}}) {
    if (vec->size() != cfg.problem.M.rank())
      throw InputError(where(node, name) + " needs " + std::to_string(cfg.problem.M.rank()) + " entries");
    if (cfg.problem.M.dot(*vec, *vec) <= 0) throw InputError(where(node, name) + " must have positive square");
  }

  if (YAML::Node cl = root["classes"]) {
    if (!cl.IsSequence()) throw InputError(where(cl, "classes") + " must be a list of integer vectors");
    for (size_t i = 0; i < cl.size(); ++i) {
      auto x = int_vector(cl[i], "classes[" + std::to_string(i) + "]");
      if (x.size() != cfg.problem.M.rank())
        throw InputError(where(cl[i], "classes[" + std::to_string(i) + "]") + " needs " +
                         std::to_string(cfg.problem.M.rank()) + " entries");
      cfg.problem.xs.push_back(x);
    }
  }
  if (YAML::Node l = root["l"]) cfg.problem.l = scalar<int>(l, "l");
  if (cfg.problem.l < 0) throw InputError(where(root["l"], "l") + " must be non-negative");

  if (YAML::Node o = root["options"]) {
    auto& opt = cfg.options;
    if (!o.IsMap()) throw InputError(where(o, "options") + " must be a mapping");
    if (o["convention"]) opt.convention = located(o["convention"], "options.convention", parse_convention);
    if (o["epsilon_rule"]) opt.epsilon_rule = located(o["epsilon_rule"], "options.epsilon_rule", parse_epsilon_rule);
    if (o["kr_sign"]) opt.adhm.kr_sign = located(o["kr_sign"], "options.kr_sign", parse_kr_sign);
    if (o["kl_sign"]) opt.adhm.kl_sign = located(o["kl_sign"], "options.kl_sign", parse_kl_sign);
    if (o["cap_relation"]) opt.adhm.cap_relation = located(o["cap_relation"], "options.cap_relation", parse_cap_relation);
    if (o["source"]) opt.source = located(o["source"], "options.source", parse_source);
    if (o["emit_trace"]) opt.emit_trace = scalar<bool>(o["emit_trace"], "options.emit_trace");
    if (o["r_max"]) {
      opt.r_max = scalar<int>(o["r_max"], "options.r_max");
      if (opt.r_max < 0 || opt.r_max > 2) throw InputError(where(o["r_max"], "options.r_max") + " must be 0, 1 or 2");
    }
  }
  apply_env_overrides(cfg.options);
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw InputError("cannot read configuration file '" + path + "'");
  } catch (const YAML::ParserException& e) {
    throw InputError(path + ": line " + std::to_string(e.mark.line + 1) + ", column " +
                     std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  try {
    return parse_config(root);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace dwc::cli

#endif  // DWC_CLI_CONFIG_HPP
