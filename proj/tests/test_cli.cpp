#include "dwc/cli/report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace dwc;
using namespace dwc::cli;

namespace {

std::string config_path(const std::string& name) { return std::string(DWC_CONFIG_DIR) + "/" + name; }

std::string error_of(const std::string& yaml) {
  try {
    parse_config(YAML::Load(yaml));
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"(manifold: {b_minus: 2}
bundle: {p1: -8, c: [0, 0, 0]}
period_points: {omega_minus: [1, -3/10, 1/10], omega_plus: [1, 3/10, 1/10]}
)";

}  // namespace

TEST(Config, LoadsTheWorkedExample) {
  RunConfig cfg = load_config(config_path("diag3_worked_example.yaml"));
  EXPECT_EQ(cfg.problem.M.rank(), 3u);
  EXPECT_EQ(cfg.problem.d(), 5);
  EXPECT_EQ(cfg.problem.xs.size(), 5u);
  EXPECT_EQ(cfg.problem.omega_minus[1], Rational(-3, 10));
  EXPECT_EQ(cfg.options.convention, Convention::permutation_sum);
  EXPECT_NO_THROW(cfg.problem.validate());
}

TEST(Config, EveryShippedConfigParses) {
  for (const char* name : {"same_period_point.yaml", "on_wall.yaml", "diag2_blowup.yaml", "diag4_r2.yaml"})
    EXPECT_NO_THROW(load_config(config_path(name))) << name;
}

TEST(Config, DefaultsToTheDiagonalForm) {
  RunConfig cfg = parse_config(YAML::Load(kMinimal));
  EXPECT_EQ(cfg.problem.M.intersection_matrix(), (IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  EXPECT_EQ(cfg.problem.l, 0);
  EXPECT_TRUE(cfg.problem.xs.empty());
  EXPECT_EQ(cfg.options.r_max, 2);
}

TEST(Config, ErrorsNameLineAndField) {
  try {
    load_config(config_path("bad_rational.yaml"));
    FAIL();
  } catch (const InputError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("line 7"), std::string::npos) << msg;
    EXPECT_NE(msg.find("period_points.omega_minus[1]"), std::string::npos) << msg;
  }
  EXPECT_NE(error_of("manifold: {b_minus: 2}\n").find("field 'bundle' is missing"), std::string::npos);
  std::string bad_c = error_of(R"(manifold: {b_minus: 2}
bundle: {p1: -8, c: [0, 0]}
period_points: {omega_minus: [1, 0, 0], omega_plus: [1, 0, 0]}
)");
  EXPECT_NE(bad_c.find("line 2"), std::string::npos) << bad_c;
  EXPECT_NE(bad_c.find("bundle.c"), std::string::npos) << bad_c;
  std::string neg = error_of(R"(manifold: {b_minus: 2}
bundle: {p1: -8, c: [0, 0, 0]}
period_points: {omega_minus: [0, 1, 0], omega_plus: [1, 0, 0]}
)");
  EXPECT_NE(neg.find("positive square"), std::string::npos) << neg;
  std::string opt = error_of(std::string(kMinimal) + "options: {epsilon_rule: half}\n");
  EXPECT_NE(opt.find("options.epsilon_rule"), std::string::npos) << opt;
  EXPECT_THROW(load_config(config_path("does_not_exist.yaml")), InputError);
  EXPECT_THROW(parse_config(YAML::Load("[1, 2]")), InputError);
}

TEST(Config, EnvironmentOverridesTheFile) {
  setenv("DWC_KR_SIGN", "minus", 1);
  setenv("DWC_EPSILON_RULE", "quarter", 1);
  setenv("DWC_CAP_RELATION", "printed_linear", 1);
  RunConfig cfg = parse_config(YAML::Load(std::string(kMinimal) + "options: {epsilon_rule: paper_half}\n"));
  unsetenv("DWC_KR_SIGN");
  unsetenv("DWC_EPSILON_RULE");
  unsetenv("DWC_CAP_RELATION");
  EXPECT_EQ(cfg.options.adhm.kr_sign, KrSign::minus);
  EXPECT_EQ(cfg.options.epsilon_rule, EpsilonRule::quarter);
  EXPECT_EQ(cfg.options.adhm.cap_relation, CapRelation::printed_linear);
  EXPECT_EQ(cfg.crossing().derivation.adhm.kr_sign, KrSign::minus);
  setenv("DWC_KL_SIGN", "sideways", 1);
  EXPECT_THROW(parse_config(YAML::Load(kMinimal)), InputError);
  unsetenv("DWC_KL_SIGN");
}

TEST(Report, JsonSchema) {
  RunConfig cfg = load_config(config_path("diag3_worked_example.yaml"));
  auto rep = chamber_difference(cfg.problem, cfg.crossing());
  Json j = crossing_json(rep, cfg, nullptr);
  for (const char* key : {"walls", "total", "warnings", "errata"}) EXPECT_TRUE(j.contains(key)) << key;
  ASSERT_EQ(j["walls"].size(), 3u);
  for (const auto& w : j["walls"]) {
    for (const char* key : {"alpha", "r", "epsilon", "supported", "delta"}) EXPECT_TRUE(w.contains(key)) << key;
    if (w["supported"].get<bool>())
      EXPECT_TRUE(w["delta"].contains("coeffs"));
    else
      EXPECT_TRUE(w["delta"].is_null());
  }
  EXPECT_EQ(j["walls"][1]["alpha"], Json::parse("[0,-2,0]"));
  EXPECT_EQ(j["total"].get<std::string>(), rep.total.str());
  EXPECT_EQ(j["warnings"].size(), 2u);
  EXPECT_TRUE(j["errata"].empty());
}

TEST(Report, ErrataAreSerialised) {
  ErratumReport rep;
  rep.entries.push_back({"r2.lower.general", 0, "p+", -32, -50, "note"});
  Json j = to_json(rep);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["paper"], "-32");
  EXPECT_EQ(j[0]["derived"], "-50");
  EXPECT_NE(crossing_tsv({}, &rep).find("# erratum: r2.lower.general k0 p+ printed -32 derived -50"), std::string::npos);
}

TEST(Report, TsvLayout) {
  RunConfig cfg = load_config(config_path("diag3_worked_example.yaml"));
  auto walls = enumerate_walls(cfg.problem, 2);
  std::string t = walls_tsv(walls);
  EXPECT_EQ(t.substr(0, t.find('\n')), "alpha\tr\talpha_sq\tepsilon\tsupported");
  EXPECT_NE(t.find("(0,-2,0)\t1\t-4\t1\tyes\n"), std::string::npos) << t;
  std::string c = crossing_tsv(chamber_difference(cfg.problem, cfg.crossing()), nullptr);
  EXPECT_NE(c.find("(0,-2,2)\t0\t-8\t1\tno\t-\n"), std::string::npos) << c;
  EXPECT_NE(c.find("\ntotal\t"), std::string::npos);
  EXPECT_NE(c.find("# warning: r=0 wall"), std::string::npos);
}

TEST(Report, Deterministic) {
  RunConfig cfg = load_config(config_path("diag4_r2.yaml"));
  auto a = crossing_json(chamber_difference(cfg.problem, cfg.crossing()), cfg, nullptr).dump();
  auto b = crossing_json(chamber_difference(cfg.problem, cfg.crossing()), cfg, nullptr).dump();
  EXPECT_EQ(a, b);
}

TEST(Report, SymFormJsonAtAPoint) {
  SymForm f = closed_form_delta(1, 2, 1, true, DeltaSource::derived);
  Json j = to_json(f, Rational(7));
  EXPECT_EQ(j["coeffs"]["0"], "0");
  EXPECT_EQ(j["p_plus"], "7");
  EXPECT_EQ(to_json(f)["coeffs"]["0"], "-1/2*p+ + 7/2");
}
