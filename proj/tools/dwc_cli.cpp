// dwc: difference terms, wall enumeration and chamber differences from the command line.
//
// Exit codes: 0 success, 2 input error, 3 degenerate chamber, 4 self-test failure, 1 internal error.

#include "dwc/acceptance.hpp"
#include "dwc/cli/config.hpp"
#include "dwc/cli/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace dwc;

struct DeltaArgs {
  int r = 1, d = 0, l = 0;
  bool obstruction = false;
  std::string source = "derived";
  std::string basis = "permutation_sum";
  std::string stratum = "total";
  std::string format = "text";
  std::optional<std::string> p_plus;
  bool emit_trace = false;
};

struct FileArgs {
  std::string config;
  std::string format = "json";
  bool errata = true;
};

cli::RunOptions env_options() {
  cli::RunOptions o;
  cli::apply_env_overrides(o);
  return o;
}

void print_form(const SymForm& f, const DeltaArgs& a, const PrintedDisplay* printed) {
  std::optional<Rational> pp;
  if (a.p_plus) pp = parse_rational(*a.p_plus);
  if (a.format == "json") {
    auto j = cli::to_json(f, pp);
    if (printed) {
      cli::Json t = cli::Json::object();
      for (const auto& [k, c] : f.coeffs) t[std::to_string(k)] = printed->printed_text(a.d, a.l, k);
      j["printed"] = t;
      j["printed_location"] = printed->location;
    }
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "# r=" << a.r << " d=" << a.d << " l=" << a.l << " obstruction=" << (a.obstruction ? "yes" : "no")
            << " basis=" << to_string(f.basis) << " m=" << f.m;
  if (printed) std::cout << " printed=" << printed->location;
  std::cout << '\n';
  for (int k = 0; 2 * k <= f.m; ++k) {
    PolyQ c = f.coeff(k);
    std::cout << "q^" << k << " alpha^" << f.m - 2 * k << '\t' << (pp ? c.eval(*pp).str() : c.str());
    if (printed && printed->slot(k)) std::cout << '\t' << printed->printed_text(a.d, a.l, k);
    std::cout << '\n';
  }
}

int cmd_delta(const DeltaArgs& a) {
  DerivationOptions opt;
  opt.basis = parse_convention(a.basis);
  opt.adhm = env_options().adhm;
  DeltaSource src = parse_source(a.source);
  SymForm f = closed_form_delta(a.r, a.d, a.l, a.obstruction, src, opt);
  const PrintedDisplay* printed = nullptr;
  if (src == DeltaSource::paper)
    printed = &printed_display_for(a.r == 1 ? Stratum::r1 : Stratum::total, a.d, a.l, a.obstruction);
  print_form(f, a, printed);
  return 0;
}

Stratum parse_stratum(const std::string& s) {
  if (s == "r1") return Stratum::r1;
  if (s == "upper") return Stratum::upper;
  if (s == "lower") return Stratum::lower;
  if (s == "total") return Stratum::total;
  throw InputError("stratum must be r1, upper, lower or total, got '" + s + "'");
}

int cmd_derive(DeltaArgs a) {
  DerivationOptions opt;
  opt.basis = parse_convention(a.basis);
  opt.adhm = env_options().adhm;
  DerivationTrace trace;
  if (a.emit_trace) opt.trace = &trace;
  Stratum s = a.r == 1 ? Stratum::r1 : parse_stratum(a.stratum);
  if (a.r == 1 && a.stratum != "total" && a.stratum != "r1")
    throw InputError("stratum '" + a.stratum + "' needs --r 2");
  if (a.r != 1 && s == Stratum::r1) throw InputError("stratum 'r1' needs --r 1");
  if (a.r == 0) throw UnsupportedLevel("r=0 difference terms are not computed here (they come from earlier work)");
  detail::check_range(a.r, a.d, a.l, a.obstruction);
  SymForm f = derive_stratum(s, a.d, a.l, a.obstruction, opt);
  if (a.emit_trace)
    for (const auto& t : trace) std::cout << "== " << t.stage << " (q^" << t.slot << " table)\n" << t.body;
  print_form(f, a, nullptr);
  return 0;
}

int cmd_walls(const FileArgs& a) {
  auto cfg = cli::load_config(a.config);
  auto walls = enumerate_walls(cfg.problem, cfg.options.r_max, cfg.options.epsilon_rule);
  if (a.format == "tsv")
    std::cout << cli::walls_tsv(walls);
  else
    std::cout << cli::walls_json(walls).dump(2) << '\n';
  return 0;
}

int cmd_cross(const FileArgs& a) {
  auto cfg = cli::load_config(a.config);
  CrossingOptions opts = cfg.crossing();
  DerivationTrace trace;
  if (cfg.options.emit_trace) opts.derivation.trace = &trace;
  auto rep = chamber_difference(cfg.problem, opts);
  std::optional<ErratumReport> errata;
  if (a.errata) {
    ErratumOptions eo;
    eo.derivation.adhm = cfg.options.adhm;
    errata = erratum_report(eo);
  }
  const ErratumReport* e = errata ? &*errata : nullptr;
  if (a.format == "tsv") {
    std::cout << cli::crossing_tsv(rep, e);
  } else {
    auto j = cli::crossing_json(rep, cfg, e);
    if (cfg.options.emit_trace) {
      cli::Json t = cli::Json::array();
      for (const auto& s : trace) t.push_back({{"stage", s.stage}, {"slot", s.slot}, {"body", s.body}});
      j["trace"] = t;
    }
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_selftest(const std::vector<int>& only) {
  cli::RunOptions env = env_options();
  acceptance::Options o{env.adhm, env.epsilon_rule};
  std::cout << "options: kr_sign=" << to_string(o.adhm.kr_sign) << " kl_sign=" << to_string(o.adhm.kl_sign)
            << " cap_relation=" << to_string(o.adhm.cap_relation) << " epsilon_rule=" << to_string(o.epsilon_rule)
            << '\n';
  ErratumOptions eo;
  eo.derivation.adhm = o.adhm;
  ErratumReport rep = erratum_report(eo);
  int failed = 0;
  for (int id : only.empty() ? acceptance::all_ids() : only) {
    auto r = acceptance::run(id, o, &rep);
    std::cout << cli::acceptance_line(r) << "\n    " << r.detail << '\n';
    if (!r.passed) ++failed;
  }
  std::cout << cli::erratum_text(rep);
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : std::string("all criteria passed\n"));
  return failed ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wall-crossing difference terms with exact rational arithmetic"};
  app.require_subcommand(1);

  DeltaArgs da;
  auto add_level = [&](CLI::App* c) {
    c->add_option("--r", da.r, "level of the reducible (1 or 2)")->required();
    c->add_option("--d", da.d, "degree: the number of two-dimensional classes plus twice l")->required();
    c->add_option("--l", da.l, "number of point classes");
    c->add_flag("--obstruction", da.obstruction, "the alpha^2 = -1 case");
    c->add_option("--basis", da.basis, "coefficient basis: permutation_sum, matching_sum or normalized");
    c->add_option("--format", da.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--p-plus", da.p_plus, "substitute a value for p+");
  };
  auto* delta = app.add_subcommand("delta", "difference term from the printed tables or the derivation");
  add_level(delta);
  delta->add_option("--source", da.source, "paper or derived");

  auto* derive = app.add_subcommand("derive", "run one derivation pipeline");
  add_level(derive);
  derive->add_option("--stratum", da.stratum, "for r=2: upper, lower or total");
  derive->add_flag("--emit-trace", da.emit_trace, "print every intermediate stage");

  FileArgs fa;
  auto* walls = app.add_subcommand("walls", "enumerate the walls crossed between the two period points");
  walls->add_option("config", fa.config, "configuration file")->required();
  walls->add_option("--format", fa.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  auto* cross = app.add_subcommand("cross", "sum the wall contributions between the two chambers");
  cross->add_option("config", fa.config, "configuration file")->required();
  cross->add_option("--format", fa.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  cross->add_flag("!--no-errata", fa.errata, "omit the erratum appendix");

  std::vector<int> only;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--criterion", only, "run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*delta) return cmd_delta(da);
    if (*derive) return cmd_derive(da);
    if (*walls) return cmd_walls(fa);
    if (*cross) return cmd_cross(fa);
    if (*selftest) return cmd_selftest(only);
  } catch (const DegenerateChamber& e) {
    std::cerr << "degenerate chamber: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
