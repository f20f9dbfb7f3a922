// Command line front end: every subcommand reads/writes the JSON formats
// described in the README and exits 0 on success, 1 on a domain error
// (budget, infeasibility), 2 on a usage error (bad flags, unreadable input).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ikep/fixtures.hpp"
#include "ikep/json_io.hpp"
#include "ikep/mechanisms.hpp"
#include "ikep/solver.hpp"
#include "ikep/verification.hpp"

namespace {

using nlohmann::json;
using namespace ikep;

json cycle_json(const Cycle& c) { return json(c.vertices()); }

json packing_json(const CyclePacking& p) {
  json out = json::array();
  for (const Cycle& c : p.cycles()) out.push_back(cycle_json(c));
  return out;
}


json distribution_json(const PackingDistribution& dist) {
  json out = json::array();
  for (const auto& [packing, prob] : dist.outcomes) {
    out.push_back({{"probability", rat_str(prob)},
                   {"probability_float", rat_double(prob)},
                   {"packing", packing_json(packing)}});
  }
  return out;
}

json utility_report_json(const UtilityReport& report) {
  json out;
  json exact = json::array(), floats = json::array();
  for (const Rat& u : report.expected_utility) {
    exact.push_back(rat_str(u));
    floats.push_back(rat_double(u));
  }
  out["expected_utility"] = exact;
  out["expected_utility_float"] = floats;
  out["social_welfare"] = rat_str(report.social_welfare);
  out["social_welfare_float"] = rat_double(report.social_welfare);
  out["opt"] = report.opt_value;
  out["ratio"] = report.ratio_is_finite ? json(rat_str(report.ratio)) : json("inf");
  return out;
}

// Instance text may be a file path or inline JSON (starts with '{').
Instance load_instance(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return instance_from_json(spec);
  return instance_from_json(read_file(spec));
}

GammaParams load_gamma(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return gamma_from_json(spec);
  return gamma_from_json(read_file(spec));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    write_file(out_path, text);
  }
}

FixtureParams parse_params(const std::string& text) {
  FixtureParams params;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("params: expected key=value, got " + item);
    params.values[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
  }
  return params;
}

struct CommonOpts {
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  std::int64_t budget_cycles = 2'000'000;
  int budget_perms = 9;

  OrderOptions order_options() const {
    OrderOptions opts;
    opts.exact_candidate_cap = budget_perms;
    opts.budget.enumeration.max_cycles = budget_cycles;
    return opts;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
  if (with_input) {
    cmd->add_option("--input", opts.input, "instance file or inline JSON")->required();
  }
  cmd->add_option("--out", opts.out, "write the result here instead of stdout");
  cmd->add_option("--seed", opts.seed, "seed for randomized steps");
  cmd->add_option("--budget-cycles", opts.budget_cycles, "cycle enumeration cap");
  cmd->add_option("--budget-perms", opts.budget_perms, "exact-mode candidate cap");
}

int run(int argc, char** argv) {
  CLI::App app{"International kidney exchange pools with country-specific parameters"};
  app.require_subcommand(1);

  // enumerate
  CommonOpts enum_opts;
  bool enum_cycles = false;
  CLI::App* cmd_enum = app.add_subcommand("enumerate", "cycle catalog summary and statistics");
  add_common(cmd_enum, enum_opts);
  cmd_enum->add_flag("--cycles", enum_cycles, "include the full cycle lists");

  // solve
  CommonOpts solve_opts;
  std::string method = "exact";
  CLI::App* cmd_solve = app.add_subcommand("solve", "maximum Gamma-cycle packing");
  add_common(cmd_solve, solve_opts);
  cmd_solve->add_option("--method", method, "exact|auto (auto picks a polynomial route)")
      ->check(CLI::IsMember({"exact", "auto"}));

  // classify
  CommonOpts classify_opts;
  std::string gamma_spec;
  CLI::App* cmd_classify = app.add_subcommand("classify", "complexity of this parameter set");
  cmd_classify->add_option("--gamma", gamma_spec, "gamma file or inline JSON")->required();
  add_common(cmd_classify, classify_opts, false);

  // mech
  CommonOpts mech_opts;
  std::string mechanism = "order";
  std::string mode = "exact";
  CLI::App* cmd_mech = app.add_subcommand("mech", "run a mechanism and report utilities");
  add_common(cmd_mech, mech_opts);
  cmd_mech->add_option("--mechanism", mechanism, "nat|con|int|order")
      ->check(CLI::IsMember({"nat", "con", "int", "order"}));
  cmd_mech->add_option("--mode", mode, "exact or sample:k (order mechanism only)");

  // verify
  CommonOpts verify_opts;
  std::string check = "ir";
  std::string verify_mechanism = "order";
  int ncl_country = 0;
  std::string ncl_variant = "";
  CLI::App* cmd_verify = app.add_subcommand("verify", "property checks");
  add_common(cmd_verify, verify_opts);
  cmd_verify->add_option("--check", check, "ir|ic|approx|perfect|ncl")
      ->check(CLI::IsMember({"ir", "ic", "approx", "perfect", "ncl"}));
  cmd_verify->add_option("--mechanism", verify_mechanism, "nat|con|int|order|order2seg");
  cmd_verify->add_option("--country", ncl_country, "manipulating country (ncl check)");
  cmd_verify->add_option("--ncl-variant", ncl_variant, "lowered ncl value or inf (ncl check)");

  // fixture
  CommonOpts fixture_opts;
  std::string fixture_name;
  std::string fixture_params;
  CLI::App* cmd_fixture = app.add_subcommand("fixture", "write a named example instance");
  cmd_fixture->add_option("--name", fixture_name, "fixture name")->required();
  cmd_fixture->add_option("--params", fixture_params, "comma separated key=value list");
  add_common(cmd_fixture, fixture_opts, false);

  // gen
  CommonOpts gen_opts;
  std::string gen_config;
  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a random instance");
  cmd_gen->add_option("--config", gen_config, "generator config file or inline JSON")->required();
  add_common(cmd_gen, gen_opts, false);

  // sim
  CommonOpts sim_opts;
  std::string sim_config;
  CLI::App* cmd_sim = app.add_subcommand("sim", "batch mechanism comparison, CSV output");
  cmd_sim->add_option("--config", sim_config, "experiment config file or inline JSON")
      ->required();
  add_common(cmd_sim, sim_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  if (cmd_enum->parsed()) {
    Instance inst = load_instance(enum_opts.input);
    EnumerationBudget budget{enum_opts.budget_cycles};
    CycleCatalog catalog = enumerate_gamma_cycles(inst, budget);
    InstanceStats stats = stats_from_catalog(inst, catalog);
    json out;
    int national_total = 0;
    json per_country = json::array();
    for (const auto& cycles : catalog.national_gamma) {
      national_total += static_cast<int>(cycles.size());
      per_country.push_back(cycles.size());
    }
    out["national_gamma_count"] = national_total;
    out["national_gamma_per_country"] = per_country;
    out["international_all_count"] = catalog.international_all.size();
    out["international_gamma_count"] = catalog.international_gamma.size();
    out["c_nat"] = stats.c_nat;
    out["c_int"] = stats.c_int;
    out["d_star"] = stats.d_star;
    if (enum_cycles) {
      json nat = json::array();
      for (const auto& cycles : catalog.national_gamma) {
        json list = json::array();
        for (const Cycle& c : cycles) list.push_back(cycle_json(c));
        nat.push_back(list);
      }
      out["national_gamma"] = nat;
      json all = json::array(), gamma = json::array();
      for (const Cycle& c : catalog.international_all) all.push_back(cycle_json(c));
      for (const Cycle& c : catalog.international_gamma) gamma.push_back(cycle_json(c));
      out["international_all"] = all;
      out["international_gamma"] = gamma;
    }
    emit(out.dump(2) + "\n", enum_opts.out);
    return 0;
  }

  if (cmd_solve->parsed()) {
    Instance inst = load_instance(solve_opts.input);
    SolveBudget budget;
    budget.enumeration.max_cycles = solve_opts.budget_cycles;
    SolveResult result;
    if (method == "auto") {
      DichotomyCase verdict = classify_gamma(inst.gamma());
      result = verdict.poly ? solve_poly_auto(inst) : max_gamma_packing_exact(inst, budget);
    } else {
      result = max_gamma_packing_exact(inst, budget);
    }
    json out;
    out["opt"] = result.opt_value;
    out["method"] = to_string(result.method);
    out["node_count"] = result.node_count;
    out["packing"] = packing_json(result.packing);
    emit(out.dump(2) + "\n", solve_opts.out);
    return 0;
  }

  if (cmd_classify->parsed()) {
    DichotomyCase verdict = classify_gamma(load_gamma(gamma_spec));
    json out;
    out["poly"] = verdict.poly;
    if (verdict.poly) {
      out["case"] = verdict.case_number;
      out["verdict"] = "Poly(" + std::to_string(verdict.case_number) + ")";
    } else {
      out["case"] = nullptr;
      out["verdict"] = "NPHard";
    }
    out["description"] = verdict.description;
    emit(out.dump(2) + "\n", classify_opts.out);
    return 0;
  }

  if (cmd_mech->parsed()) {
    Instance inst = load_instance(mech_opts.input);
    OrderOptions opts = mech_opts.order_options();
    json out;
    out["mechanism"] = mechanism;
    PackingDistribution dist;
    if (mechanism == "order") {
      if (mode == "exact") {
        OrderExactAnalysis analysis = mech_order_exact_analysis(inst, opts);
        dist = analysis.distribution;
        json selection = json::array();
        for (std::size_t i = 0; i < analysis.skeleton.candidates.size(); ++i) {
          selection.push_back({{"cycle", cycle_json(analysis.skeleton.candidates[i])},
                               {"selected", rat_str(analysis.step4_selection[i])},
                               {"uniform_reference", rat_str(analysis.uniform_reference[i])}});
        }
        out["step4_selection"] = selection;
        out["mode"] = "exact";
      } else if (mode.rfind("sample:", 0) == 0) {
        int k = std::stoi(mode.substr(7));
        dist = mech_order_distribution(inst, DistributionMode::sampled(k, mech_opts.seed), opts);
        out["mode"] = mode;
      } else {
        throw ValidationError("--mode: expected exact or sample:k");
      }
      out["distribution"] = distribution_json(dist);
    } else {
      CyclePacking packing;
      if (mechanism == "nat") packing = mech_nat(inst, opts.budget);
      if (mechanism == "con") packing = mech_con(inst, true, opts.budget);
      if (mechanism == "int") packing = mech_int(inst, opts.budget);
      out["mode"] = "deterministic";
      out["packing"] = packing_json(packing);
      dist = point_distribution(packing);
    }
    UtilityReport report = expected_utilities(dist, inst, opts.budget);
    out.update(utility_report_json(report));
    emit(out.dump(2) + "\n", mech_opts.out);
    return 0;
  }

  if (cmd_verify->parsed()) {
    Instance inst = load_instance(verify_opts.input);
    OrderOptions opts = verify_opts.order_options();
    MechanismFn mech = mechanism_by_name(verify_mechanism, opts);
    json out;
    out["check"] = check;
    out["mechanism"] = verify_mechanism;
    if (check == "ir") {
      IrReport report = check_ir(mech, inst, opts.budget);
      out["holds"] = report.holds;
      out["nat"] = report.nat;
      json u = json::array(), slack = json::array();
      for (const Rat& x : report.expected_utility) u.push_back(rat_str(x));
      for (const Rat& x : report.slack) slack.push_back(rat_str(x));
      out["expected_utility"] = u;
      out["slack"] = slack;
      out["violations"] = report.violations;
    } else if (check == "ic") {
      IcReport report = check_ic(mech, inst);
      out["holds"] = report.holds;
      out["evaluated"] = report.evaluated;
      json violations = json::array();
      for (const IcViolation& v : report.violations) {
        violations.push_back({{"country", v.country},
                              {"iss", v.variant.iss[v.country].to_string()},
                              {"isn", v.variant.isn[v.country].to_string()},
                              {"honest", rat_str(v.honest_utility)},
                              {"misreport", rat_str(v.misreport_utility)}});
      }
      out["violations"] = violations;
    } else if (check == "approx") {
      ApproxBoundReport report = check_approx_bound(inst, opts);
      out["holds"] = report.holds;
      out["social_welfare"] = rat_str(report.social_welfare);
      out["opt"] = report.opt;
      out["c_int"] = report.c_int;
      out["d_star"] = report.d_star;
      out["bound"] = report.bound;
      out["realized_ratio"] =
          report.ratio_is_finite ? json(rat_str(report.realized_ratio)) : json("inf");
    } else if (check == "perfect") {
      PerfectPackingResult result = has_perfect_packing(inst);
      out["exists"] = result.exists;
      if (result.exists) out["witness"] = packing_json(result.witness);
    } else {  // ncl
      if (ncl_variant.empty()) {
        throw ValidationError("--ncl-variant is required for the ncl check");
      }
      Bound variant = ncl_variant == "inf" ? Bound::unbounded()
                                           : Bound::finite(std::stoll(ncl_variant));
      NclManipulationReport report = check_ncl_manipulation(inst, ncl_country, variant, mech);
      out["country"] = report.country;
      out["reported_ncl"] = report.reported_ncl.to_string();
      out["variant_ncl"] = report.variant_ncl.to_string();
      out["honest_social_welfare"] = rat_str(report.honest_social_welfare);
      out["variant_social_welfare"] = rat_str(report.variant_social_welfare);
      out["honest_covered"] = rat_str(report.honest_covered);
      out["variant_covered"] = rat_str(report.variant_covered);
      out["coverage_gain"] = report.coverage_gain;
    }
    emit(out.dump(2) + "\n", verify_opts.out);
    return 0;
  }

  if (cmd_fixture->parsed()) {
    Instance inst = build_fixture(fixture_name, parse_params(fixture_params));
    emit(instance_to_json(inst), fixture_opts.out);
    return 0;
  }

  if (cmd_gen->parsed()) {
    GenConfig cfg = gen_config.front() == '{' ? gen_config_from_json(gen_config)
                                              : gen_config_from_json(read_file(gen_config));
    emit(instance_to_json(gen_instance(cfg)), gen_opts.out);
    return 0;
  }

  if (cmd_sim->parsed()) {
    ExperimentConfig cfg = sim_config.front() == '{'
                               ? experiment_config_from_json(sim_config)
                               : experiment_config_from_json(read_file(sim_config));
    ExperimentResult result = run_experiment(cfg);
    emit(result.csv, sim_opts.out);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
