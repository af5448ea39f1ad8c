// Command-line front end: instance generation, client-equilibrium
// constructions, the equilibrium dynamic, exact existence checks, welfare
// reports, and the bundled reference checks.
//
// Exit codes: 0 success, 1 negative domain verdict (no equilibrium /
// violation / mismatch), 2 input or usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flg/analysis.hpp"
#include "flg/classes.hpp"
#include "flg/client_eq.hpp"
#include "flg/errors.hpp"
#include "flg/game.hpp"
#include "flg/instances.hpp"
#include "flg/io.hpp"
#include "flg/spe.hpp"

using namespace flg;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kBadInput = 2;

struct Output {
  std::string format = "json";
  bool dot = false;

  void emit(const ResultDocument& doc) const {
    std::cout << (format == "tsv" ? doc.to_tsv() : doc.to_json());
  }
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Instance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

Placement parse_placement(const Instance& inst, const std::string& spec) {
  Placement s;
  std::stringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    auto v = inst.graph.find(token);
    if (!v) throw InputError("placement: unknown vertex \"" + token + "\"");
    s.at.push_back(*v);
  }
  if (static_cast<int>(s.at.size()) != inst.k)
    throw InputError("placement: expected " + std::to_string(inst.k) +
                     " vertices");
  return s;
}

std::vector<int> parse_pi(const Instance& inst, const std::string& spec) {
  std::vector<int> pi;
  std::stringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      pi.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw InputError("pi: not a facility id: \"" + token + "\"");
    }
  }
  if (static_cast<int>(pi.size()) != inst.k)
    throw InputError("pi: expected " + std::to_string(inst.k) +
                     " facility ids");
  return pi;
}

std::vector<std::string> names_of(const Instance& inst, const Placement& s) {
  std::vector<std::string> names;
  for (VertexId v : s.at) names.push_back(inst.graph.names[v]);
  return names;
}

void add_assignment(ResultDocument& doc, const Instance& inst,
                    const PureAssignment& a) {
  std::vector<std::string> rows;
  for (const auto& [v, f] : a.assign)
    rows.push_back(inst.graph.names[v] + "->f" + std::to_string(f));
  doc.add("assignment", rows);
}

void add_loads(ResultDocument& doc, const Instance& inst, const Placement& s,
               const ClientProfile& sigma) {
  LoadReport report = facility_loads(inst, s, sigma);
  doc.add_scalars("loads", report.load);
  doc.add_scalars("loads_sorted", report.sorted);
  doc.add_scalar("participation", report.participation);
}

PartialCertificate build_certificate(const Instance& inst,
                                     const std::string& policy_name,
                                     const std::string& place_spec,
                                     const std::string& pi_spec) {
  if (policy_name == "fig8") {
    PartialCertificate cert = fig8_certificate(inst);
    if (!place_spec.empty() && parse_placement(inst, place_spec) != cert.base)
      throw InputError("the fig8 policy certifies its clique placement only");
    return cert;
  }
  if (place_spec.empty()) throw InputError("--place is required");
  Placement base = parse_placement(inst, place_spec);
  FullProfilePolicy policy;
  if (policy_name == "greedy") {
    policy = greedy_policy();
  } else if (policy_name == "rounded") {
    policy = rounded_policy();
  } else if (policy_name == "uniform") {
    policy = uniform_policy();
  } else if (policy_name == "favoring") {
    if (pi_spec.empty()) throw InputError("--pi is required for favoring");
    policy = favoring_policy(parse_pi(inst, pi_spec));
  } else {
    throw InputError("unknown policy: " + policy_name);
  }
  return certificate_from_policy(inst, base, policy);
}

// ---------------------------------------------------------------------------
// Reference checks: recompute a bundled figure or table and compare against
// its expected exact values, one printed line per compared item.
// ---------------------------------------------------------------------------

struct Checker {
  int failures = 0;

  void expect(const std::string& what, const std::string& expected,
              const std::string& computed) {
    bool ok = expected == computed;
    if (!ok) ++failures;
    std::cout << what << ": expected " << expected << ", computed " << computed
              << (ok ? "" : "  <-- MISMATCH") << "\n";
  }
  void expect_true(const std::string& what, bool ok) {
    if (!ok) ++failures;
    std::cout << what << ": " << (ok ? "ok" : "FAILED") << "\n";
  }
};

void check_fig3(Checker& check) {
  Instance inst = make_fig3();
  ClassSet cs = class_set(inst, fig3_placement());
  check.expect("class count", "2", std::to_string(cs.classes.size()));
  if (cs.classes.size() == 2) {
    check.expect("class 1 load", "5/2", cs.classes[0].avg_load.str());
    check.expect("class 2 load", "4/1", cs.classes[1].avg_load.str());
    std::string part1, part2;
    for (FacilityId f : cs.classes[0].facilities)
      part1 += "f" + std::to_string(f + 1);
    for (FacilityId f : cs.classes[1].facilities)
      part2 += "f" + std::to_string(f + 1);
    check.expect("class 1 facilities", "f1f2", part1);
    check.expect("class 2 facilities", "f3", part2);
  }
}

void check_table1(Checker& check) {
  Instance inst = make_fig5_left();
  auto loads_set = [&](const Placement& s) {
    std::vector<std::string> rows;
    for (const auto& poly : enumerate_equilibria(inst, s, EnumGuard{})) {
      LoadReport report = facility_loads(inst, s, *poly.sample);
      rows.push_back("(" + report.load[0].str() + ", " + report.load[1].str() +
                     ")");
    }
    std::sort(rows.begin(), rows.end());
    std::string joined;
    for (const auto& row : rows) joined += (joined.empty() ? "" : " ") + row;
    return joined;
  };
  // The one-parameter family at (w1, w1) is reported as a single pattern
  // containing both pure endpoints.
  auto family = enumerate_equilibria(inst, {{0, 0}}, EnumGuard{});
  bool is_family =
      family.size() == 1 && family[0].pattern.support.at(0).size() == 2;
  if (is_family) {
    ClientProfile endpoint = zero_profile(inst);
    endpoint.prob[0][0] = Scalar(1);
    ClientProfile other = zero_profile(inst);
    other.prob[0][1] = Scalar(1);
    is_family = family[0].contains(inst, endpoint) &&
                family[0].contains(inst, other);
  }
  check.expect_true("(w1,w1): one-parameter family over both facilities",
                    is_family);
  check.expect("(w1,w2)", "(3/1, 2/1)", loads_set({{0, 1}}));
  check.expect("(w1,w3)", "(3/1, 1/1)", loads_set({{0, 2}}));
  check.expect("(w2,w1)", "(2/1, 3/1)", loads_set({{1, 0}}));
  check.expect("(w2,w2)", "(2/1, 3/1) (3/1, 2/1) (5/2, 5/2)",
               loads_set({{1, 1}}));
  check.expect("(w2,w3)", "(2/1, 4/1)", loads_set({{1, 2}}));
  check.expect("(w3,w1)", "(1/1, 3/1)", loads_set({{2, 0}}));
  check.expect("(w3,w2)", "(4/1, 2/1)", loads_set({{2, 1}}));
  check.expect("(w3,w3)", "(1/1, 3/1) (2/1, 2/1) (3/1, 1/1)",
               loads_set({{2, 2}}));
}

void check_fig1(Checker& check) {
  Instance inst = make_fig1();
  auto polytopes = enumerate_equilibria(inst, fig1_placement(), EnumGuard{});
  check.expect("equilibrium count", "3", std::to_string(polytopes.size()));
  std::vector<std::string> rows;
  for (const auto& poly : polytopes) {
    LoadReport report = facility_loads(inst, fig1_placement(), *poly.sample);
    rows.push_back("(" + report.load[0].str() + ", " + report.load[1].str() +
                   ")");
  }
  std::sort(rows.begin(), rows.end());
  std::string joined;
  for (const auto& row : rows) joined += (joined.empty() ? "" : " ") + row;
  // The two location clients carry weight 1/1000 each, shifting the drawn
  // loads by exactly that amount.
  check.expect("equilibrium loads",
               "(1001/1000, 3001/1000) (2001/1000, 2001/1000) "
               "(3001/1000, 1001/1000)",
               joined);
}

void check_fig6(Checker& check) {
  Instance inst;
  inst.graph.add_vertex("v1", Scalar(1));
  inst.graph.add_vertex("v2", Scalar(1));
  inst.graph.add_vertex("v3", Scalar(1));
  inst.graph.add_edge(1, 0);
  inst.graph.add_edge(2, 1);
  inst.k = 2;
  inst.allowed.assign(2, {0, 1, 2});
  Placement s{{0, 1}};
  auto loads = [&](const std::vector<int>& pi) {
    LoadReport report =
        facility_loads(inst, s, favoring_profile(inst, s, pi).to_profile(inst));
    return "(" + report.load[0].str() + ", " + report.load[1].str() + ")";
  };
  check.expect("favoring (f1,f2)", "(2/1, 1/1)", loads({0, 1}));
  check.expect("favoring (f2,f1)", "(1/1, 2/1)", loads({1, 0}));
}

void check_no_spe(Checker& check) {
  Instance inst = make_fig5_left();
  SpeExistsResult result = spe_exists(inst, Alpha::exact(), SpeExistsGuard{});
  check.expect("exact equilibrium existence", "none",
               result.exists ? "exists" : "none");
}

void check_table3(Checker& check) {
  Scalar eps(1, 100);
  Instance inst = make_fig5_right(eps);
  Scalar phi = Scalar::golden_ratio();
  auto reach = reach_table(inst, 0);
  check.expect("reach v1", Scalar(2).str(), reach.at(0).str());
  check.expect("reach v2", (Scalar(2) - eps).str(), reach.at(1).str());
  check.expect("reach v3", phi.str(), reach.at(2).str());
  check.expect("reach v4", (phi * phi / Scalar(2)).str(), reach.at(3).str());
  check.expect("reach v5", (Scalar(2) / phi).str(), reach.at(4).str());
  check.expect("reach v6", (Scalar(2) - Scalar(2) / phi).str(),
               reach.at(5).str());
}

void check_no_approx_spe(Checker& check) {
  check_table3(check);
  Instance inst = make_fig5_right(Scalar(1, 100));
  Alpha alpha(Scalar::golden_ratio() - Scalar(1, 10));
  SpeExistsResult result = spe_exists(inst, alpha, SpeExistsGuard{});
  check.expect("approximate equilibrium existence at phi - 1/10", "none",
               result.exists ? "exists" : "none");
}

void check_k_approx(Checker& check) {
  {
    Instance inst = make_fig5_left();
    auto [placement, cert] = k_approx_spe(inst);
    check.expect_true("path instance verifies at alpha = 2",
                      verify_spe(inst, cert, Alpha(Scalar(2))).ok);
  }
  {
    Instance inst = make_fig5_right(Scalar(1, 100));
    auto [placement, cert] = k_approx_spe(inst);
    check.expect_true("gadget verifies at alpha = 2",
                      verify_spe(inst, cert, Alpha(Scalar(2))).ok);
  }
}

void check_poa(Checker& check) {
  for (int k = 2; k <= 5; ++k) {
    Instance inst = make_fig8(k);
    PartialCertificate cert = fig8_certificate(inst);
    check.expect_true("k=" + std::to_string(k) + " clique placement verifies",
                      verify_spe(inst, cert, Alpha::exact()).ok);
    WelfareReport report = poa_certificate(inst, cert);
    check.expect("k=" + std::to_string(k) + " participation ratio", "2/1",
                 report.ratio.str());
  }
}

void check_reduction(Checker& check) {
  CnfFormula tiny;
  tiny.variables = 1;
  tiny.clauses = {{1}, {1}, {1}, {1}};
  Scalar alpha(5, 4);
  Instance inst = reduce_sat(tiny, alpha, Scalar(1, 100));
  check.expect("vertices", "14", std::to_string(inst.graph.vertex_count()));
  check.expect("facilities", "3", std::to_string(inst.k));
  check.expect("formula client weight", "1/5", inst.graph.weight[8].str());
  Placement base{{*inst.graph.find("y1"), *inst.graph.find("v1"),
                  *inst.graph.find("v8")}};
  PartialCertificate cert = certificate_from_policy(inst, base, greedy_policy());
  check.expect_true("satisfying placement verifies at alpha = 5/4",
                    verify_spe(inst, cert, Alpha(alpha)).ok);
}

int run_paper_check(const std::string& name) {
  Checker check;
  bool all = name == "all";
  bool known = false;
  auto run = [&](const std::string& id, auto&& fn) {
    if (!all && name != id) return;
    known = true;
    std::cout << "[" << id << "]\n";
    fn(check);
  };
  run("fig1", check_fig1);
  run("fig3", check_fig3);
  run("fig6", check_fig6);
  run("table1", check_table1);
  run("table3", check_table3);
  run("no-spe", check_no_spe);
  run("no-approx-spe", check_no_approx_spe);
  run("k-approx", check_k_approx);
  run("poa", check_poa);
  run("reduction", check_reduction);
  if (!known && !all)
    throw InputError(
        "unknown check: " + name +
        " (available: fig1, fig3, fig6, table1, table3, no-spe, "
        "no-approx-spe, k-approx, poa, reduction, all)");
  std::cout << (check.failures == 0
                    ? "all comparisons equal"
                    : std::to_string(check.failures) + " comparisons differ")
            << "\n";
  return check.failures == 0 ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-stage facility location with atomic clients"};
  app.require_subcommand(1);

  std::string instance_path, place_spec, pi_spec, policy_name = "greedy";
  std::string alpha_spec = "1", epsilon_spec = "1/100", family, check_name;
  std::string cnf_path = "-";
  Output out;
  int gen_k = 2, gen_n = 6, gen_density = 30;
  unsigned long long seed = 1;
  bool gen_weighted = false;
  int guard_clients = 8;
  unsigned long guard_fpps = 200, opt_guard = 1000000;

  auto add_common = [&](CLI::App* cmd, bool with_instance = true) {
    cmd->add_option("--format", out.format, "json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_flag("--dot", out.dot, "emit the host graph in DOT instead");
    if (with_instance)
      cmd->add_option("instance", instance_path, "instance file (- = stdin)")
          ->required();
  };

  CLI::App* gen = app.add_subcommand("gen", "emit a bundled instance");
  gen->add_option("--family", family,
                  "fig1, fig3, fig5_left, fig5_right, fig7_g3, fig8, random")
      ->required();
  gen->add_option("--k", gen_k, "facility count (fig8, random)");
  gen->add_option("--n", gen_n, "vertex count (random)");
  gen->add_option("--density", gen_density, "edge percentage (random)");
  gen->add_option("--seed", seed, "random seed");
  gen->add_flag("--weighted", gen_weighted, "random rational weights");
  gen->add_option("--alpha", alpha_spec, "gadget parameter (fig7_g3)");
  gen->add_option("--epsilon", epsilon_spec, "gadget parameter (fig5_right)");
  add_common(gen, false);

  CLI::App* classes = app.add_subcommand("classes", "class set of a placement");
  classes->add_option("--place", place_spec, "comma-separated vertex names")
      ->required();
  add_common(classes);

  CLI::App* rounded =
      app.add_subcommand("rounded", "rounded client equilibrium (unweighted)");
  rounded->add_option("--place", place_spec)->required();
  add_common(rounded);

  CLI::App* favoring = app.add_subcommand(
      "favoring", "order-favoring rounded equilibrium (unweighted)");
  favoring->add_option("--place", place_spec)->required();
  favoring->add_option("--pi", pi_spec, "comma-separated facility ids")
      ->required();
  add_common(favoring);

  CLI::App* greedy =
      app.add_subcommand("greedy", "greedy pure equilibrium (any weights)");
  greedy->add_option("--place", place_spec)->required();
  add_common(greedy);

  CLI::App* enumerate =
      app.add_subcommand("enumerate-eq", "all client equilibria (micro)");
  enumerate->add_option("--place", place_spec)->required();
  enumerate->add_option("--guard-clients", guard_clients);
  add_common(enumerate);

  CLI::App* findspe =
      app.add_subcommand("find-spe", "equilibrium dynamic (unweighted)");
  add_common(findspe);

  CLI::App* verify =
      app.add_subcommand("verify", "verify a policy certificate at a placement");
  verify->add_option("--place", place_spec);
  verify->add_option("--policy", policy_name,
                     "greedy, rounded, favoring, uniform, fig8");
  verify->add_option("--pi", pi_spec);
  verify->add_option("--alpha", alpha_spec, "approximation factor");
  add_common(verify);

  CLI::App* kapprox =
      app.add_subcommand("k-approx", "k-approximate stable placement");
  add_common(kapprox);

  CLI::App* exists = app.add_subcommand(
      "spe-exists", "exact approximate-equilibrium existence (micro)");
  exists->add_option("--alpha", alpha_spec);
  exists->add_option("--guard-clients", guard_clients);
  exists->add_option("--guard-fpps", guard_fpps);
  add_common(exists);

  CLI::App* opt = app.add_subcommand("opt", "optimal participation placement");
  opt->add_option("--guard", opt_guard);
  add_common(opt);

  CLI::App* poa =
      app.add_subcommand("poa", "participation ratio of a verified certificate");
  poa->add_option("--place", place_spec);
  poa->add_option("--policy", policy_name);
  poa->add_option("--pi", pi_spec);
  add_common(poa);

  CLI::App* reduce =
      app.add_subcommand("reduce-sat", "instance from a DIMACS CNF formula");
  reduce->add_option("--alpha", alpha_spec)->required();
  reduce->add_option("--epsilon", epsilon_spec);
  reduce->add_option("--cnf", cnf_path, "DIMACS file (- = stdin)");
  add_common(reduce, false);

  CLI::App* paper = app.add_subcommand(
      "paper-check", "recompute a bundled reference figure or table");
  paper->add_option("name", check_name, "check name or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage text
    return kBadInput;
  }

  try {
    if (gen->parsed()) {
      Instance inst;
      if (family == "fig1") {
        inst = make_fig1();
      } else if (family == "fig3") {
        inst = make_fig3();
      } else if (family == "fig5_left") {
        inst = make_fig5_left();
      } else if (family == "fig5_right") {
        inst = make_fig5_right(Scalar::parse(epsilon_spec));
      } else if (family == "fig7_g3") {
        inst = make_fig7_g3(Scalar::parse(alpha_spec));
      } else if (family == "fig8") {
        inst = make_fig8(gen_k);
      } else if (family == "random") {
        RandomSpec spec;
        spec.vertices = gen_n;
        spec.k = gen_k;
        spec.density_percent = gen_density;
        spec.unit_weights = !gen_weighted;
        spec.seed = seed;
        inst = make_random(spec);
      } else {
        throw InputError("unknown family: " + family);
      }
      std::cout << (out.dot ? to_dot(inst, std::nullopt, nullptr)
                            : serialize_instance(inst));
      return kOk;
    }

    if (classes->parsed()) {
      Instance inst = load_instance(instance_path);
      Placement s = parse_placement(inst, place_spec);
      ClassSet cs = class_set(inst, s);
      if (out.dot) {
        std::cout << to_dot(inst, s, &cs);
        return kOk;
      }
      ResultDocument doc;
      doc.add("command", "classes");
      doc.add("placement", names_of(inst, s));
      for (std::size_t i = 0; i < cs.classes.size(); ++i) {
        const ClassInfo& cls = cs.classes[i];
        std::string key = "class_" + std::to_string(i + 1);
        std::vector<std::string> facilities, clients;
        for (FacilityId f : cls.facilities)
          facilities.push_back("f" + std::to_string(f));
        for (VertexId v : cls.clients) clients.push_back(inst.graph.names[v]);
        doc.add(key + "_facilities", facilities);
        doc.add(key + "_clients", clients);
        doc.add_scalar(key + "_load", cls.avg_load);
      }
      out.emit(doc);
      return kOk;
    }

    auto assignment_command = [&](const std::string& name,
                                  const PureAssignment& a, const Instance& inst,
                                  const Placement& s) {
      if (out.dot) {
        ClassSet cs = class_set(inst, s);
        std::cout << to_dot(inst, s, &cs);
        return;
      }
      ResultDocument doc;
      doc.add("command", name);
      doc.add("placement", names_of(inst, s));
      add_assignment(doc, inst, a);
      add_loads(doc, inst, s, a.to_profile(inst));
      doc.add("client_equilibrium",
              verify_client_equilibrium(inst, s, a.to_profile(inst)).ok
                  ? "ok"
                  : "violated");
      out.emit(doc);
    };

    if (rounded->parsed()) {
      Instance inst = load_instance(instance_path);
      Placement s = parse_placement(inst, place_spec);
      assignment_command("rounded",
                         rounded_profile(inst, s, class_set(inst, s)), inst, s);
      return kOk;
    }
    if (favoring->parsed()) {
      Instance inst = load_instance(instance_path);
      Placement s = parse_placement(inst, place_spec);
      assignment_command(
          "favoring", favoring_profile(inst, s, parse_pi(inst, pi_spec)), inst,
          s);
      return kOk;
    }
    if (greedy->parsed()) {
      Instance inst = load_instance(instance_path);
      Placement s = parse_placement(inst, place_spec);
      assignment_command("greedy", greedy_weighted_equilibrium(inst, s), inst,
                         s);
      return kOk;
    }

    if (enumerate->parsed()) {
      Instance inst = load_instance(instance_path);
      Placement s = parse_placement(inst, place_spec);
      EnumGuard guard;
      guard.clients = guard_clients;
      auto polytopes = enumerate_equilibria(inst, s, guard);
      ResultDocument doc;
      doc.add("command", "enumerate-eq");
      doc.add("placement", names_of(inst, s));
      doc.add("equilibrium_patterns", std::to_string(polytopes.size()));
      for (std::size_t i = 0; i < polytopes.size(); ++i) {
        std::string key = "pattern_" + std::to_string(i + 1);
        std::vector<std::string> support;
        for (const auto& [v, fs] : polytopes[i].pattern.support) {
          std::string row = inst.graph.names[v] + ":";
          for (FacilityId f : fs) row += "f" + std::to_string(f);
          support.push_back(row);
        }
        doc.add(key + "_support", support);
        LoadReport report = facility_loads(inst, s, *polytopes[i].sample);
        doc.add_scalars(key + "_sample_loads", report.load);
      }
      out.emit(doc);
      return kOk;
    }

    if (findspe->parsed()) {
      Instance inst = load_instance(instance_path);
      SpeResult result = find_spe(inst);
      ResultDocument doc;
      doc.add("command", "find-spe");
      doc.add("placement", names_of(inst, result.placement));
      doc.add("iterations", std::to_string(result.trace.iterations));
      std::vector<std::string> steps;
      for (const auto& step : result.trace.steps) {
        std::string row = "f" + std::to_string(step.mover) + ": " +
                          inst.graph.names[step.from] + " -> " +
                          inst.graph.names[step.to] + "; potential";
        for (const Scalar& x : step.sort_after) row += " " + x.str();
        row += "; order";
        for (int f : step.pi) row += " f" + std::to_string(f);
        steps.push_back(row);
      }
      doc.add("steps", steps);
      doc.add("policy", result.certificate.policy);
      add_loads(doc, inst, result.placement,
                result.certificate.at(result.placement));
      doc.add("verified", verify_spe(inst, result.certificate, Alpha::exact()).ok
                              ? "ok"
                              : "violated");
      out.emit(doc);
      return kOk;
    }

    if (verify->parsed()) {
      Instance inst = load_instance(instance_path);
      PartialCertificate cert =
          build_certificate(inst, policy_name, place_spec, pi_spec);
      Alpha alpha(Scalar::parse(alpha_spec));
      SpeVerdict verdict = verify_spe(inst, cert, alpha);
      ResultDocument doc;
      doc.add("command", "verify");
      doc.add("placement", names_of(inst, cert.base));
      doc.add("policy", cert.policy);
      doc.add_scalar("alpha", alpha.value);
      doc.add("verdict", verdict.ok ? "ok" : "violation");
      if (!verdict.note.empty()) doc.add("note", verdict.note);
      if (verdict.witness) {
        doc.add("witness_facility",
                "f" + std::to_string(verdict.witness->facility));
        doc.add("witness_target", inst.graph.names[verdict.witness->target]);
        doc.add_scalar("witness_base_load", verdict.witness->base_load);
        doc.add_scalar("witness_deviation_load",
                       verdict.witness->deviation_load);
        if (verdict.witness->factor)
          doc.add_scalar("witness_factor", *verdict.witness->factor);
      }
      out.emit(doc);
      return verdict.ok ? kOk : kNo;
    }

    if (kapprox->parsed()) {
      Instance inst = load_instance(instance_path);
      auto [placement, cert] = k_approx_spe(inst);
      SpeVerdict verdict = verify_spe(inst, cert, Alpha(Scalar(inst.k)));
      ResultDocument doc;
      doc.add("command", "k-approx");
      doc.add("placement", names_of(inst, placement));
      doc.add("alpha", std::to_string(inst.k) + "/1");
      add_loads(doc, inst, placement, cert.at(placement));
      doc.add("verdict", verdict.ok ? "ok" : "violation");
      out.emit(doc);
      return verdict.ok ? kOk : kNo;
    }

    if (exists->parsed()) {
      Instance inst = load_instance(instance_path);
      SpeExistsGuard guard;
      guard.fpps = guard_fpps;
      guard.eq.clients = guard_clients;
      SpeExistsResult result =
          spe_exists(inst, Alpha(Scalar::parse(alpha_spec)), guard);
      ResultDocument doc;
      doc.add("command", "spe-exists");
      doc.add_scalar("alpha", Scalar::parse(alpha_spec));
      doc.add("verdict", result.exists ? "exists" : "none");
      if (result.witness)
        doc.add("witness", names_of(inst, *result.witness));
      else
        doc.add("placements_examined", result.summary);
      out.emit(doc);
      return result.exists ? kOk : kNo;
    }

    if (opt->parsed()) {
      Instance inst = load_instance(instance_path);
      auto [placement, weight] = optimum_placement(inst, opt_guard);
      ResultDocument doc;
      doc.add("command", "opt");
      doc.add("placement", names_of(inst, placement));
      doc.add_scalar("participation", weight);
      out.emit(doc);
      return kOk;
    }

    if (poa->parsed()) {
      Instance inst = load_instance(instance_path);
      PartialCertificate cert =
          build_certificate(inst, policy_name, place_spec, pi_spec);
      WelfareReport report = poa_certificate(inst, cert);
      ResultDocument doc;
      doc.add("command", "poa");
      doc.add("placement", names_of(inst, cert.base));
      doc.add("optimum", names_of(inst, report.opt_placement));
      doc.add_scalar("optimum_weight", report.opt_weight);
      doc.add_scalar("state_weight", report.state_weight);
      doc.add_scalar("ratio", report.ratio);
      out.emit(doc);
      return kOk;
    }

    if (reduce->parsed()) {
      CnfFormula formula = parse_dimacs(read_file(cnf_path));
      Instance inst = reduce_sat(formula, Scalar::parse(alpha_spec),
                                 Scalar::parse(epsilon_spec));
      std::cout << (out.dot ? to_dot(inst, std::nullopt, nullptr)
                            : serialize_instance(inst));
      return kOk;
    }

    if (paper->parsed()) return run_paper_check(check_name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
