// pmetric: command-line front end for the probmetric library.

#include "probmetric/probmetric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace pm = probmetric;

namespace {

constexpr int exit_true = 0;
constexpr int exit_false = 1;
constexpr int exit_usage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

pm::Pts load(const std::string& path) { return pm::parse_pts(read_file(path)); }

std::string show(const pm::Pts& pts, const pm::Distribution& pi) {
  std::string out = "{ ";
  bool first = true;
  for (const auto& e : pi.entries()) {
    if (!first) out += ", ";
    first = false;
    out += pts.name(e.process) + ": " + pm::to_string(e.weight);
  }
  return out + " }";
}

int relation_command(const std::string& file, const std::string& s_name, const std::string& t_name,
                     std::optional<std::size_t> k, pm::RelationKind kind) {
  const auto pts = load(file);
  const auto s = pts.process(s_name);
  const auto t = pts.process(t_name);
  const char* symbol = kind == pm::RelationKind::bisimulation ? "~" : kind == pm::RelationKind::simulation ? "<=" : "<=r";

  // Walk the approximation chain so that a failing pair reports the round it drops out.
  pm::Relation r = pm::Relation::full(pts.num_processes());
  std::size_t round = 0;
  std::optional<pm::TransferFailure> failure;
  const std::size_t cap = k ? *k : pts.num_processes() * pts.num_processes() + 1;
  while (round < cap) {
    pm::Relation next = pm::refine(pts, kind, r);
    if (next == r) break;
    if (!next.contains(s, t)) {
      failure = pm::transfer_failure(pts, kind, r, s, t);
      ++round;
      break;
    }
    r = std::move(next);
    ++round;
  }

  std::cout << s_name << ' ' << symbol;
  if (k) std::cout << '_' << *k;
  std::cout << ' ' << t_name << ": " << (failure ? "false" : "true") << '\n';
  if (!failure) return exit_true;

  const auto& f = *failure;
  const std::string other = f.mover == s ? t_name : s_name;
  std::cout << "witness: at round " << round << ", ";
  if (f.target) {
    std::cout << pts.name(f.mover) << " -" << pts.name(f.action) << "-> " << show(pts, *f.target) << " has no answer from "
              << other << '\n';
  } else {
    std::cout << t_name << " can do " << pts.name(f.action) << " but " << s_name << " cannot\n";
  }
  return exit_false;
}

nlohmann::json report_json(const pm::VerificationReport& report, std::size_t systems) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks()) {
    nlohmann::json j{{"name", c.name},
                     {"status", c.passed() ? "pass" : "fail"},
                     {"instances", c.instances},
                     {"failures", c.failures}};
    if (!c.passed()) j["witness"] = c.witness;
    checks.push_back(std::move(j));
  }
  return {{"systems", systems}, {"passed", report.all_passed()}, {"checks", std::move(checks)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact bisimulation metrics, modal logic and mimicking formulae for probabilistic transition systems"};
  app.require_subcommand(1);

  std::string file, s_name, t_name, lambda_text = "1";
  std::optional<std::size_t> k;

  auto add_k = [&](CLI::App* cmd) { cmd->add_option("--k", k, "Approximation depth")->check(CLI::NonNegativeNumber); };

  std::vector<std::pair<std::string, pm::RelationKind>> relations{
      {"bisim", pm::RelationKind::bisimulation},
      {"sim", pm::RelationKind::simulation},
      {"readysim", pm::RelationKind::ready_simulation}};
  std::map<CLI::App*, pm::RelationKind> relation_cmds;
  for (const auto& [name, kind] : relations) {
    auto* cmd = app.add_subcommand(name, "Decide " + name + " between two processes");
    cmd->add_option("file", file)->required();
    cmd->add_option("s", s_name)->required();
    cmd->add_option("t", t_name)->required();
    add_k(cmd);
    relation_cmds[cmd] = kind;
  }

  std::vector<std::string> pairs;
  auto* metric = app.add_subcommand("metric", "Bisimilarity metric (or its up-to-k approximant)");
  metric->add_option("file", file)->required();
  metric->add_option("--lambda", lambda_text, "Discount factor in (0,1]");
  metric->add_option("--pairs", pairs, "Pairs S,T to print (default: all)");
  add_k(metric);

  bool sim_char = false;
  auto* mimic = app.add_subcommand("mimic", "Mimicking formula of a process");
  mimic->add_option("file", file)->required();
  mimic->add_option("s", s_name)->required();
  mimic->add_flag("--sim-char", sim_char, "Simulation characteristic formula instead");
  add_k(mimic);

  std::string formula_text, formula_file;
  auto* sat = app.add_subcommand("sat", "Model check a state formula");
  sat->add_option("file", file)->required();
  sat->add_option("s", s_name)->required();
  auto* formula_opt = sat->add_option("--formula", formula_text, "Formula text");
  auto* formula_file_opt = sat->add_option("--formula-file", formula_file, "File holding the formula");
  formula_opt->excludes(formula_file_opt);

  std::string f1, f2;
  auto* fdist = app.add_subcommand("fdist", "Distance between two state formulae");
  fdist->add_option("f1", f1)->required();
  fdist->add_option("f2", f2)->required();
  fdist->add_option("--lambda", lambda_text)->required();
  add_k(fdist);

  auto* ldist = app.add_subcommand("ldist", "Logical distance between two processes");
  ldist->add_option("file", file)->required();
  ldist->add_option("s", s_name)->required();
  ldist->add_option("t", t_name)->required();
  ldist->add_option("--lambda", lambda_text);
  add_k(ldist);

  std::optional<std::uint64_t> seed;
  std::size_t count = 1;
  bool json = false;
  std::optional<std::string> verify_lambda;
  pm::RandomPtsParams params;
  auto* verify = app.add_subcommand("verify", "Cross-check every theorem on a system or on random systems");
  auto* verify_file = verify->add_option("file", file);
  auto* random_opt = verify->add_option("--random", seed, "First seed of the random systems");
  verify_file->excludes(random_opt);
  verify->add_option("--count", count, "Number of random systems")->check(CLI::PositiveNumber);
  verify->add_option("--lambda", verify_lambda, "Single discount (default: 1, 1/2 and 3/4)");
  verify->add_option("--max-states", params.max_states)->check(CLI::PositiveNumber);
  verify->add_option("--max-depth", params.max_depth)->check(CLI::NonNegativeNumber);
  verify->add_option("--max-fanout", params.max_fanout)->check(CLI::PositiveNumber);
  verify->add_option("--max-support", params.max_support)->check(CLI::PositiveNumber);
  verify->add_option("--denominator-bound", params.denominator_bound)->check(CLI::PositiveNumber);
  verify->add_option("--alphabet-size", params.alphabet_size)->check(CLI::Range(1, 26));
  verify->add_flag("--json", json, "Machine-readable report");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a system");
  dot->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    for (const auto& [cmd, kind] : relation_cmds) {
      if (*cmd) return relation_command(file, s_name, t_name, k, kind);
    }

    if (*metric) {
      const auto pts = load(file);
      const pm::Discount lambda(pm::parse_rational(lambda_text));
      const auto d = k ? pm::upto_k_metric(pts, lambda, *k) : pm::bisimilarity_metric(pts, lambda);
      const std::string name = k ? "d^" + std::to_string(*k) : "d";
      auto print = [&](pm::ProcessId s, pm::ProcessId t) {
        std::cout << name << '(' << pts.name(s) << ',' << pts.name(t) << ") = " << pm::to_string(d.at(s, t)) << '\n';
      };
      if (pairs.empty()) {
        for (auto s : pts.processes()) {
          for (auto t : pts.processes()) {
            if (s < t) print(s, t);
          }
        }
      }
      for (const auto& p : pairs) {
        const auto comma = p.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("pair '" + p + "' is not of the form S,T");
        print(pts.process(p.substr(0, comma)), pts.process(p.substr(comma + 1)));
      }
      return exit_true;
    }

    if (*mimic) {
      const auto pts = load(file);
      const auto s = pts.process(s_name);
      pm::StateFormula phi = sim_char ? (k ? pm::sim_characteristic_upto(pts, s, *k) : pm::sim_characteristic(pts, s))
                                      : (k ? pm::mimicking_upto(pts, s, *k) : pm::mimicking(pts, s));
      std::cout << pm::format_formula(phi) << '\n';
      return exit_true;
    }

    if (*sat) {
      if (!*formula_opt && !*formula_file_opt) throw std::invalid_argument("sat needs --formula or --formula-file");
      const auto pts = load(file);
      const auto phi = pm::parse_formula(*formula_opt ? formula_text : read_file(formula_file));
      const bool holds = pm::satisfies(pts, pts.process(s_name), phi);
      std::cout << (holds ? "true" : "false") << '\n';
      return holds ? exit_true : exit_false;
    }

    if (*fdist) {
      const pm::Discount lambda(pm::parse_rational(lambda_text));
      const auto x = pm::parse_formula(f1);
      const auto y = pm::parse_formula(f2);
      std::cout << pm::to_string(k ? pm::state_distance_upto(lambda, *k, x, y) : pm::state_distance(lambda, x, y)) << '\n';
      return exit_true;
    }

    if (*ldist) {
      const auto pts = load(file);
      const pm::Discount lambda(pm::parse_rational(lambda_text));
      const auto s = pts.process(s_name);
      const auto t = pts.process(t_name);
      std::cout << pm::to_string(k ? pm::logical_distance_upto(pts, lambda, *k, s, t) : pm::logical_distance(pts, lambda, s, t))
                << '\n';
      return exit_true;
    }

    if (*verify) {
      if (!*verify_file && !seed) throw std::invalid_argument("verify needs FILE or --random SEED");
      pm::VerifyOptions options;
      if (verify_lambda) options.discounts = {pm::Discount(pm::parse_rational(*verify_lambda)).value()};
      pm::VerificationReport report;
      std::size_t systems = 0;
      if (seed) {
        for (std::size_t i = 0; i < count; ++i) {
          options.label = "seed=" + std::to_string(*seed + i);
          report.merge(pm::verify_system(pm::generate_random_pts(*seed + i, params), options));
          ++systems;
        }
      } else {
        report = pm::verify_system(load(file), options);
        systems = 1;
      }
      if (json) {
        std::cout << report_json(report, systems).dump(2) << '\n';
      } else {
        std::cout << report.text() << systems << " system(s): " << (report.all_passed() ? "all checks passed" : "FAILURES")
                  << '\n';
      }
      return report.all_passed() ? exit_true : exit_false;
    }

    if (*dot) {
      std::cout << pm::to_dot(load(file));
      return exit_true;
    }
  } catch (const pm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
