// Copyright 2026 The jm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// jmcheck: scenario runner and ad-hoc joint measurability checks over JSON inputs.
//
// Exit codes: 0 ok, 1 expectation failure, 2 parse error, 3 precondition error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jm/bloch.hpp"
#include "jm/feasibility.hpp"
#include "jm/io.hpp"
#include "jm/order.hpp"
#include "jm/partitioning.hpp"
#include "jm/scenarios.hpp"

namespace {

using jm::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitExpectation = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

struct Globals {
  double tol = 1e-7;
  std::uint64_t seed = 0;
  int max_iter = 20000;
  int restarts = 8;
  std::string json_out;
};

jm::FeasibilityOptions feasibility_options(const Globals& g) {
  jm::FeasibilityOptions o;
  o.tol = g.tol;
  o.seed = g.seed;
  o.max_iter = g.max_iter;
  o.restarts = g.restarts;
  return o;
}

jm::OrderOptions order_options(const Globals& g) {
  jm::OrderOptions o;
  o.seed = g.seed;
  return o;
}

void emit(const Globals& g, const Json& report) {
  const Json rounded = jm::io::round_numbers(report);
  std::cout << rounded.dump(2) << '\n';
  if (!g.json_out.empty()) jm::io::write_file(g.json_out, rounded);
}

double default_tol() {
  if (const char* env = std::getenv("JM_DEFAULT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0) return v;
    throw jm::ParseError(std::string("JM_DEFAULT_TOL is not a positive number: ") + env);
  }
  return 1e-7;
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw jm::ParseError("--set expects key=value, got '" + text + "'");
  const std::string value = text.substr(eq + 1);
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0') throw jm::ParseError("--set value is not a number: '" + value + "'");
  return {text.substr(0, eq), v};
}

void require_files(const std::vector<std::string>& files, std::size_t lo, std::size_t hi, const std::string& cmd) {
  if (files.size() < lo || files.size() > hi) {
    throw jm::ParseError("check " + cmd + ": expected " +
                         (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                         " input files, got " + std::to_string(files.size()));
  }
}

jm::Observable load_observable(const std::string& path) { return jm::io::observable_from_json(jm::io::load_file(path)); }

std::array<jm::Vec3, 3> load_context(const std::string& path) {
  const Json j = jm::io::load_file(path);
  std::array<jm::Vec3, 3> out;
  const char* keys[3] = {"a", "b", "c"};
  for (int k = 0; k < 3; ++k) {
    if (!j.contains(keys[k]) || !j.at(keys[k]).is_array() || j.at(keys[k]).size() != 3) {
      throw jm::ParseError(path + ": context needs three-component vectors 'a', 'b', 'c'");
    }
    const auto& v = j.at(keys[k]);
    out[k] = jm::Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  }
  return out;
}

Json run_check(const std::string& cmd, const std::vector<std::string>& files, const std::string& context,
               const Globals& g, bool& precondition_failed) {
  const auto fo = feasibility_options(g);
  Json report{{"command", cmd}, {"inputs", files}};
  if (cmd == "validate") {
    require_files(files, 1, 1, cmd);
    const auto v = jm::validate(load_observable(files[0]), g.tol);
    report["verdict"] = v.passed ? "VALID" : "INVALID";
    report["validation"] = jm::io::to_json(v);
    precondition_failed = !v.passed;
  } else if (cmd == "jm-pair") {
    require_files(files, 2, 2, cmd);
    const auto r = jm::decide(load_observable(files[0]), load_observable(files[1]), fo);
    report["verdict"] = jm::to_string(r.verdict);
    report["report"] = jm::io::to_json(r);
  } else if (cmd == "jm-set") {
    require_files(files, 2, 64, cmd);
    std::vector<jm::Observable> obs;
    for (const auto& f : files) obs.push_back(load_observable(f));
    if (obs.size() == 2) {
      const auto r = jm::decide(obs, fo);
      report["verdict"] = jm::to_string(r.verdict);
      report["report"] = jm::io::to_json(r);
    } else {
      const auto r = jm::pairwise_vs_global(obs, fo);
      report["verdict"] = jm::to_string(r.global.verdict);
      report["report"] = jm::io::to_json(r);
    }
  } else if (cmd == "order-audit") {
    require_files(files, 3, 3, cmd);
    const Json gj = jm::io::load_file(files[0]);
    if (!jm::io::is_product_json(gj)) throw jm::ParseError(files[0] + ": order-audit needs a product observable");
    const auto audit = jm::joint_observable_order_audit(jm::io::product_from_json(gj), load_observable(files[1]),
                                                        load_observable(files[2]), order_options(g));
    report["verdict"] = audit.all_greatest == jm::Tristate::Yes  ? "GREATEST"
                        : audit.all_greatest == jm::Tristate::No ? "NOT_GREATEST"
                                                                 : "UNKNOWN";
    report["report"] = jm::io::to_json(audit);
  } else if (cmd == "partitions") {
    require_files(files, 2, 2, cmd);
    const Json aj = jm::io::load_file(files[0]), bj = jm::io::load_file(files[1]);
    if (!context.empty()) {
      if (!jm::io::is_product_json(aj) || !jm::io::is_product_json(bj)) {
        throw jm::ParseError("check partitions --context needs two product observables");
      }
      const auto r = jm::partition_paradox_audit(jm::io::product_from_json(aj), jm::io::product_from_json(bj),
                                                 load_context(context), fo);
      report["verdict"] = r.paradox ? "PARADOX" : (r.all_partitions_feasible ? "ALL_FEASIBLE" : "MIXED");
      report["report"] = jm::io::to_json(r);
    } else {
      const auto m = jm::partition_compatibility_matrix(jm::io::observable_from_json(aj),
                                                        jm::io::observable_from_json(bj), fo);
      const bool all = m.feasible == m.row_keys.size() * m.col_keys.size();
      report["verdict"] = all ? "ALL_FEASIBLE" : "MIXED";
      report["report"] = jm::io::to_json(m);
    }
  } else {
    throw jm::ParseError("unknown check command '" + cmd + "'");
  }
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint measurability checks for finite-outcome quantum observables"};
  app.require_subcommand(0, 1);
  Globals g;
  bool list_flag = false;
  std::optional<double> tol_flag;
  app.add_flag("--list", list_flag, "List registered scenarios with citations");
  app.add_option("--tol", tol_flag, "Numerical tolerance (default 1e-7 or $JM_DEFAULT_TOL)");
  app.add_option("--seed", g.seed, "Base RNG seed")->capture_default_str();
  app.add_option("--max-iter", g.max_iter, "Iteration cap for numerical search")->capture_default_str();
  app.add_option("--restarts", g.restarts, "Restarts for numerical search")->capture_default_str();
  app.add_option("--json-out", g.json_out, "Also write the JSON report to this path");

  auto* list_cmd = app.add_subcommand("list", "List registered scenarios");

  auto* run_cmd = app.add_subcommand("run", "Run a registered scenario");
  std::string scenario;
  std::optional<double> l_override;
  std::vector<std::string> sets;
  run_cmd->add_option("name", scenario, "Scenario name")->required();
  run_cmd->add_option("--l", l_override, "Bloch vector length parameter");
  run_cmd->add_option("--set", sets, "Override a scenario parameter (key=value)");

  auto* check_cmd = app.add_subcommand("check", "Check JSON inputs");
  std::string check_name;
  std::vector<std::string> files;
  std::string expect;
  std::string context;
  check_cmd->add_option("command", check_name, "validate | jm-pair | jm-set | order-audit | partitions")
      ->required()
      ->check(CLI::IsMember({"validate", "jm-pair", "jm-set", "order-audit", "partitions"}));
  check_cmd->add_option("files", files, "Input JSON files")->required();
  check_cmd->add_option("--expect", expect, "Exit 1 unless the report verdict equals this value");
  check_cmd->add_option("--context", context, "JSON file with Bloch vectors a, b, c for the paradox audit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    g.tol = tol_flag ? *tol_flag : default_tol();
    if (!(g.tol > 0)) throw jm::ParseError("--tol must be positive");

    if (list_flag || list_cmd->parsed()) {
      Json out = Json::array();
      for (const auto& s : jm::scenarios::registry()) {
        Json params = Json::object();
        for (const auto& [k, v] : s.defaults) params[k] = v;
        out.push_back({{"name", s.name}, {"citation", s.citation}, {"summary", s.summary}, {"defaults", params}});
      }
      emit(g, out);
      return kExitOk;
    }
    if (run_cmd->parsed()) {
      std::map<std::string, double> overrides;
      if (l_override) overrides["l"] = *l_override;
      for (const auto& s : sets) overrides.insert_or_assign(parse_assignment(s).first, parse_assignment(s).second);
      const auto result = jm::scenarios::run(scenario, overrides, feasibility_options(g));
      emit(g, jm::scenarios::to_json(result));
      if (!result.passed()) {
        for (const auto& e : result.expectations) {
          if (!e.passed) {
            std::cerr << "expectation failed: " << e.name << "\n  expected: " << jm::io::round_numbers(e.expected).dump()
                      << "\n  observed: " << jm::io::round_numbers(e.observed).dump() << '\n';
          }
        }
        return kExitExpectation;
      }
      return kExitOk;
    }
    if (check_cmd->parsed()) {
      bool precondition_failed = false;
      Json report = run_check(check_name, files, context, g, precondition_failed);
      emit(g, report);
      if (precondition_failed) return kExitPrecondition;
      if (!expect.empty() && report.value("verdict", "") != expect) {
        std::cerr << "expected verdict " << expect << ", got " << report.value("verdict", "") << '\n';
        return kExitExpectation;
      }
      return kExitOk;
    }
    std::cerr << app.help();
    return kExitParse;
  } catch (const jm::PreconditionError& e) {
    emit(g, Json{{"error", "precondition"}, {"message", e.what()}});
    return kExitPrecondition;
  } catch (const jm::StructureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
}
