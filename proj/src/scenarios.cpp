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

#include "jm/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "jm/bloch.hpp"
#include "jm/order.hpp"
#include "jm/partitioning.hpp"

namespace jm::scenarios {

namespace {

using io::Json;
using Params = std::map<std::string, double>;

class Recorder {
 public:
  explicit Recorder(ScenarioResult& r) : r_(r) {}

  void expect(std::string name, Json expected, Json observed, bool passed) {
    r_.expectations.push_back({std::move(name), r_.citation, std::move(expected), std::move(observed), passed});
  }
  void equal(std::string name, const Json& expected, const Json& observed) {
    expect(std::move(name), expected, observed, expected == observed);
  }
  void near(std::string name, double expected, double observed, double tol) {
    expect(std::move(name), Json{{"value", expected}, {"tol", tol}}, observed, std::abs(expected - observed) <= tol);
  }
  void at_most(std::string name, double bound, double observed) {
    expect(std::move(name), Json{{"max", bound}}, observed, observed <= bound);
  }
  void at_least(std::string name, double bound, double observed) {
    expect(std::move(name), Json{{"min", bound}}, observed, observed >= bound);
  }

 private:
  ScenarioResult& r_;
};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Vec3 kX = Vec3::UnitX(), kY = Vec3::UnitY(), kZ = Vec3::UnitZ();

double max_cell_difference(const ProductObservable& g, const ProductObservable& f) {
  double worst = 0.0;
  for (std::size_t z = 0; z < g.size(); ++z) worst = std::max(worst, operator_norm(g.cell_at(z) - f.cell_at(z)));
  return worst;
}

double pair_marginal_residual(const ProductObservable& g, const Observable& a, const Observable& b) {
  const Observable parents[2] = {a, b};
  return marginal_residual(g, parents);
}

void busch_boundary(const Params& p, const FeasibilityOptions& opts, Recorder& rec, Json& details) {
  const double l = p.at("l");
  const Vec3 a = l * kX, b = l * kY;
  const Observable ea = qubit_observable(a), eb = qubit_observable(b);
  const double expected_value = 2.0 * std::sqrt(2.0) * l;
  const bool expected_jm = expected_value <= 2.0 + kCriterionTol;

  const auto report = decide(ea, eb, opts);
  rec.equal("verdict", expected_jm ? "FEASIBLE" : "INFEASIBLE", to_string(report.verdict));
  rec.equal("reason", "eq3", to_string(report.reason));
  rec.near("eq3 margin", expected_value - 2.0, report.margin, 1e-12);
  details["decide"] = io::to_json(report, false);

  if (std::abs(expected_value - 2.0) > kBoundaryTol) return;
  const ProductObservable g = boundary_joint(a, b);
  const auto v = validate(g.observable(), 1e-12);
  rec.equal("boundary joint passes validate", true, v.passed);
  rec.at_most("boundary joint marginal residual", 1e-12, pair_marginal_residual(g, ea, eb));
  const auto numeric = decide_pair_qubit_numeric(ea, eb, opts);
  rec.equal("numeric pair solver verdict", "FEASIBLE", to_string(numeric.verdict));
  if (numeric.witness) {
    const double diff = max_cell_difference(g, *numeric.witness);
    rec.at_most("numeric witness vs boundary joint (max cell norm)", 1e-6, diff);
  }
  details["boundary_joint"] = io::to_json(g);
  details["numeric"] = io::to_json(numeric);
}

void pairwise_not_triple(const Params& p, const FeasibilityOptions& opts, Recorder& rec, Json& details) {
  const double l = p.at("l");
  const Observable obs[3] = {qubit_observable(l * kX), qubit_observable(l * kY), qubit_observable(l * kZ)};
  const bool pair_jm = 2.0 * std::sqrt(2.0) * l <= 2.0 + kCriterionTol;
  const double eq6 = 3.0 * l * l;
  const bool triple_jm = eq6 <= 1.0 + kCriterionTol;

  const auto report = pairwise_vs_global(obs, opts);
  const char* pair_expected = pair_jm ? "FEASIBLE" : "INFEASIBLE";
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      rec.equal("pairwise verdict (" + std::to_string(i) + "," + std::to_string(j) + ")", pair_expected,
                to_string(report.pairwise[i][j]->verdict));
    }
  }
  rec.equal("global verdict", triple_jm ? "FEASIBLE" : "INFEASIBLE", to_string(report.global.verdict));
  const auto triple = three_orthogonal_criterion(l * kX, l * kY, l * kZ);
  rec.near("eq6 value", eq6, triple.value, 1e-12);
  rec.near("eq6 margin", eq6 - 1.0, triple.margin(), 1e-9);
  if (pair_jm) {
    rec.equal("global reason", "eq6", to_string(report.global.reason));
    rec.near("global margin", eq6 - 1.0, report.global.margin, 1e-9);
  }
  details["report"] = io::to_json(report);
}

void unique_not_greatest(const Params& p, const FeasibilityOptions& opts, Recorder& rec, Json& details) {
  const double t = p.at("t"), gamma = p.at("gamma");
  const Vec3 a = kInvSqrt2 * kX, b = kInvSqrt2 * kY;
  const Observable ea = qubit_observable(a), eb = qubit_observable(b);
  const ProductObservable g = boundary_joint(a, b);
  const HermitianOperator c = effect_from_bloch(gamma, t * (a + b));
  const HermitianOperator& a1 = ea.effect(0);
  const HermitianOperator& b1 = eb.effect(0);

  rec.equal("C is an effect", true, is_effect(c));
  rec.equal("in_lb(C, E^a(1), E^b(1))", true, in_lb(c, a1, b1));
  rec.equal("loewner_leq(C, G(1,1))", false, loewner_leq(c, g.cell(0, 0)));
  rec.at_least("<psi|(C - G(1,1))psi>", 1e-3, max_eigenvalue(c - g.cell(0, 0)));

  OrderOptions oo;
  oo.seed = opts.seed;
  oo.exec = opts.exec;
  const auto audit = joint_observable_order_audit(g, ea, eb, oo);
  rec.equal("audit all_greatest", "no", to_string(audit.all_greatest));
  rec.expect("audit unique", Json{{"not", "no"}}, to_string(audit.unique), audit.unique != Tristate::No);

  const auto numeric = decide_pair_qubit_numeric(ea, eb, opts);
  rec.equal("numeric pair solver verdict", "FEASIBLE", to_string(numeric.verdict));
  if (numeric.witness) {
    rec.at_most("numeric joint vs G (max cell norm)", 1e-6, max_cell_difference(g, *numeric.witness));
  }
  details["audit"] = io::to_json(audit);
}

void no_maximal_family(const Params& p, const FeasibilityOptions& opts, Recorder& rec, Json& details) {
  const double na = p.at("norm_a"), beta = p.at("beta"), gamma = p.at("gamma"), outside = p.at("gamma_outside");
  const Vec3 a = na * kX, bhat = kY;
  const Observable ea = qubit_observable(a), eb = qubit_observable(beta, beta * bhat);
  const double lo = beta - 0.5 * (1.0 - na * na), hi = 0.5 * (1.0 - na * na);

  const Interval j = gamma_interval(a, beta);
  rec.near("J lower end", lo, j.lo, 1e-12);
  rec.near("J upper end", hi, j.hi, 1e-12);
  for (const auto& [name, value] : {std::pair{"lower", j.lo}, std::pair{"upper", j.hi}}) {
    const auto g = gamma_family_member(a, beta, bhat, value);
    const bool valid = validate(g.observable(), 1e-12).passed && pair_marginal_residual(g, ea, eb) <= 1e-12;
    rec.equal(std::string(name) + " endpoint joint is valid", true, valid);
  }
  std::string outside_status = "valid";
  try {
    gamma_family_member(a, beta, bhat, outside);
  } catch (const PreconditionError& e) {
    outside_status = "invalid";
    details["outside_error"] = e.what();
  }
  rec.equal("gamma outside J fails effect validity", "invalid", outside_status);

  constexpr int kGrid = 9;
  int violations = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  std::vector<ProductObservable> family;
  for (int k = 0; k < kGrid; ++k) family.push_back(gamma_family_member(a, beta, bhat, j.lo + k * j.width() / (kGrid - 1)));
  for (int k = 0; k < kGrid; ++k) {
    for (int m = k + 1; m < kGrid; ++m) {
      const auto& g1 = family[k];
      const auto& g2 = family[m];
      const double up = g2.cell(0, 0).trace() - g1.cell(0, 0).trace();
      const double down = g1.cell(1, 0).trace() - g2.cell(1, 0).trace();
      const bool ok = loewner_leq(g1.cell(0, 0), g2.cell(0, 0)) && loewner_leq(g2.cell(1, 0), g1.cell(1, 0)) &&
                      up > 1e-9 && down > 1e-9;
      violations += ok ? 0 : 1;
      min_gap = std::min({min_gap, up, down});
    }
  }
  rec.equal("opposite ordering violations", 0, violations);
  rec.at_least("smallest trace gap", 1e-9, min_gap);

  const auto interior = gamma_family_member(a, beta, bhat, gamma);
  OrderOptions oo;
  oo.seed = opts.seed;
  oo.exec = opts.exec;
  const auto probe = maximality_probe(interior.cell(0, 0), ea.effect(0), eb.effect(0), oo);
  rec.equal("interior G(1,1) maximality", "NOT_MAXIMAL",
            probe.verdict == Maximality::NotMaximal ? "NOT_MAXIMAL" : "MAXIMAL_WITHIN");
  const auto audit = joint_observable_order_audit(interior, ea, eb, oo);
  rec.equal("audit all_maximal", false, audit.all_maximal);
  rec.equal("audit unique", "no", to_string(audit.unique));
  details["interval"] = {j.lo, j.hi};
  details["probe_trace_gain"] = probe.trace_gain;
  details["audit"] = io::to_json(audit);
}

void partition_paradox(const Params& p, const FeasibilityOptions& opts, Recorder& rec, Json& details) {
  const double l = p.at("l");
  const Vec3 a = l * kX, b = l * kY, c = l * kZ;
  const ProductObservable g = symmetric_pair_joint(a, b);
  const ProductObservable f = symmetric_pair_joint(b, c);
  const bool triple_jm = 3.0 * l * l <= 1.0 + kCriterionTol;

  const auto report = partition_paradox_audit(g, f, std::array<Vec3, 3>{a, b, c}, opts);
  const auto& m = report.matrix;
  rec.equal("partition pairs checked", 49, m.row_keys.size() * m.col_keys.size());
  rec.equal("UNDETERMINED cells", 0, m.undetermined);
  rec.equal("all partition pairs FEASIBLE", true, report.all_partitions_feasible);
  rec.equal("global verdict", triple_jm ? "FEASIBLE" : "INFEASIBLE", to_string(report.global.verdict));
  rec.equal("global route", triple_jm ? "triple-witness" : "triple-implication", report.global.route);
  rec.equal("paradox", !triple_jm, report.paradox);
  details["audit"] = io::to_json(report);
}

void commuting_sharp_product(const Params& p, const FeasibilityOptions& opts, Recorder& rec, Json& details) {
  const int pairs = static_cast<int>(p.at("pairs"));
  const int trials = static_cast<int>(p.at("trials"));
  const int min_dim = static_cast<int>(p.at("min_dim")), max_dim = static_cast<int>(p.at("max_dim"));
  if (pairs < 1 || trials < 0 || min_dim < 1 || max_dim < min_dim || max_dim > kMaxDim) {
    throw PreconditionError("commuting-sharp-product: invalid parameters");
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dim_dist(min_dim, max_dim);
  int validated = 0, routed = 0, refuted = 0, cells = 0;
  double worst_marginal = 0.0;
  OrderOptions oo;
  oo.trials = trials;
  oo.exec = opts.exec;
  for (int k = 0; k < pairs; ++k) {
    const int dim = dim_dist(rng);
    auto [ea, eb] = random_commuting_sharp_pair(dim, rng);
    const auto product = product_joint_commuting(ea, eb);
    validated += validate(product.joint.observable(), 1e-10).passed ? 1 : 0;
    worst_marginal = std::max(worst_marginal, pair_marginal_residual(product.joint, ea, eb));
    routed += decide(ea, eb, opts).reason == Reason::CommutingSharp ? 1 : 0;
    for (std::size_t i = 0; i < ea.size(); ++i) {
      for (std::size_t j = 0; j < eb.size(); ++j) {
        oo.seed = opts.seed + 7919ULL * static_cast<std::uint64_t>(k) + 104729ULL * (i * eb.size() + j);
        refuted += refute_greatest(product.joint.cell(i, j), ea.effect(i), eb.effect(j), oo) ? 1 : 0;
        ++cells;
      }
    }
  }
  rec.equal("product joints passing validate", pairs, validated);
  rec.at_most("max marginal residual", 1e-10, worst_marginal);
  rec.equal("pairs decided by the commuting-sharp route", pairs, routed);
  rec.equal("cells with a greatest-element refutation", 0, refuted);
  details["cells_searched"] = cells;
  details["trials_per_cell"] = trials;
}

struct Entry {
  ScenarioInfo info;
  std::function<void(const Params&, const FeasibilityOptions&, Recorder&, Json&)> body;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"busch-boundary", "boundary example: orthogonal unbiased qubit pair of length 1/sqrt(2)",
        "Pair on the Busch boundary has a unique joint observable; the numeric solver recovers it.",
        {{"l", kInvSqrt2}}},
       busch_boundary},
      {{"pairwise-not-triple", "orthogonal triple example: pairwise but not triple joint measurability",
        "Three orthogonal unbiased observables of length l: pairwise verdicts versus the triple criterion.",
        {{"l", 0.6}}},
       pairwise_not_triple},
      {{"unique-not-greatest", "boundary example: a unique joint observable that is not greatest",
        "Explicit lower bound C not below G(1,1) for the boundary joint observable.",
        {{"t", 0.3}, {"gamma", 0.4}}},
       unique_not_greatest},
      {{"no-maximal-family", "gamma-family example: no maximal joint observable",
        "One-parameter family of joints with opposite Loewner ordering of cells.",
        {{"norm_a", 0.6}, {"beta", 0.4}, {"gamma", 0.2}, {"gamma_outside", 0.33}}},
       no_maximal_family},
      {{"partition-paradox", "partitioning example: all partitionings compatible, observables not",
        "Joints G of (E^a, E^b) and F of (E^b, E^c): partition matrix versus global verdict.",
        {{"l", kInvSqrt2}}},
       partition_paradox},
      {{"commuting-sharp-product", "commuting sharp pairs: product joint is greatest and unique",
        "Randomized commuting sharp pairs: product joint validity and refutation search.",
        {{"pairs", 50}, {"trials", 1000}, {"min_dim", 2}, {"max_dim", 8}}},
       commuting_sharp_product},
  };
  return table;
}

}  // namespace

bool ScenarioResult::passed() const {
  return std::all_of(expectations.begin(), expectations.end(), [](const Expectation& e) { return e.passed; });
}

const std::vector<ScenarioInfo>& registry() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

ScenarioResult run(const std::string& name, const std::map<std::string, double>& overrides,
                   const FeasibilityOptions& opts) {
  const auto& table = entries();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.info.name == name; });
  if (it == table.end()) throw StructureError("unknown scenario '" + name + "'");
  ScenarioResult result;
  result.name = name;
  result.citation = it->info.citation;
  result.parameters = it->info.defaults;
  for (const auto& [key, value] : overrides) {
    if (!result.parameters.count(key)) {
      throw ParseError("scenario '" + name + "' has no parameter '" + key + "'");
    }
    result.parameters[key] = value;
  }
  Recorder rec(result);
  it->body(result.parameters, opts, rec, result.details);
  return result;
}

io::Json to_json(const ScenarioResult& r) {
  Json expectations = Json::array();
  for (const auto& e : r.expectations) {
    expectations.push_back({{"name", e.name},
                            {"citation", e.citation},
                            {"expected", e.expected},
                            {"observed", e.observed},
                            {"passed", e.passed}});
  }
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  return Json{{"scenario", r.name},   {"citation", r.citation},         {"parameters", std::move(params)},
              {"passed", r.passed()}, {"expectations", std::move(expectations)}, {"details", r.details}};
}

std::pair<Observable, Observable> random_commuting_sharp_pair(int dim, std::mt19937_64& rng) {
  if (dim < 2) throw PreconditionError("random_commuting_sharp_pair needs dim >= 2");
  const Matrix u = random_unitary(dim, rng);
  const auto make = [&](const std::string& prefix) {
    const int outcomes = std::uniform_int_distribution<int>(2, std::min(3, dim))(rng);
    std::vector<int> owner(dim);
    for (int k = 0; k < dim; ++k) owner[k] = k < outcomes ? k : std::uniform_int_distribution<int>(0, outcomes - 1)(rng);
    std::shuffle(owner.begin(), owner.end(), rng);
    LabelList labels;
    std::vector<HermitianOperator> effects;
    for (int x = 0; x < outcomes; ++x) {
      Eigen::VectorXd diag(dim);
      for (int k = 0; k < dim; ++k) diag(k) = owner[k] == x ? 1.0 : 0.0;
      labels.push_back(prefix + std::to_string(x));
      effects.emplace_back(Matrix(u * diag.cast<Complex>().asDiagonal() * u.adjoint()));
    }
    return Observable(std::move(labels), std::move(effects));
  };
  Observable a = make("a");
  Observable b = make("b");
  return {std::move(a), std::move(b)};
}

}  // namespace jm::scenarios
