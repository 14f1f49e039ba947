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

#include "jm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jm/bloch.hpp"

namespace jm::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& require(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) fail(context + ": missing field '" + key + "'");
  return j.at(key);
}

std::vector<std::vector<double>> real_grid(const Json& j, int dim, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    fail(std::string("operator: '") + name + "' must be a " + std::to_string(dim) + "x" + std::to_string(dim) +
         " array");
  }
  std::vector<std::vector<double>> out(dim, std::vector<double>(dim));
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail(std::string("operator: row ") + std::to_string(r) + " of '" + name + "' has the wrong length");
    }
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number()) fail(std::string("operator: non-numeric entry in '") + name + "'");
      out[r][c] = row[c].get<double>();
    }
  }
  return out;
}

Json optional_number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

LabelList labels_from(const Json& j, const std::string& context) {
  if (!j.is_array()) fail(context + ": outcome list must be an array");
  LabelList out;
  for (const auto& l : j) {
    if (l.is_string()) out.push_back(l.get<std::string>());
    else if (l.is_number_integer()) out.push_back(std::to_string(l.get<long long>()));
    else fail(context + ": outcome labels must be strings");
  }
  return out;
}

std::vector<HermitianOperator> effects_from(const Json& effects, const LabelList& outcomes) {
  std::vector<HermitianOperator> out;
  if (effects.is_array()) {
    if (effects.size() != outcomes.size()) fail("observable: effects and outcomes differ in length");
    for (const auto& e : effects) out.push_back(operator_from_json(e));
  } else if (effects.is_object()) {
    if (effects.size() != outcomes.size()) fail("observable: effects and outcomes differ in length");
    for (const auto& label : outcomes) {
      if (!effects.contains(label)) fail("observable: no effect for outcome '" + label + "'");
      out.push_back(operator_from_json(effects.at(label)));
    }
  } else {
    fail("observable: 'effects' must be an object or array");
  }
  return out;
}

std::string cell_key(const Label& x, const Label& y) { return x + "," + y; }

}  // namespace

Json to_json(const HermitianOperator& op) {
  const int d = op.dim();
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < d; ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (int c = 0; c < d; ++c) {
      rr.push_back(op.matrix()(r, c).real());
      ir.push_back(op.matrix()(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianOperator operator_from_json(const Json& j) {
  if (!j.is_object()) fail("operator: expected an object");
  if (j.contains("alpha")) {
    const auto& a = require(j, "a", "bloch effect");
    if (!j.at("alpha").is_number() || !a.is_array() || a.size() != 3) {
      fail("bloch effect: expected numeric 'alpha' and a three-component 'a'");
    }
    for (const auto& x : a)
      if (!x.is_number()) fail("bloch effect: non-numeric vector component");
    return effect_from_bloch(j.at("alpha").get<double>(), Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>()));
  }
  const auto& re_json = require(j, "re", "operator");
  int dim = 0;
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer()) fail("operator: 'dim' must be an integer");
    dim = j.at("dim").get<int>();
  } else if (re_json.is_array()) {
    dim = static_cast<int>(re_json.size());
  }
  if (dim < 1 || dim > kMaxDim) fail("operator: dimension " + std::to_string(dim) + " out of range");
  const auto re = real_grid(re_json, dim, "re");
  Matrix m(dim, dim);
  if (j.contains("im")) {
    const auto im = real_grid(j.at("im"), dim, "im");
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  } else {
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = re[r][c];
  }
  return HermitianOperator(m);
}

Json to_json(const Observable& a) {
  Json effects = Json::object();
  for (std::size_t i = 0; i < a.size(); ++i) effects[a.outcomes()[i]] = to_json(a.effect(i));
  return Json{{"outcomes", a.outcomes()}, {"effects", std::move(effects)}};
}

Observable observable_from_json(const Json& j) {
  if (is_product_json(j)) return product_from_json(j).observable();
  auto outcomes = labels_from(require(j, "outcomes", "observable"), "observable");
  auto effects = effects_from(require(j, "effects", "observable"), outcomes);
  return Observable(std::move(outcomes), std::move(effects));
}

bool is_product_json(const Json& j) { return j.is_object() && j.contains("parents"); }

Json to_json(const ProductObservable& g) {
  Json j = to_json(g.observable());
  Json parents = Json::array();
  for (const auto& p : g.parents()) parents.push_back(p);
  j["parents"] = std::move(parents);
  return j;
}

ProductObservable product_from_json(const Json& j) {
  const auto& pj = require(j, "parents", "product observable");
  if (!pj.is_array() || pj.empty()) fail("product observable: 'parents' must be a nonempty array");
  std::vector<LabelList> parents;
  for (const auto& p : pj) parents.push_back(labels_from(p, "product observable"));
  std::size_t cells = 1;
  for (const auto& p : parents) cells *= p.size();
  LabelList flat;
  std::vector<std::size_t> index(parents.size(), 0);
  for (std::size_t k = 0; k < cells; ++k) {
    flat.push_back(joint_label(parents, index));
    for (std::size_t axis = parents.size(); axis-- > 0;) {
      if (++index[axis] < parents[axis].size()) break;
      index[axis] = 0;
    }
  }
  if (j.contains("outcomes") && labels_from(j.at("outcomes"), "product observable") != flat) {
    fail("product observable: 'outcomes' disagree with the joint labels of 'parents'");
  }
  return ProductObservable(std::move(parents), effects_from(require(j, "effects", "product observable"), flat));
}

Json to_json(const ValidationReport& r) {
  Json effects = Json::array();
  for (const auto& e : r.effects) {
    effects.push_back({{"label", e.label}, {"min_eigenvalue", e.min_eigenvalue}, {"max_eigenvalue", e.max_eigenvalue}});
  }
  return Json{{"passed", r.passed}, {"tol", r.tol}, {"normalization_residual", r.normalization_residual},
              {"effects", std::move(effects)}};
}

Json to_json(const FeasibilityReport& r, bool include_witness) {
  Json j{{"verdict", to_string(r.verdict)}};
  const char* reason = to_string(r.reason);
  j["reason"] = reason ? Json(reason) : Json(nullptr);
  j["route"] = r.route;
  j["residual"] = optional_number(r.residual);
  j["iterations"] = r.iterations;
  j["margin"] = optional_number(r.margin);
  j["witness"] = (include_witness && r.witness) ? to_json(*r.witness) : Json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const PairwiseGlobalReport& r) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < r.pairwise.size(); ++i) {
    for (std::size_t k = i + 1; k < r.pairwise[i].size(); ++k) {
      if (!r.pairwise[i][k]) continue;
      Json p = to_json(*r.pairwise[i][k], false);
      p["pair"] = {i, k};
      pairs.push_back(std::move(p));
    }
  }
  return Json{{"pairwise", std::move(pairs)}, {"all_pairs_feasible", r.all_pairs_feasible},
              {"global", to_json(r.global)}};
}

Json to_json(const OrderAudit& audit) {
  Json cells = Json::object();
  for (const auto& c : audit.cells) {
    Json cj{{"in_lb", c.in_lb}};
    if (c.refutation) {
      cj["refutation"] = {{"gap", c.refutation->gap},
                          {"trial", c.refutation->trial},
                          {"d", to_json(c.refutation->d)}};
    } else {
      cj["refutation"] = nullptr;
    }
    cj["maximality"] = {
        {"verdict", c.maximality.verdict == Maximality::NotMaximal ? "NOT_MAXIMAL" : "MAXIMAL_WITHIN"},
        {"trace_gain", c.maximality.trace_gain},
        {"eps", c.maximality.eps},
        {"witness", c.maximality.witness ? to_json(*c.maximality.witness) : Json(nullptr)}};
    cj["alternative_joint"] = c.alternative_joint ? to_json(*c.alternative_joint) : Json(nullptr);
    cells[cell_key(c.a_outcome, c.b_outcome)] = std::move(cj);
  }
  return Json{{"all_greatest", to_string(audit.all_greatest)},
              {"all_maximal", audit.all_maximal},
              {"unique", to_string(audit.unique)},
              {"commuting_sharp", audit.commuting_sharp},
              {"cells", std::move(cells)}};
}

Json to_json(const CompatibilityMatrix& m) {
  Json cells = Json::object();
  for (std::size_t r = 0; r < m.cells.size(); ++r) {
    Json row = Json::object();
    for (std::size_t c = 0; c < m.cells[r].size(); ++c) row[m.col_keys[c]] = to_json(m.cells[r][c], false);
    cells[m.row_keys[r]] = std::move(row);
  }
  return Json{{"rows", m.row_keys},
              {"cols", m.col_keys},
              {"counts", {{"FEASIBLE", m.feasible}, {"INFEASIBLE", m.infeasible}, {"UNDETERMINED", m.undetermined}}},
              {"cells", std::move(cells)}};
}

Json to_json(const ParadoxReport& r) {
  Json j{{"matrix", to_json(r.matrix)},
         {"all_partitions_feasible", r.all_partitions_feasible},
         {"numeric_global", to_json(r.numeric_global, false)},
         {"global", to_json(r.global, false)}};
  if (r.triple) {
    j["triple_criterion"] = {{"value", r.triple->value},
                             {"threshold", r.triple->threshold},
                             {"margin", r.triple->margin()},
                             {"jm", r.triple->jm}};
  } else {
    j["triple_criterion"] = nullptr;
  }
  j["paradox"] = r.paradox;
  j["explanation"] = r.explanation;
  return j;
}

Json round_numbers(const Json& j, int digits) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) return nullptr;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& e : j) out.push_back(round_numbers(e, digits));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) out[k] = round_numbers(v, digits);
    return out;
  }
  return j;
}

Json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace jm::io
