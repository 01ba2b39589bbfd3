// Copyright 2026 The evcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evcat/model.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evcat/errors.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<int> restrict_cell(std::span<const int> cell,
                               const std::vector<int>& vars) {
  std::vector<int> out(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) out[i] = cell[vars[i]];
  return out;
}

int64_t lookup(const std::map<std::vector<int>, int64_t>& counts,
               const std::vector<int>& key) {
  auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

/// Π over `vars` of arity − guarded against overflow.
int64_t arity_product(std::span<const int> arities,
                      const std::vector<int>& vars) {
  unsigned __int128 product = 1;
  for (int v : vars) {
    product *= static_cast<unsigned>(arities[v]);
    if (product > static_cast<unsigned __int128>(INT64_MAX)) {
      throw DataError("degrees of freedom overflow: table has too many "
                      "variables for an exact parameter count");
    }
  }
  return static_cast<int64_t>(product);
}

std::string fingerprint_hex(uint64_t fp) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace

std::vector<int> DecomposableModel::arities() const {
  std::vector<int> out;
  out.reserve(variables.size());
  for (const FeatureVariable& v : variables) out.push_back(v.arity());
  return out;
}

double DecomposableModel::fitted_count(std::span<const int> cell) const {
  // Product of clique counts over separator counts, interleaved so the
  // running value stays near the scale of one count.  The saturated model
  // (one clique, no separators) therefore returns the observed count
  // exactly.
  const size_t nc = jt.cliques.size();
  const size_t ns = jt.separators.size();
  // Scan cliques for zeros before touching separators: a zero separator
  // forces its adjacent cliques to zero as well, but that clique may sit
  // later in the interleave order.
  std::vector<int64_t> cn(nc);
  for (size_t i = 0; i < nc; ++i) {
    cn[i] = lookup(clique_marginals[i], restrict_cell(cell, jt.cliques[i]));
    if (cn[i] == 0) return 0.0;
  }
  double value = 1.0;
  for (size_t i = 0; i < std::max(nc, ns); ++i) {
    if (i < nc) value *= static_cast<double>(cn[i]);
    if (i < ns) {
      const int64_t n = lookup(separator_marginals[i],
                               restrict_cell(cell, jt.separators[i]));
      internal_check(n > 0, "separator marginal zero with nonzero cliques");
      value /= static_cast<double>(n);
    }
  }
  for (int c = 1; c < jt.num_components(); ++c) {
    value /= static_cast<double>(total);
  }
  return value;
}

double DecomposableModel::g_squared(const ContingencyTable& data) const {
  double sum = 0.0;
  for (const auto& [cell, n] : data.cells) {
    const double fitted = fitted_count(cell);
    internal_check(fitted > 0.0,
                   "observed cell with zero fitted count under an MLE");
    sum += static_cast<double>(n) *
           std::log(static_cast<double>(n) / fitted);
  }
  double g2 = 2.0 * sum;
  if (g2 < 0.0) {
    internal_check(g2 > -1e-6, "G^2 negative beyond rounding error");
    g2 = 0.0;
  }
  return g2;
}

DecomposableModel fit_model(const UndirectedGraph& graph,
                            const std::vector<FeatureVariable>& variables,
                            const ContingencyTable& data) {
  internal_check(graph.num_vertices() == data.num_vars(),
                 "graph and table dimension mismatch");
  internal_check(static_cast<int>(variables.size()) == data.num_vars(),
                 "variable list and table dimension mismatch");
  for (int i = 0; i < data.num_vars(); ++i) {
    internal_check(variables[i].arity() == data.arities[i],
                   "variable arity and table arity mismatch");
  }
  DecomposableModel model;
  model.variables = variables;
  model.graph = graph;
  model.jt = junction_tree(graph);
  model.total = data.total;
  for (const auto& clique : model.jt.cliques) {
    model.clique_marginals.push_back(marginal_counts(data, clique));
  }
  for (const auto& sep : model.jt.separators) {
    model.separator_marginals.push_back(marginal_counts(data, sep));
  }
  return model;
}

int64_t model_dof(const UndirectedGraph& graph, std::span<const int> arities) {
  internal_check(graph.num_vertices() == static_cast<int>(arities.size()),
                 "graph and arity dimension mismatch");
  std::vector<int> all(arities.size());
  for (size_t i = 0; i < arities.size(); ++i) all[i] = static_cast<int>(i);
  const int64_t saturated = arity_product(arities, all) - 1;
  const JunctionTree jt = junction_tree(graph);
  int64_t params = 0;
  for (const auto& clique : jt.cliques) {
    params += arity_product(arities, clique) - 1;
  }
  for (const auto& sep : jt.separators) {
    params -= arity_product(arities, sep) - 1;
  }
  return saturated - params;
}

std::array<double, kNumClasses> Classifier::scores(
    std::span<const int> features) const {
  internal_check(class_var >= 0 &&
                     class_var < static_cast<int>(model.variables.size()),
                 "classifier has no class variable");
  internal_check(features.size() == model.variables.size() - 1,
                 "feature row has wrong width");
  std::vector<int> cell(model.variables.size());
  for (size_t i = 0, j = 0; i < cell.size(); ++i) {
    if (static_cast<int>(i) != class_var) cell[i] = features[j++];
  }
  const size_t nc = model.jt.cliques.size();
  const size_t ns = model.jt.separators.size();
  const double n_total = static_cast<double>(model.total);
  std::array<double, kNumClasses> plain{};
  std::array<double, kNumClasses> logs{};
  std::array<bool, kNumClasses> zero{};
  bool underflow = false;
  std::vector<int64_t> cn(nc);
  for (int s = 0; s < kNumClasses; ++s) {
    cell[class_var] = s;
    // Clique pass first: a zero separator implies zero adjacent cliques,
    // so the mixed product below may assume every separator is positive.
    for (size_t i = 0; i < nc; ++i) {
      cn[i] = lookup(model.clique_marginals[i],
                     restrict_cell(cell, model.jt.cliques[i]));
      if (cn[i] == 0) {
        zero[s] = true;
        break;
      }
    }
    if (zero[s]) continue;
    // Products of marginal relative frequencies.  Integer rescaling of all
    // counts leaves every factor bit-identical, so classifications are
    // invariant under it.
    double score = 1.0;
    double log_score = 0.0;
    for (size_t i = 0; i < std::max(nc, ns); ++i) {
      if (i < nc) {
        score *= static_cast<double>(cn[i]) / n_total;
        log_score += std::log(static_cast<double>(cn[i]) / n_total);
      }
      if (i < ns) {
        const int64_t n =
            lookup(model.separator_marginals[i],
                   restrict_cell(cell, model.jt.separators[i]));
        internal_check(n > 0, "separator marginal zero with nonzero cliques");
        score /= static_cast<double>(n) / n_total;
        log_score -= std::log(static_cast<double>(n) / n_total);
      }
    }
    plain[s] = score;
    logs[s] = log_score;
    if (score <= 0.0) underflow = true;  // product hit denormals
  }
  // Very wide models can underflow the plain product even though every
  // marginal is positive; switch all classes to an exponent-compressed
  // form so the six values stay comparable.
  std::array<double, kNumClasses> out{};
  for (int s = 0; s < kNumClasses; ++s) {
    if (zero[s]) continue;
    out[s] = underflow ? std::exp(logs[s] / 64.0) : plain[s];
  }
  return out;
}

std::optional<ClassLabel> Classifier::classify(
    std::span<const int> features) const {
  const std::array<double, kNumClasses> s = scores(features);
  double best = 0.0;
  for (double v : s) best = std::max(best, v);
  if (best == 0.0) return std::nullopt;  // zero evidence everywhere
  int pick = -1;
  for (int i = 0; i < kNumClasses; ++i) {
    if (s[i] != best) continue;
    if (pick < 0 || priors[i] > priors[pick]) pick = i;
  }
  return class_from_index(pick);
}

std::string classifier_to_json(const Classifier& cl) {
  ordered_json j;
  j["format"] = "evcat-model";
  j["version"] = 1;
  j["stop_alpha"] = cl.stop_alpha;
  j["table_fingerprint"] = fingerprint_hex(cl.table_fingerprint);
  ordered_json vars = ordered_json::array();
  for (const FeatureVariable& v : cl.model.variables) {
    vars.push_back(ordered_json{{"name", v.name}, {"values", v.values}});
  }
  j["variables"] = std::move(vars);
  j["class_var"] = cl.class_var;
  j["priors"] = cl.priors;
  ordered_json edges = ordered_json::array();
  for (const auto& [a, b] : cl.model.graph.edges()) {
    edges.push_back(ordered_json::array({a, b}));
  }
  j["edges"] = std::move(edges);
  j["total"] = cl.model.total;
  j["cliques"] = cl.model.jt.cliques;
  j["separators"] = cl.model.jt.separators;
  ordered_json tree = ordered_json::array();
  for (const auto& e : cl.model.jt.tree_edges) {
    tree.push_back(ordered_json::array({e[0], e[1]}));
  }
  j["tree_edges"] = std::move(tree);
  auto dump_marginals =
      [](const std::vector<std::map<std::vector<int>, int64_t>>& tables) {
        ordered_json out = ordered_json::array();
        for (const auto& table : tables) {
          ordered_json cells = ordered_json::array();
          for (const auto& [cell, n] : table) {
            cells.push_back(ordered_json::array({cell, n}));
          }
          out.push_back(std::move(cells));
        }
        return out;
      };
  j["clique_marginals"] = dump_marginals(cl.model.clique_marginals);
  j["separator_marginals"] = dump_marginals(cl.model.separator_marginals);
  return j.dump(2) + "\n";
}

Classifier classifier_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
  if (j.value("format", "") != "evcat-model") {
    throw DataError("not an evcat model file");
  }
  Classifier cl;
  cl.stop_alpha = j.at("stop_alpha").get<double>();
  cl.table_fingerprint = std::strtoull(
      j.at("table_fingerprint").get<std::string>().c_str(), nullptr, 16);
  for (const auto& vj : j.at("variables")) {
    FeatureVariable v;
    v.name = vj.at("name").get<std::string>();
    v.values = vj.at("values").get<std::vector<std::string>>();
    cl.model.variables.push_back(std::move(v));
  }
  cl.class_var = j.at("class_var").get<int>();
  const auto priors = j.at("priors").get<std::vector<int64_t>>();
  if (priors.size() != kNumClasses) throw DataError("bad prior vector");
  std::copy(priors.begin(), priors.end(), cl.priors.begin());
  cl.model.graph = UndirectedGraph(static_cast<int>(cl.model.variables.size()));
  for (const auto& e : j.at("edges")) {
    cl.model.graph.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  }
  cl.model.total = j.at("total").get<int64_t>();
  cl.model.jt.cliques = j.at("cliques").get<std::vector<std::vector<int>>>();
  cl.model.jt.separators =
      j.at("separators").get<std::vector<std::vector<int>>>();
  for (const auto& e : j.at("tree_edges")) {
    cl.model.jt.tree_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  }
  auto load_marginals = [](const ordered_json& arr) {
    std::vector<std::map<std::vector<int>, int64_t>> out;
    for (const auto& table : arr) {
      std::map<std::vector<int>, int64_t> counts;
      for (const auto& entry : table) {
        counts[entry.at(0).get<std::vector<int>>()] =
            entry.at(1).get<int64_t>();
      }
      out.push_back(std::move(counts));
    }
    return out;
  };
  cl.model.clique_marginals = load_marginals(j.at("clique_marginals"));
  cl.model.separator_marginals = load_marginals(j.at("separator_marginals"));
  if (cl.model.clique_marginals.size() != cl.model.jt.cliques.size() ||
      cl.model.separator_marginals.size() != cl.model.jt.separators.size()) {
    throw DataError("model file marginals do not match the junction tree");
  }
  return cl;
}

void write_classifier_file(const Classifier& cl, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  out << classifier_to_json(cl);
}

Classifier read_classifier_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return classifier_from_json(ss.str());
}

}  // namespace evcat
