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

#include "evcat/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evcat/chi2.hpp"
#include "evcat/errors.hpp"
#include "evcat/model.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<int> without(const std::vector<int>& vars, int drop) {
  std::vector<int> out;
  out.reserve(vars.size() - 1);
  for (int v : vars) {
    if (v != drop) out.push_back(v);
  }
  return out;
}

/// Positions of `sub` inside the sorted list `vars`.
std::vector<int> positions_of(const std::vector<int>& vars,
                              const std::vector<int>& sub) {
  std::vector<int> pos;
  pos.reserve(sub.size());
  for (int v : sub) {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    internal_check(it != vars.end() && *it == v, "subset positions");
    pos.push_back(static_cast<int>(it - vars.begin()));
  }
  return pos;
}

struct LocalStats {
  double delta_g2 = 0.0;
  double delta_dof = 0.0;
};

/// Conditional-independence statistic of a and b given the rest of the
/// clique, computed on the clique marginal:
///   2 Σ n(x_C) ln [ n(x_C) n(x_{C\ab}) / (n(x_{C\a}) n(x_{C\b})) ]
/// with degrees of freedom (r_a−1)(r_b−1)·Π_{v∈C\ab} r_v.
LocalStats local_removal_stats(MarginalCache& cache,
                               std::span<const int> arities,
                               const std::vector<int>& clique, int a, int b) {
  const auto& marg_c = cache.get(clique);
  const std::vector<int> no_a = without(clique, a);
  const std::vector<int> no_b = without(clique, b);
  const std::vector<int> no_ab = without(no_a, b);
  const auto marg_a = marginalize(marg_c, clique, no_a);
  const auto marg_b = marginalize(marg_c, clique, no_b);
  const auto marg_ab = marginalize(marg_c, clique, no_ab);

  const std::vector<int> pos_a = positions_of(clique, no_a);
  const std::vector<int> pos_b = positions_of(clique, no_b);
  const std::vector<int> pos_ab = positions_of(clique, no_ab);
  std::vector<int> key_a(no_a.size()), key_b(no_b.size()), key_ab(no_ab.size());

  double sum = 0.0;
  for (const auto& [cell, n] : marg_c) {
    for (size_t i = 0; i < pos_a.size(); ++i) key_a[i] = cell[pos_a[i]];
    for (size_t i = 0; i < pos_b.size(); ++i) key_b[i] = cell[pos_b[i]];
    for (size_t i = 0; i < pos_ab.size(); ++i) key_ab[i] = cell[pos_ab[i]];
    const double na = static_cast<double>(marg_a.at(key_a));
    const double nb = static_cast<double>(marg_b.at(key_b));
    const double nab = static_cast<double>(marg_ab.at(key_ab));
    sum += static_cast<double>(n) *
           std::log(static_cast<double>(n) * nab / (na * nb));
  }
  LocalStats stats;
  stats.delta_g2 = std::max(0.0, 2.0 * sum);
  double dof = (arities[a] - 1.0) * (arities[b] - 1.0);
  for (int v : no_ab) dof *= arities[v];
  stats.delta_dof = dof;
  return stats;
}

std::pair<int, int> ordered_edge(int a, int b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

const std::map<std::vector<int>, int64_t>& MarginalCache::get(
    const std::vector<int>& vars) {
  auto it = cache_.find(vars);
  if (it == cache_.end()) {
    it = cache_.emplace(vars, marginal_counts(*data_, vars)).first;
  }
  return it->second;
}

UndirectedGraph SearchTrace::structure_at(int model_index) const {
  internal_check(model_index >= 0 && model_index < num_models(),
                 "trace model index out of range");
  UndirectedGraph g = UndirectedGraph::complete(num_vars);
  for (int k = 0; k < model_index; ++k) g.remove_edge(steps[k].a, steps[k].b);
  return g;
}

SearchTrace backward_search(const ContingencyTable& data,
                            const SearchConfig& config,
                            MarginalCache* cache) {
  const int n = data.num_vars();
  internal_check(n >= 1, "search needs at least one variable");
  if (config.stop_alpha <= 0.0 || config.stop_alpha >= 1.0) {
    throw ConfigError("stop_alpha must lie in (0,1)");
  }
  std::set<std::pair<int, int>> pinned;
  for (const auto& [a, b] : config.pinned) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
      throw ConfigError("pinned edge refers to an unknown variable");
    }
    pinned.insert(ordered_edge(a, b));
  }

  MarginalCache local_cache(data);
  MarginalCache& marg = cache ? *cache : local_cache;
  const bool verify_each =
      config.refit_check == RefitCheck::kEveryStep ||
      (config.refit_check == RefitCheck::kAuto && n <= 12);

  // Variable metadata for verification refits; names are irrelevant here.
  std::vector<FeatureVariable> dummy_vars;
  for (int i = 0; i < n; ++i) {
    FeatureVariable v;
    v.name = "v" + std::to_string(i);
    for (int k = 0; k < data.arities[i]; ++k) {
      v.values.push_back(std::to_string(k));
    }
    dummy_vars.push_back(std::move(v));
  }

  SearchTrace trace;
  trace.num_vars = n;
  trace.arities = data.arities;
  trace.pinned.assign(pinned.begin(), pinned.end());
  trace.stop_alpha = config.stop_alpha;

  UndirectedGraph graph = UndirectedGraph::complete(n);
  JunctionTree jt = junction_tree(graph);
  double running_g2 = 0.0;
  double running_dof = 0.0;
  // Candidate statistics depend only on (edge, containing clique); they
  // stay valid across steps for cliques the removal did not touch.
  std::map<std::tuple<int, int, std::vector<int>>, LocalStats> stats_cache;

  auto verify_against_refit = [&](double tol_scale) {
    const DecomposableModel refit = fit_model(graph, dummy_vars, data);
    const double g2_global = refit.g_squared(data);
    internal_check(
        std::abs(running_g2 - g2_global) <=
            tol_scale * std::max(1.0, g2_global),
        "tracked G^2 diverged from refit");
    // dof: the local deltas must sum to the junction-tree count when the
    // exact count is representable.
    try {
      const int64_t dof_global = model_dof(graph, data.arities);
      internal_check(running_dof == static_cast<double>(dof_global),
                     "tracked dof diverged from refit");
    } catch (const DataError&) {
      // Parameter count overflows an exact integer; skip.
    }
  };

  for (int step = 0; config.max_steps < 0 || step < config.max_steps;
       ++step) {
    std::vector<RemovableEdge> candidates = removable_edges(graph, jt);
    std::erase_if(candidates, [&pinned](const RemovableEdge& e) {
      return pinned.count(ordered_edge(e.a, e.b)) != 0;
    });
    if (candidates.empty()) {
      trace.stop_reason = "no removable edges";
      if (!verify_each && !trace.steps.empty()) verify_against_refit(1e-6);
      return trace;
    }
    int best = -1;
    LocalStats best_stats;
    for (size_t i = 0; i < candidates.size(); ++i) {
      const RemovableEdge& e = candidates[i];
      const std::vector<int>& clique = jt.cliques[e.clique];
      const auto key = std::make_tuple(e.a, e.b, clique);
      auto it = stats_cache.find(key);
      if (it == stats_cache.end()) {
        it = stats_cache
                 .emplace(key, local_removal_stats(marg, data.arities, clique,
                                                   e.a, e.b))
                 .first;
      }
      // Strict < keeps the first (lexicographically smallest) edge on ties.
      if (best < 0 || it->second.delta_g2 < best_stats.delta_g2) {
        best = static_cast<int>(i);
        best_stats = it->second;
      }
    }
    const RemovableEdge& e = candidates[best];
    const double p = best_stats.delta_dof >= 1.0
                         ? chi2_sf(best_stats.delta_g2, best_stats.delta_dof)
                         : 1.0;
    if (p < config.stop_alpha) {
      trace.stop_reason = "best removal rejected by the significance test";
      trace.rejected_edge = ordered_edge(e.a, e.b);
      trace.rejected_delta_g2 = best_stats.delta_g2;
      trace.rejected_delta_dof = best_stats.delta_dof;
      trace.rejected_p = p;
      if (!verify_each) verify_against_refit(1e-6);
      return trace;
    }
    graph.remove_edge(e.a, e.b);
    jt = junction_tree(graph);
    running_g2 += best_stats.delta_g2;
    running_dof += best_stats.delta_dof;
    SearchStep record;
    record.a = e.a;
    record.b = e.b;
    record.delta_g2 = best_stats.delta_g2;
    record.delta_dof = best_stats.delta_dof;
    record.p_value = p;
    record.g2 = running_g2;
    record.dof = running_dof;
    trace.steps.push_back(record);
    if (verify_each) verify_against_refit(1e-6);
  }
  trace.stop_reason = "step limit reached";
  if (!verify_each && !trace.steps.empty()) verify_against_refit(1e-6);
  return trace;
}

std::string trace_to_json(const SearchTrace& trace) {
  ordered_json j;
  j["format"] = "evcat-trace";
  j["version"] = 1;
  j["num_vars"] = trace.num_vars;
  j["arities"] = trace.arities;
  ordered_json pinned = ordered_json::array();
  for (const auto& [a, b] : trace.pinned) {
    pinned.push_back(ordered_json::array({a, b}));
  }
  j["pinned"] = std::move(pinned);
  j["stop_alpha"] = trace.stop_alpha;
  ordered_json steps = ordered_json::array();
  for (const SearchStep& s : trace.steps) {
    ordered_json step;
    step["edge"] = ordered_json::array({s.a, s.b});
    step["delta_g2"] = s.delta_g2;
    step["delta_dof"] = s.delta_dof;
    step["p_value"] = s.p_value;
    step["g2"] = s.g2;
    step["dof"] = s.dof;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["stop_reason"] = trace.stop_reason;
  if (trace.rejected_edge) {
    ordered_json rejected;
    rejected["edge"] = ordered_json::array(
        {trace.rejected_edge->first, trace.rejected_edge->second});
    rejected["delta_g2"] = trace.rejected_delta_g2;
    rejected["delta_dof"] = trace.rejected_delta_dof;
    rejected["p_value"] = trace.rejected_p;
    j["rejected"] = std::move(rejected);
  }
  return j.dump(2) + "\n";
}

}  // namespace evcat
