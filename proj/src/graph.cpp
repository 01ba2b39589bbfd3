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

#include "evcat/graph.hpp"

#include <algorithm>
#include <numeric>

#include "evcat/errors.hpp"

namespace evcat {

UndirectedGraph::UndirectedGraph(int n) : n_(n) {
  internal_check(n >= 0, "graph size must be non-negative");
  adj_.assign(n, std::vector<char>(n, 0));
}

UndirectedGraph UndirectedGraph::complete(int n) {
  UndirectedGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  }
  return g;
}

void UndirectedGraph::check_vertex_pair(int a, int b) const {
  internal_check(a >= 0 && a < n_ && b >= 0 && b < n_ && a != b,
                 "bad vertex pair");
}

bool UndirectedGraph::has_edge(int a, int b) const {
  check_vertex_pair(a, b);
  return adj_[a][b] != 0;
}

void UndirectedGraph::add_edge(int a, int b) {
  check_vertex_pair(a, b);
  if (!adj_[a][b]) ++num_edges_;
  adj_[a][b] = adj_[b][a] = 1;
}

void UndirectedGraph::remove_edge(int a, int b) {
  check_vertex_pair(a, b);
  if (adj_[a][b]) --num_edges_;
  adj_[a][b] = adj_[b][a] = 0;
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(num_edges_);
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (adj_[a][b]) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<int> UndirectedGraph::neighbors(int v) const {
  internal_check(v >= 0 && v < n_, "bad vertex");
  std::vector<int> out;
  for (int u = 0; u < n_; ++u) {
    if (adj_[v][u]) out.push_back(u);
  }
  return out;
}

namespace {

/// Maximum cardinality search: visit the vertex with the most visited
/// neighbors next (ties toward the smaller index).  For chordal graphs the
/// reverse visit order is a perfect elimination ordering.
std::vector<int> mcs_visit_order(const UndirectedGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> weight(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!visited[v] && (best < 0 || weight[v] > weight[best])) best = v;
    }
    visited[best] = 1;
    order.push_back(best);
    for (int u : g.neighbors(best)) {
      if (!visited[u]) ++weight[u];
    }
  }
  return order;
}

/// Earlier-visited neighbors of each vertex under the MCS order.
std::vector<std::vector<int>> earlier_neighbors(
    const UndirectedGraph& g, const std::vector<int>& order) {
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<int>> en(n);
  for (int v = 0; v < n; ++v) {
    for (int u : g.neighbors(v)) {
      if (pos[u] < pos[v]) en[v].push_back(u);
    }
  }
  return en;
}

bool check_elimination(const UndirectedGraph& g, const std::vector<int>& order,
                       const std::vector<std::vector<int>>& en) {
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  for (int v = 0; v < n; ++v) {
    if (en[v].empty()) continue;
    // The latest-visited earlier neighbor must be adjacent to all others.
    int parent = en[v][0];
    for (int u : en[v]) {
      if (pos[u] > pos[parent]) parent = u;
    }
    for (int u : en[v]) {
      if (u != parent && !g.has_edge(u, parent)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_chordal(const UndirectedGraph& g) {
  const std::vector<int> order = mcs_visit_order(g);
  return check_elimination(g, order, earlier_neighbors(g, order));
}

std::vector<std::vector<int>> maximal_cliques(const UndirectedGraph& g) {
  const std::vector<int> order = mcs_visit_order(g);
  const std::vector<std::vector<int>> en = earlier_neighbors(g, order);
  internal_check(check_elimination(g, order, en),
                 "maximal_cliques requires a chordal graph");
  const int n = g.num_vertices();
  std::vector<std::vector<int>> candidates;
  candidates.reserve(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> c = en[v];
    c.push_back(v);
    std::sort(c.begin(), c.end());
    candidates.push_back(std::move(c));
  }
  // Every maximal clique of a chordal graph is {v} + earlier neighbors for
  // some v; drop the candidates strictly contained in another.
  std::vector<std::vector<int>> cliques;
  for (size_t i = 0; i < candidates.size(); ++i) {
    bool contained = false;
    for (size_t j = 0; j < candidates.size() && !contained; ++j) {
      if (i == j || candidates[j].size() <= candidates[i].size()) continue;
      contained = std::includes(candidates[j].begin(), candidates[j].end(),
                                candidates[i].begin(), candidates[i].end());
    }
    if (!contained) cliques.push_back(candidates[i]);
  }
  std::sort(cliques.begin(), cliques.end());
  cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
  return cliques;
}

JunctionTree junction_tree(const UndirectedGraph& g) {
  JunctionTree jt;
  jt.cliques = maximal_cliques(g);
  const int m = static_cast<int>(jt.cliques.size());

  struct Candidate {
    int weight;
    int i;
    int j;
    std::vector<int> sep;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      std::vector<int> sep;
      std::set_intersection(jt.cliques[i].begin(), jt.cliques[i].end(),
                            jt.cliques[j].begin(), jt.cliques[j].end(),
                            std::back_inserter(sep));
      if (!sep.empty()) {
        candidates.push_back(
            {static_cast<int>(sep.size()), i, j, std::move(sep)});
      }
    }
  }
  // Maximum-weight spanning forest; ties by ascending clique pair so the
  // result is deterministic.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.weight != b.weight) return a.weight > b.weight;
                     if (a.i != b.i) return a.i < b.i;
                     return a.j < b.j;
                   });
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  struct Accepted {
    std::array<int, 2> edge;
    std::vector<int> sep;
  };
  std::vector<Accepted> accepted;
  for (Candidate& c : candidates) {
    const int ri = find(c.i);
    const int rj = find(c.j);
    if (ri == rj) continue;
    parent[ri] = rj;
    accepted.push_back({{c.i, c.j}, std::move(c.sep)});
  }
  // Keep the separator list in a canonical order: lexicographic by
  // separator, then by tree edge.
  std::sort(accepted.begin(), accepted.end(),
            [](const Accepted& a, const Accepted& b) {
              if (a.sep != b.sep) return a.sep < b.sep;
              return a.edge < b.edge;
            });
  for (Accepted& a : accepted) {
    jt.tree_edges.push_back(a.edge);
    jt.separators.push_back(std::move(a.sep));
  }
  return jt;
}

std::vector<RemovableEdge> removable_edges(const UndirectedGraph& g,
                                           const JunctionTree& jt) {
  std::vector<RemovableEdge> out;
  for (const auto& [a, b] : g.edges()) {
    int count = 0;
    int where = -1;
    for (size_t c = 0; c < jt.cliques.size(); ++c) {
      const auto& clique = jt.cliques[c];
      if (std::binary_search(clique.begin(), clique.end(), a) &&
          std::binary_search(clique.begin(), clique.end(), b)) {
        ++count;
        where = static_cast<int>(c);
      }
    }
    internal_check(count >= 1, "edge missing from every maximal clique");
    if (count == 1) out.push_back({a, b, where});
  }
  return out;
}

}  // namespace evcat
