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

#ifndef EVCAT_GRAPH_HPP_
#define EVCAT_GRAPH_HPP_

#include <array>
#include <utility>
#include <vector>

namespace evcat {

/// Simple undirected graph over vertices 0..n-1 (the interaction graph of a
/// model; vertices are variable indices).
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int n);
  static UndirectedGraph complete(int n);

  int num_vertices() const { return n_; }
  bool has_edge(int a, int b) const;
  void add_edge(int a, int b);
  void remove_edge(int a, int b);
  int num_edges() const { return num_edges_; }

  /// All edges as (a, b) with a < b, ascending.
  std::vector<std::pair<int, int>> edges() const;
  /// Sorted neighbor list.
  std::vector<int> neighbors(int v) const;

  friend bool operator==(const UndirectedGraph&,
                         const UndirectedGraph&) = default;

 private:
  void check_vertex_pair(int a, int b) const;

  int n_ = 0;
  int num_edges_ = 0;
  std::vector<std::vector<char>> adj_;
};

/// Whether the graph is chordal (every cycle of length >= 4 has a chord),
/// i.e. admits a perfect elimination ordering.  Decomposable models are
/// exactly those whose interaction graph passes this test.  Uses maximum
/// cardinality search.
bool is_chordal(const UndirectedGraph& g);

/// Maximal cliques of a chordal graph, each sorted ascending, the list
/// sorted lexicographically.  Requires is_chordal(g).
std::vector<std::vector<int>> maximal_cliques(const UndirectedGraph& g);

/// Junction tree (forest, for disconnected graphs): maximal cliques plus
/// separators along a maximum-weight spanning tree of the clique graph.
/// Separators are kept with multiplicity.  tree_edges[i] holds the two
/// clique indices joined by separators[i].
struct JunctionTree {
  std::vector<std::vector<int>> cliques;
  std::vector<std::vector<int>> separators;
  std::vector<std::array<int, 2>> tree_edges;

  int num_components() const {
    return static_cast<int>(cliques.size() - separators.size());
  }
};

/// Builds the junction tree deterministically: candidate clique pairs are
/// taken by descending intersection size, ties by ascending pair index.
/// Requires is_chordal(g).
JunctionTree junction_tree(const UndirectedGraph& g);

/// Edges whose removal keeps the graph chordal: exactly those contained in
/// one maximal clique.  Returns (a, b, clique index) ascending by edge.
struct RemovableEdge {
  int a;
  int b;
  int clique;  // index into the junction tree's cliques
};
std::vector<RemovableEdge> removable_edges(const UndirectedGraph& g,
                                           const JunctionTree& jt);

}  // namespace evcat

#endif  // EVCAT_GRAPH_HPP_
