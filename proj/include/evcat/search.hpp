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

#ifndef EVCAT_SEARCH_HPP_
#define EVCAT_SEARCH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evcat/contingency.hpp"
#include "evcat/graph.hpp"

namespace evcat {

/// Shared store of marginal count tables keyed by variable subset.  The
/// search and the per-trace model evaluation ask for the same cliques over
/// and over; computing each marginal once keeps both fast.
class MarginalCache {
 public:
  explicit MarginalCache(const ContingencyTable& data) : data_(&data) {}

  const std::map<std::vector<int>, int64_t>& get(const std::vector<int>& vars);
  const ContingencyTable& data() const { return *data_; }

 private:
  const ContingencyTable* data_;
  std::map<std::vector<int>, std::map<std::vector<int>, int64_t>> cache_;
};

/// When to cross-check the incrementally tracked G² and dof against a full
/// refit of the model.  kAuto verifies every step on small tables and only
/// the end state on wide ones (where per-step refits dominate runtime).
enum class RefitCheck : int { kAuto = 0, kEveryStep = 1, kFinalOnly = 2 };

struct SearchConfig {
  double stop_alpha = 0.01;
  std::vector<std::pair<int, int>> pinned;  // edges the search may not remove
  int max_steps = -1;                       // negative: no limit
  RefitCheck refit_check = RefitCheck::kAuto;
};

/// One accepted edge removal.  delta_g2 is the conditional-independence
/// statistic of the removed edge within its containing clique, which equals
/// the increase of the global G² for a decomposable single-edge removal.
struct SearchStep {
  int a = 0;
  int b = 0;
  double delta_g2 = 0.0;
  double delta_dof = 0.0;
  double p_value = 1.0;
  double g2 = 0.0;   // after the removal (0 at the saturated start)
  double dof = 0.0;  // after the removal
};

/// The sequence of models visited: model 0 is the saturated model, model k
/// is the saturated model minus the first k removed edges.
struct SearchTrace {
  int num_vars = 0;
  std::vector<int> arities;
  std::vector<std::pair<int, int>> pinned;
  double stop_alpha = 0.0;
  std::vector<SearchStep> steps;
  std::string stop_reason;
  // Populated when the stop was a candidate rejected by the significance
  // test (as opposed to running out of removable edges).
  std::optional<std::pair<int, int>> rejected_edge;
  double rejected_delta_g2 = 0.0;
  double rejected_delta_dof = 0.0;
  double rejected_p = 0.0;

  int num_models() const { return static_cast<int>(steps.size()) + 1; }
  UndirectedGraph structure_at(int model_index) const;
};

/// Backward sequential search from the saturated model: each step removes
/// the chordality-preserving, unpinned edge whose removal degrades fit the
/// least (smallest delta G²; ties to the lexicographically smallest edge),
/// until the significance test at stop_alpha rejects the best candidate or
/// nothing is removable.
SearchTrace backward_search(const ContingencyTable& data,
                            const SearchConfig& config,
                            MarginalCache* cache = nullptr);

std::string trace_to_json(const SearchTrace& trace);

}  // namespace evcat

#endif  // EVCAT_SEARCH_HPP_
