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

#ifndef EVCAT_MODEL_HPP_
#define EVCAT_MODEL_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evcat/class_label.hpp"
#include "evcat/contingency.hpp"
#include "evcat/graph.hpp"

namespace evcat {

/// A decomposable log-linear model fitted to a contingency table.  The
/// interaction graph is chordal, so the maximum-likelihood fit is the
/// closed-form product of clique marginals over separator marginals — no
/// iterative fitting is needed.
struct DecomposableModel {
  std::vector<FeatureVariable> variables;
  UndirectedGraph graph{0};
  JunctionTree jt;
  int64_t total = 0;
  // Marginal count tables, parallel to jt.cliques / jt.separators.
  std::vector<std::map<std::vector<int>, int64_t>> clique_marginals;
  std::vector<std::map<std::vector<int>, int64_t>> separator_marginals;

  std::vector<int> arities() const;

  /// Expected count of a full cell under the model:
  ///   N · Π p̂(cell|clique) / Π p̂(cell|separator)
  /// evaluated as a product of counts so the saturated model reproduces
  /// observed counts exactly.  Zero if any clique marginal is zero.
  double fitted_count(std::span<const int> cell) const;

  /// Log-likelihood ratio statistic 2 Σ n·ln(n/fitted) over observed cells.
  /// Zero exactly for the saturated model.
  double g_squared(const ContingencyTable& data) const;
};

/// Closed-form maximum-likelihood fit of the chordal graph to the table.
DecomposableModel fit_model(const UndirectedGraph& graph,
                            const std::vector<FeatureVariable>& variables,
                            const ContingencyTable& data);

/// Degrees of freedom of the goodness-of-fit test: saturated parameter
/// count minus the model's junction-tree parameter count,
///   (Π arity − 1) − [Σ_cliques (Π − 1) − Σ_separators (Π − 1)].
int64_t model_dof(const UndirectedGraph& graph, std::span<const int> arities);

/// A fitted model specialized to predicting one variable.
struct Classifier {
  DecomposableModel model;
  int class_var = -1;                              // index of S
  std::array<int64_t, kNumClasses> priors{};       // training class counts
  double stop_alpha = 0.0;                         // search config echo
  uint64_t table_fingerprint = 0;                  // training table identity

  /// Unnormalized score per class for a feature row (all variables except
  /// S, in variable order).  Zero when a clique cell was never observed.
  std::array<double, kNumClasses> scores(std::span<const int> features) const;

  /// Arg-max class, or nullopt (abstention) when every score is zero.
  /// Ties break toward the larger training prior, then canonical order.
  std::optional<ClassLabel> classify(std::span<const int> features) const;
};

std::string classifier_to_json(const Classifier& cl);
Classifier classifier_from_json(const std::string& text);
void write_classifier_file(const Classifier& cl, const std::string& path);
Classifier read_classifier_file(const std::string& path);

}  // namespace evcat

#endif  // EVCAT_MODEL_HPP_
