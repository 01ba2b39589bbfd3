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

#ifndef EVCAT_CROSSVAL_HPP_
#define EVCAT_CROSSVAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evcat/pipeline.hpp"

namespace evcat {

/// Outcome of one fold: which trace model the selection step picked and how
/// it scored on the held-out test part.
struct FoldResult {
  int fold = 0;
  int num_models = 0;       // models visited by the search on SearchData
  int selected_model = 0;   // index into the trace; equals edges removed
  double selection_accuracy = 0.0;  // the winner's accuracy on SelectionData
  double g2 = 0.0;          // fit of the selected model on SearchData
  double dof = 0.0;
  Metrics test;             // the selected model's metrics on TestData
};

struct CVReport {
  PipelineConfig config;
  uint64_t corpus_fingerprint = 0;
  uint64_t seed = 0;
  std::vector<FoldResult> folds;
  double avg_accuracy = 0.0;
  double avg_precision = 0.0;
  double avg_recall = 0.0;
};

/// The nested 10-fold protocol.  Per fold: the collocation inventory,
/// feature table, and backward search use SearchData only; every model in
/// the trace is decoded on SelectionData (sequential features fed by system
/// predictions); the most accurate model (ties to fewer edges) is refitted
/// and scored on TestData.  Deterministic given corpus, config, and seed.
/// Folds are independent and run on `num_threads` workers (0 = one per
/// hardware thread); the report does not depend on the thread count.
CVReport nested_cv(const Corpus& corpus, const PipelineConfig& config,
                   uint64_t seed, int num_threads = 0);

/// Majority-class baseline on the same fold plans: each fold predicts its
/// TrainingData's most frequent class for every TestData sentence.
CVReport majority_baseline_cv(const Corpus& corpus, FoldUnit fold_unit,
                              uint64_t seed);

// ---------------------------------------------------------------------------
// Per-class feature occurrence counts

/// Occurrence counts for one class feature under the pc1 organization:
/// positives = sentences where some admitted lemma of the class fires;
/// false positives = those whose gold class differs.
struct ClassFeatureStats {
  ClassLabel label = ClassLabel::kOtherEvent;
  bool exists = false;  // the class admitted at least one lemma
  int64_t positives = 0;
  int64_t false_positives = 0;
};

struct CollocationStats {
  std::array<ClassFeatureStats, kNumClasses> features;
  int num_sentences = 0;
  // Arithmetic means over the class features that exist.
  double mean_positives = 0.0;
  double mean_false_positives = 0.0;
};

/// Counts pc1-style firings of a per-class inventory over the slice.
CollocationStats collocation_stats(const CorpusSlice& slice,
                                   const CollocationInventory& inv);

// ---------------------------------------------------------------------------
// Serialization

std::string report_to_json(const CVReport& report);
CVReport report_from_json(const std::string& text);
void write_report_file(const CVReport& report, const std::string& path);
CVReport read_report_file(const std::string& path);

/// Grid of average metrics, one row per organization and one column per
/// pattern family, each cell "accuracy / precision / recall".
std::string render_report_grid(std::span<const CVReport> reports);

}  // namespace evcat

#endif  // EVCAT_CROSSVAL_HPP_
