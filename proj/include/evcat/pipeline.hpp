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

#ifndef EVCAT_PIPELINE_HPP_
#define EVCAT_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evcat/collocations.hpp"
#include "evcat/features.hpp"
#include "evcat/folds.hpp"
#include "evcat/metrics.hpp"
#include "evcat/model.hpp"
#include "evcat/search.hpp"

namespace evcat {

/// Everything a run needs beyond the corpus and the seed.  The defaults are
/// the flagship configuration: syntactic patterns selected per class at
/// k = 0.5, organized as pc2, all four non-collocational features, every
/// feature pinned to S.
struct PipelineConfig {
  PatternFamily family = PatternFamily::kSyntactic;
  InventoryMode mode = InventoryMode::kPerClass;
  double k = 0.5;
  double alpha = 0.01;
  int64_t min_count = 1;
  Organization organization = Organization::kPC2;
  FeatureConfig features;
  double stop_alpha = 0.01;
  int max_steps = -1;
  FoldUnit fold_unit = FoldUnit::kDocument;
  RefitCheck refit_check = RefitCheck::kAuto;
};

/// Rejects inconsistent combinations (pc organizations need a per-class
/// inventory, or organizations an over-range one) and bad parameters.
void validate_config(const PipelineConfig& config);

/// The inventory mode an organization requires.
InventoryMode required_mode(Organization org);

std::string config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const std::string& text);

/// Inventory for the configured family and selection mode.
CollocationInventory build_inventory(const CorpusSlice& train,
                                     const PipelineConfig& config);

/// Every feature–class edge, to pin during the search (feature dropping is
/// not permitted by default).  num_vars counts S; S is the last variable.
std::vector<std::pair<int, int>> pinned_feature_edges(int num_vars);

// ---------------------------------------------------------------------------
// Sequential decoding

/// One sentence prepared for decoding: all prediction-independent variable
/// values are precomputed; the slots that depend on earlier predictions
/// (the in-paragraph proportion, optionally the previous class) are filled
/// during the decode.
struct PreparedSentence {
  bool target = false;
  std::vector<int> row;  // static slots valid; dynamic slots stale
  ClassLabel gold = ClassLabel::kOtherEvent;
};

struct PreparedCorpus {
  const Corpus* corpus = nullptr;
  FeatureConfig features;
  int f2_slot = -1;
  int prev_slot = -1;  // -1 when the previous-class variable is disabled
  std::vector<std::vector<PreparedSentence>> docs;
  int num_targets = 0;
};

/// Precomputes rows for the slice's sentences (the decode targets).  The
/// corpus must be fully labeled: non-target sentences supply gold context,
/// target gold labels feed the metrics.
PreparedCorpus prepare_corpus(const CorpusSlice& targets,
                              const RowAssembler& assembler);

struct DecodeOutcome {
  std::vector<std::optional<ClassLabel>> predictions;  // target order
  std::vector<ClassLabel> gold;
};

/// Decodes documents left to right: each target row is finished with the
/// values derived from earlier labels (system predictions for earlier
/// targets — abstentions count as other-event — and gold elsewhere), then
/// handed to classify_row.  target_ordinal counts targets in decode order.
DecodeOutcome decode_sequential(
    const PreparedCorpus& prepared,
    const std::function<std::optional<ClassLabel>(
        int target_ordinal, std::span<const int> row)>& classify_row);

/// Convenience: decode with a fitted classifier.
DecodeOutcome decode_with_classifier(const PreparedCorpus& prepared,
                                     const Classifier& classifier);

/// Accuracy of every model in the trace on the prepared targets, decoding
/// sequentially with that model.  Scores are tracked incrementally across
/// consecutive models (which differ by one edge), with marginals served
/// from the cache over the search table.
std::vector<Metrics> evaluate_trace_models(
    const SearchTrace& trace, MarginalCache& marginals,
    const std::array<int64_t, kNumClasses>& priors,
    const PreparedCorpus& prepared);

}  // namespace evcat

#endif  // EVCAT_PIPELINE_HPP_
