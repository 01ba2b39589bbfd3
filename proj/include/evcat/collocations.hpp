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

#ifndef EVCAT_COLLOCATIONS_HPP_
#define EVCAT_COLLOCATIONS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evcat/class_label.hpp"
#include "evcat/corpus.hpp"
#include "evcat/patterns.hpp"

namespace evcat {

enum class InventoryMode : int { kPerClass = 0, kOverRange = 1 };

std::string_view to_string(InventoryMode mode);
std::optional<InventoryMode> parse_inventory_mode(std::string_view s);

/// Per-class selection result for one pattern: for each class, the admitted
/// lemmas together with the conditional probability that admitted them
/// (used to resolve pc2 conflicts toward the strongest evidence).
struct PerClassSets {
  std::array<std::map<std::string, double>, kNumClasses> by_class;
};

/// Over-range selection result for one pattern: admitted lemmas with their
/// independence-test statistic.
using OverRangeSet = std::map<std::string, double>;

/// Lemmas of class i admitted for pattern p on the training fold: those with
/// P(class = i | lemma fires in p) strictly above k.
PerClassSets select_per_class(const CorpusSlice& train, PatternId pattern,
                              double k);
PerClassSets select_per_class(const Corpus& train, PatternId pattern,
                              double k);

/// Lemmas admitted for pattern p because the 2 x 6 (present/absent x class)
/// independence model fits poorly: G^2 above the chi-squared critical value
/// at `alpha` with 5 degrees of freedom.  Lemmas firing fewer than
/// `min_count` times are not considered.
OverRangeSet select_over_range(const CorpusSlice& train, PatternId pattern,
                               double alpha, int64_t min_count);
OverRangeSet select_over_range(const Corpus& train, PatternId pattern,
                               double alpha, int64_t min_count);

/// Selected word sets for a whole pattern family, tied to the training fold
/// they were derived from.
struct CollocationInventory {
  InventoryMode mode = InventoryMode::kPerClass;
  std::vector<PatternId> patterns;  // ascending PatternId order
  std::map<PatternId, PerClassSets> per_class;
  std::map<PatternId, OverRangeSet> over_range;
  double k = 0.5;
  double alpha = 0.01;
  int64_t min_count = 1;
  uint64_t train_fingerprint = 0;

  /// Fingerprint of the canonical JSON serialization.
  uint64_t fingerprint() const;
};

CollocationInventory build_per_class_inventory(const CorpusSlice& train,
                                               PatternFamily family,
                                               double k = 0.5);
CollocationInventory build_per_class_inventory(const Corpus& train,
                                               PatternFamily family,
                                               double k = 0.5);
CollocationInventory build_over_range_inventory(const CorpusSlice& train,
                                                PatternFamily family,
                                                double alpha = 0.01,
                                                int64_t min_count = 1);
CollocationInventory build_over_range_inventory(const Corpus& train,
                                                PatternFamily family,
                                                double alpha = 0.01,
                                                int64_t min_count = 1);

std::string inventory_to_json(const CollocationInventory& inv);
CollocationInventory inventory_from_json(const std::string& text);
void write_inventory_file(const CollocationInventory& inv,
                          const std::string& path);
CollocationInventory read_inventory_file(const std::string& path);

}  // namespace evcat

#endif  // EVCAT_COLLOCATIONS_HPP_
