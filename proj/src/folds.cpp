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

#include "evcat/folds.hpp"

#include <algorithm>
#include <numeric>

#include "evcat/errors.hpp"
#include "evcat/util.hpp"

namespace evcat {

std::string_view to_string(FoldUnit unit) {
  return unit == FoldUnit::kDocument ? "document" : "sentence";
}

std::vector<FoldPlan> make_fold_plans(int num_units, uint64_t seed) {
  // Every fold needs a nonempty TestData chunk and at least 10 training
  // units so SelectionData is nonempty.
  if (num_units < kNumFolds + 2) {
    throw DataError("corpus too small for the nested 10-fold protocol (" +
                    std::to_string(num_units) + " fold units)");
  }
  std::vector<int> order(num_units);
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(derive_seed(seed, "folds"));
  shuffle_rng.shuffle(order);

  const int base = num_units / kNumFolds;
  const int remainder = num_units % kNumFolds;
  std::vector<std::vector<int>> chunks(kNumFolds);
  int cursor = 0;
  for (int c = 0; c < kNumFolds; ++c) {
    const int size = base + (c < remainder ? 1 : 0);
    chunks[c].assign(order.begin() + cursor, order.begin() + cursor + size);
    cursor += size;
  }

  std::vector<FoldPlan> plans;
  plans.reserve(kNumFolds);
  for (int f = 0; f < kNumFolds; ++f) {
    FoldPlan plan;
    plan.fold_index = f;
    plan.test_units = chunks[f];
    std::vector<int> training;
    for (int c = 0; c < kNumFolds; ++c) {
      if (c == f) continue;
      training.insert(training.end(), chunks[c].begin(), chunks[c].end());
    }
    Rng fold_rng(derive_seed(seed, "fold-split", static_cast<uint64_t>(f)));
    fold_rng.shuffle(training);
    const int selection_size = static_cast<int>(training.size()) / kNumFolds;
    internal_check(selection_size >= 1, "selection part became empty");
    plan.selection_units.assign(training.begin(),
                                training.begin() + selection_size);
    plan.search_units.assign(training.begin() + selection_size,
                             training.end());
    // Sorted ids make downstream corpus slicing and reports canonical.
    std::sort(plan.test_units.begin(), plan.test_units.end());
    std::sort(plan.selection_units.begin(), plan.selection_units.end());
    std::sort(plan.search_units.begin(), plan.search_units.end());
    plans.push_back(std::move(plan));
  }
  return plans;
}

}  // namespace evcat
