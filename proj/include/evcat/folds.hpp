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

#ifndef EVCAT_FOLDS_HPP_
#define EVCAT_FOLDS_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

namespace evcat {

/// What gets shuffled into folds.  Document folding keeps the sequential
/// features well defined (a whole article lands in one part); sentence
/// folding is closer to a plain random split.
enum class FoldUnit : int { kDocument = 0, kSentence = 1 };

std::string_view to_string(FoldUnit unit);

/// One fold of the nested protocol.  The three unit-id lists partition the
/// corpus: TestData (~10%), and TrainingData split again into SearchData
/// (~81% of the total) and SelectionData (~9%).
struct FoldPlan {
  int fold_index = 0;
  std::vector<int> test_units;
  std::vector<int> search_units;
  std::vector<int> selection_units;
};

inline constexpr int kNumFolds = 10;

/// Deterministic 10-fold plan over unit ids 0..num_units-1.  Units are
/// shuffled once; chunk c becomes TestData of fold c (remainder units go to
/// the early chunks, so rounding favors TestData).  The fold's TrainingData
/// is reshuffled with a fold-specific stream and its first tenth (rounded
/// down) becomes SelectionData.
std::vector<FoldPlan> make_fold_plans(int num_units, uint64_t seed);

}  // namespace evcat

#endif  // EVCAT_FOLDS_HPP_
