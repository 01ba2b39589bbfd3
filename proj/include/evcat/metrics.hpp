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

#ifndef EVCAT_METRICS_HPP_
#define EVCAT_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <span>

#include "evcat/class_label.hpp"

namespace evcat {

/// Evaluation metrics for a classifier that may abstain:
///   precision = correct / attempted,  recall = attempted / total,
///   accuracy  = correct / total  (so accuracy = precision × recall).
struct Metrics {
  int64_t total = 0;
  int64_t attempted = 0;
  int64_t correct = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

Metrics compute_metrics(std::span<const std::optional<ClassLabel>> predictions,
                        std::span<const ClassLabel> gold);

}  // namespace evcat

#endif  // EVCAT_METRICS_HPP_
