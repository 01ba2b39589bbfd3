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

#include "evcat/metrics.hpp"

#include "evcat/errors.hpp"

namespace evcat {

Metrics compute_metrics(std::span<const std::optional<ClassLabel>> predictions,
                        std::span<const ClassLabel> gold) {
  if (predictions.size() != gold.size()) {
    throw DataError("metrics: prediction and gold lengths differ");
  }
  Metrics m;
  m.total = static_cast<int64_t>(gold.size());
  for (size_t i = 0; i < gold.size(); ++i) {
    if (!predictions[i]) continue;
    ++m.attempted;
    if (*predictions[i] == gold[i]) ++m.correct;
  }
  if (m.total > 0) {
    m.accuracy = static_cast<double>(m.correct) / static_cast<double>(m.total);
    m.recall = static_cast<double>(m.attempted) / static_cast<double>(m.total);
  }
  if (m.attempted > 0) {
    m.precision =
        static_cast<double>(m.correct) / static_cast<double>(m.attempted);
  }
  return m;
}

}  // namespace evcat
