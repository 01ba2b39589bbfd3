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

#include "evcat/contingency.hpp"

#include <algorithm>

#include "evcat/errors.hpp"

namespace evcat {

int64_t ContingencyTable::count(const std::vector<int>& cell) const {
  auto it = cells.find(cell);
  return it == cells.end() ? 0 : it->second;
}

void ContingencyTable::add(const std::vector<int>& cell, int64_t n) {
  internal_check(cell.size() == arities.size(),
                 "contingency cell has wrong dimension");
  for (size_t i = 0; i < cell.size(); ++i) {
    internal_check(cell[i] >= 0 && cell[i] < arities[i],
                   "contingency cell value out of range");
  }
  internal_check(n > 0, "contingency counts must be positive");
  cells[cell] += n;
  total += n;
}

ContingencyTable contingency_from(const FeatureTable& table) {
  internal_check(!table.rows.empty(), "feature table has no rows");
  ContingencyTable ct;
  ct.arities.reserve(table.variables.size());
  for (const FeatureVariable& v : table.variables) ct.arities.push_back(v.arity());
  for (const std::vector<int>& row : table.rows) ct.add(row, 1);
  return ct;
}

std::map<std::vector<int>, int64_t> marginal_counts(
    const ContingencyTable& table, std::span<const int> vars) {
  for (size_t i = 0; i + 1 < vars.size(); ++i) {
    internal_check(vars[i] < vars[i + 1], "marginal variables must increase");
  }
  std::map<std::vector<int>, int64_t> out;
  std::vector<int> key(vars.size());
  for (const auto& [cell, n] : table.cells) {
    for (size_t i = 0; i < vars.size(); ++i) key[i] = cell[vars[i]];
    out[key] += n;
  }
  return out;
}

std::map<std::vector<int>, int64_t> marginalize(
    const std::map<std::vector<int>, int64_t>& counts,
    std::span<const int> vars, std::span<const int> sub) {
  std::vector<int> positions;
  positions.reserve(sub.size());
  for (int v : sub) {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    internal_check(it != vars.end() && *it == v,
                   "marginalize: not a subset of the source variables");
    positions.push_back(static_cast<int>(it - vars.begin()));
  }
  std::map<std::vector<int>, int64_t> out;
  std::vector<int> key(sub.size());
  for (const auto& [cell, n] : counts) {
    for (size_t i = 0; i < positions.size(); ++i) key[i] = cell[positions[i]];
    out[key] += n;
  }
  return out;
}

}  // namespace evcat
