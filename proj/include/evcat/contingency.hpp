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

#ifndef EVCAT_CONTINGENCY_HPP_
#define EVCAT_CONTINGENCY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "evcat/features.hpp"

namespace evcat {

/// Sparse multidimensional contingency table.  Only cells with a positive
/// count are stored; high-dimensional tables (one variable per selected
/// word) would be infeasible densely.
struct ContingencyTable {
  std::vector<int> arities;
  std::map<std::vector<int>, int64_t> cells;  // nonzero cells only
  int64_t total = 0;

  int num_vars() const { return static_cast<int>(arities.size()); }
  int64_t count(const std::vector<int>& cell) const;
  void add(const std::vector<int>& cell, int64_t n);
};

/// Exact counts of a feature table; N = number of rows.
ContingencyTable contingency_from(const FeatureTable& table);

/// Marginal counts over a strictly increasing list of variable indices.
/// Keys are value vectors in the order of `vars`.
std::map<std::vector<int>, int64_t> marginal_counts(
    const ContingencyTable& table, std::span<const int> vars);

/// Marginalizes an already-computed marginal further down to `sub`, a
/// strictly increasing subset of `vars` (the variables the keys of `counts`
/// range over).
std::map<std::vector<int>, int64_t> marginalize(
    const std::map<std::vector<int>, int64_t>& counts,
    std::span<const int> vars, std::span<const int> sub);

}  // namespace evcat

#endif  // EVCAT_CONTINGENCY_HPP_
