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

#ifndef EVCAT_CHI2_HPP_
#define EVCAT_CHI2_HPP_

#include <cstdint>

namespace evcat {

/// Critical value x such that P(X > x) = alpha for X ~ chi-squared(df).
double chi2_critical(double alpha, int64_t df);

/// Upper tail probability P(X > x) for X ~ chi-squared(df).  df is a double
/// because tests over wide tables can have degrees of freedom far beyond
/// integer range; a normal approximation takes over there.
double chi2_sf(double x, double df);

}  // namespace evcat

#endif  // EVCAT_CHI2_HPP_
