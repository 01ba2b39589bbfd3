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

#include "evcat/chi2.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "evcat/errors.hpp"

namespace evcat {

double chi2_critical(double alpha, int64_t df) {
  internal_check(alpha > 0.0 && alpha < 1.0, "chi2_critical: alpha in (0,1)");
  internal_check(df >= 1, "chi2_critical: df >= 1");
  boost::math::chi_squared dist(static_cast<double>(df));
  return boost::math::quantile(dist, 1.0 - alpha);
}

double chi2_sf(double x, double df) {
  internal_check(df >= 1.0, "chi2_sf: df >= 1");
  if (x <= 0.0) return 1.0;
  if (df > 1e12) {
    // Wilson-Hilferty: (X/df)^(1/3) is approximately normal.  The exact
    // incomplete gamma is impractical at this scale and the approximation
    // error is negligible where the search consults it.
    const double h = 2.0 / (9.0 * df);
    const double z = (std::cbrt(x / df) - (1.0 - h)) / std::sqrt(h);
    boost::math::normal norm;
    return boost::math::cdf(boost::math::complement(norm, z));
  }
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

}  // namespace evcat
