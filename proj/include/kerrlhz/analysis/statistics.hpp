// Copyright 2026 The kerrlhz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "kerrlhz/core/error.hpp"

namespace kerrlhz {

inline double median(std::vector<double> v) {
  detail::require(!v.empty(), "median: empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Sample Pearson correlation; throws when either sample is constant.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  detail::require(a.size() == b.size() && a.size() >= 2, "pearson: need two equal samples of size >= 2");
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  detail::require(saa > 0 && sbb > 0, "pearson: constant sample");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace kerrlhz
