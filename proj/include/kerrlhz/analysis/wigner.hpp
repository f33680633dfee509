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

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/laguerre.hpp>

#include "kerrlhz/core/operator.hpp"

namespace kerrlhz {

/// W(x, p) over x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2); normalized
/// so that the integral over dx dp is one. values(i, j) pairs x[i] with p[j].
struct WignerGrid {
  std::vector<double> x, p;
  RMatrix values;
  static constexpr const char* convention = "x=(a+a^dag)/sqrt2 p=(a-a^dag)/(i sqrt2) W=Tr[rho D Pi D^dag]/pi";

  /// Riemann sum of W dx dp on a uniform grid.
  double integral() const {
    if (x.size() < 2 || p.size() < 2) return 0.0;
    return values.sum() * (x[1] - x[0]) * (p[1] - p[0]);
  }
};

/// Displaced-parity Wigner function of a single-mode density matrix.
inline WignerGrid wigner(const DensityMatrix& rho, const std::vector<double>& x, const std::vector<double>& p) {
  detail::require(rho.space().num_modes() == 1, "wigner: single-mode state required");
  detail::require(!x.empty() && !p.empty(), "wigner: empty grid");
  const CMatrix& m = rho.matrix();
  const auto dim = m.rows();
  double r2max = 0.0;
  for (double xi : x)
    for (double pj : p) r2max = std::max(r2max, (xi * xi + pj * pj) / 2.0);
  if (r2max > static_cast<double>(dim - 1))
    throw InvalidArgument("wigner: Fock truncation " + std::to_string(dim) + " too small for grid extent |beta|^2 = " +
                          std::to_string(r2max));
  // sqrt(m!/n!) for m <= n
  std::vector<std::vector<double>> fact(static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = a; b < dim; ++b)
      fact[a][b] = std::exp(0.5 * (std::lgamma(a + 1.0) - std::lgamma(b + 1.0)));
  WignerGrid g{x, p, RMatrix::Zero(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(p.size()))};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      const cplx beta(x[i] / std::numbers::sqrt2, p[j] / std::numbers::sqrt2);
      const double r = 4.0 * std::norm(beta);
      double w = 0.0;
      for (Eigen::Index a = 0; a < dim; ++a) {
        const double sign = (a % 2 == 0) ? 1.0 : -1.0;
        w += sign * m(a, a).real() * boost::math::laguerre(static_cast<unsigned>(a), r);
        cplx pw = 1.0;
        for (Eigen::Index b = a + 1; b < dim; ++b) {
          pw *= 2.0 * beta;
          if (m(a, b) == cplx(0.0)) continue;
          const unsigned k = static_cast<unsigned>(b - a);
          w += 2.0 * sign * fact[a][b] *
               (m(a, b) * pw).real() * boost::math::laguerre(static_cast<unsigned>(a), k, r);
        }
      }
      g.values(i, j) = w * std::exp(-r / 2.0) / std::numbers::pi;
    }
  return g;
}

inline WignerGrid wigner(const StateVector& psi, const std::vector<double>& x, const std::vector<double>& p) {
  return wigner(DensityMatrix::pure(psi), x, p);
}

/// Evenly spaced values from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  detail::require(n >= 2, "linspace: need at least two points");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

}  // namespace kerrlhz
