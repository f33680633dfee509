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
#include <sstream>

#include "kerrlhz/core/operator.hpp"

namespace kerrlhz {

enum class CatParity { even, odd };

/// Poisson weight of a coherent state on levels >= dim.
inline double coherent_tail_mass(cplx alpha, std::size_t dim) {
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  // log of the weight at n = dim, then sum the decreasing tail.
  double log_w = -mean + static_cast<double>(dim) * std::log(mean) - std::lgamma(dim + 1.0);
  double w = std::exp(log_w);
  double tail = 0.0;
  for (std::size_t n = dim; n < dim + 10000; ++n) {
    tail += w;
    w *= mean / static_cast<double>(n + 1);
    if (n > mean && w < 1e-18 * tail) break;
  }
  return tail;
}

namespace detail {

inline CVector coherent_amplitudes(cplx alpha, std::size_t dim) {
  CVector c(static_cast<Eigen::Index>(dim));
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 1; n < dim; ++n)
    c(static_cast<Eigen::Index>(n)) = c(static_cast<Eigen::Index>(n - 1)) * alpha /
                                      std::sqrt(static_cast<double>(n));
  return c;
}

inline void check_tail(cplx alpha, std::size_t dim, double max_tail) {
  const double tail = coherent_tail_mass(alpha, dim);
  if (tail > max_tail) {
    std::ostringstream os;
    os << "fock dimension " << dim << " too small for |alpha|^2 = " << std::norm(alpha)
       << ": tail mass " << tail << " exceeds " << max_tail;
    throw NumericalError(os.str());
  }
}

}  // namespace detail

/// Truncated coherent state, renormalized on the kept levels.
inline StateVector coherent_state(cplx alpha, std::size_t dim, double max_tail = 1e-5) {
  detail::check_tail(alpha, dim, max_tail);
  return {CompositeSpace(ModeSpace::fock(dim)), detail::coherent_amplitudes(alpha, dim)};
}

/// |alpha> +- |-alpha>, normalized to unit norm. Levels of the wrong parity
/// are exactly zero.
inline StateVector cat_state(cplx alpha, CatParity parity, std::size_t dim, double max_tail = 1e-5) {
  if (parity == CatParity::odd && alpha == cplx{0.0})
    throw InvalidArgument("odd cat state with alpha = 0 is the zero vector");
  detail::check_tail(alpha, dim, max_tail);
  CVector c = detail::coherent_amplitudes(alpha, dim);
  const std::size_t keep = parity == CatParity::even ? 0 : 1;
  for (std::size_t n = 0; n < dim; ++n)
    if (n % 2 != keep) c(static_cast<Eigen::Index>(n)) = 0.0;
  return {CompositeSpace(ModeSpace::fock(dim)), std::move(c)};
}

/// Product of coherent states |a_1, a_2, ...> over Fock modes of the given dims.
inline StateVector coherent_product(std::span<const cplx> alphas, std::span<const std::size_t> dims,
                                    double max_tail = 1e-5) {
  detail::require(alphas.size() == dims.size() && !alphas.empty(), "alpha/dim count mismatch");
  StateVector out = coherent_state(alphas[0], dims[0], max_tail);
  for (std::size_t i = 1; i < alphas.size(); ++i)
    out = tensor(out, coherent_state(alphas[i], dims[i], max_tail));
  return out;
}

}  // namespace kerrlhz
