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

#include <vector>

#include "kerrlhz/core/operator.hpp"
#include "kerrlhz/core/units.hpp"

namespace kerrlhz {

/// Diagonal of sum_s w_s N_s, where N_s is the level index of slot s.
inline RVector number_generator(const CompositeSpace& space, const std::vector<double>& weights) {
  detail::require(weights.size() == space.num_modes(), "number_generator: one weight per slot");
  RVector d(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto lv = space.levels_of(i);
    double v = 0.0;
    for (std::size_t s = 0; s < lv.size(); ++s) v += weights[s] * static_cast<double>(lv[s]);
    d(static_cast<Eigen::Index>(i)) = v;
  }
  return d;
}

namespace detail {

inline CVector frame_phases(const RVector& generator, double omega_ghz, double t) {
  CVector u(generator.size());
  for (Eigen::Index i = 0; i < generator.size(); ++i) u(i) = std::polar(1.0, units::two_pi * omega_ghz * t * generator(i));
  return u;
}

}  // namespace detail

/// exp(+i 2 pi omega t N) applied to a state; pass -omega to undo.
inline StateVector rotating_frame(const StateVector& psi, const RVector& generator, double omega_ghz, double t) {
  detail::require(generator.size() == psi.amplitudes().size(), "rotating_frame: generator dimension mismatch");
  return {psi.space(), detail::frame_phases(generator, omega_ghz, t).cwiseProduct(psi.amplitudes())};
}

/// U rho U^dag with U = exp(+i 2 pi omega t N).
inline DensityMatrix rotating_frame(const DensityMatrix& rho, const RVector& generator, double omega_ghz, double t) {
  detail::require(generator.size() == rho.matrix().rows(), "rotating_frame: generator dimension mismatch");
  const CVector u = detail::frame_phases(generator, omega_ghz, t);
  CMatrix m = u.asDiagonal() * rho.matrix() * u.conjugate().asDiagonal();
  return {rho.space(), std::move(m), DensityMatrix::Unchecked{}};
}

/// U O U^dag; for O = a on a weight-1 slot this is exp(-i 2 pi omega t) a.
inline Operator rotating_frame(const Operator& op, const RVector& generator, double omega_ghz, double t) {
  detail::require(generator.size() == op.matrix().rows(), "rotating_frame: generator dimension mismatch");
  const CVector u = detail::frame_phases(generator, omega_ghz, t);
  return {op.space(), u.asDiagonal() * op.matrix() * u.conjugate().asDiagonal()};
}

}  // namespace kerrlhz
