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
#include <vector>

#include "kerrlhz/core/linalg.hpp"
#include "kerrlhz/core/states.hpp"

namespace kerrlhz {

/// sqrt(<C+|rho|C+>) against the even cat of amplitude alpha.
inline double cat_fidelity(const DensityMatrix& rho_r, cplx alpha) {
  detail::require(rho_r.space().num_modes() == 1, "cat_fidelity: single-mode state required");
  const auto cat = cat_state(alpha, CatParity::even, rho_r.dimension());
  return std::sqrt(std::max(0.0, rho_r.overlap(cat)));
}

/// Same overlap for a pure state on mode slot `slot` of a larger space,
/// without forming the reduced density matrix.
inline double cat_fidelity(const StateVector& psi, std::size_t slot, cplx alpha) {
  const auto& s = psi.space();
  detail::require(slot < s.num_modes() && s[slot].kind() == ModeKind::fock, "cat_fidelity: slot must be a Fock mode");
  const auto cat = cat_state(alpha, CatParity::even, s[slot].dim());
  const auto strides = s.strides();
  const std::size_t d = s[slot].dim(), stride = strides[slot];
  // Project each environment configuration onto <C+|.
  std::vector<cplx> proj(s.dimension() / d, 0.0);
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    const std::size_t n = (i / stride) % d;
    const std::size_t env = (i / (stride * d)) * stride + i % stride;
    proj[env] += std::conj(cat[static_cast<Eigen::Index>(n)]) * psi[static_cast<Eigen::Index>(i)];
  }
  double f = 0.0;
  for (const auto& c : proj) f += std::norm(c);
  return std::sqrt(f);
}

struct ReadoutResult {
  std::vector<int> signs;
  std::vector<double> confidence;    // |<sa|rho|sa> - <-sa|rho|-sa>|
  std::vector<double> cat_weight;    // weight of rho_i inside span{|alpha>, |-alpha>}
  std::vector<bool> low_confidence;  // cat_weight below 0.9
  double fidelity = 0.0;             // |<s1 alpha, ..., sn alpha|psi>| or sqrt(<target|rho|target>)
};

namespace detail {

inline double span_weight(const DensityMatrix& r, cplx alpha) {
  const auto d = r.dimension();
  const auto e = cat_state(alpha, CatParity::even, d);
  if (alpha == cplx(0.0)) return r.overlap(e);
  const auto o = cat_state(alpha, CatParity::odd, d);
  return r.overlap(e) + r.overlap(o);
}

template <class Reduce>
ReadoutResult readout(const CompositeSpace& s, cplx alpha, Reduce&& reduce) {
  ReadoutResult out;
  for (std::size_t i = 0; i < s.num_modes(); ++i) {
    detail::require(s[i].kind() == ModeKind::fock, "spin_readout: every slot must be a Fock mode");
    const DensityMatrix r = reduce(i);
    const double up = r.overlap(coherent_state(alpha, s[i].dim()));
    const double down = r.overlap(coherent_state(-alpha, s[i].dim()));
    const double conf = std::abs(up - down);
    if (conf < 1e-3) throw NumericalError("spin_readout: ambiguous sign on mode " + std::to_string(i));
    out.signs.push_back(up >= down ? 1 : -1);
    out.confidence.push_back(conf);
    const double w = span_weight(r, alpha);
    out.cat_weight.push_back(w);
    out.low_confidence.push_back(w < 0.9);
  }
  return out;
}

inline StateVector signed_coherent_target(const CompositeSpace& s, cplx alpha, const std::vector<int>& signs) {
  std::vector<cplx> alphas;
  for (int sg : signs) alphas.push_back(static_cast<double>(sg) * alpha);
  const auto dims = s.dims();
  return coherent_product(alphas, dims);
}

}  // namespace detail

/// Per-mode sign of the coherent component and encoding fidelity of a pure state.
inline ReadoutResult spin_readout(const StateVector& psi, cplx alpha) {
  const auto& s = psi.space();
  auto out = detail::readout(s, alpha, [&](std::size_t i) { return reduced_state(psi, {i}); });
  out.fidelity = std::abs(detail::signed_coherent_target(s, alpha, out.signs).inner(psi));
  return out;
}

inline ReadoutResult spin_readout(const DensityMatrix& rho, cplx alpha) {
  const auto& s = rho.space();
  auto out = detail::readout(s, alpha, [&](std::size_t i) { return partial_trace(rho, {i}); });
  out.fidelity = std::sqrt(std::max(0.0, rho.overlap(detail::signed_coherent_target(s, alpha, out.signs))));
  return out;
}

}  // namespace kerrlhz
