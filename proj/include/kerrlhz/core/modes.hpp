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

#include <array>
#include <optional>

#include "kerrlhz/core/operator.hpp"

namespace kerrlhz {

/// Ladder and bookkeeping operators of a single mode.
struct ModeOperators {
  Operator annihilation;
  Operator creation;
  Operator number;
  Operator identity;
  /// projector[j][k] = |j><k| over levels g, e, f; qutrit modes only.
  std::optional<std::array<std::array<Operator, 3>, 3>> projector;
};

namespace detail {

inline CMatrix ladder_matrix(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix a = CMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace detail

/// a|n> = sqrt(n)|n-1> on the truncated basis of any mode kind. For spin-half
/// the annihilator is sigma^- = |up><down| (index 0 is up) and the number
/// operator counts the down state.
inline ModeOperators mode_operators(const ModeSpace& mode) {
  const CompositeSpace s(mode);
  const CMatrix a = detail::ladder_matrix(mode.dim());
  ModeOperators ops{Operator(s, a), Operator(s, a.adjoint()), Operator(s, a.adjoint() * a),
                    Operator::identity(s), std::nullopt};
  if (mode.kind() == ModeKind::qutrit) {
    std::array<std::array<Operator, 3>, 3> p;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        CMatrix m = CMatrix::Zero(3, 3);
        m(j, k) = 1.0;
        p[j][k] = Operator(s, m);
      }
    ops.projector = std::move(p);
  }
  return ops;
}

namespace qutrit_level {
inline constexpr std::size_t g = 0;
inline constexpr std::size_t e = 1;
inline constexpr std::size_t f = 2;
}  // namespace qutrit_level

/// Sparse Kronecker embedding of a local matrix into `slot` of `dims`.
inline SparseMatrix embed_sparse(const SparseMatrix& local, std::span<const std::size_t> dims,
                                 std::size_t slot) {
  detail::require(slot < dims.size(), "tensor slot out of range");
  detail::require(static_cast<std::size_t>(local.rows()) == dims[slot] &&
                      static_cast<std::size_t>(local.cols()) == dims[slot],
                  "local operator dimension mismatch for slot");
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < slot; ++i) left *= dims[i];
  for (std::size_t i = slot + 1; i < dims.size(); ++i) right *= dims[i];
  const auto d = static_cast<Eigen::Index>(dims[slot]);
  const auto total = static_cast<Eigen::Index>(left * dims[slot] * right);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(local.nonZeros()) * left * right);
  for (Eigen::Index r = 0; r < d; ++r)
    for (SparseMatrix::InnerIterator it(local, r); it; ++it)
      for (std::size_t l = 0; l < left; ++l)
        for (std::size_t q = 0; q < right; ++q) {
          const auto row = static_cast<Eigen::Index>((l * dims[slot] + r) * right + q);
          const auto col = static_cast<Eigen::Index>((l * dims[slot] + it.col()) * right + q);
          trip.emplace_back(row, col, it.value());
        }
  SparseMatrix out(total, total);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

/// Identity on every slot except `slot`, where `op` acts.
inline SparseOperator tensor_embed_sparse(const Operator& op, const CompositeSpace& space,
                                          std::size_t slot) {
  detail::require(slot < space.num_modes(), "tensor slot out of range");
  detail::require(op.space().num_modes() == 1 && op.space()[0] == space[slot],
                  "operator mode does not match the target slot");
  const auto dims = space.dims();
  return {space, embed_sparse(op.sparse(), dims, slot)};
}

inline Operator tensor_embed(const Operator& op, const CompositeSpace& space, std::size_t slot) {
  return tensor_embed_sparse(op, space, slot).dense();
}

/// Embedded ladder operators for every slot of a space, in sparse form.
struct SlotOperators {
  std::vector<SparseOperator> a;
  std::vector<SparseOperator> adag;
  std::vector<SparseOperator> n;
};

inline SlotOperators slot_ladders(const CompositeSpace& space) {
  SlotOperators out;
  for (std::size_t s = 0; s < space.num_modes(); ++s) {
    auto ops = mode_operators(space[s]);
    out.a.push_back(tensor_embed_sparse(ops.annihilation, space, s));
    out.adag.push_back(tensor_embed_sparse(ops.creation, space, s));
    out.n.push_back(tensor_embed_sparse(ops.number, space, s));
  }
  return out;
}

/// Pauli matrices on a spin-half mode (index 0 = up).
inline Operator sigma_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return {CompositeSpace(ModeSpace::spin_half()), m};
}
inline Operator sigma_y() {
  CMatrix m(2, 2);
  m << 0, -I, I, 0;
  return {CompositeSpace(ModeSpace::spin_half()), m};
}
inline Operator sigma_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return {CompositeSpace(ModeSpace::spin_half()), m};
}

/// exp(i pi a^dag a) on a Fock mode.
inline Operator parity_operator(std::size_t dim) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return {CompositeSpace(ModeSpace::fock(dim)), m};
}

}  // namespace kerrlhz
