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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kerrlhz/lhz/ising.hpp"

namespace kerrlhz::lhz {

/// A physical spin is either the parity of logical pair (j, k), j < k, where
/// logical spin 0 is the ghost fixed up, or an ancilla of a decomposed
/// four-body plaquette.
struct PhysicalSpin {
  std::size_t j = 0;
  std::size_t k = 0;
  bool ancilla = false;
  std::size_t ancilla_id = 0;

  std::string label() const {
    if (ancilla) return "a" + std::to_string(ancilla_id);
    return "(" + std::to_string(j) + "," + std::to_string(k) + ")";
  }
};

/// Parity encoding of an Ising instance. Energies are
///   scale * (sum_p fields_p sigma_p - C sum_c prod_{p in c} sigma_p).
struct LhzEmbedding {
  std::size_t N = 0;
  std::vector<PhysicalSpin> spins;
  RVector fields;
  std::vector<std::vector<std::size_t>> constraints;
  double C = 0.0;
  double scale = 1.0;
  bool three_body = false;

  std::size_t num_spins() const { return spins.size(); }
  std::size_t num_constraints() const { return constraints.size(); }
  /// Energy shift of a constraint-satisfying state relative to the logical energy.
  double constant_offset() const { return -C * scale * static_cast<double>(constraints.size()); }

  RVector field_diagonal() const {
    const std::size_t n = num_spins();
    const std::size_t d = std::size_t{1} << n;
    RVector diag = RVector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t p = 0; p < n; ++p)
        diag(static_cast<Eigen::Index>(b)) += fields(static_cast<Eigen::Index>(p)) * spin_value(b, p, n);
    return diag * scale;
  }
  RVector constraint_diagonal() const {
    const std::size_t n = num_spins();
    const std::size_t d = std::size_t{1} << n;
    RVector diag = RVector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b)
      for (const auto& c : constraints) {
        int prod = 1;
        for (auto p : c) prod *= spin_value(b, p, n);
        diag(static_cast<Eigen::Index>(b)) -= C * prod;
      }
    return diag * scale;
  }
  RVector diagonal() const { return field_diagonal() + constraint_diagonal(); }

  std::size_t index_of_pair(std::size_t j, std::size_t k) const {
    if (j > k) std::swap(j, k);
    for (std::size_t p = 0; p < spins.size(); ++p)
      if (!spins[p].ancilla && spins[p].j == j && spins[p].k == k) return p;
    throw InvalidArgument("no physical spin for logical pair");
  }
};

namespace detail {

/// Physical order: ghost pairs (0,1)..(0,N), then rows of (i, i+r) for
/// r = 1..N-1 and i = 1..N-r.
inline std::vector<PhysicalSpin> pair_spins(std::size_t N) {
  std::vector<PhysicalSpin> out;
  for (std::size_t j = 1; j <= N; ++j) out.push_back({0, j, false, 0});
  for (std::size_t r = 1; r < N; ++r)
    for (std::size_t i = 1; i + r <= N; ++i) out.push_back({i, i + r, false, 0});
  return out;
}

}  // namespace detail

/// Four-body embedding over logical spins 0 (ghost) .. N. Constraints:
/// base triangles {(i,i+1), (i+1,i+2), (i,i+2)} and quadruples
/// (n, s, e, w) = ((i,i+r+1), (i+1,i+r), (i+1,i+r+1), (i,i+r)) for r >= 2.
inline LhzEmbedding lhz_embed4(const IsingInstance& inst, double C) {
  inst.validate();
  if (inst.N < 2) throw InvalidArgument("lhz_embed4: need at least two logical spins");
  LhzEmbedding emb;
  emb.N = inst.N;
  emb.C = C;
  emb.scale = inst.scale;
  emb.spins = detail::pair_spins(inst.N);
  emb.fields = RVector::Zero(static_cast<Eigen::Index>(emb.spins.size()));
  for (std::size_t p = 0; p < emb.spins.size(); ++p) {
    const auto& sp = emb.spins[p];
    emb.fields(static_cast<Eigen::Index>(p)) =
        sp.j == 0 ? inst.h(static_cast<Eigen::Index>(sp.k - 1))
                  : inst.J(static_cast<Eigen::Index>(sp.j - 1), static_cast<Eigen::Index>(sp.k - 1));
  }
  const std::size_t L = inst.N;  // highest logical index
  for (std::size_t i = 0; i + 2 <= L; ++i)
    emb.constraints.push_back(
        {emb.index_of_pair(i, i + 1), emb.index_of_pair(i + 1, i + 2), emb.index_of_pair(i, i + 2)});
  for (std::size_t r = 2; r < L; ++r)
    for (std::size_t i = 0; i + r + 1 <= L; ++i)
      emb.constraints.push_back({emb.index_of_pair(i, i + r + 1), emb.index_of_pair(i + 1, i + r),
                                 emb.index_of_pair(i + 1, i + r + 1), emb.index_of_pair(i, i + r)});
  return emb;
}

/// Replaces each quadruple (n, s, e, w) by triples (n, w, a) and (a, s, e)
/// with a fresh zero-field ancilla a. Triples are kept unchanged.
inline LhzEmbedding lhz_decompose3(const LhzEmbedding& emb) {
  LhzEmbedding out = emb;
  out.three_body = true;
  out.constraints.clear();
  std::vector<double> extra_fields;
  std::size_t next_id = 0;
  for (const auto& c : emb.constraints) {
    if (c.size() == 3) {
      out.constraints.push_back(c);
    } else if (c.size() == 4) {
      const std::size_t a = out.spins.size();
      out.spins.push_back({0, 0, true, next_id++});
      extra_fields.push_back(0.0);
      out.constraints.push_back({c[0], c[3], a});
      out.constraints.push_back({a, c[1], c[2]});
    } else {
      throw InvalidArgument("lhz_decompose3: constraints must have three or four spins");
    }
  }
  const auto old = emb.fields.size();
  out.fields.conservativeResize(static_cast<Eigen::Index>(out.spins.size()));
  for (std::size_t i = 0; i < extra_fields.size(); ++i) out.fields(old + static_cast<Eigen::Index>(i)) = extra_fields[i];
  return out;
}

inline Operator lhz_operator(const LhzEmbedding& emb) {
  kerrlhz::detail::require(emb.num_spins() <= 14, "lhz_operator: too many physical spins for a dense operator");
  return {spin_space(emb.num_spins()), emb.diagonal().cast<cplx>().asDiagonal().toDenseMatrix()};
}

struct DecodedState {
  std::vector<int> logical;  // s_1..s_N
  bool satisfied = false;    // every constraint product is +1
};

/// Reads logical spins off the ghost pairs of a physical basis state.
inline DecodedState decode(const LhzEmbedding& emb, std::size_t basis_index) {
  const std::size_t n = emb.num_spins();
  DecodedState out;
  out.logical.resize(emb.N);
  for (std::size_t j = 1; j <= emb.N; ++j) out.logical[j - 1] = spin_value(basis_index, emb.index_of_pair(0, j), n);
  out.satisfied = std::all_of(emb.constraints.begin(), emb.constraints.end(), [&](const auto& c) {
    int prod = 1;
    for (auto p : c) prod *= spin_value(basis_index, p, n);
    return prod == 1;
  });
  return out;
}

/// Physical basis index of the constraint-satisfying state of a logical
/// configuration; ancillas take the value that satisfies both of their triples.
inline std::size_t encode(const LhzEmbedding& emb, const std::vector<int>& logical) {
  kerrlhz::detail::require(logical.size() == emb.N, "encode: configuration size mismatch");
  const std::size_t n = emb.num_spins();
  std::vector<int> value(n, 1);
  auto s = [&](std::size_t j) { return j == 0 ? 1 : logical[j - 1]; };
  for (std::size_t p = 0; p < n; ++p)
    if (!emb.spins[p].ancilla) value[p] = s(emb.spins[p].j) * s(emb.spins[p].k);
  for (const auto& c : emb.constraints)
    for (std::size_t q = 0; q < c.size(); ++q)
      if (emb.spins[c[q]].ancilla) {
        int prod = 1;
        for (std::size_t r = 0; r < c.size(); ++r)
          if (r != q) prod *= value[c[r]];
        value[c[q]] = prod;
      }
  std::size_t b = 0;
  for (std::size_t p = 0; p < n; ++p) b = (b << 1) | (value[p] == 1 ? 0U : 1U);
  return b;
}

}  // namespace kerrlhz::lhz
