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
#include <cstdint>
#include <optional>
#include <set>

#include "kerrlhz/core/operator.hpp"

namespace kerrlhz {

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // column i pairs with values(i)
};

/// Ascending eigenpairs of a Hermitian operator; the k lowest when k is given.
inline Eigensystem hermitian_eigensystem(const Operator& op, std::optional<std::size_t> k = {}) {
  const CMatrix& m = op.matrix();
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-8 * scale)
    throw InvalidArgument("hermitian_eigensystem: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  Eigensystem out{es.eigenvalues(), es.eigenvectors()};
  if (k) {
    detail::require(*k >= 1 && *k <= op.dimension(), "eigenpair count out of range");
    const auto kk = static_cast<Eigen::Index>(*k);
    out.values = out.values.head(kk).eval();
    out.vectors = out.vectors.leftCols(kk).eval();
  }
  return out;
}

/// Lowest k eigenpairs of a sparse Hermitian matrix by Lanczos with full
/// reorthogonalization. Exactly degenerate eigenvalues are resolved only once.
inline Eigensystem lowest_eigenpairs(const SparseMatrix& h, std::size_t k, double tol = 1e-11,
                                     std::size_t max_krylov = 400) {
  const Eigen::Index n = h.rows();
  detail::require(k >= 1 && static_cast<Eigen::Index>(k) <= n, "eigenpair count out of range");
  if (n <= 400) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es{CMatrix(h)};
    return {es.eigenvalues().head(static_cast<Eigen::Index>(k)),
            es.eigenvectors().leftCols(static_cast<Eigen::Index>(k))};
  }
  const Eigen::Index m_max = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(max_krylov));
  CMatrix q(n, m_max);
  std::vector<double> alpha, beta;
  // Deterministic start vector (splitmix64 stream).
  CVector v(n);
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (Eigen::Index i = 0; i < n; ++i) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    v(i) = 0.5 + static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  v.normalize();
  const double hnorm = std::max(1.0, h.norm() / std::sqrt(static_cast<double>(n)));
  Eigensystem best;
  for (Eigen::Index j = 0; j < m_max; ++j) {
    q.col(j) = v;
    CVector w = h * v;
    const double a = v.dot(w).real();
    alpha.push_back(a);
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass) {
      CVector c = q.leftCols(j + 1).adjoint() * w;
      w -= q.leftCols(j + 1) * c;
    }
    const double b = w.norm();
    const Eigen::Index m = j + 1;
    if (m >= static_cast<Eigen::Index>(k) && (m % 10 == 0 || b < 1e-14 * hnorm || m == m_max)) {
      RMatrix t = RMatrix::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<RMatrix> es(t);
      bool converged = true;
      for (std::size_t i = 0; i < k; ++i) {
        const double resid = b * std::abs(es.eigenvectors()(m - 1, static_cast<Eigen::Index>(i)));
        if (resid > tol * hnorm) converged = false;
      }
      if (converged || b < 1e-14 * hnorm || m == m_max) {
        const auto kk = static_cast<Eigen::Index>(k);
        best.values = es.eigenvalues().head(kk);
        best.vectors = q.leftCols(m) * es.eigenvectors().leftCols(kk).cast<cplx>();
        for (Eigen::Index i = 0; i < kk; ++i) best.vectors.col(i).normalize();
        if (!converged && b >= 1e-14 * hnorm)
          throw NumericalError("Lanczos did not converge within the Krylov budget");
        return best;
      }
    }
    beta.push_back(b);
    v = w / b;
  }
  throw NumericalError("Lanczos terminated unexpectedly");
}

namespace detail {

struct TraceLayout {
  std::vector<std::size_t> keep, traced;
  std::size_t dim_keep = 1, dim_traced = 1;
  // full index for (kept multi-index k, traced multi-index t)
  std::vector<std::size_t> keep_offset, traced_offset;
};

inline TraceLayout trace_layout(const CompositeSpace& space, std::span<const std::size_t> keep_slots) {
  detail::require(!keep_slots.empty(), "partial trace needs at least one kept slot");
  std::set<std::size_t> keep(keep_slots.begin(), keep_slots.end());
  detail::require(keep.size() == keep_slots.size(), "duplicate slot in partial trace");
  for (auto s : keep) detail::require(s < space.num_modes(), "partial trace slot out of range");
  TraceLayout lay;
  for (std::size_t s = 0; s < space.num_modes(); ++s) {
    if (keep.count(s)) {
      lay.keep.push_back(s);
      lay.dim_keep *= space[s].dim();
    } else {
      lay.traced.push_back(s);
      lay.dim_traced *= space[s].dim();
    }
  }
  const auto strides = space.strides();
  auto offsets = [&](const std::vector<std::size_t>& slots, std::size_t total) {
    std::vector<std::size_t> off(total, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx, o = 0;
      for (std::size_t i = slots.size(); i-- > 0;) {
        const std::size_t d = space[slots[i]].dim();
        o += (rem % d) * strides[slots[i]];
        rem /= d;
      }
      off[idx] = o;
    }
    return off;
  };
  lay.keep_offset = offsets(lay.keep, lay.dim_keep);
  lay.traced_offset = offsets(lay.traced, lay.dim_traced);
  return lay;
}

}  // namespace detail

/// Reduced density matrix on the kept slots (in their original order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto lay = detail::trace_layout(rho.space(), keep);
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(lay.dim_keep),
                              static_cast<Eigen::Index>(lay.dim_keep));
  for (std::size_t i = 0; i < lay.dim_keep; ++i)
    for (std::size_t j = 0; j < lay.dim_keep; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < lay.dim_traced; ++t)
        acc += m(static_cast<Eigen::Index>(lay.keep_offset[i] + lay.traced_offset[t]),
                 static_cast<Eigen::Index>(lay.keep_offset[j] + lay.traced_offset[t]));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return {rho.space().subspace(lay.keep), std::move(out), DensityMatrix::Unchecked{}};
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  std::vector<std::size_t> k(keep);
  return partial_trace(rho, std::span<const std::size_t>(k));
}

/// Reduced state of a pure state without forming the full density matrix.
inline DensityMatrix reduced_state(const StateVector& psi, std::span<const std::size_t> keep) {
  const auto lay = detail::trace_layout(psi.space(), keep);
  CMatrix mat(static_cast<Eigen::Index>(lay.dim_keep), static_cast<Eigen::Index>(lay.dim_traced));
  for (std::size_t i = 0; i < lay.dim_keep; ++i)
    for (std::size_t t = 0; t < lay.dim_traced; ++t)
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          psi[static_cast<Eigen::Index>(lay.keep_offset[i] + lay.traced_offset[t])];
  return {psi.space().subspace(lay.keep), mat * mat.adjoint(), DensityMatrix::Unchecked{}};
}

inline DensityMatrix reduced_state(const StateVector& psi, std::initializer_list<std::size_t> keep) {
  std::vector<std::size_t> k(keep);
  return reduced_state(psi, std::span<const std::size_t>(k));
}

}  // namespace kerrlhz
