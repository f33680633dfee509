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

#include <cstdint>
#include <limits>
#include <vector>

#include "kerrlhz/core/operator.hpp"

namespace kerrlhz::lhz {

/// SplitMix64 used as a counter-based generator: draw k of stream `seed` is
/// mix(seed + (k + 1) * golden). No hidden state, so any draw can be
/// reproduced in isolation on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t at(std::uint64_t k) const { return mix(seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform_at(std::uint64_t k) const { return static_cast<double>(at(k) >> 11) * 0x1.0p-53; }

  std::uint64_t next() { return at(counter_++); }
  double uniform() { return uniform_at(counter_++); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Logical Ising problem sum h_j s_j + sum_{j<k} J_jk s_j s_k. Fields and
/// couplings are stored in units of `scale`.
struct IsingInstance {
  std::size_t N = 0;
  RVector h;
  RMatrix J;  // symmetric, zero diagonal
  double scale = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    const auto n = static_cast<Eigen::Index>(N);
    kerrlhz::detail::require(N >= 1, "Ising instance needs at least one spin");
    kerrlhz::detail::require(h.size() == n && J.rows() == n && J.cols() == n, "Ising instance: size mismatch");
    kerrlhz::detail::require((J - J.transpose()).cwiseAbs().maxCoeff() == 0.0, "Ising couplings must be symmetric");
    kerrlhz::detail::require(J.diagonal().cwiseAbs().maxCoeff() == 0.0, "Ising couplings must have zero diagonal");
    kerrlhz::detail::require(scale > 0.0, "Ising energy scale must be positive");
  }

  /// Energy of a configuration (entries +1 or -1), in absolute units.
  double energy(const std::vector<int>& s) const {
    double e = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      e += h(static_cast<Eigen::Index>(j)) * s[j];
      for (std::size_t k = j + 1; k < N; ++k)
        e += J(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * s[j] * s[k];
    }
    return e * scale;
  }
};

/// h_j then J_jk (j < k, row by row), each uniform on [-1, 1] in units of
/// J_scale, drawn from SplitMix64(seed).
inline IsingInstance random_instance(std::size_t N, double J_scale, std::uint64_t seed) {
  kerrlhz::detail::require(N >= 2, "random_instance: N must be >= 2");
  kerrlhz::detail::require(J_scale > 0.0, "random_instance: scale must be positive");
  const auto n = static_cast<Eigen::Index>(N);
  IsingInstance inst{N, RVector(n), RMatrix::Zero(n, n), J_scale, seed};
  SplitMix64 rng(seed);
  for (Eigen::Index j = 0; j < n; ++j) inst.h(j) = 2.0 * rng.uniform() - 1.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) inst.J(j, k) = inst.J(k, j) = 2.0 * rng.uniform() - 1.0;
  return inst;
}

/// sigma^z eigenvalue of spin j in computational basis index b (index 0 of
/// each spin is up; spin 0 is the most significant bit).
inline int spin_value(std::size_t b, std::size_t j, std::size_t n_spins) {
  return ((b >> (n_spins - 1 - j)) & 1U) ? -1 : 1;
}

inline std::vector<int> spin_configuration(std::size_t b, std::size_t n_spins) {
  std::vector<int> s(n_spins);
  for (std::size_t j = 0; j < n_spins; ++j) s[j] = spin_value(b, j, n_spins);
  return s;
}

inline CompositeSpace spin_space(std::size_t n_spins) {
  return CompositeSpace::repeat(ModeSpace::spin_half(), n_spins);
}

/// Diagonal of the logical problem Hamiltonian.
inline RVector ising_diagonal(const IsingInstance& inst) {
  inst.validate();
  kerrlhz::detail::require(inst.N <= 24, "ising_diagonal: too many spins for a dense basis");
  const std::size_t d = std::size_t{1} << inst.N;
  RVector diag(static_cast<Eigen::Index>(d));
  for (std::size_t b = 0; b < d; ++b) diag(static_cast<Eigen::Index>(b)) = inst.energy(spin_configuration(b, inst.N));
  return diag;
}

inline Operator ising_hamiltonian(const IsingInstance& inst) {
  const RVector diag = ising_diagonal(inst);
  return {spin_space(inst.N), diag.cast<cplx>().asDiagonal().toDenseMatrix()};
}

struct BruteForceGround {
  double energy = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> configurations;  // all minimizers within tol
};

inline BruteForceGround brute_force_ground(const IsingInstance& inst, double tol = 1e-12) {
  const RVector diag = ising_diagonal(inst);
  BruteForceGround out;
  out.energy = diag.minCoeff();
  for (Eigen::Index b = 0; b < diag.size(); ++b)
    if (diag(b) <= out.energy + tol) out.configurations.push_back(spin_configuration(static_cast<std::size_t>(b), inst.N));
  return out;
}

}  // namespace kerrlhz::lhz
