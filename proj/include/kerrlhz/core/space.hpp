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

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "kerrlhz/core/error.hpp"

namespace kerrlhz {

enum class ModeKind { fock, qutrit, spin_half };

/// One tensor factor of a Hilbert space.
///
/// A Fock mode of dimension d holds photon numbers 0..d-1. Qutrit levels are
/// ordered g, e, f. Spin-half index 0 is the sigma^z = +1 ("up") state.
class ModeSpace {
 public:
  static ModeSpace fock(std::size_t dim) {
    detail::require(dim >= 2, "fock mode dimension must be >= 2");
    return ModeSpace(ModeKind::fock, dim);
  }
  static ModeSpace qutrit() { return ModeSpace(ModeKind::qutrit, 3); }
  static ModeSpace spin_half() { return ModeSpace(ModeKind::spin_half, 2); }

  ModeKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;

 private:
  ModeSpace(ModeKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  ModeKind kind_;
  std::size_t dim_;
};

inline std::string to_string(const ModeSpace& m) {
  switch (m.kind()) {
    case ModeKind::fock: return "fock(" + std::to_string(m.dim()) + ")";
    case ModeKind::qutrit: return "qutrit";
    case ModeKind::spin_half: return "spin";
  }
  return "?";
}

/// Ordered tensor product of modes. Slot i is modes()[i]; slot 0 is the most
/// significant factor of the Kronecker product.
class CompositeSpace {
 public:
  CompositeSpace() = default;
  explicit CompositeSpace(std::vector<ModeSpace> modes) : modes_(std::move(modes)) {
    detail::require(!modes_.empty(), "composite space needs at least one mode");
  }
  explicit CompositeSpace(ModeSpace single) : modes_{single} {}

  static CompositeSpace repeat(ModeSpace m, std::size_t n) {
    return CompositeSpace(std::vector<ModeSpace>(n, m));
  }

  const std::vector<ModeSpace>& modes() const { return modes_; }
  std::size_t num_modes() const { return modes_.size(); }
  const ModeSpace& operator[](std::size_t slot) const { return modes_.at(slot); }

  std::size_t dimension() const {
    return std::accumulate(modes_.begin(), modes_.end(), std::size_t{1},
                           [](std::size_t acc, const ModeSpace& m) { return acc * m.dim(); });
  }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    d.reserve(modes_.size());
    for (const auto& m : modes_) d.push_back(m.dim());
    return d;
  }

  /// Row-major strides: index = sum(level[i] * stride[i]).
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(modes_.size(), 1);
    for (std::size_t i = modes_.size(); i-- > 1;) s[i - 1] = s[i] * modes_[i].dim();
    return s;
  }

  std::size_t index_of(std::span<const std::size_t> levels) const {
    detail::require(levels.size() == modes_.size(), "level tuple size mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      detail::require(levels[i] < modes_[i].dim(), "level out of range");
      idx = idx * modes_[i].dim() + levels[i];
    }
    return idx;
  }

  std::vector<std::size_t> levels_of(std::size_t index) const {
    std::vector<std::size_t> lv(modes_.size());
    for (std::size_t i = modes_.size(); i-- > 0;) {
      lv[i] = index % modes_[i].dim();
      index /= modes_[i].dim();
    }
    return lv;
  }

  CompositeSpace subspace(std::span<const std::size_t> slots) const {
    std::vector<ModeSpace> m;
    for (auto s : slots) {
      detail::require(s < modes_.size(), "slot out of range");
      m.push_back(modes_[s]);
    }
    return CompositeSpace(std::move(m));
  }

  friend bool operator==(const CompositeSpace&, const CompositeSpace&) = default;

 private:
  std::vector<ModeSpace> modes_;
};

inline std::string to_string(const CompositeSpace& s) {
  std::string out;
  for (std::size_t i = 0; i < s.num_modes(); ++i) {
    if (i) out += " x ";
    out += to_string(s[i]);
  }
  return out;
}

}  // namespace kerrlhz
