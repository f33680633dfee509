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

#include <functional>
#include <utility>
#include <vector>

#include "kerrlhz/core/operator.hpp"

namespace kerrlhz {

/// H(t) = H_0 + sum_k c_k(t) H_k with sparse H_k. Hermiticity of H(t) is the
/// caller's responsibility; pair each non-Hermitian term with its adjoint.
class TimeDependentOperator {
 public:
  using Coefficient = std::function<cplx(double)>;

  TimeDependentOperator(CompositeSpace space, SparseMatrix constant)
      : space_(std::move(space)), constant_(std::move(constant)) {
    const auto d = static_cast<Eigen::Index>(space_.dimension());
    detail::require(constant_.rows() == d && constant_.cols() == d, "time-dependent operator: dimension mismatch");
  }
  explicit TimeDependentOperator(const Operator& constant)
      : TimeDependentOperator(constant.space(), constant.sparse()) {}

  TimeDependentOperator& add(SparseMatrix op, Coefficient c) {
    detail::require(op.rows() == constant_.rows() && op.cols() == constant_.cols(),
                    "time-dependent operator: term dimension mismatch");
    terms_.push_back({std::move(op), std::move(c)});
    return *this;
  }
  /// Adds c(t) op + conj(c(t)) op^dagger.
  TimeDependentOperator& add_hermitian_pair(const SparseMatrix& op, const Coefficient& c) {
    add(op, c);
    SparseMatrix adj = op.adjoint();
    return add(std::move(adj), [c](double t) { return std::conj(c(t)); });
  }
  TimeDependentOperator& scale(double s) {
    constant_ *= s;
    for (auto& t : terms_) t.op *= s;
    return *this;
  }

  const CompositeSpace& space() const { return space_; }
  std::size_t dimension() const { return space_.dimension(); }
  const SparseMatrix& constant() const { return constant_; }
  std::size_t num_terms() const { return terms_.size(); }

  SparseMatrix sparse_at(double t) const {
    SparseMatrix h = constant_;
    for (const auto& term : terms_) {
      const cplx c = term.coeff(t);
      if (c != 0.0) h += c * term.op;
    }
    return h;
  }
  Operator at(double t) const { return Operator(space_, CMatrix(sparse_at(t))); }

  /// out = H(t) x, for vectors or dense matrices.
  template <class In, class Out>
  void apply(double t, const In& x, Out& out) const {
    out.noalias() = constant_ * x;
    for (const auto& term : terms_) {
      const cplx c = term.coeff(t);
      if (c != 0.0) out.noalias() += c * (term.op * x);
    }
  }

 private:
  struct Term {
    SparseMatrix op;
    Coefficient coeff;
  };
  CompositeSpace space_;
  SparseMatrix constant_;
  std::vector<Term> terms_;
};

}  // namespace kerrlhz
