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
#include <complex>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "kerrlhz/core/space.hpp"

namespace kerrlhz {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr cplx I{0.0, 1.0};

/// Dense operator on a composite space.
///
/// Hermiticity is a predicate, not an invariant: ladder operators and
/// time-dependent drive pieces are legitimately non-Hermitian.
class Operator {
 public:
  Operator() = default;
  Operator(CompositeSpace space, CMatrix m) : space_(std::move(space)), m_(std::move(m)) {
    const auto d = static_cast<Eigen::Index>(space_.dimension());
    detail::require(m_.rows() == d && m_.cols() == d,
                    "operator matrix does not match space dimension");
  }

  static Operator zero(const CompositeSpace& s) {
    const auto d = static_cast<Eigen::Index>(s.dimension());
    return {s, CMatrix::Zero(d, d)};
  }
  static Operator identity(const CompositeSpace& s) {
    const auto d = static_cast<Eigen::Index>(s.dimension());
    return {s, CMatrix::Identity(d, d)};
  }

  const CompositeSpace& space() const { return space_; }
  const CMatrix& matrix() const { return m_; }
  std::size_t dimension() const { return space_.dimension(); }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  Operator adjoint() const { return {space_, m_.adjoint()}; }

  /// Frobenius norm.
  double norm() const { return m_.norm(); }

  bool is_hermitian(double rel_tol = 1e-10) const {
    const double scale = std::max(1.0, norm());
    return (m_ - m_.adjoint()).norm() <= rel_tol * scale;
  }

  SparseMatrix sparse(double drop = 0.0) const {
    SparseMatrix s = m_.sparseView(1.0, drop);
    s.makeCompressed();
    return s;
  }

  CVector apply(const CVector& v) const { return m_ * v; }

  Operator& operator+=(const Operator& o) {
    check_same(o);
    m_ += o.m_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    check_same(o);
    m_ -= o.m_;
    return *this;
  }
  Operator& operator*=(cplx s) {
    m_ *= s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b) {
    a.check_same(b);
    return {a.space_, a.m_ * b.m_};
  }

 private:
  void check_same(const Operator& o) const {
    detail::require(space_ == o.space_, "operator spaces differ: " + to_string(space_) +
                                            " vs " + to_string(o.space_));
  }

  CompositeSpace space_;
  CMatrix m_;
};

inline Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

/// Sparse twin of Operator used by the propagators and large builders.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(CompositeSpace space, SparseMatrix m) : space_(std::move(space)), m_(std::move(m)) {
    const auto d = static_cast<Eigen::Index>(space_.dimension());
    detail::require(m_.rows() == d && m_.cols() == d,
                    "operator matrix does not match space dimension");
    m_.makeCompressed();
  }
  explicit SparseOperator(const Operator& dense)
      : SparseOperator(dense.space(), dense.sparse()) {}

  static SparseOperator zero(const CompositeSpace& s) {
    const auto d = static_cast<Eigen::Index>(s.dimension());
    return {s, SparseMatrix(d, d)};
  }
  static SparseOperator identity(const CompositeSpace& s) {
    const auto d = static_cast<Eigen::Index>(s.dimension());
    SparseMatrix m(d, d);
    m.setIdentity();
    return {s, std::move(m)};
  }

  const CompositeSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return m_; }
  std::size_t dimension() const { return space_.dimension(); }

  Operator dense() const { return {space_, CMatrix(m_)}; }
  SparseOperator adjoint() const { return {space_, SparseMatrix(m_.adjoint())}; }
  double norm() const { return m_.norm(); }

  SparseOperator& operator+=(const SparseOperator& o) {
    check_same(o);
    m_ += o.m_;
    m_.prune(cplx{0.0});
    return *this;
  }
  SparseOperator& operator-=(const SparseOperator& o) {
    check_same(o);
    m_ -= o.m_;
    m_.prune(cplx{0.0});
    return *this;
  }
  SparseOperator& operator*=(cplx s) {
    m_ *= s;
    return *this;
  }
  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(cplx s, SparseOperator a) { return a *= s; }
  friend SparseOperator operator*(SparseOperator a, cplx s) { return a *= s; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    a.check_same(b);
    SparseMatrix p = a.m_ * b.m_;
    return {a.space_, std::move(p)};
  }

 private:
  void check_same(const SparseOperator& o) const {
    detail::require(space_ == o.space_, "operator spaces differ");
  }

  CompositeSpace space_;
  SparseMatrix m_;
};

/// Normalized pure state. Construction rescales to unit norm.
class StateVector {
 public:
  StateVector() = default;
  StateVector(CompositeSpace space, CVector amps) : space_(std::move(space)), v_(std::move(amps)) {
    detail::require(static_cast<std::size_t>(v_.size()) == space_.dimension(),
                    "state vector does not match space dimension");
    const double n = v_.norm();
    detail::require(n > 0.0 && std::isfinite(n), "state vector has zero or non-finite norm");
    v_ /= n;
  }

  static StateVector basis(const CompositeSpace& s, std::span<const std::size_t> levels) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(s.dimension()));
    v(static_cast<Eigen::Index>(s.index_of(levels))) = 1.0;
    return {s, std::move(v)};
  }
  static StateVector basis(const CompositeSpace& s, std::initializer_list<std::size_t> levels) {
    std::vector<std::size_t> lv(levels);
    return basis(s, std::span<const std::size_t>(lv));
  }

  const CompositeSpace& space() const { return space_; }
  const CVector& amplitudes() const { return v_; }
  std::size_t dimension() const { return space_.dimension(); }
  cplx operator[](Eigen::Index i) const { return v_(i); }

  cplx inner(const StateVector& o) const { return v_.dot(o.v_); }  // <this|o>
  cplx expectation_complex(const Operator& op) const { return v_.dot(op.matrix() * v_); }
  double expectation(const Operator& op) const { return expectation_complex(op).real(); }

 private:
  CompositeSpace space_;
  CVector v_;
};

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<ModeSpace> modes = a.space().modes();
  modes.insert(modes.end(), b.space().modes().begin(), b.space().modes().end());
  CVector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a[i] * b.amplitudes();
  return {CompositeSpace(std::move(modes)), std::move(v)};
}

/// Density matrix validated on construction: Hermitian and unit trace
/// within 1e-10, eigenvalues >= -1e-8.
class DensityMatrix {
 public:
  struct Unchecked {};

  DensityMatrix() = default;
  DensityMatrix(CompositeSpace space, CMatrix m) : DensityMatrix(std::move(space), std::move(m), Unchecked{}) {
    validate();
  }
  DensityMatrix(CompositeSpace space, CMatrix m, Unchecked) : space_(std::move(space)), m_(std::move(m)) {
    const auto d = static_cast<Eigen::Index>(space_.dimension());
    detail::require(m_.rows() == d && m_.cols() == d,
                    "density matrix does not match space dimension");
  }

  static DensityMatrix pure(const StateVector& psi) {
    const CVector& v = psi.amplitudes();
    return {psi.space(), v * v.adjoint(), Unchecked{}};
  }

  const CompositeSpace& space() const { return space_; }
  const CMatrix& matrix() const { return m_; }
  std::size_t dimension() const { return space_.dimension(); }

  cplx trace() const { return m_.trace(); }
  double expectation(const Operator& op) const { return (m_ * op.matrix()).trace().real(); }
  double purity() const { return (m_ * m_).trace().real(); }
  /// <psi|rho|psi>
  double overlap(const StateVector& psi) const {
    return psi.amplitudes().dot(m_ * psi.amplitudes()).real();
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }

  void validate() const {
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) throw InvalidArgument("density matrix not Hermitian");
    if (std::abs(m_.trace() - cplx{1.0}) > 1e-10)
      throw InvalidArgument("density matrix trace differs from 1");
    if (min_eigenvalue() < -1e-8) throw InvalidArgument("density matrix has negative eigenvalue");
  }

 private:
  CompositeSpace space_;
  CMatrix m_;
};

}  // namespace kerrlhz
