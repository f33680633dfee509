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

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "gtest/gtest.h"

#include "kerrlhz/core/linalg.hpp"
#include "kerrlhz/core/modes.hpp"
#include "kerrlhz/core/states.hpp"

using namespace kerrlhz;

namespace {

CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(m);
  return qr.householderQ();
}

CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

DensityMatrix random_density(const CompositeSpace& s, std::mt19937_64& rng) {
  const auto d = static_cast<Eigen::Index>(s.dimension());
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return {s, rho};
}

}  // namespace

TEST(ModeSpace, KindsFixDimension) {
  EXPECT_EQ(ModeSpace::qutrit().dim(), 3u);
  EXPECT_EQ(ModeSpace::spin_half().dim(), 2u);
  EXPECT_THROW(ModeSpace::fock(1), InvalidArgument);
  CompositeSpace s({ModeSpace::qutrit(), ModeSpace::fock(5)});
  EXPECT_EQ(s.dimension(), 15u);
  std::vector<std::size_t> lv{2, 3};
  EXPECT_EQ(s.index_of(lv), 13u);
  EXPECT_EQ(s.levels_of(13), lv);
}

TEST(ModeOperators, LadderOnFockDim3) {
  auto ops = mode_operators(ModeSpace::fock(3));
  const CMatrix& a = ops.annihilation.matrix();
  for (Eigen::Index r = 0; r < 3; ++r)
    for (Eigen::Index c = 0; c < 3; ++c) {
      cplx expect = 0.0;
      if (r == 0 && c == 1) expect = 1.0;
      if (r == 1 && c == 2) expect = std::sqrt(2.0);
      EXPECT_EQ(a(r, c), expect) << r << "," << c;
    }
  EXPECT_TRUE((ops.creation.matrix() - a.adjoint()).norm() == 0.0);
  EXPECT_TRUE((ops.number.matrix() - ops.creation.matrix() * a).norm() == 0.0);
}

TEST(ModeOperators, QutritProjector) {
  auto ops = mode_operators(ModeSpace::qutrit());
  ASSERT_TRUE(ops.projector.has_value());
  const CMatrix& ge = (*ops.projector)[qutrit_level::g][qutrit_level::e].matrix();
  EXPECT_EQ(ge(0, 1), cplx(1.0));
  EXPECT_DOUBLE_EQ(ge.cwiseAbs().sum(), 1.0);
  EXPECT_FALSE(mode_operators(ModeSpace::fock(4)).projector.has_value());
}

TEST(ModeOperators, TruncatedCommutator) {
  // [a, a^dag] = 1 except the last diagonal entry, which is 1 - 20.
  auto ops = mode_operators(ModeSpace::fock(20));
  CMatrix c = commutator(ops.annihilation, ops.creation).matrix();
  for (Eigen::Index i = 0; i < 20; ++i)
    for (Eigen::Index j = 0; j < 20; ++j) {
      const double expect = i == j ? (i == 19 ? -19.0 : 1.0) : 0.0;
      EXPECT_NEAR(std::abs(c(i, j) - expect), 0.0, 1e-12);
    }
}

TEST(TensorEmbed, IdentityAndKron) {
  CompositeSpace s({ModeSpace::fock(2), ModeSpace::fock(2)});
  auto ops = mode_operators(ModeSpace::fock(2));
  EXPECT_EQ((tensor_embed(ops.identity, s, 1).matrix() - CMatrix::Identity(4, 4)).norm(), 0.0);
  // a on slot 0 is a (x) I: <0,q| A |1,q> = 1.
  CMatrix a0 = tensor_embed(ops.annihilation, s, 0).matrix();
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 2) = 1.0;
  expect(1, 3) = 1.0;
  EXPECT_EQ((a0 - expect).norm(), 0.0);
}

TEST(TensorEmbed, Errors) {
  CompositeSpace s({ModeSpace::fock(2), ModeSpace::qutrit()});
  auto ops = mode_operators(ModeSpace::fock(2));
  EXPECT_THROW(tensor_embed(ops.annihilation, s, 2), InvalidArgument);
  EXPECT_THROW(tensor_embed(ops.annihilation, s, 1), InvalidArgument);
}

TEST(TensorEmbed, PropertyMultiplicativeAndCommuting) {
  std::mt19937_64 rng(7);
  CompositeSpace s({ModeSpace::fock(3), ModeSpace::qutrit(), ModeSpace::spin_half()});
  for (int trial = 0; trial < 20; ++trial) {
    for (std::size_t slot = 0; slot < 3; ++slot) {
      const auto d = static_cast<Eigen::Index>(s[slot].dim());
      Operator a(CompositeSpace(s[slot]), CMatrix::Random(d, d));
      Operator b(CompositeSpace(s[slot]), CMatrix::Random(d, d));
      auto lhs = tensor_embed(a * b, s, slot).matrix();
      auto rhs = (tensor_embed(a, s, slot) * tensor_embed(b, s, slot)).matrix();
      EXPECT_LT((lhs - rhs).norm(), 1e-12);
      const std::size_t other = (slot + 1) % 3;
      const auto d2 = static_cast<Eigen::Index>(s[other].dim());
      Operator c(CompositeSpace(s[other]), CMatrix::Random(d2, d2));
      EXPECT_EQ(commutator(tensor_embed(a, s, slot), tensor_embed(c, s, other)).norm(), 0.0);
    }
  }
}

TEST(CoherentState, VacuumAndOverlap) {
  auto vac = coherent_state(0.0, 10);
  EXPECT_EQ(vac[0], cplx(1.0));
  const double a = std::sqrt(2.0);
  auto plus = coherent_state(a, 40);
  auto minus = coherent_state(-a, 40);
  EXPECT_NEAR(plus.inner(minus).real(), std::exp(-4.0), 1e-12);
  EXPECT_NEAR(std::exp(-4.0), 0.018316, 1e-6);
}

TEST(CoherentState, MeanPhotonNumberSeriesOracle) {
  // Independent series: <n> = sum n |c_n|^2 with c_n from lgamma, renormalized.
  const double a2 = 2.0;
  double num = 0.0, den = 0.0;
  for (int n = 0; n < 20; ++n) {
    const double w = std::exp(-a2 + n * std::log(a2) - std::lgamma(n + 1.0));
    num += n * w;
    den += w;
  }
  auto psi = coherent_state(std::sqrt(a2), 20);
  auto ops = mode_operators(ModeSpace::fock(20));
  EXPECT_NEAR(psi.expectation(ops.number), num / den, 1e-12);
  EXPECT_NEAR(psi.expectation(ops.number), 2.0, 1e-6);
}

TEST(CoherentState, TailDiagnostic) {
  EXPECT_LT(coherent_tail_mass(std::sqrt(2.0), 30), 1e-10);
  EXPECT_LT(coherent_tail_mass(std::sqrt(5.66), 30), 1e-10);
  try {
    coherent_state(3.0, 8);
    FAIL() << "expected truncation error";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("tail mass"), std::string::npos);
  }
}

TEST(CatState, ParityAndNormalization) {
  EXPECT_EQ(cat_state(0.0, CatParity::even, 10)[0], cplx(1.0));
  EXPECT_THROW(cat_state(0.0, CatParity::odd, 10), InvalidArgument);
  for (double a : {0.3, 1.0, 1.7, 2.2}) {
    auto even = cat_state(a, CatParity::even, 30);
    auto odd = cat_state(a, CatParity::odd, 30);
    for (Eigen::Index n = 1; n < 30; n += 2) EXPECT_EQ(even[n], cplx(0.0));
    for (Eigen::Index n = 0; n < 30; n += 2) EXPECT_EQ(odd[n], cplx(0.0));
    EXPECT_NEAR(even.amplitudes().norm(), 1.0, 1e-14);
  }
}

TEST(CatState, OverlapWithCoherentNormalizationOracle) {
  // <alpha|C+> = (1 + e^{-2a^2}) / sqrt(2 (1 + e^{-2a^2})) = sqrt((1+e^{-2a^2})/2)
  const double a = std::sqrt(2.0);
  const double expect = (1.0 + std::exp(-4.0)) / std::sqrt(2.0 * (1.0 + std::exp(-4.0)));
  auto cat = cat_state(a, CatParity::even, 30);
  auto coh = coherent_state(a, 30);
  EXPECT_NEAR(std::abs(coh.inner(cat)), expect, 1e-10);
  EXPECT_NEAR(std::abs(coh.inner(cat)), std::sqrt((1.0 + std::exp(-4.0)) / 2.0), 1e-10);
}

TEST(Eigensystem, SimpleSpectra) {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  Operator op(CompositeSpace(ModeSpace::fock(3)), d);
  auto es = hermitian_eigensystem(op);
  EXPECT_NEAR(es.values(0), 1, 1e-14);
  EXPECT_NEAR(es.values(1), 2, 1e-14);
  EXPECT_NEAR(es.values(2), 3, 1e-14);
  auto sx = hermitian_eigensystem(sigma_x());
  EXPECT_NEAR(sx.values(0), -1, 1e-14);
  EXPECT_NEAR(sx.values(1), 1, 1e-14);
  auto num = hermitian_eigensystem(mode_operators(ModeSpace::fock(5)).number, 5);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(num.values(i), i, 1e-14);
  EXPECT_THROW(hermitian_eigensystem(mode_operators(ModeSpace::fock(5)).annihilation),
               InvalidArgument);
}

TEST(Eigensystem, ResidualAndUnitaryInvariance) {
  std::mt19937_64 rng(11);
  CompositeSpace s({ModeSpace::fock(4), ModeSpace::qutrit()});
  for (int trial = 0; trial < 10; ++trial) {
    Operator h(s, random_hermitian(12, rng));
    auto es = hermitian_eigensystem(h);
    for (Eigen::Index i = 0; i < 12; ++i) {
      const double resid = (h.matrix() * es.vectors.col(i) - es.values(i) * es.vectors.col(i)).norm();
      EXPECT_LE(resid, 1e-9 * h.norm());
    }
    CMatrix u = random_unitary(12, rng);
    Operator h2(s, u * h.matrix() * u.adjoint());
    h2 = Operator(s, (h2.matrix() + h2.matrix().adjoint()) / 2.0);
    auto es2 = hermitian_eigensystem(h2);
    for (Eigen::Index i = 0; i < 12; ++i)
      EXPECT_NEAR(es.values(i), es2.values(i), 1e-9 * std::max(1.0, std::abs(es.values(i))));
  }
}

TEST(Eigensystem, LanczosMatchesDense) {
  std::mt19937_64 rng(3);
  const Eigen::Index n = 600;
  // Sparse banded Hermitian matrix with a spread diagonal.
  std::vector<Eigen::Triplet<cplx>> t;
  std::normal_distribution<double> g;
  for (Eigen::Index i = 0; i < n; ++i) {
    t.emplace_back(i, i, cplx(0.05 * static_cast<double>(i) + g(rng), 0));
    for (Eigen::Index k = 1; k <= 3 && i + k < n; ++k) {
      cplx v(g(rng) * 0.3, g(rng) * 0.3);
      t.emplace_back(i, i + k, v);
      t.emplace_back(i + k, i, std::conj(v));
    }
  }
  SparseMatrix h(n, n);
  h.setFromTriplets(t.begin(), t.end());
  auto lz = lowest_eigenpairs(h, 3);
  Eigen::SelfAdjointEigenSolver<CMatrix> es{CMatrix(h)};
  for (Eigen::Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(lz.values(i), es.eigenvalues()(i), 1e-9);
    EXPECT_LT((h * lz.vectors.col(i) - lz.values(i) * lz.vectors.col(i)).norm(), 1e-8);
  }
}

TEST(PartialTrace, ProductAndBell) {
  std::mt19937_64 rng(5);
  CompositeSpace a(ModeSpace::fock(3)), b(ModeSpace::qutrit());
  auto ra = random_density(a, rng);
  auto rb = random_density(b, rng);
  CMatrix prod = Eigen::kroneckerProduct(ra.matrix(), rb.matrix());
  DensityMatrix rho(CompositeSpace({ModeSpace::fock(3), ModeSpace::qutrit()}), prod);
  EXPECT_LT((partial_trace(rho, {0}).matrix() - ra.matrix()).norm(), 1e-12);
  EXPECT_LT((partial_trace(rho, {1}).matrix() - rb.matrix()).norm(), 1e-12);

  CompositeSpace two = CompositeSpace::repeat(ModeSpace::spin_half(), 2);
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0;
  auto psi = StateVector(two, bell);
  auto bell_rho = DensityMatrix::pure(psi);
  EXPECT_LT((partial_trace(bell_rho, {0}).matrix() - CMatrix::Identity(2, 2) / 2.0).norm(), 1e-14);
  EXPECT_LT((reduced_state(psi, {1}).matrix() - CMatrix::Identity(2, 2) / 2.0).norm(), 1e-14);
  EXPECT_THROW(partial_trace(bell_rho, {2}), InvalidArgument);
  EXPECT_THROW(partial_trace(bell_rho, std::span<const std::size_t>{}), InvalidArgument);
}

TEST(PartialTrace, PropertyTracePreserved) {
  std::mt19937_64 rng(9);
  CompositeSpace s({ModeSpace::spin_half(), ModeSpace::fock(3), ModeSpace::qutrit()});
  for (int trial = 0; trial < 10; ++trial) {
    auto rho = random_density(s, rng);
    for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
      auto red = partial_trace(rho, keep);
      EXPECT_NEAR(red.trace().real(), 1.0, 1e-12);
      red.validate();
    }
  }
}

TEST(DensityMatrix, Validation) {
  CompositeSpace s(ModeSpace::fock(2));
  CMatrix bad = CMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix(s, bad), InvalidArgument);
  CMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix(s, neg), InvalidArgument);
}
