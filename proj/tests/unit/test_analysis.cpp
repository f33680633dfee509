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
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "kerrlhz/analysis/fidelity.hpp"
#include "kerrlhz/analysis/wigner.hpp"
#include "kerrlhz/core/modes.hpp"

using namespace kerrlhz;

namespace {

constexpr double inv_pi = 1.0 / std::numbers::pi;

// (1/pi) <psi| D(beta) Pi D(beta)^dag |psi> with D built from the Hermitian
// generator on a much larger truncation, where the displacement is accurate.
double displaced_parity(const CMatrix& rho_small, double x, double p, Eigen::Index big = 70) {
  const cplx beta(x / std::numbers::sqrt2, p / std::numbers::sqrt2);
  const CMatrix a = mode_operators(ModeSpace::fock(static_cast<std::size_t>(big))).annihilation.matrix();
  const CMatrix g = cplx(0, -1) * (beta * a.adjoint() - std::conj(beta) * a);  // D = exp(i g)
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
  const CVector phases = (cplx(0, 1) * es.eigenvalues().cast<cplx>()).array().exp();
  const CMatrix d = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  CMatrix rho = CMatrix::Zero(big, big);
  rho.topLeftCorner(rho_small.rows(), rho_small.cols()) = rho_small;
  const CMatrix moved = d.adjoint() * rho * d;
  double w = 0;
  for (Eigen::Index n = 0; n < big; ++n) w += (n % 2 ? -1.0 : 1.0) * moved(n, n).real();
  return w * inv_pi;
}

DensityMatrix random_density(std::size_t dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cplx(nd(gen), nd(gen));
  CMatrix r = g * g.adjoint();
  r /= r.trace();
  r = 0.5 * (r + r.adjoint()).eval();
  return {CompositeSpace(ModeSpace::fock(dim)), r};
}

}  // namespace

TEST(Wigner, VacuumGaussian) {
  const auto vac = StateVector::basis(CompositeSpace(ModeSpace::fock(12)), {0});
  const auto xs = linspace(-2, 2, 9);
  const auto w = wigner(vac, xs, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      EXPECT_NEAR(w.values(i, j), inv_pi * std::exp(-(xs[i] * xs[i] + xs[j] * xs[j])), 1e-14);
  EXPECT_NEAR(w.values(4, 4), inv_pi, 1e-15);
}

TEST(Wigner, OddCatNegativeAtOrigin) {
  const auto cat = cat_state(std::sqrt(2.0), CatParity::odd, 20);
  const auto w = wigner(cat, {0.0}, {0.0});
  EXPECT_LT(w.values(0, 0), 0.0);
  EXPECT_NEAR(w.values(0, 0), -inv_pi, 1e-12);
}

TEST(Wigner, CoherentPeakLocation) {
  const double alpha = 1.2;
  const auto psi = coherent_state(alpha, 25);
  const auto xs = linspace(0.0, 3.4, 341), ps = linspace(-0.5, 0.5, 11);
  const auto w = wigner(psi, xs, ps);
  Eigen::Index i = 0, j = 0;
  w.values.maxCoeff(&i, &j);
  EXPECT_NEAR(xs[i], std::numbers::sqrt2 * alpha, 0.01);
  EXPECT_NEAR(ps[j], 0.0, 1e-12);
  EXPECT_NEAR(w.values(i, j), inv_pi, 1e-4);
}

TEST(Wigner, MatchesDisplacedParityOracle) {
  const auto rho = random_density(8, 3);
  const std::vector<double> xs{-1.3, 0.0, 0.4, 1.7}, ps{-0.8, 0.0, 1.1};
  const auto w = wigner(rho, xs, ps);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j)
      EXPECT_NEAR(w.values(i, j), displaced_parity(rho.matrix(), xs[i], ps[j]), 1e-10) << xs[i] << "," << ps[j];
}

TEST(Wigner, IntegratesToOne) {
  const auto cat = cat_state(std::sqrt(2.0), CatParity::even, 40);
  const auto xs = linspace(-6, 6, 121);
  EXPECT_NEAR(wigner(cat, xs, xs).integral(), 1.0, 1e-2);
}

TEST(Wigner, BoundedByInversePi) {
  for (unsigned seed = 0; seed < 4; ++seed) {
    const auto w = wigner(random_density(10, seed), linspace(-3, 3, 25), linspace(-3, 3, 25));
    EXPECT_LE(w.values.cwiseAbs().maxCoeff(), inv_pi * (1 + 1e-6));
  }
}

TEST(Wigner, RejectsGridBeyondTruncation) {
  const auto vac = StateVector::basis(CompositeSpace(ModeSpace::fock(4)), {0});
  EXPECT_THROW(wigner(vac, {5.0}, {0.0}), InvalidArgument);
  const auto two = StateVector::basis(CompositeSpace::repeat(ModeSpace::fock(4), 2), {0, 0});
  EXPECT_THROW(wigner(two, {0.0}, {0.0}), InvalidArgument);
}

TEST(CatFidelity, EvenOddAndMixture) {
  const cplx a = std::sqrt(2.0);
  const auto even = DensityMatrix::pure(cat_state(a, CatParity::even, 20));
  const auto odd = DensityMatrix::pure(cat_state(a, CatParity::odd, 20));
  EXPECT_NEAR(cat_fidelity(even, a), 1.0, 1e-12);
  EXPECT_NEAR(cat_fidelity(odd, a), 0.0, 1e-12);
  const DensityMatrix mix(even.space(), 0.5 * (even.matrix() + odd.matrix()));
  EXPECT_NEAR(cat_fidelity(mix, a), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(CatFidelity, SlotFormMatchesReducedState) {
  const cplx a = 1.3;
  const auto q = StateVector(CompositeSpace(ModeSpace::qutrit()), (CVector(3) << 0.8, 0.6, 0).finished());
  const auto r = cat_state(a, CatParity::even, 18);
  const auto c = coherent_state(a, 18);
  CVector mixed = 0.6 * tensor(q, r).amplitudes() + 0.8 * tensor(StateVector::basis(q.space(), {2}), c).amplitudes();
  const StateVector psi(tensor(q, r).space(), mixed);
  const auto rho_r = partial_trace(DensityMatrix::pure(psi), {1});
  EXPECT_NEAR(cat_fidelity(psi, 1, a), cat_fidelity(rho_r, a), 1e-12);
}

TEST(SpinReadout, ProductStates) {
  const double a = std::sqrt(2.0);
  const std::vector<std::size_t> dims{12, 12, 12};
  const std::vector<cplx> up{a, a, a}, mixed{-a, a, -a};
  const auto r1 = spin_readout(coherent_product(up, dims), a);
  EXPECT_EQ(r1.signs, (std::vector<int>{1, 1, 1}));
  EXPECT_NEAR(r1.fidelity, 1.0, 1e-12);
  const auto r2 = spin_readout(coherent_product(mixed, dims), a);
  EXPECT_EQ(r2.signs, (std::vector<int>{-1, 1, -1}));
  EXPECT_NEAR(r2.fidelity, 1.0, 1e-12);
  for (double w : r2.cat_weight) EXPECT_NEAR(w, 1.0, 1e-9);
  for (bool low : r2.low_confidence) EXPECT_FALSE(low);
}

TEST(SpinReadout, GlobalPhaseInvariant) {
  const double a = std::sqrt(2.0);
  const std::vector<std::size_t> dims{12, 12};
  const std::vector<cplx> al{a, -a};
  const auto psi = coherent_product(al, dims);
  const StateVector rotated(psi.space(), std::polar(1.0, 0.9) * psi.amplitudes());
  const auto r1 = spin_readout(psi, a), r2 = spin_readout(rotated, a);
  EXPECT_EQ(r1.signs, r2.signs);
  EXPECT_NEAR(r1.fidelity, r2.fidelity, 1e-14);
  EXPECT_NEAR(spin_readout(DensityMatrix::pure(psi), a).fidelity, r1.fidelity, 1e-12);
}

TEST(SpinReadout, AmbiguousAndLowConfidence) {
  const double a = std::sqrt(2.0);
  EXPECT_THROW(spin_readout(cat_state(a, CatParity::even, 14), a), NumericalError);
  // A Fock state |5> leans to neither side strongly and sits outside the cat span.
  CVector v = CVector::Zero(14);
  v(5) = 1.0;
  v(0) = 0.3;
  v(1) = 0.2;
  const auto r = spin_readout(StateVector(CompositeSpace(ModeSpace::fock(14)), v), a);
  EXPECT_TRUE(r.low_confidence[0]);
  EXPECT_GE(r.fidelity, 0.0);
  EXPECT_LE(r.fidelity, 1.0);
}
