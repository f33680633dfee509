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
#include <cmath>
#include <string>
#include <vector>

#include "kerrlhz/core/linalg.hpp"
#include "kerrlhz/core/modes.hpp"
#include "kerrlhz/core/time_dependent.hpp"
#include "kerrlhz/core/units.hpp"

namespace kerrlhz {

/// Three resonators sharing a pumped junction mode. Frequencies and E_J in GHz.
struct ThreeModeParams {
  double omega_q = 5.0;
  std::array<double, 3> omega{6.0, 7.1, 7.8};
  double E_J = 21.0;
  double phi_q = 0.35;
  std::array<double, 3> phi{0.03, 0.03, 0.03};
  double eps_p = 0.15;
  double omega_d = 5.3;

  double xi_p() const {
    if (omega_d == omega_q) throw InvalidArgument("three-mode: pump resonant with the qubit mode");
    return eps_p / (omega_d - omega_q);
  }
};

/// Pair order for cross-Kerr arrays: (1,2), (1,3), (2,3).
inline constexpr std::array<std::array<std::size_t, 2>, 3> resonator_pairs{{{0, 1}, {0, 2}, {1, 2}}};

struct ThreeBodyCoeffs {
  double xi_p = 0, J123 = 0, K_q = 0;
  std::array<double, 3> K{}, K_qj{};
  std::array<double, 3> K_jk{};  // per resonator_pairs
  double stark_q = 0;            // 2 K_q |xi_p|^2
  std::array<double, 3> stark{};  // K_qj |xi_p|^2
  double omega_d = 0;
};

inline ThreeBodyCoeffs three_mode_coefficients(const ThreeModeParams& p) {
  ThreeBodyCoeffs c;
  c.xi_p = p.xi_p();
  c.omega_d = p.omega_d;
  c.J123 = -p.E_J * p.phi[0] * p.phi[1] * p.phi[2] * p.phi_q * c.xi_p;
  c.K_q = -p.E_J * std::pow(p.phi_q, 4) / 4.0;
  const double xi2 = c.xi_p * c.xi_p;
  c.stark_q = 2.0 * c.K_q * xi2;
  for (std::size_t j = 0; j < 3; ++j) {
    c.K[j] = -p.E_J * std::pow(p.phi[j], 4) / 4.0;
    c.K_qj[j] = -p.E_J * p.phi_q * p.phi_q * p.phi[j] * p.phi[j];
    c.stark[j] = c.K_qj[j] * xi2;
  }
  for (std::size_t k = 0; k < 3; ++k) {
    const auto [i, j] = resonator_pairs[k];
    c.K_jk[k] = -p.E_J * p.phi[i] * p.phi[i] * p.phi[j] * p.phi[j];
  }
  return c;
}

/// Modes whose phase spread phi sqrt(n_max) exceeds 0.5 for the given dims
/// (resonators 1..3, then the qubit mode).
inline std::vector<std::string> small_phase_warnings(const ThreeModeParams& p, std::array<std::size_t, 4> dims) {
  std::vector<std::string> out;
  const std::array<double, 4> phis{p.phi[0], p.phi[1], p.phi[2], p.phi_q};
  const char* names[] = {"resonator 1", "resonator 2", "resonator 3", "qubit mode"};
  for (std::size_t m = 0; m < 4; ++m) {
    const double spread = phis[m] * std::sqrt(static_cast<double>(dims[m] - 1));
    if (spread > 0.5) out.push_back(std::string(names[m]) + ": phi sqrt(n_max) = " + std::to_string(spread));
  }
  return out;
}

enum class ThreeModeFrame { resonant, lab };
enum class CosineOrder { quartic, cosine_exact };

namespace detail {

inline SparseMatrix three_body_hop(const SlotOperators& s) {
  return SparseMatrix(s.adag[0].matrix() * s.adag[1].matrix()) * s.a[2].matrix();
}

inline SparseMatrix kerr_terms(const ThreeBodyCoeffs& c, const SlotOperators& s) {
  const auto d = s.a[0].matrix().rows();
  SparseMatrix h(d, d);
  for (std::size_t j = 0; j < 3; ++j) {
    const SparseMatrix& a = s.a[j].matrix();
    const SparseMatrix& ad = s.adag[j].matrix();
    h += c.K[j] * SparseMatrix(ad * ad * a * a);
  }
  // Each unordered pair once: a_j^dag a_k^dag a_j a_k = n_j n_k.
  for (std::size_t k = 0; k < 3; ++k) {
    const auto [i, j] = resonator_pairs[k];
    h += c.K_jk[k] * SparseMatrix(s.n[i].matrix() * s.n[j].matrix());
  }
  return h;
}

}  // namespace detail

/// Effective three-resonator model on fock^3, entries in GHz. `resonant` is the
/// interaction picture at omega_d = omega_1 + omega_2 - omega_3; `lab` carries
/// the bare frequencies and pump phases at time t.
inline Operator three_mode_effective_hamiltonian(const ThreeBodyCoeffs& c, std::array<double, 3> frequencies,
                                                 ThreeModeFrame frame, double t, bool include_kerr,
                                                 std::size_t dim = 12) {
  const auto space = CompositeSpace::repeat(ModeSpace::fock(dim), 3);
  const auto s = slot_ladders(space);
  const SparseMatrix hop = detail::three_body_hop(s);
  const SparseMatrix hop_dag = hop.adjoint();
  const auto d = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix h(d, d);
  if (frame == ThreeModeFrame::resonant) {
    h = c.J123 * (hop + hop_dag);
  } else {
    for (std::size_t j = 0; j < 3; ++j) h += frequencies[j] * s.n[j].matrix();
    const cplx ph = std::polar(1.0, -units::two_pi * c.omega_d * t);
    SparseMatrix hc = (c.J123 * ph) * hop;
    h += hc + SparseMatrix(hc.adjoint());
  }
  if (include_kerr) h += detail::kerr_terms(c, s);
  return Operator(space, CMatrix(h));
}

/// Resonators in slots 0..2 and the junction mode in slot 3; dims in that order.
inline CompositeSpace three_mode_space(std::array<std::size_t, 4> dims) {
  return CompositeSpace({ModeSpace::fock(dims[0]), ModeSpace::fock(dims[1]), ModeSpace::fock(dims[2]),
                         ModeSpace::fock(dims[3])});
}

/// Undriven part plus the pump term 2 eps_p cos(omega_d t)(a_q + a_q^dag), GHz.
/// The junction nonlinearity is -E_J (cos phi + phi^2/2 - 1), either truncated at
/// quartic order or evaluated as a matrix function of the truncated phase.
inline TimeDependentOperator three_mode_full_model(const ThreeModeParams& p, CosineOrder order,
                                                   std::array<std::size_t, 4> dims) {
  const auto space = three_mode_space(dims);
  const auto s = slot_ladders(space);
  const auto d = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix phi(d, d);
  const std::array<double, 4> phis{p.phi[0], p.phi[1], p.phi[2], p.phi_q};
  const std::array<double, 4> freqs{p.omega[0], p.omega[1], p.omega[2], p.omega_q};
  SparseMatrix h(d, d);
  for (std::size_t m = 0; m < 4; ++m) {
    phi += phis[m] * (s.a[m].matrix() + s.adag[m].matrix());
    h += freqs[m] * s.n[m].matrix();
  }
  if (order == CosineOrder::quartic) {
    const SparseMatrix phi2 = phi * phi;
    h += (-p.E_J / 24.0) * SparseMatrix(phi2 * phi2);
  } else {
    for (auto dm : dims)
      if (dm < 4) throw InvalidArgument("three-mode cosine-exact: each mode needs at least 4 levels");
    if (d > 4096) throw InvalidArgument("three-mode cosine-exact: dense dimension above 4096");
    Eigen::SelfAdjointEigenSolver<CMatrix> es{CMatrix(phi)};
    const RVector x = es.eigenvalues();
    RVector fx(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) fx(i) = std::cos(x(i)) + 0.5 * x(i) * x(i) - 1.0;
    const CMatrix nl = es.eigenvectors() * fx.asDiagonal() * es.eigenvectors().adjoint();
    h += SparseMatrix((-p.E_J * nl).sparseView(1e-300));
  }
  TimeDependentOperator out(space, h);
  SparseMatrix x_q = s.a[3].matrix() + s.adag[3].matrix();
  const double wd = units::two_pi * p.omega_d, amp = 2.0 * p.eps_p;
  if (p.eps_p != 0.0) out.add(std::move(x_q), [wd, amp](double t) { return cplx(amp * std::cos(wd * t), 0.0); });
  return out;
}

inline Operator three_mode_full_hamiltonian(const ThreeModeParams& p, double t, CosineOrder order,
                                            std::array<std::size_t, 4> dims) {
  return three_mode_full_model(p, order, dims).at(t);
}

}  // namespace kerrlhz
