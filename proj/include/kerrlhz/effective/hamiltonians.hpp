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
#include <functional>

#include "kerrlhz/core/modes.hpp"
#include "kerrlhz/core/time_dependent.hpp"
#include "kerrlhz/core/units.hpp"
#include "kerrlhz/effective/dispersive.hpp"

namespace kerrlhz {

/// K a^dag^2 a^2 - P (a^dag^2 + a^2) on a truncated Fock mode, in the units of K and P.
inline Operator kerr_hamiltonian_rotating(double K, double P, std::size_t dim) {
  const CompositeSpace s(ModeSpace::fock(dim));
  const auto ops = mode_operators(s[0]);
  const CMatrix& a = ops.annihilation.matrix();
  const CMatrix ad = a.adjoint();
  return Operator(s, K * ad * ad * a * a - P * (ad * ad + a * a));
}

/// Embedded operators on qutrit (slot 0) x Fock (slot 1).
struct QutritResonatorOperators {
  CompositeSpace space;
  SparseMatrix a, adag, n;
  std::array<std::array<SparseMatrix, 3>, 3> proj;  // |j><k| (x) 1
};

inline QutritResonatorOperators qutrit_resonator_operators(std::size_t fock_dim) {
  CompositeSpace space({ModeSpace::qutrit(), ModeSpace::fock(fock_dim)});
  const auto fock = mode_operators(space[1]);
  const auto q = mode_operators(space[0]);
  QutritResonatorOperators out{space, {}, {}, {}, {}};
  out.a = tensor_embed_sparse(fock.annihilation, space, 1).matrix();
  out.adag = out.a.adjoint();
  out.n = tensor_embed_sparse(fock.number, space, 1).matrix();
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) out.proj[j][k] = tensor_embed_sparse((*q.projector)[j][k], space, 0).matrix();
  return out;
}

namespace detail {

/// Coupling operators g_ge |g><e| a^dag, g_ef |e><f| a^dag, g_gf |g><f| a^dag (no h.c.).
inline std::array<SparseMatrix, 3> coupling_lowering(const QutritResonatorParams& p,
                                                     const QutritResonatorOperators& o) {
  using namespace qutrit_level;
  SparseMatrix ge = p.g_ge * SparseMatrix(o.proj[g][e] * o.adag);
  SparseMatrix ef = p.g_ef * SparseMatrix(o.proj[e][f] * o.adag);
  SparseMatrix gf = p.g_gf * SparseMatrix(o.proj[g][f] * o.adag);
  return {ge, ef, gf};
}

}  // namespace detail

/// Undriven qutrit-resonator Hamiltonian in the lab frame (GHz).
inline SparseMatrix qutrit_resonator_static(const QutritResonatorParams& p, const QutritResonatorOperators& o) {
  using namespace qutrit_level;
  p.validate();
  SparseMatrix h = p.omega_c * o.n + p.eps_e * o.proj[e][e] + p.eps_f * o.proj[f][f];
  for (const auto& c : detail::coupling_lowering(p, o)) {
    SparseMatrix adj = c.adjoint();
    h += c + adj;
  }
  return h;
}

/// Lab-frame Hamiltonian with the drive tone at time t (ns), drive amplitudes
/// multiplied by drive_scale. Entries in GHz.
inline Operator full_qutrit_resonator_hamiltonian(const QutritResonatorParams& p, double t, double drive_scale,
                                                  std::size_t fock_dim = 30) {
  using namespace qutrit_level;
  const auto o = qutrit_resonator_operators(fock_dim);
  SparseMatrix h = qutrit_resonator_static(p, o);
  if (drive_scale != 0.0 && (p.Omega_p != 0.0 || p.Omega_ge != 0.0 || p.Omega_ef != 0.0)) {
    const double wp = effective_kerr_params(p).omega_p;
    const cplx ph = drive_scale * std::polar(1.0, -units::two_pi * wp * t);
    SparseMatrix up = p.Omega_ge * o.proj[e][g] + p.Omega_ef * o.proj[f][e] + p.Omega_p * o.proj[f][g];
    SparseMatrix down = up.adjoint();
    h += ph * up + std::conj(ph) * down;
  }
  return Operator(o.space, CMatrix(h));
}

/// Same model in the frame rotating at frame_ghz on a^dag a + n_q with
/// n_q(g, e, f) = (0, 1, 2). Exact for any frame; frame_ghz = omega_p / 2
/// makes the g-f drive static. envelope(t) multiplies every drive amplitude.
inline TimeDependentOperator qutrit_resonator_rotating(const QutritResonatorParams& p, std::size_t fock_dim,
                                                       double frame_ghz, std::function<double(double)> envelope) {
  using namespace qutrit_level;
  const auto o = qutrit_resonator_operators(fock_dim);
  const double wp = effective_kerr_params(p).omega_p;
  const double wr = frame_ghz;
  SparseMatrix h0 = (p.omega_c - wr) * o.n + (p.eps_e - wr) * o.proj[e][e] + (p.eps_f - 2.0 * wr) * o.proj[f][f];
  auto c = detail::coupling_lowering(p, o);
  // g-e and e-f couplings conserve the excitation number; g-f lowers it by one.
  h0 += c[0] + SparseMatrix(c[0].adjoint()) + c[1] + SparseMatrix(c[1].adjoint());
  TimeDependentOperator h(o.space, h0);
  const double w_gf = units::two_pi * wr;  // |g><f| a^dag picks up e^{-i w_r t}
  if (p.g_gf != 0.0) h.add_hermitian_pair(c[2], [w_gf](double t) { return std::polar(1.0, -w_gf * t); });
  // Drive: |f><g| carries e^{i(2 w_r - w_p) t}; |e><g|, |f><e| carry e^{i(w_r - w_p) t}.
  const double d2 = units::two_pi * (2.0 * wr - wp), d1 = units::two_pi * (wr - wp);
  if (p.Omega_p != 0.0) {
    SparseMatrix op = p.Omega_p * o.proj[f][g];
    h.add_hermitian_pair(op, [envelope, d2](double t) { return envelope(t) * std::polar(1.0, d2 * t); });
  }
  if (p.Omega_ge != 0.0 || p.Omega_ef != 0.0) {
    SparseMatrix op = p.Omega_ge * o.proj[e][g] + p.Omega_ef * o.proj[f][e];
    h.add_hermitian_pair(op, [envelope, d1](double t) { return envelope(t) * std::polar(1.0, d1 * t); });
  }
  return h;
}

}  // namespace kerrlhz
