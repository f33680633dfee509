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
#include <optional>

#include "kerrlhz/analysis/fidelity.hpp"
#include "kerrlhz/dynamics/evolution.hpp"
#include "kerrlhz/effective/hamiltonians.hpp"

namespace kerrlhz {

/// Omega(t) = Omega_p (1 - exp(-(t/tau)^4)); times in ns, amplitude in GHz.
struct DriveSchedule {
  double Omega_p = 0.035;
  double tau = 3000.0;
  double T = 5000.0;

  void validate() const { detail::require(tau > 0 && T > 0, "drive schedule: tau and T must be positive"); }
  double envelope(double t) const {
    const double u = t / tau;
    return 1.0 - std::exp(-(u * u) * (u * u));
  }
  double amplitude(double t) const { return Omega_p * envelope(t); }
};

struct CatRunOptions {
  std::size_t fock_dim = 30;
  std::size_t snapshots = 200;
  IntegratorOptions integrator{.keep_states = false};
};

struct CatRunResult {
  EvolutionResult evolution;    // n_avg, P_e, P_f, fidelity, photon_parity, parity
                                // parity is <(-1)^(a^dag a + n_q)>
  EffectiveKerrParams coeffs;   // full-order S, K and P at the schedule amplitude
  double frame_ghz = 0.0;       // rotating frame omega_p / 2 (equals the dressed resonator frequency)
};

namespace detail {

inline cplx cat_alpha(const EffectiveKerrParams& c, double env) {
  if (c.K == 0.0) return 0.0;
  return std::sqrt(cplx(c.P * env / c.K, 0.0));
}

}  // namespace detail

/// Drives the qutrit-resonator model from |g, 0> under the schedule. The run
/// is carried out in the frame rotating at omega_p / 2 on a^dag a + n_q, which
/// is exact; resonator observables there coincide with the frame that rotates
/// the resonator alone at the dressed frequency.
inline CatRunResult adiabatic_cat_run(const QutritResonatorParams& params, const DriveSchedule& sched,
                                      const std::optional<DissipationSpec>& diss = std::nullopt,
                                      const CatRunOptions& opt = {}) {
  sched.validate();
  QutritResonatorParams p = params;
  p.Omega_p = sched.Omega_p;
  CatRunResult out;
  out.coeffs = effective_kerr_params(p);
  out.frame_ghz = out.coeffs.omega_p / 2.0;
  const auto h = qutrit_resonator_rotating(p, opt.fock_dim, out.frame_ghz,
                                           [sched](double t) { return sched.envelope(t); });
  const auto& space = h.space();
  const auto grid = TimeGrid::uniform(0.0, sched.T, opt.snapshots);
  const auto fd = static_cast<Eigen::Index>(opt.fock_dim);
  const auto coeffs = out.coeffs;
  const auto psi0 = StateVector::basis(space, {qutrit_level::g, 0});
  if (!diss) {
    // Amplitude index = q * fock_dim + n.
    auto pop = [fd](const CVector& v, Eigen::Index q) { return v.segment(q * fd, fd).squaredNorm(); };
    std::vector<StateObservable> obs{
        {"n_avg",
         [fd](double, const CVector& v) {
           double s = 0;
           for (Eigen::Index i = 0; i < v.size(); ++i) s += static_cast<double>(i % fd) * std::norm(v(i));
           return s;
         }},
        {"P_e", [pop](double, const CVector& v) { return pop(v, 1); }},
        {"P_f", [pop](double, const CVector& v) { return pop(v, 2); }},
        {"fidelity",
         [&space, coeffs, sched](double t, const CVector& v) {
           return cat_fidelity(StateVector(space, v), 1, detail::cat_alpha(coeffs, sched.envelope(t)));
         }},
        {"photon_parity",
         [fd](double, const CVector& v) {
           double s = 0;
           for (Eigen::Index i = 0; i < v.size(); ++i) s += ((i % fd) % 2 == 0 ? 1.0 : -1.0) * std::norm(v(i));
           return s;
         }},
        {"parity",
         [fd](double, const CVector& v) {
           double s = 0;
           for (Eigen::Index i = 0; i < v.size(); ++i) s += ((i % fd + i / fd) % 2 == 0 ? 1.0 : -1.0) * std::norm(v(i));
           return s;
         }},
    };
    out.evolution = evolve_schrodinger(h, psi0, grid, opt.integrator, obs);
  } else {
    const auto o = qutrit_resonator_operators(opt.fock_dim);
    const CMatrix n_full = CMatrix(o.n);
    std::vector<DensityObservable> obs{
        {"n_avg", [n_full](double, const CMatrix& r) { return (r * n_full).trace().real(); }},
        {"P_e", [fd](double, const CMatrix& r) { return r.diagonal().segment(fd, fd).real().sum(); }},
        {"P_f", [fd](double, const CMatrix& r) { return r.diagonal().segment(2 * fd, fd).real().sum(); }},
        {"fidelity",
         [&space, coeffs, sched](double t, const CMatrix& r) {
           const auto red = partial_trace(DensityMatrix(space, r, DensityMatrix::Unchecked{}), {1});
           return cat_fidelity(red, detail::cat_alpha(coeffs, sched.envelope(t)));
         }},
        {"photon_parity",
         [fd](double, const CMatrix& r) {
           double s = 0;
           for (Eigen::Index i = 0; i < r.rows(); ++i) s += ((i % fd) % 2 == 0 ? 1.0 : -1.0) * r(i, i).real();
           return s;
         }},
        {"parity",
         [fd](double, const CMatrix& r) {
           double s = 0;
           for (Eigen::Index i = 0; i < r.rows(); ++i) s += ((i % fd + i / fd) % 2 == 0 ? 1.0 : -1.0) * r(i, i).real();
           return s;
         }},
    };
    out.evolution = evolve_lindblad(h, DensityMatrix::pure(psi0), *diss, grid, opt.integrator, obs);
  }
  return out;
}

/// The same protocol under K a^dag^2 a^2 - P(t)(a^dag^2 + a^2), P(t) = P envelope(t).
inline EvolutionResult adiabatic_kerr_run(double K, double P, const DriveSchedule& sched, std::size_t fock_dim = 30,
                                          std::size_t snapshots = 200, IntegratorOptions integ = {.keep_states = false}) {
  sched.validate();
  const auto ops = mode_operators(ModeSpace::fock(fock_dim));
  const CMatrix& a = ops.annihilation.matrix();
  const CMatrix ad = a.adjoint();
  TimeDependentOperator h(CompositeSpace(ModeSpace::fock(fock_dim)), CMatrix(K * ad * ad * a * a).sparseView());
  h.add(CMatrix(-P * (ad * ad + a * a)).sparseView(), [sched](double t) { return cplx(sched.envelope(t), 0.0); });
  const EffectiveKerrParams c{0.0, K, P, 0.0, 0.0};
  const auto fd = static_cast<Eigen::Index>(fock_dim);
  std::vector<StateObservable> obs{
      {"n_avg",
       [fd](double, const CVector& v) {
         double s = 0;
         for (Eigen::Index i = 0; i < fd; ++i) s += static_cast<double>(i) * std::norm(v(i));
         return s;
       }},
      {"fidelity",
       [&h, c, sched](double t, const CVector& v) {
         return cat_fidelity(StateVector(h.space(), v), 0, detail::cat_alpha(c, sched.envelope(t)));
       }},
  };
  return evolve_schrodinger(h, StateVector::basis(h.space(), {0}), TimeGrid::uniform(0.0, sched.T, snapshots), integ,
                            obs);
}

}  // namespace kerrlhz
