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
#include <string>
#include <utility>
#include <vector>

#include "kerrlhz/core/linalg.hpp"
#include "kerrlhz/core/modes.hpp"
#include "kerrlhz/core/time_dependent.hpp"
#include "kerrlhz/core/units.hpp"
#include "kerrlhz/dynamics/integrator.hpp"

namespace kerrlhz {

/// Relaxation rates in inverse microseconds.
struct DissipationSpec {
  double kappa = 0.0;
  double gamma_ge = 0.0;
  double gamma_ef = 0.0;
  double gamma_gf = 0.0;

  void validate() const {
    detail::require(kappa >= 0 && gamma_ge >= 0 && gamma_ef >= 0 && gamma_gf >= 0,
                    "dissipation rates must be non-negative");
  }
  /// Resonator lifetime 500 us; qutrit lifetimes 1.5 us (g-e, g-f) and 1.0 us (e-f).
  static DissipationSpec reference() { return {1.0 / 500.0, 1.0 / 1.5, 1.0 / 1.0, 1.0 / 1.5}; }
};

struct CollapseOperator {
  double rate = 0.0;  // per ns
  SparseMatrix op;
};

/// kappa L[a] on every Fock slot and the three qutrit decay channels on every
/// qutrit slot. Spin-half slots are not damped.
inline std::vector<CollapseOperator> collapse_operators(const DissipationSpec& d, const CompositeSpace& space) {
  d.validate();
  std::vector<CollapseOperator> out;
  for (std::size_t s = 0; s < space.num_modes(); ++s) {
    const auto ops = mode_operators(space[s]);
    if (space[s].kind() == ModeKind::fock && d.kappa > 0) {
      out.push_back({units::per_ns(d.kappa), tensor_embed_sparse(ops.annihilation, space, s).matrix()});
    } else if (space[s].kind() == ModeKind::qutrit) {
      using namespace qutrit_level;
      const std::pair<double, const Operator*> ch[] = {{d.gamma_ge, &(*ops.projector)[g][e]},
                                                       {d.gamma_ef, &(*ops.projector)[e][f]},
                                                       {d.gamma_gf, &(*ops.projector)[g][f]}};
      for (auto [rate, op] : ch)
        if (rate > 0) out.push_back({units::per_ns(rate), tensor_embed_sparse(*op, space, s).matrix()});
    }
  }
  return out;
}

/// Snapshots and named observable series from one evolution.
struct EvolutionResult {
  std::vector<double> times;
  std::vector<StateVector> states;       // unitary runs
  std::vector<DensityMatrix> densities;  // dissipative runs
  std::vector<std::string> names;
  std::vector<std::vector<double>> series;
  IntegrationStats stats;
  double max_norm_drift = 0.0;   // | ||psi|| - 1 |
  double max_trace_drift = 0.0;  // | tr rho - 1 |
  double min_eigenvalue = 0.0;   // lowest snapshot eigenvalue of rho

  const std::vector<double>& observable(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return series[i];
    throw InvalidArgument("no observable named " + name);
  }
};

struct StateObservable {
  std::string name;
  std::function<double(double, const CVector&)> fn;
};
struct DensityObservable {
  std::string name;
  std::function<double(double, const CMatrix&)> fn;
};

namespace detail {

inline void check_hermitian_at(const TimeDependentOperator& h, double t) {
  const SparseMatrix m = h.sparse_at(t);
  const SparseMatrix diff = m - SparseMatrix(m.adjoint());
  if (diff.norm() > 1e-10 * std::max(1.0, m.norm()))
    throw InvalidArgument("Hamiltonian is not Hermitian at t = " + std::to_string(t) + " ns");
}

template <class Obs>
void init_series(EvolutionResult& r, const std::vector<Obs>& obs, std::size_t n) {
  for (const auto& o : obs) {
    r.names.push_back(o.name);
    r.series.emplace_back(n, 0.0);
  }
}

}  // namespace detail

/// i d|psi>/dt = 2 pi H(t) |psi> with H in GHz and t in ns.
inline EvolutionResult evolve_schrodinger(const TimeDependentOperator& h, const StateVector& psi0,
                                          const TimeGrid& grid, const IntegratorOptions& opt = {},
                                          const std::vector<StateObservable>& obs = {}) {
  detail::require(psi0.space() == h.space(), "evolve_schrodinger: state and Hamiltonian spaces differ");
  const auto n = static_cast<Eigen::Index>(h.dimension());
  detail::PackedState x(2 * n);
  Eigen::Map<CVector>(reinterpret_cast<cplx*>(x.data()), n) = psi0.amplitudes();
  EvolutionResult r;
  detail::init_series(r, obs, grid.times.size());
  CVector scratch(n);
  auto rhs = [&](const detail::PackedState& s, detail::PackedState& ds, double t) {
    Eigen::Map<const CVector> psi(reinterpret_cast<const cplx*>(s.data()), n);
    Eigen::Map<CVector> dpsi(reinterpret_cast<cplx*>(ds.data()), n);
    h.apply(t, psi, scratch);
    dpsi = cplx(0.0, -units::two_pi) * scratch;
  };
  auto snap = [&](std::size_t i, double t, const detail::PackedState& s) {
    detail::check_hermitian_at(h, t);
    Eigen::Map<const CVector> psi(reinterpret_cast<const cplx*>(s.data()), n);
    const CVector v = psi;
    r.times.push_back(t);
    r.max_norm_drift = std::max(r.max_norm_drift, std::abs(v.norm() - 1.0));
    for (std::size_t k = 0; k < obs.size(); ++k) r.series[k][i] = obs[k].fn(t, v);
    if (opt.keep_states) r.states.emplace_back(h.space(), v);
  };
  r.stats = detail::integrate_packed(rhs, x, grid, opt, snap);
  if (!opt.keep_states) {
    Eigen::Map<const CVector> psi(reinterpret_cast<const cplx*>(x.data()), n);
    r.states.emplace_back(h.space(), CVector(psi));
  }
  return r;
}

inline EvolutionResult evolve_schrodinger(const Operator& h, const StateVector& psi0, const TimeGrid& grid,
                                          const IntegratorOptions& opt = {},
                                          const std::vector<StateObservable>& obs = {}) {
  return evolve_schrodinger(TimeDependentOperator(h), psi0, grid, opt, obs);
}

/// Master equation with Lindblad dissipators O rho O^dag - {O^dag O, rho}/2.
/// The right-hand side is assembled as X + X^dag + sum_k L_k rho L_k^dag with
/// X = (-i 2 pi H - G/2) rho, which keeps every stage Hermitian.
inline EvolutionResult evolve_lindblad(const TimeDependentOperator& h, const DensityMatrix& rho0,
                                       const std::vector<CollapseOperator>& collapse, const TimeGrid& grid,
                                       const IntegratorOptions& opt = {},
                                       const std::vector<DensityObservable>& obs = {}) {
  detail::require(rho0.space() == h.space(), "evolve_lindblad: state and Hamiltonian spaces differ");
  const auto n = static_cast<Eigen::Index>(h.dimension());
  SparseMatrix g(n, n);
  std::vector<std::pair<SparseMatrix, SparseMatrix>> jumps;  // sqrt(rate) L, its adjoint
  for (const auto& c : collapse) {
    detail::require(c.rate >= 0 && c.op.rows() == n, "collapse operator rate or dimension invalid");
    SparseMatrix l = std::sqrt(c.rate) * c.op;
    SparseMatrix ld = l.adjoint();
    g += SparseMatrix(ld * l);
    jumps.emplace_back(std::move(l), std::move(ld));
  }
  detail::PackedState x(2 * n * n);
  Eigen::Map<CMatrix>(reinterpret_cast<cplx*>(x.data()), n, n) = rho0.matrix();
  EvolutionResult r;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  detail::init_series(r, obs, grid.times.size());
  CMatrix hx(n, n), xm(n, n);
  auto rhs = [&](const detail::PackedState& s, detail::PackedState& ds, double t) {
    Eigen::Map<const CMatrix> rho(reinterpret_cast<const cplx*>(s.data()), n, n);
    Eigen::Map<CMatrix> drho(reinterpret_cast<cplx*>(ds.data()), n, n);
    h.apply(t, rho, hx);
    xm.noalias() = cplx(0.0, -units::two_pi) * hx;
    if (!jumps.empty()) xm.noalias() -= 0.5 * (g * rho);
    drho = xm + xm.adjoint();
    for (const auto& [l, ld] : jumps) drho.noalias() += CMatrix(l * rho) * ld;
  };
  auto snap = [&](std::size_t i, double t, const detail::PackedState& s) {
    detail::check_hermitian_at(h, t);
    Eigen::Map<const CMatrix> rho(reinterpret_cast<const cplx*>(s.data()), n, n);
    const CMatrix m = (rho + rho.adjoint()) / 2.0;
    r.times.push_back(t);
    r.max_trace_drift = std::max(r.max_trace_drift, std::abs(m.trace() - cplx(1.0)));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = std::min(r.min_eigenvalue, es.eigenvalues()(0));
    if (es.eigenvalues()(0) < -1e-6)
      throw NumericalError("density matrix lost positivity at t = " + std::to_string(t) + " ns");
    for (std::size_t k = 0; k < obs.size(); ++k) r.series[k][i] = obs[k].fn(t, m);
    if (opt.keep_states || i + 1 == grid.times.size())
      r.densities.emplace_back(h.space(), m, DensityMatrix::Unchecked{});
  };
  r.stats = detail::integrate_packed(rhs, x, grid, opt, snap);
  return r;
}

inline EvolutionResult evolve_lindblad(const TimeDependentOperator& h, const DensityMatrix& rho0,
                                       const DissipationSpec& d, const TimeGrid& grid,
                                       const IntegratorOptions& opt = {},
                                       const std::vector<DensityObservable>& obs = {}) {
  return evolve_lindblad(h, rho0, collapse_operators(d, h.space()), grid, opt, obs);
}

/// One-period propagator U(t0 + period, t0) for a periodic H(t).
inline CMatrix floquet_propagator(const TimeDependentOperator& h, double period, const IntegratorOptions& opt = {},
                                  double t0 = 0.0) {
  detail::require(period > 0, "floquet_propagator: period must be positive");
  const auto n = static_cast<Eigen::Index>(h.dimension());
  detail::PackedState x(2 * n * n);
  Eigen::Map<CMatrix>(reinterpret_cast<cplx*>(x.data()), n, n) = CMatrix::Identity(n, n);
  CMatrix hx(n, n);
  auto rhs = [&](const detail::PackedState& s, detail::PackedState& ds, double t) {
    Eigen::Map<const CMatrix> u(reinterpret_cast<const cplx*>(s.data()), n, n);
    Eigen::Map<CMatrix> du(reinterpret_cast<cplx*>(ds.data()), n, n);
    h.apply(t, u, hx);
    du = cplx(0.0, -units::two_pi) * hx;
  };
  detail::integrate_packed(rhs, x, TimeGrid::points({t0, t0 + period}), opt, [](std::size_t, double, const auto&) {});
  return Eigen::Map<const CMatrix>(reinterpret_cast<const cplx*>(x.data()), n, n);
}

}  // namespace kerrlhz
