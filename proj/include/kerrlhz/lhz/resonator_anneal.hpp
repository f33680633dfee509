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

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kerrlhz/analysis/fidelity.hpp"
#include "kerrlhz/core/linalg.hpp"
#include "kerrlhz/core/units.hpp"
#include "kerrlhz/dynamics/evolution.hpp"
#include "kerrlhz/lhz/resonator.hpp"

namespace kerrlhz::lhz {

struct ResonatorAnnealOptions {
  bool dynamic = false;  // also propagate from the vacuum over [0, T]
  std::size_t snapshots = 101;
  std::size_t levels = 8;  // lowest levels of H(T) to report
  IntegratorOptions integrator{1e-8, 1e-10, 1e-3, 1e-12, std::numeric_limits<double>::infinity(), false};
};

struct ResonatorAnnealResult {
  double alpha = 0.0;
  RVector final_levels;  // lowest eigenvalues of the problem Hamiltonian
  StateVector ground;    // its ground state
  ReadoutResult readout;  // decoded from `ground`
  std::optional<EvolutionResult> evolution;  // re_a<j>, im_a<j>, n<j> series
  std::optional<ReadoutResult> dynamic_readout;
};

/// Ground state of the network at t = T and, optionally, the adiabatic sweep
/// from the vacuum. Time is in units of the inverse Ising scale.
inline ResonatorAnnealResult resonator_lhz_anneal(const ResonatorLhzParams& p, const ResonatorAnnealOptions& opt = {}) {
  ResonatorAnnealResult out;
  out.alpha = p.alpha();
  const auto hp = resonator_lhz_problem(p);
  const auto es = lowest_eigenpairs(hp.matrix(), std::min(opt.levels, hp.dimension()));
  out.final_levels = es.values;
  out.ground = StateVector(hp.space(), es.vectors.col(0));
  out.readout = spin_readout(out.ground, out.alpha);
  if (opt.dynamic) {
    // evolve_schrodinger applies 2 pi; undo it to get hbar = 1 dynamics.
    auto h = resonator_lhz_time_dependent(p, ResonatorFrame::rotating);
    h.scale(1.0 / units::two_pi);
    const auto space = p.space();
    const auto ops = slot_ladders(space);
    std::vector<StateObservable> obs;
    for (std::size_t j = 0; j < p.num_resonators(); ++j) {
      const SparseMatrix a = ops.a[j].matrix();
      const SparseMatrix n = ops.n[j].matrix();
      obs.push_back({"re_a" + std::to_string(j), [a](double, const CVector& v) { return v.dot(a * v).real(); }});
      obs.push_back({"im_a" + std::to_string(j), [a](double, const CVector& v) { return v.dot(a * v).imag(); }});
      obs.push_back({"n" + std::to_string(j), [n](double, const CVector& v) { return v.dot(n * v).real(); }});
    }
    std::vector<std::size_t> vac(p.num_resonators(), 0);
    const auto psi0 = StateVector::basis(space, std::span<const std::size_t>(vac));
    out.evolution = evolve_schrodinger(h, psi0, TimeGrid::uniform(0.0, p.T, opt.snapshots), opt.integrator, obs);
    out.dynamic_readout = spin_readout(out.evolution->states.back(), out.alpha);
  }
  return out;
}

}  // namespace kerrlhz::lhz
