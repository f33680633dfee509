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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "kerrlhz/core/linalg.hpp"
#include "kerrlhz/core/units.hpp"

namespace kerrlhz {

/// Capacitively shunted three-junction flux qubit coupled to an LC resonator.
/// Capacitances in fF, inductance in nH, energies as frequencies in GHz.
struct FluxQubitCircuit {
  double C_J = 10.76;
  double E_J = 135.0;
  double alpha = 0.60;
  double C_sh = 22.06;
  double C_c = 5.92;
  // Not fixed by the junction parameters; these defaults come from
  // calibrate_resonator() with g_ge = 0.094 GHz and 5.25 GHz at f = 0.4916.
  double C_r = 301.4400;
  double L_r = 2.998609;
  double f = 0.4916;
  int charge_cutoff = 12;

  double alpha_prime() const { return alpha + C_sh / C_J; }
  double beta() const { return C_c / C_J; }
  double gamma() const { return C_c / C_r; }
  /// e^2 / (2 C_J h) in GHz.
  double E_c() const {
    return units::elementary_charge * units::elementary_charge / (2.0 * C_J * 1e-15) /
           units::planck * 1e-9;
  }

  void validate() const {
    detail::require(C_J > 0 && E_J > 0 && alpha > 0 && C_sh >= 0 && C_c >= 0 && C_r > 0 && L_r > 0,
                    "circuit: capacitances, inductance and energies must be positive");
    detail::require(f >= 0.0 && f <= 1.0, "circuit: flux bias f must lie in [0, 1]");
    detail::require(charge_cutoff >= 5, "circuit: charge_cutoff must be at least 5");
  }
};

namespace detail {

inline double circuit_denominator(const FluxQubitCircuit& c) {
  return (1.0 + 2.0 * c.alpha_prime()) * (1.0 + c.gamma()) + 2.0 * c.beta();
}

/// Dressed resonator frequency for given L_r, C_r (GHz).
inline double lc_frequency(const FluxQubitCircuit& c) {
  const double ap = c.alpha_prime(), b = c.beta();
  const double fac = std::sqrt((1.0 + 2.0 * ap + 2.0 * b) / circuit_denominator(c));
  return fac / std::sqrt(c.L_r * 1e-9 * c.C_r * 1e-15) / units::two_pi * 1e-9;
}

}  // namespace detail

/// Two-junction-phase Hamiltonian in the charge basis |n1, n2>, n in [-N_c, N_c].
/// Slot 0 is n1. Entries in GHz.
inline SparseMatrix flux_qubit_hamiltonian(const FluxQubitCircuit& c) {
  c.validate();
  const int nc = c.charge_cutoff;
  const int d = 2 * nc + 1;
  const double den = detail::circuit_denominator(c);
  const double ap = c.alpha_prime(), b = c.beta(), g = c.gamma(), ec = c.E_c();
  const double kin_diag = 4.0 * ec * ((1.0 + ap) * (1.0 + g) + b) / den;
  const double kin_cross = 8.0 * ec * (ap * (1.0 + g) + b) / den;
  const cplx phase = std::polar(1.0, units::two_pi * c.f);
  auto idx = [&](int n1, int n2) { return static_cast<Eigen::Index>((n1 + nc) * d + (n2 + nc)); };

  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(d * d * 7));
  for (int n1 = -nc; n1 <= nc; ++n1)
    for (int n2 = -nc; n2 <= nc; ++n2) {
      const auto i = idx(n1, n2);
      t.emplace_back(i, i, kin_diag * (n1 * n1 + n2 * n2) + kin_cross * n1 * n2);
      // -E_J cos(phi_k): e^{i phi} shifts n -> n+1.
      if (n1 < nc) {
        t.emplace_back(idx(n1 + 1, n2), i, -0.5 * c.E_J);
        t.emplace_back(i, idx(n1 + 1, n2), -0.5 * c.E_J);
      }
      if (n2 < nc) {
        t.emplace_back(idx(n1, n2 + 1), i, -0.5 * c.E_J);
        t.emplace_back(i, idx(n1, n2 + 1), -0.5 * c.E_J);
      }
      // -alpha E_J cos(phi1 - phi2 + 2 pi f)
      if (n1 < nc && n2 > -nc) {
        const cplx v = -0.5 * c.alpha * c.E_J * phase;
        t.emplace_back(idx(n1 + 1, n2 - 1), i, v);
        t.emplace_back(i, idx(n1 + 1, n2 - 1), std::conj(v));
      }
    }
  SparseMatrix h(d * d, d * d);
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

struct FluxQubitSpectrum {
  RVector energies;  // relative to ground, GHz
  CMatrix states;    // charge-basis eigenvectors, column per level
};

inline FluxQubitSpectrum flux_qubit_eigensystem(const FluxQubitCircuit& c, std::size_t n_levels) {
  const std::size_t basis = static_cast<std::size_t>((2 * c.charge_cutoff + 1) * (2 * c.charge_cutoff + 1));
  detail::require(n_levels >= 1 && n_levels <= basis, "flux_qubit_levels: n_levels exceeds charge basis");
  auto es = lowest_eigenpairs(flux_qubit_hamiltonian(c), n_levels);
  RVector rel = es.values.array() - es.values(0);
  return {rel, es.vectors};
}

/// Coupling prefactor multiplying (n1 - n2), in GHz.
inline double coupling_prefactor(const FluxQubitCircuit& c) {
  const double ap = c.alpha_prime(), b = c.beta(), g = c.gamma();
  const double den = detail::circuit_denominator(c);
  return 2.0 / std::pow(1.0 + 2.0 * ap + 2.0 * b, 0.25) * std::sqrt(b * g / std::pow(den, 1.5)) *
         std::sqrt(detail::lc_frequency(c) * c.E_c());
}

inline std::vector<double> couplings_from(const FluxQubitCircuit& c, const FluxQubitSpectrum& sp,
                                          std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  const int nc = c.charge_cutoff, d = 2 * nc + 1;
  RVector q(d * d);
  for (int n1 = -nc; n1 <= nc; ++n1)
    for (int n2 = -nc; n2 <= nc; ++n2) q((n1 + nc) * d + (n2 + nc)) = n1 - n2;
  const double pre = coupling_prefactor(c);
  std::vector<double> out;
  for (auto [i, j] : pairs) {
    detail::require(static_cast<Eigen::Index>(std::max(i, j)) < sp.states.cols(),
                    "qubit_resonator_couplings: level index beyond computed levels");
    const cplx m = sp.states.col(static_cast<Eigen::Index>(i)).dot(
        (q.array() * sp.states.col(static_cast<Eigen::Index>(j)).array()).matrix());
    out.push_back(std::abs(m) * pre);
  }
  return out;
}

namespace detail {

inline void check_converged(double a, double b, double rel_tol, const std::string& what, double floor = 1e-12) {
  const double scale = std::max(std::abs(a), floor);
  if (std::abs(a - b) > rel_tol * scale)
    throw NumericalError(what + ": charge cutoff not converged (drift " +
                         std::to_string(std::abs(a - b) / scale) + ")");
}

}  // namespace detail

struct CutoffCheck {
  bool enabled = true;
  double rel_tol = 1e-4;
};

/// Lowest n_levels energies relative to ground (GHz). With a check, the
/// computation is repeated at N_c + 3 and drift beyond rel_tol throws.
inline RVector flux_qubit_levels(const FluxQubitCircuit& c, std::size_t n_levels, CutoffCheck check = {}) {
  auto sp = flux_qubit_eigensystem(c, n_levels);
  if (check.enabled) {
    FluxQubitCircuit big = c;
    big.charge_cutoff += 3;
    auto sp2 = flux_qubit_eigensystem(big, n_levels);
    for (Eigen::Index i = 1; i < sp.energies.size(); ++i)
      detail::check_converged(sp.energies(i), sp2.energies(i), check.rel_tol, "flux_qubit_levels");
  }
  return sp.energies;
}

/// |<i| prefactor (n1 - n2) |j>| for each requested level pair (GHz).
inline std::vector<double> qubit_resonator_couplings(const FluxQubitCircuit& c,
                                                     std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                                     CutoffCheck check = {}) {
  std::size_t top = 1;
  for (auto [i, j] : pairs) top = std::max({top, i + 1, j + 1});
  auto g = couplings_from(c, flux_qubit_eigensystem(c, top), pairs);
  if (check.enabled) {
    FluxQubitCircuit big = c;
    big.charge_cutoff += 3;
    auto g2 = couplings_from(big, flux_qubit_eigensystem(big, top), pairs);
    // Couplings that vanish by symmetry are judged against the largest one.
    double g_max = 1e-12;
    for (double v : g) g_max = std::max(g_max, std::abs(v));
    for (std::size_t k = 0; k < g.size(); ++k)
      detail::check_converged(g[k], g2[k], check.rel_tol, "qubit_resonator_couplings", g_max);
  }
  return g;
}

/// Resonator frequency dressed by the qubit capacitances (GHz).
inline double resonator_frequency(const FluxQubitCircuit& c) {
  c.validate();
  return detail::lc_frequency(c);
}

/// L_r that places the resonator at omega_c_ghz for the current C_r.
inline double inductance_for(const FluxQubitCircuit& c, double omega_c_ghz) {
  FluxQubitCircuit unit = c;
  unit.L_r = 1.0;
  const double f1 = detail::lc_frequency(unit);
  return (f1 / omega_c_ghz) * (f1 / omega_c_ghz);
}

/// Chooses C_r so that g_ge hits target_g_ge (GHz), then L_r so the resonator
/// sits at omega_c_ghz. Requires C_c > 0.
inline FluxQubitCircuit calibrate_resonator(FluxQubitCircuit c, double target_g_ge, double omega_c_ghz) {
  c.validate();
  detail::require(c.C_c > 0, "calibrate_resonator: C_c must be positive");
  const std::pair<std::size_t, std::size_t> ge{0, 1};
  auto residual = [&](double log_cr) {
    FluxQubitCircuit t = c;
    t.C_r = std::exp(log_cr);
    t.L_r = inductance_for(t, omega_c_ghz);
    return qubit_resonator_couplings(t, std::span(&ge, 1), {.enabled = false})[0] - target_g_ge;
  };
  const double lo = std::log(c.C_c / 0.5), hi = std::log(c.C_c / 1e-6);
  const double rlo = residual(lo), rhi = residual(hi);
  if (rlo * rhi > 0) throw NumericalError("calibrate_resonator: target g_ge not bracketed");
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(residual, lo, hi, rlo, rhi,
                                             boost::math::tools::eps_tolerance<double>(50), iters);
  c.C_r = std::exp(0.5 * (r.first + r.second));
  c.L_r = inductance_for(c, omega_c_ghz);
  return c;
}

struct QubitSpectrumResult {
  std::vector<double> flux;
  std::vector<RVector> energies;              // per flux, relative to ground
  std::vector<std::vector<double>> couplings;  // per flux: g_ge, g_ef, g_gf
};

inline QubitSpectrumResult flux_sweep(const FluxQubitCircuit& c, std::span<const double> flux,
                                      std::size_t n_levels = 3, CutoffCheck check = {}) {
  detail::require(n_levels >= 3, "flux_sweep: need at least three levels");
  const std::pair<std::size_t, std::size_t> pairs[] = {{0, 1}, {1, 2}, {0, 2}};
  QubitSpectrumResult out;
  for (double f : flux) {
    FluxQubitCircuit t = c;
    t.f = f;
    out.flux.push_back(f);
    out.energies.push_back(flux_qubit_levels(t, n_levels, check));
    out.couplings.push_back(qubit_resonator_couplings(t, pairs, check));
  }
  return out;
}

}  // namespace kerrlhz
