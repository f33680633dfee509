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
#include <vector>

#include "kerrlhz/core/modes.hpp"
#include "kerrlhz/core/time_dependent.hpp"
#include "kerrlhz/lhz/embedding.hpp"

namespace kerrlhz::lhz {

/// Network of two-photon driven Kerr resonators, one per physical spin of a
/// three-body embedding. Energies are in units of the Ising scale and times
/// in units of its inverse (hbar = 1).
struct ResonatorLhzParams {
  std::vector<double> delta;
  std::vector<double> K;
  std::vector<double> eps_p;
  std::vector<double> eps_d;
  std::vector<std::array<std::size_t, 3>> triples;  // (i, j, k): a_i^dag a_j^dag a_k + h.c.
  std::vector<double> J;                            // one per triple
  double T = 1.0;
  std::vector<double> omega;  // resonator frequencies, lab frame only
  std::size_t fock_dim = 12;

  std::size_t num_resonators() const { return delta.size(); }

  void validate() const {
    const std::size_t n = delta.size();
    kerrlhz::detail::require(n >= 1, "resonator network needs at least one resonator");
    kerrlhz::detail::require(K.size() == n && eps_p.size() == n && eps_d.size() == n,
                    "per-resonator parameter lists must have equal length");
    kerrlhz::detail::require(J.size() == triples.size(), "one coupling per triple required");
    for (const auto& t : triples)
      for (auto i : t) kerrlhz::detail::require(i < n, "triple refers to a missing resonator");
    kerrlhz::detail::require(T > 0.0, "total time must be positive");
    kerrlhz::detail::require(fock_dim >= 2, "fock dimension must be >= 2");
    for (double k : K) kerrlhz::detail::require(k != 0.0, "Kerr coefficient must be nonzero");
  }

  /// Common cat amplitude sqrt(|eps_p| / K); throws if it differs between resonators.
  double alpha() const {
    validate();
    const double a = std::sqrt(std::abs(eps_p[0] / K[0]));
    for (std::size_t j = 1; j < num_resonators(); ++j)
      if (std::abs(std::sqrt(std::abs(eps_p[j] / K[j])) - a) > 1e-12 * std::max(1.0, a))
        throw InvalidArgument("cat amplitude differs between resonators");
    return a;
  }

  CompositeSpace space() const {
    return CompositeSpace::repeat(ModeSpace::fock(fock_dim), num_resonators());
  }
};

/// Resonator network for a three-body embedding: eps_d = h~/(2 alpha) and
/// J = -C/(2 alpha^3), so that the cat projection reproduces the embedding.
inline ResonatorLhzParams resonator_network(const LhzEmbedding& emb, double delta, double K, double eps_p,
                                            std::size_t fock_dim = 12, double T = 1.0) {
  for (const auto& c : emb.constraints)
    kerrlhz::detail::require(c.size() == 3, "resonator_network: embedding must have three-body constraints");
  kerrlhz::detail::require(K != 0.0, "resonator_network: K must be nonzero");
  const std::size_t n = emb.num_spins();
  const double a = std::sqrt(std::abs(eps_p / K));
  ResonatorLhzParams p;
  p.delta.assign(n, delta);
  p.K.assign(n, K);
  p.eps_p.assign(n, eps_p);
  for (std::size_t j = 0; j < n; ++j) p.eps_d.push_back(emb.fields(static_cast<Eigen::Index>(j)) * emb.scale / (2.0 * a));
  for (const auto& c : emb.constraints) {
    p.triples.push_back({c[0], c[1], c[2]});
    p.J.push_back(-emb.C * emb.scale / (2.0 * a * a * a));
  }
  p.fock_dim = fock_dim;
  p.T = T;
  return p;
}

struct CatIsingProjection {
  std::vector<double> h;  // 2 eps_d alpha
  std::vector<double> C;  // 2 J alpha^3, sign as in sum C sigma sigma sigma
  double alpha = 0.0;
  double overlap_scale = 0.0;  // exp(-2 alpha^2)
  double max_ratio = 0.0;      // max(|eps_d|, |J| alpha) / (K alpha^2)
  bool valid = false;          // max_ratio below 0.1
};

inline CatIsingProjection project_to_cat_ising(const ResonatorLhzParams& p) {
  const double a = p.alpha();
  CatIsingProjection out;
  out.alpha = a;
  out.overlap_scale = std::exp(-2.0 * a * a);
  double kmin = std::abs(p.K[0]);
  for (double k : p.K) kmin = std::min(kmin, std::abs(k));
  const double gap = kmin * a * a;
  for (double e : p.eps_d) {
    out.h.push_back(2.0 * e * a);
    if (gap > 0.0) out.max_ratio = std::max(out.max_ratio, std::abs(e) / gap);
  }
  for (double j : p.J) {
    out.C.push_back(2.0 * j * a * a * a);
    if (gap > 0.0) out.max_ratio = std::max(out.max_ratio, std::abs(j) * a / gap);
  }
  out.valid = gap > 0.0 && out.max_ratio < 0.1;
  return out;
}

/// Sparse building blocks of the network Hamiltonians.
struct ResonatorLhzTerms {
  CompositeSpace space;
  SparseMatrix detuning;  // sum delta_j n_j
  SparseMatrix kerr;      // sum K_j a^dag2 a^2
  SparseMatrix problem;   // eps_p, eps_d and three-body terms at full strength
  std::vector<SparseMatrix> n;
};

inline SparseMatrix three_body_term(const SlotOperators& ops, const std::array<std::size_t, 3>& t) {
  return SparseMatrix(SparseMatrix(ops.adag[t[0]].matrix() * ops.adag[t[1]].matrix()) * ops.a[t[2]].matrix());
}

inline ResonatorLhzTerms resonator_lhz_terms(const ResonatorLhzParams& p) {
  p.validate();
  const CompositeSpace space = p.space();
  kerrlhz::detail::require(space.dimension() <= 4'000'000, "resonator network Hilbert space too large");
  const auto ops = slot_ladders(space);
  const auto d = static_cast<Eigen::Index>(space.dimension());
  ResonatorLhzTerms t{space, SparseMatrix(d, d), SparseMatrix(d, d), SparseMatrix(d, d), {}};
  for (std::size_t j = 0; j < p.num_resonators(); ++j) {
    const SparseMatrix& a = ops.a[j].matrix();
    const SparseMatrix& ad = ops.adag[j].matrix();
    const SparseMatrix a2 = a * a;
    const SparseMatrix adag2 = ad * ad;
    t.detuning += p.delta[j] * ops.n[j].matrix();
    t.kerr += p.K[j] * SparseMatrix(adag2 * a2);
    t.problem += p.eps_p[j] * SparseMatrix(adag2 + a2);
    t.problem += p.eps_d[j] * SparseMatrix(ad + a);
    t.n.push_back(ops.n[j].matrix());
  }
  for (std::size_t c = 0; c < p.triples.size(); ++c) {
    const SparseMatrix x = three_body_term(ops, p.triples[c]);
    t.problem += p.J[c] * SparseMatrix(x + SparseMatrix(x.adjoint()));
  }
  t.detuning.makeCompressed();
  t.kerr.makeCompressed();
  t.problem.makeCompressed();
  return t;
}

/// Initial Hamiltonian: sum delta_j n_j + K_j a^dag2 a^2 (vacuum ground state).
inline SparseOperator resonator_lhz_initial(const ResonatorLhzParams& p) {
  const auto t = resonator_lhz_terms(p);
  return {t.space, SparseMatrix(t.detuning + t.kerr)};
}

/// Problem Hamiltonian: sum K_j a^dag2 a^2 + eps_p (a^dag2 + a^2) + eps_d (a^dag + a)
/// plus sum J (a_i^dag a_j^dag a_k + h.c.).
inline SparseOperator resonator_lhz_problem(const ResonatorLhzParams& p) {
  const auto t = resonator_lhz_terms(p);
  return {t.space, SparseMatrix(t.kerr + t.problem)};
}

enum class ResonatorFrame { rotating, lab };

namespace detail {

/// Instantaneous single-photon drive phase omega_d(t) t with
/// omega_d(t) = omega_j - delta_j (1 - t / 2T).
inline double drive_phase(const ResonatorLhzParams& p, std::size_t j, double t) {
  return (p.omega[j] - p.delta[j] * (1.0 - t / (2.0 * p.T))) * t;
}

inline void require_lab(const ResonatorLhzParams& p) {
  kerrlhz::detail::require(p.omega.size() == p.num_resonators(), "lab frame needs one resonator frequency per resonator");
}

}  // namespace detail

/// H(t) with s = t/T. Rotating frame: (1-s) H_initial + s H_problem.
/// Lab frame: omega_j n_j + K_j a^dag2 a^2 with drives and three-body terms
/// at amplitude s times their full value, each carrying the phase of its
/// instantaneous pump frequency.
inline TimeDependentOperator resonator_lhz_time_dependent(const ResonatorLhzParams& p, ResonatorFrame frame) {
  const auto terms = resonator_lhz_terms(p);
  const double T = p.T;
  if (frame == ResonatorFrame::rotating) {
    TimeDependentOperator h(terms.space, terms.kerr);
    h.add(terms.detuning, [T](double t) { return cplx(1.0 - t / T); });
    h.add(terms.problem, [T](double t) { return cplx(t / T); });
    return h;
  }
  detail::require_lab(p);
  SparseMatrix h0 = terms.kerr;
  for (std::size_t j = 0; j < p.num_resonators(); ++j) h0 += p.omega[j] * terms.n[j];
  TimeDependentOperator h(terms.space, h0);
  const auto ops = slot_ladders(terms.space);
  for (std::size_t j = 0; j < p.num_resonators(); ++j) {
    const SparseMatrix& ad = ops.adag[j].matrix();
    const SparseMatrix adag2 = ad * ad;
    const double ep = p.eps_p[j], ed = p.eps_d[j];
    h.add_hermitian_pair(adag2, [p, j, ep, T](double t) {
      return ep * (t / T) * std::exp(cplx(0.0, -2.0 * detail::drive_phase(p, j, t)));
    });
    h.add_hermitian_pair(ad, [p, j, ed, T](double t) {
      return ed * (t / T) * std::exp(cplx(0.0, -detail::drive_phase(p, j, t)));
    });
  }
  for (std::size_t c = 0; c < p.triples.size(); ++c) {
    const auto tr = p.triples[c];
    const double Jc = p.J[c];
    h.add_hermitian_pair(three_body_term(ops, tr), [p, tr, Jc, T](double t) {
      const double ph =
          detail::drive_phase(p, tr[0], t) + detail::drive_phase(p, tr[1], t) - detail::drive_phase(p, tr[2], t);
      return Jc * (t / T) * std::exp(cplx(0.0, -ph));
    });
  }
  return h;
}

/// Snapshot at anneal parameter s. In the lab frame s must equal t/T.
inline SparseOperator resonator_lhz_hamiltonian(const ResonatorLhzParams& p, double s, ResonatorFrame frame,
                                                double t = 0.0) {
  kerrlhz::detail::require(s >= 0.0 && s <= 1.0, "anneal parameter s must lie in [0, 1]");
  if (frame == ResonatorFrame::rotating) {
    const auto terms = resonator_lhz_terms(p);
    return {terms.space, SparseMatrix(terms.kerr + (1.0 - s) * terms.detuning + s * terms.problem)};
  }
  kerrlhz::detail::require(std::abs(s - t / p.T) <= 1e-12, "lab frame: s must equal t/T");
  const auto h = resonator_lhz_time_dependent(p, frame);
  return {h.space(), h.sparse_at(t)};
}

/// Maps a lab-frame state to the frame rotating at each resonator's
/// instantaneous drive frequency: psi_rot = exp(+i sum theta_j(t) n_j) psi_lab.
inline CVector lab_to_rotating(const ResonatorLhzParams& p, const CVector& psi_lab, double t) {
  detail::require_lab(p);
  const auto strides = p.space().strides();
  std::vector<double> theta(p.num_resonators());
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = detail::drive_phase(p, j, t);
  CVector out(psi_lab.size());
  for (Eigen::Index i = 0; i < psi_lab.size(); ++i) {
    double ph = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j)
      ph += theta[j] * static_cast<double>((static_cast<std::size_t>(i) / strides[j]) % p.fock_dim);
    out(i) = std::exp(cplx(0.0, ph)) * psi_lab(i);
  }
  return out;
}

}  // namespace kerrlhz::lhz
