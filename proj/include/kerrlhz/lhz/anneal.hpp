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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "kerrlhz/core/parallel.hpp"
#include "kerrlhz/lhz/embedding.hpp"

namespace kerrlhz::lhz {

enum class Protocol { ramp, always_on };
enum class Scheme { ising, lhz4, lhz3 };

inline std::string to_string(Protocol p) { return p == Protocol::ramp ? "ramp" : "always_on"; }
inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::ising: return "ising";
    case Scheme::lhz4: return "lhz4";
    case Scheme::lhz3: return "lhz3";
  }
  return "?";
}
inline Protocol parse_protocol(const std::string& s) {
  if (s == "ramp") return Protocol::ramp;
  if (s == "always_on" || s == "always-on" || s == "on") return Protocol::always_on;
  throw InvalidArgument("unknown protocol '" + s + "'");
}
inline Scheme parse_scheme(const std::string& s) {
  if (s == "ising") return Scheme::ising;
  if (s == "lhz4") return Scheme::lhz4;
  if (s == "lhz3") return Scheme::lhz3;
  throw InvalidArgument("unknown scheme '" + s + "'");
}

/// Diagonal problem split into the part that follows s and the constraint
/// part whose weight depends on the protocol. `driver` is b in -b sum sigma^x.
struct AnnealProblem {
  std::size_t n_spins = 0;
  RVector problem;
  RVector constraint;
  double driver = 1.0;
  double constant_offset = 0.0;
};

inline AnnealProblem anneal_problem(const IsingInstance& inst) {
  RVector p = ising_diagonal(inst);
  return {inst.N, p, RVector::Zero(p.size()), inst.scale, 0.0};
}
inline AnnealProblem anneal_problem(const LhzEmbedding& emb) {
  kerrlhz::detail::require(emb.num_spins() <= 14, "anneal_problem: too many physical spins");
  return {emb.num_spins(), emb.field_diagonal(), emb.constraint_diagonal(), emb.scale, emb.constant_offset()};
}
inline AnnealProblem anneal_problem(const IsingInstance& inst, Scheme scheme, double C) {
  switch (scheme) {
    case Scheme::ising: return anneal_problem(inst);
    case Scheme::lhz4: return anneal_problem(lhz_embed4(inst, C));
    case Scheme::lhz3: return anneal_problem(lhz_decompose3(lhz_embed4(inst, C)));
  }
  throw InvalidArgument("unknown scheme");
}

/// sum_j sigma^x_j on n spins as a dense real matrix.
inline RMatrix transverse_field(std::size_t n) {
  kerrlhz::detail::require(n >= 1 && n <= 14, "transverse_field: spin count out of range");
  const std::size_t d = std::size_t{1} << n;
  RMatrix x = RMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t j = 0; j < n; ++j) x(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ (std::size_t{1} << j))) = 1.0;
  return x;
}

inline double constraint_weight(Protocol p, double s) { return p == Protocol::ramp ? s : 1.0; }

/// H(s) = -(1-s) b sum sigma^x + s H_problem + w(s) H_constraint with w = s
/// for the ramp and w = 1 for the always-on protocol.
inline RMatrix anneal_matrix(const AnnealProblem& p, double s, Protocol protocol, const RMatrix* driver = nullptr) {
  kerrlhz::detail::require(s >= 0.0 && s <= 1.0, "anneal parameter s must lie in [0, 1]");
  RMatrix h = driver ? RMatrix(-(1.0 - s) * p.driver * *driver) : RMatrix(-(1.0 - s) * p.driver * transverse_field(p.n_spins));
  h.diagonal() += s * p.problem + constraint_weight(protocol, s) * p.constraint;
  return h;
}

inline Operator anneal_hamiltonian(const AnnealProblem& p, double s, Protocol protocol) {
  return {spin_space(p.n_spins), anneal_matrix(p, s, protocol).cast<cplx>()};
}

/// General form for arbitrary spin-space operators.
inline Operator anneal_hamiltonian(const Operator& problem, const Operator& constraint, double s, Protocol protocol,
                                   double driver = 1.0) {
  kerrlhz::detail::require(s >= 0.0 && s <= 1.0, "anneal parameter s must lie in [0, 1]");
  const auto& space = problem.space();
  for (const auto& m : space.modes())
    kerrlhz::detail::require(m.kind() == ModeKind::spin_half, "anneal_hamiltonian: problem must act on spins");
  const RMatrix x = transverse_field(space.num_modes());
  return Operator(space, (-(1.0 - s) * driver) * x.cast<cplx>()) + s * problem +
         constraint_weight(protocol, s) * constraint;
}

struct SpectrumTrace {
  std::vector<double> s;
  std::vector<RVector> levels;  // k lowest, ascending, per s
  double delta_min = 0.0;
  double s_at_min = 0.0;
  bool excluded_start = false;
  bool excluded_end = false;
};

struct GapOptions {
  bool refine = true;
  double degeneracy_tol = 1e-9;
};

/// Ascending eigenvalues (at least two) at parameter s.
using EigenvalueSupplier = std::function<RVector(double)>;

inline SpectrumTrace spectrum_trace(const EigenvalueSupplier& eig, const std::vector<double>& grid, std::size_t k,
                                    const GapOptions& opt = {}) {
  kerrlhz::detail::require(grid.size() >= 2, "spectrum_trace: grid needs at least two points");
  kerrlhz::detail::require(std::is_sorted(grid.begin(), grid.end()), "spectrum_trace: grid must be ascending");
  kerrlhz::detail::require(k >= 2, "spectrum_trace: need at least two levels for a gap");
  SpectrumTrace tr;
  tr.s = grid;
  std::vector<double> gaps;
  for (double s : grid) {
    RVector ev = eig(s);
    kerrlhz::detail::require(static_cast<std::size_t>(ev.size()) >= k, "spectrum_trace: k exceeds dimension");
    tr.levels.push_back(ev.head(static_cast<Eigen::Index>(k)));
    gaps.push_back(ev(1) - ev(0));
  }
  // Endpoint degeneracies belong to the encoding, not to the sweep.
  tr.excluded_start = gaps.front() <= opt.degeneracy_tol;
  tr.excluded_end = gaps.back() <= opt.degeneracy_tol;
  const std::size_t lo = tr.excluded_start ? 1 : 0;
  const std::size_t hi = tr.excluded_end ? grid.size() - 1 : grid.size();
  kerrlhz::detail::require(lo < hi, "spectrum_trace: no admissible points for the gap");
  std::size_t best = lo;
  for (std::size_t i = lo; i < hi; ++i)
    if (gaps[i] < gaps[best]) best = i;
  tr.delta_min = gaps[best];
  tr.s_at_min = grid[best];
  if (opt.refine && best > 0 && best + 1 < grid.size()) {
    auto gap = [&](double s) {
      const RVector ev = eig(s);
      return ev(1) - ev(0);
    };
    // Never bracket into an excluded endpoint.
    const double a = (tr.excluded_start && best == 1) ? grid[best] : grid[best - 1];
    const double b = (tr.excluded_end && best + 2 == grid.size()) ? grid[best] : grid[best + 1];
    const auto [s_star, g_star] = boost::math::tools::brent_find_minima(gap, a, b, 40);
    if (g_star < tr.delta_min) {
      tr.delta_min = g_star;
      tr.s_at_min = s_star;
    }
  }
  tr.delta_min = std::max(tr.delta_min, 0.0);
  return tr;
}

inline EigenvalueSupplier anneal_eigenvalues(const AnnealProblem& p, Protocol protocol) {
  auto driver = std::make_shared<RMatrix>(transverse_field(p.n_spins));
  return [p, protocol, driver](double s) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(anneal_matrix(p, s, protocol, driver.get()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    return RVector(es.eigenvalues());
  };
}

inline SpectrumTrace spectrum_trace(const AnnealProblem& p, Protocol protocol, const std::vector<double>& grid,
                                    std::size_t k, const GapOptions& opt = {}) {
  return spectrum_trace(anneal_eigenvalues(p, protocol), grid, k, opt);
}

inline SpectrumTrace spectrum_trace(const std::function<Operator(double)>& h, const std::vector<double>& grid,
                                    std::size_t k, const GapOptions& opt = {}) {
  return spectrum_trace(
      [&h](double s) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h(s).matrix(), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        return RVector(es.eigenvalues());
      },
      grid, k, opt);
}

inline std::vector<double> uniform_grid(std::size_t points) {
  kerrlhz::detail::require(points >= 2, "grid needs at least two points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) g[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

struct SchemeProtocol {
  Scheme scheme;
  Protocol protocol;
};

struct GapStatsOptions {
  std::size_t n_instances = 100;
  std::size_t N = 3;
  std::vector<double> C_over_J{1.5, 3.0};
  std::vector<SchemeProtocol> runs{{Scheme::lhz3, Protocol::ramp},
                                   {Scheme::lhz4, Protocol::ramp},
                                   {Scheme::lhz4, Protocol::always_on}};
  std::uint64_t seed = 1;
  std::size_t grid_points = 41;
  std::size_t threads = 0;  // 0: KERRLHZ_THREADS or hardware default
};

struct GapRecord {
  std::uint64_t seed = 0;  // instance seed
  double C_over_J = 0.0;
  Scheme scheme = Scheme::lhz4;
  Protocol protocol = Protocol::ramp;
  double gap_min = 0.0;
  double s_at_min = 0.0;
};

/// Instance i uses seed opt.seed + i. Records are ordered by instance, then
/// C, then run, whatever the worker count.
inline std::vector<GapRecord> gap_statistics(const GapStatsOptions& opt) {
  kerrlhz::detail::require(opt.N >= 2, "gap_statistics: N must be >= 2");
  kerrlhz::detail::require(!opt.runs.empty() && !opt.C_over_J.empty(), "gap_statistics: nothing to compute");
  const std::size_t per_instance = opt.C_over_J.size() * opt.runs.size();
  std::vector<GapRecord> out(opt.n_instances * per_instance);
  const auto grid = uniform_grid(opt.grid_points);
  parallel_for(
      out.size(),
      [&](std::size_t idx) {
        const std::size_t inst_i = idx / per_instance;
        const std::size_t c_i = (idx % per_instance) / opt.runs.size();
        const auto& run = opt.runs[idx % opt.runs.size()];
        const std::uint64_t seed = opt.seed + inst_i;
        const double C = opt.C_over_J[c_i];
        const auto inst = random_instance(opt.N, 1.0, seed);
        const auto tr = spectrum_trace(anneal_problem(inst, run.scheme, C), run.protocol, grid, 2);
        out[idx] = {seed, C, run.scheme, run.protocol, tr.delta_min, tr.s_at_min};
      },
      opt.threads);
  return out;
}

}  // namespace kerrlhz::lhz
