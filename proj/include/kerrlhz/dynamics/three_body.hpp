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

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "kerrlhz/core/states.hpp"
#include "kerrlhz/dynamics/evolution.hpp"
#include "kerrlhz/effective/three_mode.hpp"

namespace kerrlhz {

struct ThreeBodyRunOptions {
  /// Resonators 1..3, then the junction mode. Resonators need three levels:
  /// with two, (a + a^dag)^2 is the identity and every pump-induced shift of
  /// the resonator frequencies drops out.
  std::array<std::size_t, 4> dims{3, 3, 3, 6};
  CosineOrder order = CosineOrder::quartic;
  /// Move omega_d onto the dressed resonance, holding xi_p fixed. Near it the
  /// Floquet splitting obeys s^2 = c (omega_d - omega_*)^2 + s_min^2, so three
  /// samples locate omega_*.
  bool refine_resonance = true;
  double oscillation_periods = 1.5;
  std::size_t max_samples = 4000;
  IntegratorOptions integrator{.rel_tol = 1e-8, .abs_tol = 1e-10, .keep_states = false};
};

struct ThreeBodyOscillation {
  double omega_d = 0.0;            // GHz
  double eps_p = 0.0;              // GHz
  double floquet_splitting = 0.0;  // rad/ns, between the two states carrying |0,0,1> and |1,1,0>
  double fitted_frequency = 0.0;   // rad/ns, from P_110(t)
  double contrast = 0.0;           // peak-to-peak of the fitted cosine
  std::vector<double> times;       // ns
  std::vector<double> p110;
};

namespace detail {

struct FloquetSplit {
  CMatrix u;
  double splitting;
};

inline FloquetSplit three_body_floquet(const ThreeModeParams& p, const ThreeBodyRunOptions& opt) {
  const auto h = three_mode_full_model(p, opt.order, opt.dims);
  const double period = 1.0 / p.omega_d;
  FloquetSplit out{floquet_propagator(h, period, opt.integrator), 0.0};
  Eigen::ComplexEigenSolver<CMatrix> es(out.u);
  const auto& s = h.space();
  const auto nq = opt.dims[3];
  // Weight of each Floquet state on resonator configurations 001 and 110.
  std::vector<std::pair<double, Eigen::Index>> w;
  for (Eigen::Index k = 0; k < es.eigenvectors().cols(); ++k) {
    double sum = 0;
    for (std::size_t q = 0; q < nq; ++q) {
      sum += std::norm(es.eigenvectors()(static_cast<Eigen::Index>(s.index_of(std::vector<std::size_t>{0, 0, 1, q})), k));
      sum += std::norm(es.eigenvectors()(static_cast<Eigen::Index>(s.index_of(std::vector<std::size_t>{1, 1, 0, q})), k));
    }
    w.emplace_back(sum, k);
  }
  std::partial_sort(w.begin(), w.begin() + 2, w.end(), [](auto& a, auto& b) { return a.first > b.first; });
  const double wd = units::two_pi * p.omega_d;
  double d = std::remainder(std::arg(es.eigenvalues()(w[0].second)) - std::arg(es.eigenvalues()(w[1].second)),
                            units::two_pi) / period;
  d = std::abs(d);
  out.splitting = std::min(d, wd - d);
  return out;
}

/// Least-squares fit of A + B cos(w t) + C sin(w t); returns residual and (B, C).
inline std::pair<double, double> cosine_fit(const std::vector<double>& t, const std::vector<double>& y, double w) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(t.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    m(Eigen::Index(i), 0) = 1.0;
    m(Eigen::Index(i), 1) = std::cos(w * t[i]);
    m(Eigen::Index(i), 2) = std::sin(w * t[i]);
    b(Eigen::Index(i)) = y[i];
  }
  const Eigen::VectorXd c = m.colPivHouseholderQr().solve(b);
  return {(m * c - b).squaredNorm(), std::hypot(c(1), c(2))};
}

}  // namespace detail

/// Starts from |0,0,1> with the junction mode in its driven steady state and
/// measures how fast population reaches |1,1,0> under the full pumped model.
inline ThreeBodyOscillation three_body_oscillation(ThreeModeParams p, const ThreeBodyRunOptions& opt = {}) {
  const double xi = p.xi_p();
  auto at = [&](double wd) {
    ThreeModeParams q = p;
    q.omega_d = wd;
    q.eps_p = xi * (wd - q.omega_q);
    return q;
  };
  for (std::size_t j = 0; j < 3; ++j)
    detail::require(opt.dims[j] >= 3, "three_body_oscillation: resonator modes need at least three levels");
  const double j_ref = std::abs(three_mode_coefficients(p).J123);
  if (opt.refine_resonance) {
    auto sq = [&](double wd) {
      const double v = detail::three_body_floquet(at(wd), opt).splitting;
      return v * v;
    };
    const double w0 = p.omega_d;
    const double s0 = sq(w0);
    // Step comparable to the detuning the splitting implies, in GHz.
    const double h = std::max(std::sqrt(s0) / units::two_pi, 2.0 * j_ref);
    const double sm = sq(w0 - h), sp = sq(w0 + h);
    const double curv = sm + sp - 2.0 * s0;
    double w_star = w0;
    if (curv > 0.0) {
      w_star = w0 - 0.5 * h * (sp - sm) / curv;
    } else {
      w_star = sm < sp ? (sm < s0 ? w0 - h : w0) : (sp < s0 ? w0 + h : w0);
    }
    p = at(std::clamp(w_star, w0 - 3.0 * h, w0 + 3.0 * h));
  }
  ThreeBodyOscillation out;
  out.omega_d = p.omega_d;
  out.eps_p = p.eps_p;
  const auto fl = detail::three_body_floquet(p, opt);
  out.floquet_splitting = fl.splitting;

  const auto space = three_mode_space(opt.dims);
  // Steady-state response of the pumped junction mode at t = 0.
  const cplx a0 = xi - p.eps_p / (p.omega_d + p.omega_q);
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  const auto q0 = coherent_state(a0, opt.dims[3], 1e-4);
  for (std::size_t q = 0; q < opt.dims[3]; ++q)
    psi(static_cast<Eigen::Index>(space.index_of(std::vector<std::size_t>{0, 0, 1, q}))) = q0[static_cast<Eigen::Index>(q)];
  psi.normalize();

  const double period = 1.0 / p.omega_d;
  const double w_est = std::max(fl.splitting, 2.0 * units::two_pi * j_ref);
  const auto n_periods = static_cast<std::size_t>(std::ceil(opt.oscillation_periods * units::two_pi / w_est / period));
  const std::size_t stride = std::max<std::size_t>(1, n_periods / opt.max_samples);
  std::vector<Eigen::Index> target;
  for (std::size_t q = 0; q < opt.dims[3]; ++q)
    target.push_back(static_cast<Eigen::Index>(space.index_of(std::vector<std::size_t>{1, 1, 0, q})));
  CVector next(psi.size());
  for (std::size_t k = 0; k <= n_periods; ++k) {
    if (k % stride == 0) {
      double pop = 0;
      for (auto i : target) pop += std::norm(psi(i));
      out.times.push_back(static_cast<double>(k) * period);
      out.p110.push_back(pop);
    }
    next.noalias() = fl.u * psi;
    psi.swap(next);
  }

  // Coarse scan then Brent refinement of the fit residual.
  const double w_ref = 2.0 * units::two_pi * j_ref;
  double best_w = w_ref, best_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i) {
    const double w = w_ref * (0.25 + 3.75 * i / 400.0);
    const double r = detail::cosine_fit(out.times, out.p110, w).first;
    if (r < best_r) {
      best_r = r;
      best_w = w;
    }
  }
  const double step = w_ref * 3.75 / 400.0;
  boost::uintmax_t iters = 100;
  const auto fit = boost::math::tools::brent_find_minima(
      [&](double w) { return detail::cosine_fit(out.times, out.p110, w).first; }, best_w - step, best_w + step, 40,
      iters);
  out.fitted_frequency = fit.first;
  out.contrast = 2.0 * detail::cosine_fit(out.times, out.p110, fit.first).second;
  return out;
}

}  // namespace kerrlhz
