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
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include "kerrlhz/core/error.hpp"

namespace kerrlhz {

/// Snapshot times in ns, ascending.
struct TimeGrid {
  std::vector<double> times;

  static TimeGrid uniform(double t0, double t1, std::size_t count) {
    detail::require(count >= 2 && t1 > t0, "time grid: need count >= 2 and t1 > t0");
    TimeGrid g;
    for (std::size_t i = 0; i < count; ++i)
      g.times.push_back(t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1));
    g.times.back() = t1;
    return g;
  }
  static TimeGrid points(std::vector<double> t) {
    detail::require(!t.empty() && std::is_sorted(t.begin(), t.end()), "time grid: points must be ascending");
    return {std::move(t)};
  }
};

struct IntegratorOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 1e-3;  // ns
  double min_step = 1e-12;     // ns; smaller accepted steps count as underflow
  double max_step = std::numeric_limits<double>::infinity();
  bool keep_states = true;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  /// Sum of per-step tolerances; an upper estimate of accumulated local error.
  double error_estimate = 0.0;
};

namespace detail {

namespace ode = boost::numeric::odeint;
using PackedState = Eigen::VectorXd;

/// Adaptive Dormand-Prince integration of a packed real state through the
/// grid; on_snapshot(i, t, x) fires at every grid time, including the first.
template <class Rhs, class Snapshot>
IntegrationStats integrate_packed(Rhs&& rhs, PackedState& x, const TimeGrid& grid, const IntegratorOptions& opt,
                                  Snapshot&& on_snapshot) {
  using Stepper = ode::runge_kutta_dopri5<PackedState, double, PackedState, double, ode::vector_space_algebra>;
  auto stepper = ode::make_controlled(opt.abs_tol, opt.rel_tol, Stepper());
  auto sys = [&rhs](const PackedState& s, PackedState& ds, double t) {
    ds.resize(s.size());
    rhs(s, ds, t);
  };
  IntegrationStats stats;
  double t = grid.times.front();
  double dt = std::min(opt.initial_step, opt.max_step);
  on_snapshot(std::size_t{0}, t, x);
  for (std::size_t i = 1; i < grid.times.size(); ++i) {
    const double target = grid.times[i];
    while (t < target) {
      const bool clipped = t + dt >= target;
      double h = clipped ? target - t : dt;
      if (stepper.try_step(sys, x, t, h) == ode::success) {
        ++stats.accepted;
        stats.error_estimate += opt.rel_tol;
        if (clipped) t = target;  // drop roundoff in t + h
        if (!clipped || h > dt) dt = std::min(h, opt.max_step);
      } else {
        ++stats.rejected;
        dt = h;
        if (dt < opt.min_step)
          throw NumericalError("integrator step size underflow at t = " + std::to_string(t) + " ns");
      }
      if (!x.allFinite()) throw NumericalError("integrator produced non-finite state at t = " + std::to_string(t));
    }
    t = target;
    on_snapshot(i, t, x);
  }
  return stats;
}

}  // namespace detail

}  // namespace kerrlhz
