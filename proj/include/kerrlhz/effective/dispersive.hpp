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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kerrlhz/core/error.hpp"

namespace kerrlhz {

/// Driven qutrit coupled to one resonator. Frequencies in GHz, eps_g = 0.
struct QutritResonatorParams {
  double omega_c = 5.25;
  double eps_e = 6.25;
  double eps_f = 10.0;
  double g_ge = 0.094;
  double g_ef = 0.136;
  double g_gf = 0.140;
  double Omega_p = 0.035;              // drive on g-f
  double Omega_ge = 0.0;               // optional drive on g-e
  double Omega_ef = 0.0;               // optional drive on e-f
  std::optional<double> omega_p;       // unset: 2 (omega_c + S)

  void validate() const {
    detail::require(omega_c > 0 && eps_e > 0 && eps_f > eps_e,
                    "qutrit-resonator: need omega_c > 0 and 0 < eps_e < eps_f");
    detail::require(g_ge >= 0 && g_ef >= 0 && g_gf >= 0, "qutrit-resonator: couplings must be >= 0");
  }
};

struct EffectiveKerrParams {
  double S = 0.0;
  double K = 0.0;
  double P = 0.0;
  double omega_c_tilde = 0.0;
  double omega_p = 0.0;

  /// Cat amplitude sqrt(P/K) of the Kerr ground manifold.
  double alpha() const {
    detail::require(K != 0.0 && P / K >= 0.0, "alpha: need P/K >= 0 and K != 0");
    return std::sqrt(P / K);
  }
};

enum class PerturbationOrder { reduced, full };
/// The g_gf g_ef pathway has a bare -eps_e denominator; `symmetrized`
/// replaces it by (omega_c - eps_e) for sensitivity checks.
enum class DenominatorVariant { verbatim, symmetrized };

struct DispersiveReport {
  double ratio_ge = 0, ratio_ef = 0, ratio_gf = 0;  // |Delta_jk| / g_jk
  double ratio_drive = 0;                           // |eps_f - omega_p| / Omega_p
  std::vector<std::string> warnings;                // ratios below threshold
};

/// Signed detunings eps_e - omega_c and (eps_f - eps_e) - omega_c.
inline double delta_ge(const QutritResonatorParams& p) { return p.eps_e - p.omega_c; }
inline double delta_ef(const QutritResonatorParams& p) { return (p.eps_f - p.eps_e) - p.omega_c; }

namespace detail {

inline double nonzero(double d, const char* what) {
  if (d == 0.0) throw NumericalError(std::string("exact resonance: vanishing denominator ") + what);
  return d;
}

inline double safe_ratio(double num, double den) {
  return den == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(num) / std::abs(den);
}

}  // namespace detail

inline double full_stark_shift(const QutritResonatorParams& p, DenominatorVariant v = DenominatorVariant::verbatim) {
  using detail::nonzero;
  const double wc = p.omega_c, we = p.eps_e, wf = p.eps_f;
  const double ge2 = p.g_ge * p.g_ge, ef2 = p.g_ef * p.g_ef, gf2 = p.g_gf * p.g_gf;
  const double de = nonzero(we - wc, "eps_e - omega_c"), df = nonzero(wf - wc, "eps_f - omega_c");
  const double bare_e = nonzero(v == DenominatorVariant::verbatim ? -we : wc - we, "eps_e pathway");
  return -ge2 / de - gf2 / df + ge2 * ge2 / (de * de * de) + gf2 * gf2 / (df * df * df) +
         gf2 * ef2 / ((-df) * bare_e * (-df)) - ge2 * gf2 / (de * de * (-df)) -
         ge2 * gf2 / ((-de) * df * df);
}

inline double full_kerr(const QutritResonatorParams& p, DenominatorVariant v = DenominatorVariant::verbatim) {
  using detail::nonzero;
  const double wc = p.omega_c, we = p.eps_e, wf = p.eps_f;
  const double ge2 = p.g_ge * p.g_ge, ef2 = p.g_ef * p.g_ef, gf2 = p.g_gf * p.g_gf;
  const double de = nonzero(we - wc, "eps_e - omega_c"), df = nonzero(wf - wc, "eps_f - omega_c");
  const double two = nonzero(2.0 * wc - wf, "2 omega_c - eps_f");
  const double bare_e = nonzero(v == DenominatorVariant::verbatim ? -we : wc - we, "eps_e pathway");
  return ge2 * ge2 / (de * de * de) + gf2 * gf2 / (df * df * df) + ge2 * ef2 / ((-de) * two * (-de)) +
         gf2 * ef2 / ((-df) * bare_e * (-df)) - ge2 * gf2 / (de * de * (-df)) -
         ge2 * gf2 / ((-de) * df * df);
}

inline DispersiveReport dispersive_report(const QutritResonatorParams& p, double omega_p, double threshold = 5.0) {
  DispersiveReport r;
  r.ratio_ge = detail::safe_ratio(std::abs(p.eps_e) - p.omega_c, p.g_ge);
  r.ratio_ef = detail::safe_ratio(std::abs(p.eps_f - p.eps_e) - p.omega_c, p.g_ef);
  r.ratio_gf = detail::safe_ratio(std::abs(p.eps_f) - p.omega_c, p.g_gf);
  r.ratio_drive = detail::safe_ratio(p.eps_f - omega_p, p.Omega_p);
  auto flag = [&](double v, const char* name) {
    if (v < threshold)
      r.warnings.push_back(std::string(name) + " ratio " + std::to_string(v) + " below " + std::to_string(threshold));
  };
  flag(r.ratio_ge, "|Delta_ge|/g_ge");
  flag(r.ratio_ef, "|Delta_ef|/g_ef");
  flag(r.ratio_gf, "|Delta_gf|/g_gf");
  flag(r.ratio_drive, "|eps_f - omega_p|/Omega_p");
  return r;
}

/// Stark shift S and self-Kerr K (GHz). P is left at zero.
inline EffectiveKerrParams dispersive_coefficients(const QutritResonatorParams& p, PerturbationOrder order,
                                                   DenominatorVariant v = DenominatorVariant::verbatim) {
  p.validate();
  EffectiveKerrParams out;
  if (order == PerturbationOrder::reduced) {
    const double dge = detail::nonzero(delta_ge(p), "Delta_ge");
    const double sum = detail::nonzero(delta_ge(p) + delta_ef(p), "Delta_ge + Delta_ef");
    const double g2 = p.g_ge * p.g_ge;
    out.S = -g2 / dge + g2 * g2 / (dge * dge * dge);
    out.K = -g2 * p.g_ef * p.g_ef / (dge * dge * sum) + g2 * g2 / (dge * dge * dge);
  } else {
    out.S = full_stark_shift(p, v);
    out.K = full_kerr(p, v);
  }
  out.omega_c_tilde = p.omega_c + out.S;
  out.omega_p = p.omega_p.value_or(2.0 * out.omega_c_tilde);
  return out;
}

/// Two-photon amplitude P (GHz). Without an explicit omega_p the drive sits
/// at twice the full-order dressed resonator frequency.
inline double two_photon_amplitude(const QutritResonatorParams& p,
                                   DenominatorVariant v = DenominatorVariant::verbatim) {
  p.validate();
  const double wp = p.omega_p ? *p.omega_p : 2.0 * (p.omega_c + full_stark_shift(p, v));
  const double dge = detail::nonzero(delta_ge(p), "Delta_ge");
  const double df = detail::nonzero(p.eps_f - wp, "eps_f - omega_p");
  return -p.g_ge * p.g_ef * p.Omega_p / (dge * df);
}

/// S, K from the requested order plus P; omega_p as used by P.
inline EffectiveKerrParams effective_kerr_params(const QutritResonatorParams& p,
                                                 PerturbationOrder order = PerturbationOrder::full,
                                                 DenominatorVariant v = DenominatorVariant::verbatim) {
  auto out = dispersive_coefficients(p, order, v);
  out.omega_p = p.omega_p.value_or(2.0 * (p.omega_c + full_stark_shift(p, v)));
  out.P = two_photon_amplitude(p, v);
  return out;
}

}  // namespace kerrlhz
