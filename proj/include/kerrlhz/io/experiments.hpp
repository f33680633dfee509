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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/version.hpp>

#include "kerrlhz/analysis/fidelity.hpp"
#include "kerrlhz/analysis/statistics.hpp"
#include "kerrlhz/analysis/wigner.hpp"
#include "kerrlhz/circuit/flux_qubit.hpp"
#include "kerrlhz/dynamics/cat_prep.hpp"
#include "kerrlhz/effective/dispersive.hpp"
#include "kerrlhz/effective/three_mode.hpp"
#include "kerrlhz/io/config.hpp"
#include "kerrlhz/io/csv.hpp"
#include "kerrlhz/lhz/anneal.hpp"
#include "kerrlhz/lhz/resonator_anneal.hpp"
#include "kerrlhz/version.hpp"

namespace kerrlhz::io {

/// Predicted Hilbert dimension above the configured cap.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t default_dim_cap = 1u << 18;

/// Command-line overrides; unset fields fall back to the config, then defaults.
struct RunContext {
  std::optional<std::uint64_t> seed;
  std::string out_prefix;  // empty: "<experiment>" in the working directory
  std::optional<std::size_t> dim_cap;
  std::optional<double> omega_p_ghz;  // cat-adiabatic only
  std::optional<bool> dissipation;    // cat-adiabatic only
};

struct Session {
  const Config& config;
  const RunContext& ctx;
  std::string prefix;
  std::size_t dim_cap = default_dim_cap;
  std::uint64_t seed = 1;
  json result = json::object();
  std::vector<std::string> outputs;

  const json& root() const { return config.root; }

  void guard(double dim, const std::string& what) const {
    if (!(dim <= static_cast<double>(dim_cap)))
      throw ResourceLimitError(what + ": predicted Hilbert dimension " + format_number(dim) + " exceeds cap " +
                               std::to_string(dim_cap));
  }

  void write(const std::string& suffix, const std::string& content) {
    const std::string path = prefix + suffix;
    write_atomic(path, content);
    outputs.push_back(path);
  }
};

namespace detail {

inline const Schema& common_schema() {
  static const Schema s{{"experiment", {FieldKind::string}},
                        {"seed", {FieldKind::integer}},
                        {"dim_cap", {FieldKind::integer}}};
  return s;
}

inline Schema with_common(std::initializer_list<Schema::value_type> extra) {
  Schema s = common_schema();
  s.insert(extra.begin(), extra.end());
  return s;
}

inline const Schema& qutrit_fields() {
  static const Schema s{{"omega_c", {FieldKind::number}}, {"eps_e", {FieldKind::number}},
                        {"eps_f", {FieldKind::number}},   {"g_ge", {FieldKind::number}},
                        {"g_ef", {FieldKind::number}},    {"g_gf", {FieldKind::number}},
                        {"Omega_p", {FieldKind::number}}, {"Omega_ge", {FieldKind::number}},
                        {"Omega_ef", {FieldKind::number}}, {"omega_p", {FieldKind::number}}};
  return s;
}

inline QutritResonatorParams read_qutrit(const json& c) {
  QutritResonatorParams p;
  p.omega_c = value_or(c, "omega_c", p.omega_c);
  p.eps_e = value_or(c, "eps_e", p.eps_e);
  p.eps_f = value_or(c, "eps_f", p.eps_f);
  p.g_ge = value_or(c, "g_ge", p.g_ge);
  p.g_ef = value_or(c, "g_ef", p.g_ef);
  p.g_gf = value_or(c, "g_gf", p.g_gf);
  p.Omega_p = value_or(c, "Omega_p", p.Omega_p);
  p.Omega_ge = value_or(c, "Omega_ge", p.Omega_ge);
  p.Omega_ef = value_or(c, "Omega_ef", p.Omega_ef);
  if (c.contains("omega_p")) p.omega_p = c["omega_p"].get<double>();
  p.validate();
  return p;
}

inline const Schema& dissipation_schema() {
  static const Schema s{{"kappa", {FieldKind::number}},
                        {"gamma_ge", {FieldKind::number}},
                        {"gamma_ef", {FieldKind::number}},
                        {"gamma_gf", {FieldKind::number}}};
  return s;
}

inline const Schema& three_mode_schema() {
  static const Schema s{{"omega_q", {FieldKind::number}}, {"omega", {FieldKind::numbers}},
                        {"E_J", {FieldKind::number}},     {"phi_q", {FieldKind::number}},
                        {"phi", {FieldKind::numbers}},    {"eps_p", {FieldKind::number}},
                        {"omega_d", {FieldKind::number}}};
  return s;
}

inline std::array<double, 3> triple_of(const json& c, const std::string& key, std::array<double, 3> fallback) {
  if (!c.contains(key)) return fallback;
  const auto v = c[key].get<std::vector<double>>();
  kerrlhz::detail::require(v.size() == 3, "three_mode." + key + " needs three entries");
  return {v[0], v[1], v[2]};
}

inline ThreeModeParams read_three_mode(const json& c) {
  ThreeModeParams p;
  p.omega_q = value_or(c, "omega_q", p.omega_q);
  p.omega = triple_of(c, "omega", p.omega);
  p.E_J = value_or(c, "E_J", p.E_J);
  p.phi_q = value_or(c, "phi_q", p.phi_q);
  p.phi = triple_of(c, "phi", p.phi);
  p.eps_p = value_or(c, "eps_p", p.eps_p);
  p.omega_d = value_or(c, "omega_d", p.omega_d);
  return p;
}

inline const Schema& instance_schema() {
  static const Schema s{{"N", {FieldKind::integer}},
                        {"h", {FieldKind::numbers}},
                        {"J", {FieldKind::number_matrix}},
                        {"scale", {FieldKind::number}},
                        {"seed", {FieldKind::integer}}};
  return s;
}

/// Explicit fields when "h" is present, otherwise a seeded random instance.
inline lhz::IsingInstance read_instance(Session& S, std::size_t default_N) {
  const json inst = S.root().value("instance", json::object());
  if (!S.ctx.seed && inst.contains("seed")) S.seed = inst["seed"].get<std::uint64_t>();
  const auto N = value_or<std::size_t>(inst, "N", default_N);
  const double scale = value_or(inst, "scale", 1.0);
  if (!inst.contains("h") && !inst.contains("J")) {
    auto out = lhz::random_instance(N, 1.0, S.seed);
    out.scale = scale;
    return out;
  }
  kerrlhz::detail::require(inst.contains("h") && inst.contains("J"), "instance: give both h and J, or neither");
  const auto h = inst["h"].get<std::vector<double>>();
  const auto J = inst["J"].get<std::vector<std::vector<double>>>();
  lhz::IsingInstance out;
  out.N = h.size();
  kerrlhz::detail::require(!inst.contains("N") || N == out.N, "instance: N does not match the length of h");
  out.h = Eigen::Map<const RVector>(h.data(), static_cast<Eigen::Index>(h.size()));
  out.J = RMatrix::Zero(static_cast<Eigen::Index>(out.N), static_cast<Eigen::Index>(out.N));
  kerrlhz::detail::require(J.size() == out.N, "instance: J must be N x N");
  for (std::size_t i = 0; i < out.N; ++i) {
    kerrlhz::detail::require(J[i].size() == out.N, "instance: J must be N x N");
    for (std::size_t k = 0; k < out.N; ++k) out.J(Eigen::Index(i), Eigen::Index(k)) = J[i][k];
  }
  out.scale = scale;
  out.seed = S.seed;
  out.validate();
  return out;
}

inline std::optional<lhz::LhzEmbedding> embed(const lhz::IsingInstance& inst, lhz::Scheme scheme, double C) {
  if (scheme == lhz::Scheme::ising) return std::nullopt;
  auto e = lhz::lhz_embed4(inst, C);
  if (scheme == lhz::Scheme::lhz3) e = lhz::lhz_decompose3(e);
  return e;
}

/// One row per physical spin: logical pair (j, k), or an ancilla id.
inline std::string mapping_csv(const lhz::LhzEmbedding& emb) {
  CsvTable t({"index", "j", "k", "ancilla_id", "field"});
  for (std::size_t i = 0; i < emb.num_spins(); ++i) {
    const auto& s = emb.spins[i];
    const std::string none;
    t.add_row({i, s.ancilla ? none : std::to_string(s.j), s.ancilla ? none : std::to_string(s.k),
               s.ancilla ? std::to_string(s.ancilla_id) : none, emb.fields(static_cast<Eigen::Index>(i))});
  }
  return t.str();
}

inline json constraints_json(const lhz::LhzEmbedding& emb) {
  json out = json::array();
  for (const auto& c : emb.constraints) out.push_back(c);
  return out;
}

inline double pow_dim(std::size_t base, std::size_t exp) {
  return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

inline json complex_pairs(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

// ---------------------------------------------------------------- experiments

inline const Schema& cat_adiabatic_schema() {
  static const Schema s = [] {
    Schema s = with_common({{"tau", {FieldKind::number}},
                            {"T", {FieldKind::number}},
                            {"fock_dim", {FieldKind::integer}},
                            {"snapshots", {FieldKind::integer}},
                            {"rel_tol", {FieldKind::number}},
                            {"abs_tol", {FieldKind::number}},
                            {"dissipation", {FieldKind::flag_or_object, &dissipation_schema()}}});
    s.insert(qutrit_fields().begin(), qutrit_fields().end());
    return s;
  }();
  return s;
}

inline void run_cat_adiabatic(Session& S) {
  const json& c = S.root();
  auto p = read_qutrit(c);
  if (S.ctx.omega_p_ghz) p.Omega_p = *S.ctx.omega_p_ghz;
  const DriveSchedule sched{p.Omega_p, value_or(c, "tau", 3000.0), value_or(c, "T", 5000.0)};
  CatRunOptions opt;
  opt.fock_dim = value_or<std::size_t>(c, "fock_dim", 30);
  opt.snapshots = value_or<std::size_t>(c, "snapshots", 200);
  opt.integrator.rel_tol = value_or(c, "rel_tol", opt.integrator.rel_tol);
  opt.integrator.abs_tol = value_or(c, "abs_tol", opt.integrator.abs_tol);
  std::optional<DissipationSpec> diss;
  if (c.contains("dissipation")) {
    const json& d = c["dissipation"];
    if (d.is_object()) {
      const auto ref = DissipationSpec::reference();
      diss = DissipationSpec{value_or(d, "kappa", ref.kappa), value_or(d, "gamma_ge", ref.gamma_ge),
                             value_or(d, "gamma_ef", ref.gamma_ef), value_or(d, "gamma_gf", ref.gamma_gf)};
    } else if (d.get<bool>()) {
      diss = DissipationSpec::reference();
    }
  }
  if (S.ctx.dissipation) {
    if (!*S.ctx.dissipation) diss.reset();
    else if (!diss) diss = DissipationSpec::reference();
  }
  S.guard(3.0 * static_cast<double>(opt.fock_dim), "qutrit-resonator model");

  const auto r = adiabatic_cat_run(p, sched, diss, opt);
  const auto& ev = r.evolution;
  CsvTable t({"t_ns", "n_avg", "P_e", "P_f", "fidelity"});
  const auto &n = ev.observable("n_avg"), &pe = ev.observable("P_e"), &pf = ev.observable("P_f"),
             &f = ev.observable("fidelity");
  for (std::size_t i = 0; i < ev.times.size(); ++i) t.add_row({ev.times[i], n[i], pe[i], pf[i], f[i]});
  S.write("_observables.csv", t.str());

  json state{{"dims", {3, opt.fock_dim}}, {"index", "q * fock_dim + n with q = 0 (g), 1 (e), 2 (f)"}, {"t_ns", sched.T}};
  if (diss) {
    const CMatrix& rho = ev.densities.back().matrix();
    json rows = json::array();
    for (Eigen::Index i = 0; i < rho.rows(); ++i) rows.push_back(complex_pairs(rho.row(i).transpose()));
    state["density_matrix"] = rows;
  } else {
    state["amplitudes"] = complex_pairs(ev.states.back().amplitudes());
  }
  S.write("_final_state.json", state.dump(1) + "\n");

  const auto last = ev.times.size() - 1;
  S.result = {{"S_GHz", r.coeffs.S},
              {"K_GHz", r.coeffs.K},
              {"P_GHz", r.coeffs.P},
              {"omega_p_GHz", r.coeffs.omega_p},
              {"Omega_p_GHz", p.Omega_p},
              {"dissipation", diss.has_value()},
              {"rows", ev.times.size()},
              {"final",
               {{"n_avg", n[last]},
                {"P_e", pe[last]},
                {"P_f", pf[last]},
                {"leakage", pe[last] + pf[last]},
                {"fidelity", f[last]},
                {"photon_parity", ev.observable("photon_parity")[last]}}},
              {"max_norm_drift", ev.max_norm_drift},
              {"max_trace_drift", ev.max_trace_drift}};
  if (r.coeffs.K != 0.0 && r.coeffs.P / r.coeffs.K >= 0.0) S.result["alpha"] = r.coeffs.alpha();
}

inline const Schema& coeffs_schema() {
  static const Schema s = [] {
    Schema s = with_common({{"order", {FieldKind::string}},
                            {"variant", {FieldKind::string}},
                            {"three_mode", {FieldKind::object, &three_mode_schema()}}});
    s.insert(qutrit_fields().begin(), qutrit_fields().end());
    return s;
  }();
  return s;
}

inline void run_coeffs(Session& S) {
  const json& c = S.root();
  const auto p = read_qutrit(c);
  const std::string order = c.value("order", "full"), variant = c.value("variant", "verbatim");
  kerrlhz::detail::require(order == "full" || order == "reduced", "order must be \"full\" or \"reduced\"");
  kerrlhz::detail::require(variant == "verbatim" || variant == "symmetrized",
                           "variant must be \"verbatim\" or \"symmetrized\"");
  const auto k = effective_kerr_params(p, order == "full" ? PerturbationOrder::full : PerturbationOrder::reduced,
                                       variant == "verbatim" ? DenominatorVariant::verbatim
                                                             : DenominatorVariant::symmetrized);
  const auto rep = dispersive_report(p, k.omega_p);
  const auto tm = three_mode_coefficients(read_three_mode(c.value("three_mode", json::object())));
  json rec{{"S_GHz", k.S},
           {"K_GHz", k.K},
           {"P_GHz", k.P},
           {"omega_c_tilde_GHz", k.omega_c_tilde},
           {"omega_p_GHz", k.omega_p},
           {"J123_GHz", tm.J123},
           {"Kj_GHz", tm.K},
           {"Kjk_GHz", tm.K_jk},
           {"Kq_GHz", tm.K_q},
           {"Kqj_GHz", tm.K_qj},
           {"xi_p", tm.xi_p},
           {"dispersive",
            {{"ratio_ge", rep.ratio_ge},
             {"ratio_ef", rep.ratio_ef},
             {"ratio_gf", rep.ratio_gf},
             {"ratio_drive", rep.ratio_drive},
             {"warnings", rep.warnings}}}};
  if (k.K != 0.0 && k.P / k.K >= 0.0) {
    rec["alpha"] = k.alpha();
    rec["P_over_K"] = k.P / k.K;
  } else {
    rec["alpha"] = nullptr;
    rec["P_over_K"] = k.K != 0.0 ? json(k.P / k.K) : json(nullptr);
  }
  S.write("_coeffs.json", rec.dump(1) + "\n");
  S.result = rec;
}

inline const Schema& circuit_schema() {
  static const Schema cal{{"g_ge", {FieldKind::number}}, {"omega_c", {FieldKind::number}}};
  static const Schema s = with_common({{"C_J", {FieldKind::number}},
                                       {"E_J", {FieldKind::number}},
                                       {"alpha", {FieldKind::number}},
                                       {"C_sh", {FieldKind::number}},
                                       {"C_c", {FieldKind::number}},
                                       {"C_r", {FieldKind::number}},
                                       {"L_r", {FieldKind::number}},
                                       {"f", {FieldKind::number}},
                                       {"charge_cutoff", {FieldKind::integer}},
                                       {"f_min", {FieldKind::number}},
                                       {"f_max", {FieldKind::number}},
                                       {"f_points", {FieldKind::integer}},
                                       {"cutoff_check", {FieldKind::boolean}},
                                       {"calibrate", {FieldKind::object, &cal}}});
  return s;
}

inline void run_circuit_spectrum(Session& S) {
  const json& c = S.root();
  FluxQubitCircuit q;
  q.C_J = value_or(c, "C_J", q.C_J);
  q.E_J = value_or(c, "E_J", q.E_J);
  q.alpha = value_or(c, "alpha", q.alpha);
  q.C_sh = value_or(c, "C_sh", q.C_sh);
  q.C_c = value_or(c, "C_c", q.C_c);
  q.C_r = value_or(c, "C_r", q.C_r);
  q.L_r = value_or(c, "L_r", q.L_r);
  q.f = value_or(c, "f", q.f);
  q.charge_cutoff = value_or(c, "charge_cutoff", q.charge_cutoff);
  q.validate();
  const double side = 2.0 * q.charge_cutoff + 1.0;
  S.guard(side * side, "charge basis");
  if (c.contains("calibrate")) {
    const json& cal = c["calibrate"];
    q = calibrate_resonator(q, value_or(cal, "g_ge", 0.094), value_or(cal, "omega_c", 5.25));
  }
  const auto points = value_or<std::size_t>(c, "f_points", 1);
  kerrlhz::detail::require(points >= 1, "f_points must be >= 1");
  const double lo = value_or(c, "f_min", q.f), hi = value_or(c, "f_max", lo);
  const std::vector<double> flux = points == 1 ? std::vector<double>{lo} : linspace(lo, hi, points);
  const CutoffCheck check{.enabled = value_or(c, "cutoff_check", true)};
  const auto sw = flux_sweep(q, flux, 3, check);
  CsvTable t({"f", "eps_e_GHz", "eps_f_GHz", "g_ge_GHz", "g_ef_GHz", "g_gf_GHz"});
  for (std::size_t i = 0; i < sw.flux.size(); ++i)
    t.add_row({sw.flux[i], sw.energies[i](1), sw.energies[i](2), sw.couplings[i][0], sw.couplings[i][1],
               sw.couplings[i][2]});
  S.write("_circuit.csv", t.str());
  S.result = {{"C_r_fF", q.C_r}, {"L_r_nH", q.L_r}, {"omega_r_GHz", resonator_frequency(q)}, {"rows", sw.flux.size()}};
}

inline const Schema& spectrum_schema() {
  static const Schema s = with_common({{"instance", {FieldKind::object, &instance_schema()}},
                                       {"scheme", {FieldKind::string}},
                                       {"protocol", {FieldKind::string}},
                                       {"C_over_J", {FieldKind::number}},
                                       {"grid_points", {FieldKind::integer}},
                                       {"levels", {FieldKind::integer}},
                                       {"refine", {FieldKind::boolean}}});
  return s;
}

inline void run_spectrum(Session& S) {
  const json& c = S.root();
  const auto inst = read_instance(S, 3);
  const auto scheme = lhz::parse_scheme(c.value("scheme", "lhz4"));
  const auto protocol = lhz::parse_protocol(c.value("protocol", "ramp"));
  const double C = value_or(c, "C_over_J", 3.0) * inst.scale;
  const auto emb = embed(inst, scheme, C);
  const std::size_t n = emb ? emb->num_spins() : inst.N;
  S.guard(pow_dim(2, n), "spin register");
  const auto k = value_or<std::size_t>(c, "levels", 8);
  const auto problem = emb ? lhz::anneal_problem(*emb) : lhz::anneal_problem(inst);
  const auto tr = lhz::spectrum_trace(problem, protocol, lhz::uniform_grid(value_or<std::size_t>(c, "grid_points", 41)),
                                      k, {.refine = value_or(c, "refine", true)});
  std::vector<std::string> cols{"s"};
  for (std::size_t i = 0; i < k; ++i) cols.push_back("E_" + std::to_string(i));
  CsvTable t(cols);
  for (std::size_t i = 0; i < tr.s.size(); ++i) {
    std::vector<CsvField> row{tr.s[i]};
    for (std::size_t j = 0; j < k; ++j) row.emplace_back(tr.levels[i](static_cast<Eigen::Index>(j)));
    t.add_row(row);
  }
  S.write("_spectrum.csv", t.str());
  if (emb) S.write("_mapping.csv", mapping_csv(*emb));
  const auto g = lhz::brute_force_ground(inst);
  S.result = {{"scheme", lhz::to_string(scheme)},
              {"protocol", lhz::to_string(protocol)},
              {"n_spins", n},
              {"delta_min", tr.delta_min},
              {"s_at_min", tr.s_at_min},
              {"excluded_start", tr.excluded_start},
              {"excluded_end", tr.excluded_end},
              {"constant_offset", problem.constant_offset},
              {"ising_ground_energy", g.energy},
              {"ising_ground_configurations", g.configurations}};
  if (emb) S.result["constraints"] = constraints_json(*emb);
}

inline const Schema& gap_stats_schema() {
  static const Schema run{{"scheme", {FieldKind::string}}, {"protocol", {FieldKind::string}}};
  static const Schema s = with_common({{"n_instances", {FieldKind::integer}},
                                       {"N", {FieldKind::integer}},
                                       {"C_over_J", {FieldKind::numbers}},
                                       {"runs", {FieldKind::objects, &run}},
                                       {"grid_points", {FieldKind::integer}}});
  return s;
}

inline void run_gap_stats(Session& S) {
  const json& c = S.root();
  lhz::GapStatsOptions opt;
  opt.n_instances = value_or(c, "n_instances", opt.n_instances);
  opt.N = value_or(c, "N", opt.N);
  opt.C_over_J = value_or(c, "C_over_J", opt.C_over_J);
  opt.grid_points = value_or(c, "grid_points", opt.grid_points);
  opt.seed = S.seed;
  if (c.contains("runs")) {
    opt.runs.clear();
    for (const auto& r : c["runs"])
      opt.runs.push_back({lhz::parse_scheme(r.value("scheme", "lhz4")), lhz::parse_protocol(r.value("protocol", "ramp"))});
  }
  kerrlhz::detail::require(opt.N >= 2, "N must be >= 2");
  std::size_t n_max = 0;
  for (const auto& r : opt.runs) {
    const std::size_t m = opt.N * (opt.N + 1) / 2;
    const std::size_t anc = opt.N >= 3 ? (opt.N - 1) * (opt.N - 2) / 2 : 0;  // plaquettes beyond the base row
    n_max = std::max(n_max, r.scheme == lhz::Scheme::ising ? opt.N : r.scheme == lhz::Scheme::lhz4 ? m : m + anc);
  }
  S.guard(pow_dim(2, n_max), "spin register");
  const auto recs = lhz::gap_statistics(opt);
  CsvTable t({"seed", "C_over_J", "scheme", "protocol", "gap_min"});
  for (const auto& r : recs)
    t.add_row({r.seed, r.C_over_J, lhz::to_string(r.scheme), lhz::to_string(r.protocol), r.gap_min});
  S.write("_gaps.csv", t.str());
  json groups = json::array();
  for (double C : opt.C_over_J)
    for (const auto& run : opt.runs) {
      std::vector<double> v;
      for (const auto& r : recs)
        if (r.C_over_J == C && r.scheme == run.scheme && r.protocol == run.protocol) v.push_back(r.gap_min);
      groups.push_back({{"C_over_J", C},
                        {"scheme", lhz::to_string(run.scheme)},
                        {"protocol", lhz::to_string(run.protocol)},
                        {"count", v.size()},
                        {"median_gap", v.empty() ? json(nullptr) : json(median(v))}});
    }
  S.result = {{"rows", recs.size()}, {"groups", groups}};
}

inline const Schema& network_schema() {
  static const Schema s{{"delta", {FieldKind::numbers}}, {"K", {FieldKind::numbers}},
                        {"eps_p", {FieldKind::numbers}}, {"eps_d", {FieldKind::numbers}},
                        {"triples", {FieldKind::number_matrix}}, {"J", {FieldKind::numbers}},
                        {"T", {FieldKind::number}},       {"omega", {FieldKind::numbers}},
                        {"fock_dim", {FieldKind::integer}}};
  return s;
}

inline const Schema& lhz_anneal_schema() {
  static const Schema s = with_common({{"instance", {FieldKind::object, &instance_schema()}},
                                       {"network", {FieldKind::object, &network_schema()}},
                                       {"C_over_J", {FieldKind::number}},
                                       {"delta", {FieldKind::number}},
                                       {"K", {FieldKind::number}},
                                       {"eps_p", {FieldKind::number}},
                                       {"fock_dim", {FieldKind::integer}},
                                       {"T", {FieldKind::number}},
                                       {"dynamic", {FieldKind::boolean}},
                                       {"snapshots", {FieldKind::integer}},
                                       {"levels", {FieldKind::integer}},
                                       {"rel_tol", {FieldKind::number}},
                                       {"abs_tol", {FieldKind::number}}});
  return s;
}

inline lhz::ResonatorLhzParams read_network(const json& c) {
  lhz::ResonatorLhzParams p;
  p.delta = c.value("delta", p.delta);
  p.K = c.value("K", p.K);
  p.eps_p = c.value("eps_p", p.eps_p);
  p.eps_d = c.value("eps_d", p.eps_d);
  p.J = c.value("J", p.J);
  p.T = c.value("T", p.T);
  p.omega = c.value("omega", p.omega);
  p.fock_dim = c.value("fock_dim", p.fock_dim);
  for (const auto& t : c.value("triples", json::array())) {
    kerrlhz::detail::require(t.size() == 3, "network.triples: each entry needs three indices");
    std::array<std::size_t, 3> tr{};
    for (std::size_t i = 0; i < 3; ++i) {
      const double v = t[i].get<double>();
      kerrlhz::detail::require(v >= 0 && v == std::floor(v), "network.triples: indices must be non-negative integers");
      tr[i] = static_cast<std::size_t>(v);
    }
    p.triples.push_back(tr);
  }
  return p;
}

inline void run_lhz_anneal(Session& S) {
  const json& c = S.root();
  kerrlhz::detail::require(!(c.contains("network") && c.contains("instance")), "give either instance or network, not both");
  lhz::ResonatorLhzParams p;
  std::optional<lhz::IsingInstance> inst;
  std::optional<lhz::LhzEmbedding> emb;
  const std::size_t fock = value_or<std::size_t>(c, "fock_dim", 12);
  const double T = value_or(c, "T", 10.0);
  if (c.contains("network")) {
    p = read_network(c["network"]);
    if (!c["network"].contains("fock_dim")) p.fock_dim = fock;
    if (!c["network"].contains("T")) p.T = T;
  } else {
    inst = read_instance(S, 2);
    kerrlhz::detail::require(inst->N >= 2, "instance: need at least two logical spins");
    emb = lhz::lhz_decompose3(lhz::lhz_embed4(*inst, value_or(c, "C_over_J", 3.0) * inst->scale));
    p = lhz::resonator_network(*emb, value_or(c, "delta", 4.5) * inst->scale, value_or(c, "K", 10.0) * inst->scale,
                               value_or(c, "eps_p", -20.0) * inst->scale, fock, T);
  }
  p.validate();
  S.guard(pow_dim(p.fock_dim, p.num_resonators()), "resonator network");
  lhz::ResonatorAnnealOptions opt;
  opt.dynamic = value_or(c, "dynamic", false);
  opt.snapshots = value_or(c, "snapshots", opt.snapshots);
  opt.levels = value_or(c, "levels", opt.levels);
  opt.integrator.rel_tol = value_or(c, "rel_tol", opt.integrator.rel_tol);
  opt.integrator.abs_tol = value_or(c, "abs_tol", opt.integrator.abs_tol);
  const auto r = lhz::resonator_lhz_anneal(p, opt);

  const std::size_t n = p.num_resonators();
  CsvTable t({"t", "resonator", "re_a", "im_a", "n_avg"});
  if (r.evolution) {
    const auto& ev = *r.evolution;
    for (std::size_t i = 0; i < ev.times.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto js = std::to_string(j);
        t.add_row({ev.times[i], j, ev.observable("re_a" + js)[i], ev.observable("im_a" + js)[i],
                   ev.observable("n" + js)[i]});
      }
  } else {
    // Ground state of the final Hamiltonian, reported at t = T.
    const auto ops = slot_ladders(p.space());
    const CVector& v = r.ground.amplitudes();
    for (std::size_t j = 0; j < n; ++j) {
      const cplx a = v.dot(ops.a[j].matrix() * v);
      t.add_row({p.T, j, a.real(), a.imag(), v.dot(ops.n[j].matrix() * v).real()});
    }
  }
  S.write("_observables.csv", t.str());
  if (emb) S.write("_mapping.csv", mapping_csv(*emb));

  auto readout_json = [](const ReadoutResult& rr) {
    return json{{"signs", rr.signs},
                {"confidence", rr.confidence},
                {"cat_weight", rr.cat_weight},
                {"low_confidence", rr.low_confidence},
                {"encoding_fidelity", rr.fidelity}};
  };
  json summary{{"alpha", r.alpha},
               {"resonators", n},
               {"fock_dim", p.fock_dim},
               {"T", p.T},
               {"final_levels", std::vector<double>(r.final_levels.data(), r.final_levels.data() + r.final_levels.size())},
               {"ground", readout_json(r.readout)}};
  if (r.dynamic_readout) summary["dynamic"] = readout_json(*r.dynamic_readout);
  if (emb) {
    summary["constraints"] = constraints_json(*emb);
    const auto g = lhz::brute_force_ground(*inst);
    summary["ising_ground_configurations"] = g.configurations;
    if (g.configurations.size() == 1) {
      const std::size_t b = lhz::encode(*emb, g.configurations[0]);
      std::vector<int> expected;
      for (std::size_t j = 0; j < n; ++j) expected.push_back(lhz::spin_value(b, j, n));
      summary["expected_signs"] = expected;
      summary["ground"]["match"] = r.readout.signs == expected;
      if (r.dynamic_readout) summary["dynamic"]["match"] = r.dynamic_readout->signs == expected;
    }
  }
  S.write("_summary.json", summary.dump(1) + "\n");
  S.result = summary;
}

inline const Schema& wigner_schema() {
  static const Schema s = with_common({{"state", {FieldKind::string}},
                                       {"alpha", {FieldKind::number}},
                                       {"alpha_im", {FieldKind::number}},
                                       {"n", {FieldKind::integer}},
                                       {"fock_dim", {FieldKind::integer}},
                                       {"K", {FieldKind::number}},
                                       {"P", {FieldKind::number}},
                                       {"tau", {FieldKind::number}},
                                       {"T", {FieldKind::number}},
                                       {"x_min", {FieldKind::number}},
                                       {"x_max", {FieldKind::number}},
                                       {"x_points", {FieldKind::integer}},
                                       {"p_min", {FieldKind::number}},
                                       {"p_max", {FieldKind::number}},
                                       {"p_points", {FieldKind::integer}}});
  return s;
}

inline void run_wigner(Session& S) {
  const json& c = S.root();
  const std::string kind = c.value("state", "cat_even");
  const auto dim = value_or<std::size_t>(c, "fock_dim", 40);
  S.guard(static_cast<double>(dim), "single mode");
  const cplx alpha(value_or(c, "alpha", std::sqrt(2.0)), value_or(c, "alpha_im", 0.0));
  const auto space = CompositeSpace(ModeSpace::fock(dim));
  std::optional<StateVector> psi;
  if (kind == "vacuum") {
    psi = StateVector::basis(space, {0});
  } else if (kind == "fock") {
    const auto n = value_or<std::size_t>(c, "n", 1);
    kerrlhz::detail::require(n < dim, "fock state index must be below fock_dim");
    psi = StateVector::basis(space, {n});
  } else if (kind == "coherent") {
    psi = coherent_state(alpha, dim);
  } else if (kind == "cat_even" || kind == "cat_odd") {
    psi = cat_state(alpha, kind == "cat_even" ? CatParity::even : CatParity::odd, dim);
  } else if (kind == "kerr_adiabatic") {
    const double K = value_or(c, "K", 0.00045), P = value_or(c, "P", 0.00094);
    const DriveSchedule sched{0.0, value_or(c, "tau", 3000.0), value_or(c, "T", 5000.0)};
    psi = adiabatic_kerr_run(K, P, sched, dim, 2).states.back();
  } else {
    throw InvalidArgument("state must be one of vacuum, fock, coherent, cat_even, cat_odd, kerr_adiabatic");
  }
  const auto x = linspace(value_or(c, "x_min", -4.0), value_or(c, "x_max", 4.0), value_or<std::size_t>(c, "x_points", 81));
  const auto pq = linspace(value_or(c, "p_min", -4.0), value_or(c, "p_max", 4.0), value_or<std::size_t>(c, "p_points", 81));
  const auto w = wigner(*psi, x, pq);
  CsvTable t({"x", "p", "W"});
  t.add_comment(WignerGrid::convention);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < pq.size(); ++j) t.add_row({x[i], pq[j], w.values(Eigen::Index(i), Eigen::Index(j))});
  S.write("_wigner.csv", t.str());
  S.result = {{"state", kind},
              {"convention", WignerGrid::convention},
              {"integral", w.integral()},
              {"min", w.values.minCoeff()},
              {"max", w.values.maxCoeff()}};
}

}  // namespace detail

struct ExperimentSpec {
  std::string name;
  const Schema& (*schema)();
  void (*run)(Session&);
};

inline const std::vector<ExperimentSpec>& experiments() {
  static const std::vector<ExperimentSpec> v{
      {"cat-adiabatic", &detail::cat_adiabatic_schema, &detail::run_cat_adiabatic},
      {"coeffs", &detail::coeffs_schema, &detail::run_coeffs},
      {"circuit-spectrum", &detail::circuit_schema, &detail::run_circuit_spectrum},
      {"spectrum", &detail::spectrum_schema, &detail::run_spectrum},
      {"gap-stats", &detail::gap_stats_schema, &detail::run_gap_stats},
      {"lhz-anneal", &detail::lhz_anneal_schema, &detail::run_lhz_anneal},
      {"wigner", &detail::wigner_schema, &detail::run_wigner},
  };
  return v;
}

inline json versions() {
  char boost_v[32];
  std::snprintf(boost_v, sizeof(boost_v), "%d.%d.%d", BOOST_VERSION / 100000, BOOST_VERSION / 100 % 1000,
                BOOST_VERSION % 100);
  return {{"kerrlhz", version_string},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", boost_v},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__}};
}

/// Validates the config, runs the experiment and returns the run manifest.
/// `expected` is the subcommand name; without it the config must carry
/// "experiment".
inline json run_experiment(const Config& config, const RunContext& ctx = {},
                           const std::optional<std::string>& expected = std::nullopt) {
  const auto start = std::chrono::steady_clock::now();
  std::string name;
  if (config.root.contains("experiment")) {
    if (!config.root["experiment"].is_string())
      throw ConfigError("experiment", config.line_of("/experiment"), "key 'experiment' must be a string");
    name = config.root["experiment"].get<std::string>();
    if (expected && name != *expected)
      throw ConfigError("experiment", config.line_of("/experiment"),
                        "key 'experiment' is \"" + name + "\" but the subcommand is " + *expected);
  } else if (expected) {
    name = *expected;
  } else {
    throw ConfigError("experiment", 0, "missing key 'experiment'");
  }
  const ExperimentSpec* spec = nullptr;
  for (const auto& e : experiments())
    if (e.name == name) spec = &e;
  if (!spec) throw ConfigError("experiment", config.line_of("/experiment"), "unknown experiment \"" + name + "\"");
  validate(config, spec->schema());

  Session S{config, ctx, {}, default_dim_cap, 1, json::object(), {}};
  S.prefix = ctx.out_prefix.empty() ? name : ctx.out_prefix;
  S.dim_cap = ctx.dim_cap.value_or(value_or<std::size_t>(config.root, "dim_cap", default_dim_cap));
  S.seed = ctx.seed.value_or(value_or<std::uint64_t>(config.root, "seed", 1));
  spec->run(S);

  json effective = config.root;
  effective["experiment"] = name;
  effective["seed"] = S.seed;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(fnv1a64(effective.dump())));
  const char* threads = std::getenv("KERRLHZ_THREADS");
  return {{"experiment", name},
          {"config_source", config.source},
          {"config_hash", std::string("fnv1a64:") + hash},
          {"seed", S.seed},
          {"dim_cap", S.dim_cap},
          {"threads_env", threads ? json(threads) : json(nullptr)},
          {"versions", versions()},
          {"wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
          {"outputs", S.outputs},
          {"result", S.result}};
}

}  // namespace kerrlhz::io
