// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Subcommand drivers behind the qchan executable. Each run_* takes a fully
// parsed RunConfig, writes its primary output to cfg.out_path (or `out`),
// diagnostics to `err`, and returns the process exit code:
//   0 success, 1 asserted bound violated, 2 invalid input, 3 inconclusive.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qchan/io.hpp"

namespace qchan {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExitCode : int { success = 0, bound_violation = 1, invalid_input = 2, inconclusive = 3 };

enum class Command { analyze, simulate, verify, gen };

struct RunConfig {
  Command command = Command::analyze;
  Tolerances tol;
  std::uint64_t seed = 0;
  int restarts = 32;
  int n_max = 20;
  int trials = 1000;         // audit samples (analyze)
  int count = 10;            // channels per ensemble (verify)
  int states = 100;          // states per channel (verify)
  std::string channel_path;  // --channel
  std::string family;        // --family
  Index dim = 2;
  std::optional<double> p;
  int k = 4;
  std::string state = "pure_0";
  std::string out_path;
  std::string summary_path;
  bool timing = false;       // embed runtime_ms (makes output non-reproducible)
};

struct ChannelSource {
  KrausChannel channel;
  std::string descriptor;
  std::optional<double> exact_c;  // analytically known contraction rate
};

namespace detail {

inline std::string describe(const std::string& family, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string s = family + "(";
  for (std::size_t i = 0; i < kv.size(); ++i) s += (i ? "," : "") + kv[i].first + "=" + kv[i].second;
  return s + ")";
}

inline double require_p(const RunConfig& cfg, const char* family) {
  if (!cfg.p) throw InvalidInput(std::string("family ") + family + " requires --p");
  return *cfg.p;
}

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out_path, text);
  }
}

}  // namespace detail

/// Builds the channel named by --channel or --family.
inline ChannelSource resolve_channel(const RunConfig& cfg) {
  cfg.tol.validate();
  if (!cfg.channel_path.empty() && !cfg.family.empty()) {
    throw InvalidInput("give either --channel or --family, not both");
  }
  if (!cfg.channel_path.empty()) {
    return {load_channel(cfg.channel_path, cfg.tol), cfg.channel_path, std::nullopt};
  }
  const std::string n = std::to_string(cfg.dim);
  if (cfg.family == "identity") {
    return {identity_channel(cfg.dim), detail::describe("identity", {{"dim", n}}), 1.0};
  }
  if (cfg.family == "depolarizing") {
    const double p = detail::require_p(cfg, "depolarizing");
    return {make_depolarizing(cfg.dim, p), detail::describe("depolarizing", {{"dim", n}, {"p", format_double(p)}}),
            1.0 - p};
  }
  if (cfg.family == "unitary_mixture") {
    return {make_random_unitary_mixture(cfg.dim, cfg.k, cfg.seed),
            detail::describe("unitary_mixture",
                             {{"dim", n}, {"k", std::to_string(cfg.k)}, {"seed", std::to_string(cfg.seed)}}),
            std::nullopt};
  }
  if (cfg.family == "amplitude_damping") {
    if (cfg.dim != 2) throw InvalidInput("family amplitude_damping acts on a qubit (--dim 2)");
    const double eta = detail::require_p(cfg, "amplitude_damping");
    return {make_amplitude_damping(eta), detail::describe("amplitude_damping", {{"eta", format_double(eta)}}),
            std::nullopt};
  }
  if (cfg.family.empty()) throw InvalidInput("no channel given: use --channel PATH or --family NAME");
  throw InvalidInput("unknown channel family '" + cfg.family +
                     "' (identity, depolarizing, unitary_mixture, amplitude_damping)");
}

/// pure_0, maximally_mixed, random:SEED, or a state JSON file.
inline DensityMatrix resolve_state(const std::string& preset, Index dim, const Tolerances& tol) {
  if (preset == "pure_0") return DensityMatrix::pure(ComplexVector::Unit(dim, 0));
  if (preset == "maximally_mixed") return DensityMatrix::maximally_mixed(dim);
  if (preset.rfind("random:", 0) == 0) {
    std::uint64_t s = 0;
    const std::string digits = preset.substr(7);
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (digits.empty() || res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
      throw InvalidInput("state preset random:SEED needs an unsigned integer seed");
    }
    Rng rng(s);
    return random_state(dim, rng);
  }
  const DensityMatrix s = load_state(preset, tol);
  if (s.dim() != dim) throw InvalidInput(preset + ": state dimension does not match channel");
  return s;
}

/// Exact rate when known: family formula, else ||M|| for bistochastic qubits.
inline std::optional<double> exact_contraction_rate(const ChannelSource& src, const Tolerances& tol) {
  if (src.exact_c) return src.exact_c;
  if (src.channel.dim() == 2 && is_bistochastic(src.channel, tol)) return king_ruskai_form(src.channel, tol).c_exact;
  return std::nullopt;
}

inline int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const ChannelSource src = resolve_channel(cfg);
  const KrausChannel& ch = src.channel;
  const Tolerances& tol = cfg.tol;

  Json rep;
  rep["tool_version"] = kToolVersion;
  rep["seed"] = cfg.seed;
  rep["channel_source"] = src.descriptor;
  rep["dim"] = ch.dim();
  rep["num_kraus"] = ch.size();
  const ChannelCertificate cert = certify(ch, tol);
  rep["certificate"] = to_json(cert);

  const ContractionEstimate est = estimate_contraction_rate(ch, cfg.restarts, cfg.seed, tol);
  const AuditReport audit = sample_ratio_audit(ch, est, cfg.trials, derive_seed(cfg.seed, 1), tol);
  rep["contraction"] = to_json(audit.refined);
  rep["audit"] = to_json(audit);

  ExitCode code = audit.conclusive ? ExitCode::success : ExitCode::inconclusive;
  Json checks = Json::array();
  if (!cert.is_bistochastic) {
    rep["status"] = "not_bistochastic";
    rep["spectral"] = {{"status", "skipped: channel is not bistochastic"}};
    rep["bound_checks_skipped"] = "entropy-production bounds require a bistochastic channel";
  } else {
    const SpectralReport sr = analyze_spectrum(ch, tol);
    rep["spectral"] = to_json(sr);
    std::optional<double> exact = exact_contraction_rate(src, tol);
    if (ch.dim() == 2) rep["king_ruskai"] = to_json(king_ruskai_form(ch, tol));
    const double c = exact ? *exact : audit.refined.c_lower;
    rep["c_used"] = c;
    rep["c_source"] = exact ? "exact" : "estimated (lower bound)";
    if (!sr.is_ergodic) {
      rep["status"] = "not_ergodic";
      rep["bound_checks_skipped"] = "channel is not ergodic: spectral gap not computed";
    } else {
      rep["status"] = "ok";
      const DensityMatrix probe = DensityMatrix::pure(ComplexVector::Unit(ch.dim(), 0));
      rep["probe_state"] = "pure_0";
      checks.push_back(to_json(check_streater_bound(ch, probe, sr.gap_gamma, tol)));
      if (c < 1.0) {
        auto add = [&](BoundCheckResult b) {
          b.asserted = exact.has_value();
          if (b.asserted && !b.satisfied) code = ExitCode::bound_violation;
          checks.push_back(to_json(b));
        };
        add(check_main_bound(ch, probe, c, tol));
        if (sharp_bound_class(ch, tol)) add(check_sharp_bound(ch, probe, c, tol));
        add(check_kappa_bound(sr.kappa, c, tol));
      } else {
        rep["rate_bounds_skipped"] = "C >= 1: channel is not strictly contractive";
      }
      if (!checks.front()["satisfied"].get<bool>()) code = ExitCode::bound_violation;
    }
  }
  rep["bound_checks"] = std::move(checks);
  if (cfg.timing) {
    rep["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  }
  if (!audit.conclusive) {
    err << Json{{"warning", "inconclusive"},
                {"message", "contraction audit still has violators after refinement"}}.dump()
        << "\n";
  }
  detail::emit(cfg, out, rep.dump(2) + "\n");
  return static_cast<int>(code);
}

inline int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ChannelSource src = resolve_channel(cfg);
  const KrausChannel& ch = src.channel;
  const Tolerances& tol = cfg.tol;
  require_bistochastic(ch, "simulate", tol);
  const DensityMatrix sigma0 = resolve_state(cfg.state, ch.dim(), tol);
  const OrbitLog log = iterate_orbit(ch, sigma0, cfg.n_max, tol);

  std::ostringstream csv;
  write_orbit_csv(csv, log);
  detail::emit(cfg, out, csv.str());

  Json summary;
  summary["tool_version"] = kToolVersion;
  summary["seed"] = cfg.seed;
  summary["channel_source"] = src.descriptor;
  summary["state"] = cfg.state;
  summary["steps"] = log.n_max();
  summary["final_trace_dist"] = log.steps.back().trace_dist;
  summary["final_entropy"] = log.steps.back().entropy;
  summary["hermiticity_drift"] = log.hermiticity_drift;
  double min_delta = std::numeric_limits<double>::infinity();
  for (const auto& s : log.steps) min_delta = std::min(min_delta, s.delta_s);
  summary["min_delta_S"] = min_delta;

  ExitCode code = ExitCode::success;
  const std::optional<double> exact = exact_contraction_rate(src, tol);
  const double c = exact ? *exact : estimate_contraction_rate(ch, cfg.restarts, cfg.seed, tol).c_lower;
  summary["c_used"] = c;
  summary["c_source"] = exact ? "exact" : "estimated (lower bound)";
  Json env = Json::array();
  if (c < 1.0) {
    int violations = 0;
    auto record = [&](BoundCheckResult b) {
      b.asserted = exact.has_value();
      if (!b.satisfied) ++violations;
      if (b.asserted && !b.satisfied) code = ExitCode::bound_violation;
      env.push_back(to_json(b));
    };
    for (auto& b : check_convergence_envelope(log, c, tol)) record(b);
    try {
      record(check_kappa_bound(kappa(ch, tol), c, tol));
    } catch (const NotErgodic&) {
      summary["kappa_skipped"] = "channel is not ergodic";
    }
    summary["envelope_violations"] = violations;
  } else {
    summary["envelope_skipped"] = "C >= 1: channel is not strictly contractive";
  }
  summary["envelope_checks"] = std::move(env);

  const std::string text = summary.dump(2) + "\n";
  if (cfg.summary_path.empty()) {
    err << text;
  } else {
    write_text_file(cfg.summary_path, text);
  }
  return static_cast<int>(code);
}

namespace detail {

struct BoundTally {
  long checks = 0;
  long violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  bool asserted = true;
};

struct VerifyState {
  std::map<std::string, BoundTally> tallies;
  Json violators = Json::array();
  Json warnings = Json::array();
  int channels_checked = 0;
  int channels_skipped = 0;

  void record(const BoundCheckResult& b, int channel_index, const KrausChannel& ch, const DensityMatrix& s) {
    BoundTally& t = tallies[to_string(b.bound_id)];
    t.asserted = b.asserted;
    ++t.checks;
    t.worst_margin = std::min(t.worst_margin, b.margin);
    if (!b.satisfied) {
      ++t.violations;
      if (b.asserted && violators.size() < 10) {
        Json v = to_json(b);
        v["channel_index"] = channel_index;
        v["channel"] = channel_to_json(ch);
        v["state"] = state_to_json(s);
        violators.push_back(std::move(v));
      }
    }
  }
};

inline std::vector<double> p_grid(const RunConfig& cfg) {
  if (cfg.p) return {*cfg.p};
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

/// Random bistochastic qubit channel with ||M|| < 1 - 1e-9, drawing from
/// sub-streams of `seed` until one qualifies.
inline KrausChannel strictly_contractive_qubit(std::uint64_t seed, int k, const Tolerances& tol) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    KrausChannel ch = make_random_unitary_mixture(2, std::max(2, k), derive_seed(seed, attempt));
    if (king_ruskai_form(ch, tol).c_exact < 1.0 - 1e-9) return ch;
  }
}

}  // namespace detail

/// Seeded ensemble checks of the entropy-production bounds. Families:
///   qubit_random     random bistochastic qubit channels, exact C = ||M||
///   depolarizing     --dim N over a p grid (or --p), exact C = 1 - p
///   unitary_mixture  --dim N, --k; gamma exact, C estimated (informational)
///   qubit_product    products of two random qubit channels, C = max factor
inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.tol.validate();
  const Tolerances& tol = cfg.tol;
  if (cfg.count < 0 || cfg.states < 0) throw InvalidInput("verify: --count and --states must be >= 0");
  detail::VerifyState vs;
  const std::string& fam = cfg.family;

  auto run_states = [&](int idx, const KrausChannel& ch, std::uint64_t stream, auto&& per_state) {
    Rng rng(derive_seed(cfg.seed, stream));
    for (int s = 0; s < cfg.states; ++s) {
      const DensityMatrix sigma = random_state(ch.dim(), rng);
      per_state(sigma);
    }
    (void)idx;
  };

  if (fam == "qubit_random") {
    for (int i = 0; i < cfg.count; ++i) {
      const KrausChannel ch = detail::strictly_contractive_qubit(derive_seed(cfg.seed, 1000 + i), cfg.k, tol);
      const double c = king_ruskai_form(ch, tol).c_exact;
      const double gamma = spectral_gap(ch, tol).gap_gamma;
      run_states(i, ch, 2000 + i, [&](const DensityMatrix& s) {
        vs.record(check_streater_bound(ch, s, gamma, tol), i, ch, s);
        vs.record(check_main_bound(ch, s, c, tol), i, ch, s);
        vs.record(check_sharp_bound(ch, s, c, tol), i, ch, s);
      });
      ++vs.channels_checked;
    }
  } else if (fam == "depolarizing") {
    const auto grid = detail::p_grid(cfg);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const int idx = static_cast<int>(i);
      const KrausChannel ch = make_depolarizing(cfg.dim, grid[i]);
      const double c = 1.0 - grid[i];
      if (!(c < 1.0)) {
        ++vs.channels_skipped;
        vs.warnings.push_back("p = 0 is not strictly contractive; skipped");
        continue;
      }
      const double gamma = spectral_gap(ch, tol).gap_gamma;
      const bool sharp = sharp_bound_class(ch, tol).has_value();
      run_states(idx, ch, 2000 + i, [&](const DensityMatrix& s) {
        vs.record(check_streater_bound(ch, s, gamma, tol), idx, ch, s);
        vs.record(check_main_bound(ch, s, c, tol), idx, ch, s);
        if (sharp) vs.record(check_sharp_bound(ch, s, c, tol), idx, ch, s);
      });
      ++vs.channels_checked;
    }
  } else if (fam == "unitary_mixture") {
    for (int i = 0; i < cfg.count; ++i) {
      const KrausChannel ch = make_random_unitary_mixture(cfg.dim, cfg.k, derive_seed(cfg.seed, 1000 + i));
      const SpectralReport sr = analyze_spectrum(ch, tol);
      if (!sr.is_ergodic) {
        ++vs.channels_skipped;
        continue;
      }
      const double c =
          estimate_contraction_rate(ch, cfg.restarts, derive_seed(cfg.seed, 3000 + i), tol).c_lower;
      run_states(i, ch, 2000 + i, [&](const DensityMatrix& s) {
        vs.record(check_streater_bound(ch, s, sr.gap_gamma, tol), i, ch, s);
        if (c < 1.0) {
          BoundCheckResult b = check_main_bound(ch, s, c, tol);
          b.asserted = false;
          vs.record(b, i, ch, s);
        }
      });
      ++vs.channels_checked;
    }
  } else if (fam == "qubit_product") {
    for (int i = 0; i < cfg.count; ++i) {
      const std::vector<KrausChannel> factors{
          detail::strictly_contractive_qubit(derive_seed(cfg.seed, 1000 + 2 * i), cfg.k, tol),
          detail::strictly_contractive_qubit(derive_seed(cfg.seed, 1001 + 2 * i), cfg.k, tol)};
      const double c_factor =
          std::max(king_ruskai_form(factors[0], tol).c_exact, king_ruskai_form(factors[1], tol).c_exact);
      const KrausChannel product = tensor_product(factors[0], factors[1], tol);
      ContractionEstimate claimed;
      claimed.c_lower = c_factor;
      const AuditReport audit = sample_ratio_audit(product, claimed, cfg.trials, derive_seed(cfg.seed, 4000 + i), tol);
      const double c = std::max(c_factor, audit.refined.c_lower);
      if (audit.refined.c_lower > c_factor + tol.audit) {
        vs.warnings.push_back("product " + std::to_string(i) + ": audit found rate above the factor maximum");
      }
      if (!(c < 1.0)) {
        ++vs.channels_skipped;
        continue;
      }
      run_states(i, product, 2000 + i, [&](const DensityMatrix& s) {
        vs.record(check_sharp_bound_product(factors, s, c, tol), i, product, s);
      });
      ++vs.channels_checked;
    }
  } else {
    throw InvalidInput("verify: unknown family '" + fam +
                       "' (qubit_random, depolarizing, unitary_mixture, qubit_product)");
  }

  if (vs.channels_checked == 0) {
    vs.warnings.push_back("empty ensemble: no checks were run");
    err << Json{{"warning", "empty ensemble: no checks were run"}}.dump() << "\n";
  }

  Json rep;
  rep["tool_version"] = kToolVersion;
  rep["family"] = fam;
  Index dim = cfg.dim;
  if (fam == "qubit_random") dim = 2;
  if (fam == "qubit_product") dim = 4;
  rep["dim"] = dim;
  rep["seed"] = cfg.seed;
  rep["count"] = cfg.count;
  rep["states_per_channel"] = cfg.states;
  rep["channels_checked"] = vs.channels_checked;
  rep["channels_skipped"] = vs.channels_skipped;
  Json bounds = Json::object();
  bool failed = false;
  for (const auto& [name, t] : vs.tallies) {
    bounds[name] = {{"checks", t.checks},
                    {"violations", t.violations},
                    {"worst_margin", t.checks ? Json(t.worst_margin) : Json(nullptr)},
                    {"asserted", t.asserted}};
    if (t.asserted && t.violations > 0) failed = true;
  }
  rep["bounds"] = std::move(bounds);
  rep["violators"] = std::move(vs.violators);
  rep["warnings"] = std::move(vs.warnings);
  rep["passed"] = !failed;
  detail::emit(cfg, out, rep.dump(2) + "\n");
  return static_cast<int>(failed ? ExitCode::bound_violation : ExitCode::success);
}

inline int run_gen(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  if (!cfg.channel_path.empty()) throw InvalidInput("gen: use --family, not --channel");
  const ChannelSource src = resolve_channel(cfg);
  detail::emit(cfg, out, serialize_channel(src.channel));
  return static_cast<int>(ExitCode::success);
}

/// Dispatches cfg.command and maps exceptions to exit codes with a JSON
/// error object on `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto fail = [&](ExitCode code, const char* kind, const char* what) {
    err << Json{{"error", kind}, {"message", what}}.dump() << "\n";
    return static_cast<int>(code);
  };
  try {
    switch (cfg.command) {
      case Command::analyze: return run_analyze(cfg, out, err);
      case Command::simulate: return run_simulate(cfg, out, err);
      case Command::verify: return run_verify(cfg, out, err);
      case Command::gen: return run_gen(cfg, out, err);
    }
    return fail(ExitCode::invalid_input, "invalid_input", "unknown command");
  } catch (const InvalidInput& e) {
    return fail(ExitCode::invalid_input, "invalid_input", e.what());
  } catch (const NumericalFailure& e) {
    return fail(ExitCode::inconclusive, "numerical_failure", e.what());
  } catch (const Json::exception& e) {
    return fail(ExitCode::invalid_input, "invalid_input", e.what());
  }
}

}  // namespace qchan
