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

// File formats.
//
// Channel JSON:  { "dim": N, "kraus": [ op, ... ] }, op = N rows of N
//                [re, im] pairs.
// State JSON:    { "dim": N, "matrix": N rows of N [re, im] pairs }.
// Orbit CSV:     n,trace_dist,hs_dist_sq,entropy,delta_S[,r1,r2,r3]
//                one row per step, shortest round-trip decimal floats.

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"  // nlohmann/json, vendored

#include "qchan/contraction.hpp"
#include "qchan/dynamics.hpp"
#include "qchan/spectral.hpp"

namespace qchan {

using Json = nlohmann::json;

/// Shortest decimal string that round-trips the double; locale independent.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

/// Parses N rows of N [re, im] pairs; `where` prefixes error messages.
inline ComplexMatrix matrix_from_json(const Json& j, Index n, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n) {
    throw InvalidInput(where + ": expected an array of " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw InvalidInput(rw + ": expected a row of " + std::to_string(n) + " entries");
    }
    for (Index c = 0; c < n; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw InvalidInput(rw + "[" + std::to_string(c) + "]: expected a [re, im] pair of numbers");
      }
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

inline Json channel_to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& v : ch.kraus_ops()) ops.push_back(matrix_to_json(v));
  return Json{{"dim", ch.dim()}, {"kraus", std::move(ops)}};
}

inline std::string serialize_channel(const KrausChannel& ch) { return channel_to_json(ch).dump() + "\n"; }

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(source + ": " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput(path + ": cannot open file for writing");
  out << text;
  if (!out) throw InvalidInput(path + ": write failed");
}

inline Index json_dim(const Json& j, const std::string& source) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw InvalidInput(source + ": field \"dim\" must be a positive integer");
  }
  return static_cast<Index>(j["dim"].get<long long>());
}

/// Channel from parsed JSON. Non-CPTP Kraus lists are rejected with their
/// completeness residual and Choi minimum eigenvalue in the message.
inline KrausChannel channel_from_json(const Json& j, const std::string& source = "channel",
                                      const Tolerances& tol = {}) {
  const Index n = json_dim(j, source);
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw InvalidInput(source + ": field \"kraus\" must be a nonempty array");
  }
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < j["kraus"].size(); ++i) {
    ops.push_back(matrix_from_json(j["kraus"][i], n, source + ": kraus[" + std::to_string(i) + "]"));
  }
  const ChannelCertificate cert = certify_kraus(ops, tol);
  if (!cert.is_cptp) {
    std::ostringstream os;
    os << source << ": channel is not CPTP (||sum V^*V - I||_HS = " << cert.unitality_residual
       << ", Choi min eigenvalue = " << cert.choi_min_eigenvalue << ")";
    throw InvalidInput(os.str());
  }
  return KrausChannel(std::move(ops), tol);
}

inline KrausChannel load_channel(const std::string& path, const Tolerances& tol = {}) {
  return channel_from_json(parse_json_text(read_text_file(path), path), path, tol);
}

inline void save_channel(const std::string& path, const KrausChannel& ch) {
  write_text_file(path, serialize_channel(ch));
}

inline Json state_to_json(const DensityMatrix& s) {
  return Json{{"dim", s.dim()}, {"matrix", matrix_to_json(s.matrix())}};
}

inline DensityMatrix state_from_json(const Json& j, const std::string& source, const Tolerances& tol = {}) {
  const Index n = json_dim(j, source);
  if (!j.contains("matrix")) throw InvalidInput(source + ": missing field \"matrix\"");
  return DensityMatrix::validated(matrix_from_json(j["matrix"], n, source + ": matrix"), tol);
}

inline DensityMatrix load_state(const std::string& path, const Tolerances& tol = {}) {
  return state_from_json(parse_json_text(read_text_file(path), path), path, tol);
}

inline Json to_json(const ChannelCertificate& c) {
  return Json{{"is_cptp", c.is_cptp},
              {"is_bistochastic", c.is_bistochastic},
              {"choi_min_eigenvalue", c.choi_min_eigenvalue},
              {"unitality_residual", c.unitality_residual},
              {"dual_unitality_residual", c.dual_unitality_residual}};
}

inline Json to_json(const SpectralReport& r) {
  Json j{{"is_ergodic", r.is_ergodic}, {"commutant_dim", r.commutant_dim}, {"fixed_space_dim", r.fixed_space_dim}};
  if (r.is_ergodic) {
    j["gap_gamma"] = r.gap_gamma;
    j["one_minus_gamma"] = r.one_minus_gamma;
    j["kappa"] = r.kappa;
    j["eigenvalues_TThat"] = r.eigenvalues_tthat;
    j["asymmetry_residual"] = r.asymmetry_residual;
  } else {
    j["gap_gamma"] = nullptr;
    j["one_minus_gamma"] = nullptr;
    j["kappa"] = nullptr;
    j["status"] = "not ergodic: spectral gap not computed";
  }
  return j;
}

inline Json to_json(const ContractionEstimate& e) {
  return Json{{"c_lower", e.c_lower},
              {"method", to_string(e.method)},
              {"restarts", e.restarts},
              {"converged", e.converged},
              {"best_pair", {{"psi", vector_to_json(e.psi)}, {"phi", vector_to_json(e.phi)}}}};
}

inline Json to_json(const AuditReport& a) {
  Json v = Json::array();
  for (const auto& x : a.violators) v.push_back({{"trial", x.trial}, {"ratio", x.ratio}});
  return Json{{"trials", a.trials},
              {"max_ratio", a.max_ratio},
              {"initial_c", a.initial_c},
              {"refined_c", a.refined.c_lower},
              {"violators", std::move(v)},
              {"refinement_rounds", a.refinement_rounds},
              {"remaining_violators", a.remaining_violators},
              {"conclusive", a.conclusive}};
}

inline Json to_json(const KingRuskaiForm& f) {
  Json m = Json::array();
  for (int i = 0; i < 3; ++i) m.push_back({f.m(i, 0), f.m(i, 1), f.m(i, 2)});
  return Json{{"M", std::move(m)},
              {"xi_abs", {f.xi_abs(0), f.xi_abs(1), f.xi_abs(2)}},
              {"c_exact", f.c_exact},
              {"gap_exact", qubit_gap_exact(f)}};
}

inline Json to_json(const BoundCheckResult& b) {
  Json j{{"bound_id", to_string(b.bound_id)}, {"lhs", b.lhs},           {"rhs", b.rhs},
         {"margin", b.margin},                {"satisfied", b.satisfied}, {"asserted", b.asserted}};
  if (b.step) j["step"] = *b.step;
  return j;
}

inline void write_orbit_csv(std::ostream& os, const OrbitLog& log) {
  const bool qubit = log.dim == 2;
  os << "n,trace_dist,hs_dist_sq,entropy,delta_S";
  if (qubit) os << ",r1,r2,r3";
  os << "\n";
  for (const auto& s : log.steps) {
    os << s.n << ',' << format_double(s.trace_dist) << ',' << format_double(s.hs_dist_sq) << ','
       << format_double(s.entropy) << ',' << format_double(s.delta_s);
    if (qubit && s.bloch) {
      os << ',' << format_double(s.bloch->r1) << ',' << format_double(s.bloch->r2) << ','
         << format_double(s.bloch->r3);
    }
    os << "\n";
  }
}

}  // namespace qchan
