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


#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "qchan/cli.hpp"
#include "test_support.hpp"

using namespace qchan;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qchan_tests";
  fs::create_directories(dir);
  return dir / name;
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run_cli(const RunConfig& cfg) {
  std::ostringstream out, err;
  Run r;
  r.code = run(cfg, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

RunConfig family(Command cmd, const std::string& fam, Index dim, std::optional<double> p = std::nullopt) {
  RunConfig cfg;
  cfg.command = cmd;
  cfg.family = fam;
  cfg.dim = dim;
  cfg.p = p;
  return cfg;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("channel files", "[io]") {
  const fs::path id = scratch("identity.json");
  write_text_file(id.string(), R"({"dim": 2, "kraus": [[[[1,0],[0,0]],[[0,0],[1,0]]]]})");
  const KrausChannel ch = load_channel(id.string());
  CHECK(ch.dim() == 2);
  CHECK((ch.kraus_ops()[0] - ComplexMatrix::Identity(2, 2)).norm() == 0.0);

  const fs::path proj = scratch("projector.json");
  write_text_file(proj.string(), R"({"dim": 2, "kraus": [[[[1,0],[0,0]],[[0,0],[0,0]]]]})");
  try {
    load_channel(proj.string());
    FAIL("non-CPTP channel accepted");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("not CPTP") != std::string::npos);
    CHECK(std::string(e.what()).find("Choi min eigenvalue") != std::string::npos);
  }

  const fs::path ragged = scratch("ragged.json");
  write_text_file(ragged.string(), R"({"dim": 2, "kraus": [[[[1,0]],[[0,0],[1,0]]]]})");
  CHECK_THROWS_AS(load_channel(ragged.string()), InvalidInput);
  const fs::path broken = scratch("broken.json");
  write_text_file(broken.string(), R"({"dim": 2, "kraus": [)");
  CHECK_THROWS_AS(load_channel(broken.string()), InvalidInput);
  const fs::path nodim = scratch("nodim.json");
  write_text_file(nodim.string(), R"({"kraus": []})");
  CHECK_THROWS_AS(load_channel(nodim.string()), InvalidInput);
  CHECK_THROWS_AS(load_channel(scratch("missing.json").string()), InvalidInput);
}

TEST_CASE("channel serialization round trips byte for byte", "[io][property]") {
  oracle::Gen g(61);
  for (int t = 0; t < 30; ++t) {
    const Index n = g.uniform_int(1, 4);
    const KrausChannel ch(g.generic_channel(n, g.uniform_int(1, 3)));
    const fs::path path = scratch("roundtrip.json");
    save_channel(path.string(), ch);
    const std::string first = read_text_file(path.string());
    const KrausChannel back = load_channel(path.string());
    for (std::size_t i = 0; i < ch.size(); ++i) CHECK(back.kraus_ops()[i] == ch.kraus_ops()[i]);
    CHECK(serialize_channel(back) == first);
  }
}

TEST_CASE("state files and formatting", "[io]") {
  const fs::path path = scratch("state.json");
  write_text_file(path.string(), state_to_json(DensityMatrix::maximally_mixed(3)).dump());
  CHECK((load_state(path.string()).matrix() - ComplexMatrix::Identity(3, 3) / 3.0).norm() < 1e-15);
  write_text_file(path.string(), R"({"dim": 2, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]})");
  CHECK_THROWS_AS(load_state(path.string()), InvalidInput);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("analyze reports", "[cli]") {
  const Run r = run_cli(family(Command::analyze, "depolarizing", 2, 0.5));
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["status"] == "ok");
  CHECK(j["contraction"]["c_lower"].get<double>() == Approx(0.5).margin(1e-12));
  CHECK(j["spectral"]["gap_gamma"].get<double>() == Approx(0.75).margin(1e-10));
  CHECK(j["spectral"]["kappa"].get<double>() == Approx(0.5).margin(1e-10));
  CHECK(j["certificate"]["is_bistochastic"] == true);
  CHECK_FALSE(j.contains("runtime_ms"));
  for (const auto& b : j["bound_checks"]) CHECK(b["satisfied"] == true);

  const Run id = run_cli(family(Command::analyze, "identity", 2));
  CHECK(id.code == 0);
  const Json ij = Json::parse(id.out);
  CHECK(ij["status"] == "not_ergodic");
  CHECK(ij["spectral"]["gap_gamma"].is_null());

  const Run ad = run_cli(family(Command::analyze, "amplitude_damping", 2, 0.3));
  CHECK(ad.code == 0);
  const Json aj = Json::parse(ad.out);
  CHECK(aj["status"] == "not_bistochastic");
  CHECK(aj["bound_checks"].empty());

  RunConfig timed = family(Command::analyze, "depolarizing", 3, 0.4);
  timed.timing = true;
  timed.restarts = 4;
  const Run t = run_cli(timed);
  CHECK(Json::parse(t.out).contains("runtime_ms"));
}

TEST_CASE("simulate output", "[cli]") {
  RunConfig cfg = family(Command::simulate, "depolarizing", 2, 0.5);
  cfg.n_max = 8;
  const Run r = run_cli(cfg);
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "n,trace_dist,hs_dist_sq,entropy,delta_S,r1,r2,r3");
  for (int k = 0; k <= 8; ++k) {
    const auto f = fields(rows[k + 1]);
    REQUIRE(f.size() == 8);
    CHECK(f[0] == std::to_string(k));
    CHECK(std::stod(f[1]) == Approx(std::pow(0.5, k)).margin(1e-14));
    CHECK(std::stod(f[2]) == Approx(std::pow(0.25, k) / 2.0).margin(1e-14));
  }
  const Json summary = Json::parse(r.err);
  CHECK(summary["envelope_violations"] == 0);
  CHECK(summary["c_source"] == "exact");

  RunConfig one = family(Command::simulate, "depolarizing", 3, 1.0);
  one.n_max = 1;
  const Run o = run_cli(one);
  const auto orows = lines(o.out);
  REQUIRE(orows.size() == 3);
  CHECK(orows[0] == "n,trace_dist,hs_dist_sq,entropy,delta_S");
  CHECK(std::stod(fields(orows[2])[3]) == Approx(std::log(3.0)));

  RunConfig ad = family(Command::simulate, "amplitude_damping", 2, 0.3);
  CHECK(run_cli(ad).code == 2);
  RunConfig bad_state = family(Command::simulate, "depolarizing", 2, 0.5);
  bad_state.state = "random:x";
  CHECK(run_cli(bad_state).code == 2);
}

TEST_CASE("verify ensembles", "[cli]") {
  RunConfig cfg = family(Command::verify, "qubit_random", 2);
  cfg.count = 20;
  cfg.states = 100;
  cfg.seed = 3;
  const Run r = run_cli(cfg);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["bounds"]["sharp_eq5"]["checks"] == 2000);
  CHECK(j["bounds"]["sharp_eq5"]["violations"] == 0);
  CHECK(j["bounds"]["main_eq2"]["violations"] == 0);

  RunConfig empty = cfg;
  empty.count = 0;
  const Run e = run_cli(empty);
  CHECK(e.code == 0);
  CHECK(Json::parse(e.out)["warnings"].size() == 1);
  CHECK(e.err.find("empty ensemble") != std::string::npos);

  RunConfig dep = family(Command::verify, "depolarizing", 3);
  dep.states = 50;
  const Run d = run_cli(dep);
  CHECK(d.code == 0);
  CHECK(Json::parse(d.out)["channels_checked"] == 9);

  RunConfig unknown = family(Command::verify, "nonsense", 2);
  CHECK(run_cli(unknown).code == 2);
}

TEST_CASE("gen and exit codes", "[cli]") {
  RunConfig cfg = family(Command::gen, "depolarizing", 2, 0.5);
  const fs::path path = scratch("gen.json");
  cfg.out_path = path.string();
  REQUIRE(run_cli(cfg).code == 0);
  CHECK(is_bistochastic(load_channel(path.string())));

  RunConfig um = family(Command::gen, "unitary_mixture", 3);
  um.k = 4;
  um.seed = 11;
  CHECK(run_cli(um).out == run_cli(um).out);
  um.seed = 12;
  CHECK(run_cli(um).out != run_cli(family(Command::gen, "unitary_mixture", 3)).out);

  const Run bad = run_cli(family(Command::gen, "depolarizing", 2, 1.5));
  CHECK(bad.code == 2);
  CHECK(Json::parse(bad.err)["error"] == "invalid_input");
  CHECK(run_cli(family(Command::gen, "depolarizing", 2)).code == 2);
  CHECK(run_cli(family(Command::analyze, "", 2)).code == 2);
  RunConfig both = family(Command::analyze, "identity", 2);
  both.channel_path = path.string();
  CHECK(run_cli(both).code == 2);
  RunConfig tol = family(Command::analyze, "identity", 2);
  tol.tol.fix = -1.0;
  CHECK(run_cli(tol).code == 2);
}
