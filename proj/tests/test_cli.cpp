// Copyright 2026 The cadwm Authors
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

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cadwm/cli.hpp"

using Catch::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cadwm");
  std::ostringstream out, err;
  const int code = cadwm::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Parses the two-line key/value CSV printed by evolve/concurrence/optimize.
std::map<std::string, double> csv_report(const std::string& text) {
  std::istringstream is(text);
  std::string header, values;
  std::getline(is, header);
  std::getline(is, values);
  std::istringstream hs(header), vs(values);
  std::map<std::string, double> m;
  for (std::string k, v; std::getline(hs, k, ',') && std::getline(vs, v, ',');) m[k] = std::stod(v);
  return m;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("evolve", "[cli]") {
  auto r = run({"evolve", "--alpha", "0.70710678", "--gamma", "0.5", "--eta", "0.5", "--p", "0", "--q", "0",
                "--format", "csv"});
  REQUIRE(r.code == 0);
  auto m = csv_report(r.out);
  CHECK(m.at("numeric_r14_re") == Approx(0.30178).margin(1e-5));
  CHECK(m.at("closed_r14_re") == Approx(0.30178).margin(1e-5));
  CHECK(m.at("success_probability") == Approx(1.0).margin(1e-12));
  CHECK(m.at("max_pipeline_deviation") < 1e-12);

  r = run({"evolve", "--alpha", "1", "--gamma", "0.7", "--eta", "0.3", "--p", "0.5", "--q", "auto", "--format",
           "csv"});
  REQUIRE(r.code == 0);
  m = csv_report(r.out);
  CHECK(m.at("numeric_r11") == Approx(1.0).margin(1e-15));
  CHECK(m.at("numeric_r44") == 0.0);
  CHECK(m.at("concurrence") == 0.0);
}

TEST_CASE("evolve text output", "[cli]") {
  const auto r = run({"evolve", "--alpha", "0.6", "--gamma", "0.3", "--eta", "0.4", "--p", "0.2", "--q", "auto"});
  REQUIRE(r.code == 0);
  // Every number carries at least ten significant digits.
  for (const auto& l : lines(r.out)) {
    const std::string value = l.substr(l.find_last_of(' ') + 1);
    int digits = 0;
    for (char c : value.substr(0, value.find('e'))) digits += std::isdigit(static_cast<unsigned char>(c)) ? 1 : 0;
    CHECK(digits >= 10);
  }
}

TEST_CASE("bad flags exit 2 and name the flag", "[cli]") {
  auto r = run({"evolve", "--alpha", "0.5", "--gamma", "1.5", "--eta", "0.3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--gamma") != std::string::npos);

  CHECK(run({"evolve", "--gamma", "0.5", "--eta", "0.3"}).code == 2);
  CHECK(run({"evolve", "--alpha", "0.5", "--gamma", "0.5", "--eta", "0.3", "--q", "1.2"}).code == 2);
  CHECK(run({"evolve", "--alpha", "0.5", "--gamma", "0.5", "--eta", "0.3", "--q", "best"}).code == 2);
  CHECK(run({"evolve", "--alpha", "0.8", "--alpha-im", "0.8", "--gamma", "0.5", "--eta", "0.3"}).code == 2);
  CHECK(run({"concurrence", "--alpha", "0.5", "--gamma", "0.5", "--eta", "0.3", "--format", "xml"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("concurrence", "[cli]") {
  auto r = run({"concurrence", "--alpha", "0.33333333", "--gamma", "0", "--eta", "0", "--format", "csv"});
  REQUIRE(r.code == 0);
  auto m = csv_report(r.out);
  CHECK(m.at("closed_form_cad") == Approx(0.6285).margin(5e-5));
  CHECK(m.at("numeric_wootters") == Approx(0.6285).margin(5e-5));

  r = run({"concurrence", "--alpha", "0.70710678", "--gamma", "0.5", "--eta", "0.5", "--format", "csv"});
  m = csv_report(r.out);
  CHECK(m.at("closed_form_cad") == Approx(0.47855).margin(1e-5));
  CHECK(m.at("closed_form_qmr") == Approx(0.47855).margin(1e-5));
  CHECK(m.at("numeric_wootters") == Approx(0.47855).margin(1e-5));

  r = run({"concurrence", "--alpha", "0.33333333", "--gamma", "0.6", "--eta", "0.2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("esd                true") != std::string::npos);
  r = run({"concurrence", "--alpha", "0.33333333", "--gamma", "0.6", "--eta", "0.2", "--format", "csv"});
  m = csv_report(r.out);
  CHECK(m.at("closed_form_cad") == 0.0);
  CHECK(m.at("delta_cad") == Approx(-0.0303).margin(1e-4));
  CHECK(m.at("esd") == 1.0);

  r = run({"concurrence", "--alpha", "1", "--gamma", "0.6", "--eta", "0.2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("n/a") != std::string::npos);
}

TEST_CASE("optimize", "[cli]") {
  auto r = run({"optimize", "--alpha", "0.70710678", "--gamma", "0.5", "--eta", "0", "--p", "0", "--format", "csv"});
  REQUIRE(r.code == 0);
  auto m = csv_report(r.out);
  CHECK(m.at("q_opt") == Approx(0.55279).margin(1e-5));
  CHECK(m.at("concurrence_opt") == Approx(0.3090169943749474).margin(1e-7));

  r = run({"optimize", "--alpha", "0.33333333", "--gamma", "0.6", "--eta", "0.2", "--p", "0", "--format", "csv"});
  m = csv_report(r.out);
  CHECK(m.at("p_c") == Approx(0.1778).margin(1e-4));
  CHECK(m.at("p_c_root") == Approx(0.1778).margin(1e-4));
  CHECK(m.at("eta_c") == Approx(0.30598).margin(1e-4));

  r = run({"optimize", "--alpha", "0.33333333", "--gamma", "0.6", "--eta", "1", "--p", "0.99", "--format", "csv"});
  m = csv_report(r.out);
  CHECK(m.at("concurrence_opt") > 0.999);
  CHECK(m.at("concurrence_limit_p1") == Approx(1.0).margin(1e-15));
}

TEST_CASE("sweep", "[cli]") {
  auto r = run({"sweep", "--vary", "p:0:0.999:100", "--alpha", "0.33333333", "--gamma", "0.6", "--eta", "0", "--q",
                "auto"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 101);
  CHECK(l[0] == "p,alpha_ratio,gamma,eta,q,concurrence_cad,concurrence_qmr,success_prob,esd_flag,delta");
  std::vector<std::string> cells;
  std::istringstream last(l.back());
  for (std::string c; std::getline(last, c, ',');) cells.push_back(c);
  CHECK(std::stod(cells[6]) > 0.99);
  CHECK(r.out.find('\r') == std::string::npos);

  r = run({"sweep", "--vary", "gamma:0:1:3", "--alpha", "0.5", "--eta", "0.3", "--outputs",
           "concurrence_cad,esd_flag"});
  REQUIRE(r.code == 0);
  l = lines(r.out);
  CHECK(l.size() == 4);
  CHECK(l[0] == "gamma,alpha_ratio,eta,p,q,concurrence_cad,esd_flag");

  r = run({"sweep", "--vary", "gamma:0:1:11", "--vary", "eta:0:1:3", "--alpha-ratio", "0.5", "--q", "0.3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 34);
}

TEST_CASE("sweep errors", "[cli]") {
  CHECK(run({"sweep", "--vary", "gamma:0:1", "--alpha", "0.5", "--eta", "0.3"}).code == 2);
  CHECK(run({"sweep", "--vary", "zeta:0:1:3", "--alpha", "0.5", "--eta", "0.3"}).code == 2);
  CHECK(run({"sweep", "--vary", "gamma:0.5:0.5:2", "--alpha", "0.5", "--eta", "0.3"}).code == 2);
  CHECK(run({"sweep", "--vary", "gamma:0:1:3", "--alpha", "0.5"}).code == 2);
  CHECK(run({"sweep", "--vary", "gamma:0:1:3", "--alpha", "0.5", "--eta", "0.3", "--outputs", "nope"}).code == 2);
  CHECK(run({"sweep", "--vary", "gamma:0:1:3", "--alpha", "0.5", "--alpha-ratio", "1", "--eta", "0.3"}).code == 2);
  CHECK(run({"sweep", "--vary", "gamma:0:1:3", "--alpha", "0.5", "--eta", "0.3", "--output",
             "/nonexistent-dir/x.csv"})
            .code == 2);
}

TEST_CASE("esd-map", "[cli]") {
  auto r = run({"esd-map", "--eta", "1", "--grid", "64"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 64 * 64 + 1);
  CHECK(l[0] == "alpha_ratio,gamma,eta,p,esd_flag");
  for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i].substr(l[i].size() - 2) == ",0");

  r = run({"esd-map", "--eta", "0.2", "--grid", "32"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",1\n") != std::string::npos);

  CHECK(run({"esd-map", "--eta", "0.2", "--grid", "1"}).code == 2);
  CHECK(run({"esd-map", "--eta", "0.2", "--grid", "5000"}).code == 2);
  CHECK(run({"esd-map", "--grid", "8"}).code == 2);
}

TEST_CASE("output files are byte-identical across runs", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "cadwm_cli_test_a.csv").string();
  const auto b = (dir / "cadwm_cli_test_b.csv").string();
  const std::vector<std::string> flags{"sweep",   "--vary", "gamma:0:1:40", "--vary", "p:0:0.99:30",
                                       "--alpha", "0.4",    "--eta",        "0.35",   "--q",
                                       "auto",    "--output"};
  auto fa = flags, fb = flags;
  fa.push_back(a);
  fb.push_back(b);
  REQUIRE(run(fa).code == 0);
  REQUIRE(run(fb).code == 0);
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string ca = slurp(a);
  CHECK(ca.size() > 1000);
  CHECK(ca == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("verify", "[cli]") {
  auto r = run({"verify", "--samples", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = run({"verify", "--samples", "50", "--corrupt"});
  CHECK(r.code == 3);
  CHECK(r.out.find("FAIL cptp_grid") != std::string::npos);

  CHECK(run({"verify", "--samples", "0"}).code == 2);
}
