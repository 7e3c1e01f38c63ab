// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

const std::string kCli = MAGE_CLI_PATH;
const std::string kDataDir = MAGE_TEST_DATA_DIR;

int run_cli(const std::string& args) {
  const std::string cmd = "'" + kCli + "' " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string write_temp(const nlohmann::json& j, const char* name) {
  const std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

}  // namespace

TEST_CASE("cli: exit code contract") {
  // 0: clean run and clean validate.
  CHECK(run_cli("run '" + kDataDir + "/laplace.json'") == 0);
  CHECK(run_cli("validate '" + kDataDir + "/laplace.json'") == 0);
  CHECK(run_cli("quadric '" + kDataDir + "/wave.json' --points 10") == 0);
  CHECK(run_cli("residual '" + kDataDir + "/laplace.json'") == 0);
  CHECK(run_cli("integrability '" + kDataDir + "/von_karman.json'") == 0);

  // 2: config errors (bad expression, schema problem, missing file content).
  nlohmann::json bad = nlohmann::json::parse(R"({
    "structure": {"A": "2*", "B": "0", "C": "-1", "D": "0", "E": "0"}
  })");
  const std::string bad_path = write_temp(bad, "mage_cli_bad_expr.json");
  CHECK(run_cli("run '" + bad_path + "'") == 2);
  CHECK(run_cli("validate '" + bad_path + "'") == 2);

  nlohmann::json missing = nlohmann::json::parse(R"({
    "structure": {"A": "-1", "C": "-1", "D": "0", "E": "0"}
  })");
  CHECK(run_cli("validate '" +
                write_temp(missing, "mage_cli_missing_b.json") + "'") == 2);

  // 3: verification failure (tolerance tightened beyond float noise).
  std::ifstream in(kDataDir + "/von_karman.json");
  nlohmann::json strict = nlohmann::json::parse(in);
  strict["tolerances"] = {{"matrix", 1e-30}};
  CHECK(run_cli("run '" + write_temp(strict, "mage_cli_strict.json") + "'") ==
        3);

  // 4: I/O errors.
  CHECK(run_cli("run '" + kDataDir + "/laplace.json' --out /no/such/dir/r.json") == 4);
  CHECK(run_cli("validate /no/such/config.json") == 4);
}

TEST_CASE("cli: report is valid JSON with finite numbers only") {
  const std::string out = "/tmp/mage_cli_report.json";
  REQUIRE(run_cli("run '" + kDataDir + "/von_karman.json' --out " + out) == 0);
  std::ifstream in(out);
  const nlohmann::json rep = nlohmann::json::parse(in);

  // Every number serialized in the report is finite.
  std::function<void(const nlohmann::json&)> walk =
      [&](const nlohmann::json& node) {
        if (node.is_number_float()) {
          CHECK(std::isfinite(node.get<double>()));
        } else if (node.is_object() || node.is_array()) {
          for (const auto& child : node) walk(child);
        }
      };
  walk(rep);
  CHECK(rep.contains("generated_at"));
  CHECK(rep["tool"]["name"] == "mage");
}

TEST_CASE("cli: seed and points overrides change the echoed plan only") {
  const std::string out1 = "/tmp/mage_cli_seed1.json";
  const std::string out2 = "/tmp/mage_cli_seed2.json";
  REQUIRE(run_cli("run '" + kDataDir + "/laplace.json' --seed 1 --out " +
                  out1) == 0);
  REQUIRE(run_cli("run '" + kDataDir + "/laplace.json' --seed 2 --out " +
                  out2) == 0);
  std::ifstream a(out1), b(out2);
  nlohmann::json ra = nlohmann::json::parse(a), rb = nlohmann::json::parse(b);
  // Different seeds, same verdicts.
  CHECK(ra["pfaffian"]["class"] == rb["pfaffian"]["class"]);
  CHECK(ra["verification"]["ok"] == rb["verification"]["ok"]);
}
