// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mage/courant.hpp"
#include "mage/quadric.hpp"

namespace mage {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// Config/input problem: bad schema, unparsable expression, ineffective
// two-form, region sign contradicted by samples. Exit code 2 territory.
struct ConfigError : Error {
  ConfigError(const std::string& where, const std::string& what)
      : Error("config error at " + where + ": " + what), location(where) {}
  std::string location;
};

struct Config {
  MAStructure structure;
  SamplePlan plan;
  int eps2 = +1, eps3 = +1;
  SignedRegion region;
  std::vector<FamilyCoeffs> family;
  std::vector<std::pair<std::string, Expr>> solutions;
  std::optional<Expr> rescale_h;
  std::optional<Expr> divergence_phi;
  double zero_tol = 1e-9;
  double matrix_tol = 1e-10;
  Json echo;
};

Config parse_config(const Json& j);
Config load_config_file(const std::string& path);  // throws ConfigError / Error

// Schema + expression check only; returns diagnostics, empty means valid.
std::vector<std::string> validate_config(const Json& j);

struct RunResult {
  Json report;
  bool verification_ok = true;
};

// classify -> normalize -> builders -> classify_gen -> anticommutativity ->
// family/quadric -> residuals -> integrability, everything recorded.
RunResult run_pipeline(const Config& cfg);

// The 16-cell (sgnPf, k, eps2, eps3) sweep with admissible samples and, where
// the structure's Pfaffian sign matches, member verification residuals.
Json quadric_sweep(const Config& cfg);

// PDE residual / pullback check only.
Json residual_report(const Config& cfg);

// Closedness-based checks only.
Json integrability_report(const Config& cfg);

}  // namespace mage
