// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mage/pipeline.hpp"

namespace {

// Exit codes: 0 success, 2 config/schema error, 3 verification failure,
// 4 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("config", o.config_path, "JSON config file")->required();
  cmd->add_option("--out", o.out_path, "write the JSON report here instead of stdout");
  cmd->add_option("--seed", o.seed, "override sample_plan.seed");
  cmd->add_option("--points", o.points, "override sample_plan.count");
  cmd->add_option("--tol", o.tol, "override tolerances.zero");
}

mage::Config load(const CommonOpts& o) {
  mage::Config cfg = mage::load_config_file(o.config_path);
  if (o.seed) cfg.plan.seed = *o.seed;
  if (o.points) cfg.plan.count = *o.points;
  if (o.tol) cfg.zero_tol = *o.tol;
  return cfg;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int emit(const mage::Json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return kExitIo;
  }
  out << text;
  return out ? kExitOk : kExitIo;
}

int guarded(const CommonOpts& o, int (*body)(const CommonOpts&)) {
  try {
    return body(o);
  } catch (const mage::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mage::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mage::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_run(const CommonOpts& o) {
  const mage::Config cfg = load(o);
  mage::RunResult rr = mage::run_pipeline(cfg);
  rr.report["generated_at"] = timestamp();
  const int io = emit(rr.report, o.out_path);
  if (io != kExitOk) return io;
  return rr.verification_ok ? kExitOk : kExitVerification;
}

int cmd_validate(const CommonOpts& o) {
  std::ifstream in(o.config_path);
  if (!in) {
    std::cerr << "error: cannot open config file: " << o.config_path << "\n";
    return kExitIo;
  }
  mage::Json j;
  try {
    j = mage::Json::parse(in);
  } catch (const nlohmann::json::parse_error& pe) {
    std::cerr << "error: invalid JSON: " << pe.what() << "\n";
    return kExitConfig;
  }
  const auto diags = mage::validate_config(j);
  if (diags.empty()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const std::string& d : diags) std::cerr << "error: " << d << "\n";
  return kExitConfig;
}

int cmd_quadric(const CommonOpts& o) {
  const mage::Config cfg = load(o);
  mage::Json rep = mage::quadric_sweep(cfg);
  rep["generated_at"] = timestamp();
  return emit(rep, o.out_path);
}

int cmd_residual(const CommonOpts& o) {
  const mage::Config cfg = load(o);
  mage::Json rep = mage::residual_report(cfg);
  rep["generated_at"] = timestamp();
  return emit(rep, o.out_path);
}

int cmd_integrability(const CommonOpts& o) {
  const mage::Config cfg = load(o);
  mage::Json rep = mage::integrability_report(cfg);
  rep["generated_at"] = timestamp();
  return emit(rep, o.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mage: realize 2D symplectic Monge-Ampere structures as matrix data, "
      "then build, verify and classify the generalized almost geometries they "
      "induce"};
  app.require_subcommand(1);

  CommonOpts run_o, val_o, quad_o, res_o, integ_o;
  CLI::App* run = app.add_subcommand("run", "full pipeline: JSON config in, JSON report out");
  add_common(run, run_o);
  CLI::App* val = app.add_subcommand("validate", "schema and expression check only");
  add_common(val, val_o);
  CLI::App* quad = app.add_subcommand("quadric", "sweep the 16 (sgnPf, k, eps2, eps3) table cells");
  add_common(quad, quad_o);
  CLI::App* res = app.add_subcommand("residual", "PDE residual / pullback check only");
  add_common(res, res_o);
  CLI::App* integ = app.add_subcommand("integrability", "closedness-based checks only");
  add_common(integ, integ_o);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return guarded(run_o, cmd_run);
  if (val->parsed()) return guarded(val_o, cmd_validate);
  if (quad->parsed()) return guarded(quad_o, cmd_quadric);
  if (res->parsed()) return guarded(res_o, cmd_residual);
  if (integ->parsed()) return guarded(integ_o, cmd_integrability);
  return kExitConfig;
}
