// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/pipeline.hpp"

#include <cmath>
#include <fstream>

namespace mage {

namespace {

Json json_point(const Point& pt) {
  return Json::array({pt.x, pt.y, pt.p, pt.q});
}

Json json_opt_point(const std::optional<Point>& pt) {
  return pt ? json_point(*pt) : Json(nullptr);
}

double clean(double v) { return v + 0.0; }  // flush -0.0 out of reports

Json json_mat4(const Mat4& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(clean(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json json_blocks(const GenEndo& g) {
  return Json{{"tt", json_mat4(g.tt)},
              {"tc", json_mat4(g.tc)},
              {"ct", json_mat4(g.ct)},
              {"cc", json_mat4(g.cc)}};
}

Json json_zero(const ZeroResult& z) {
  Json j{{"verdict", to_string(z.kind)},
         {"max_abs", z.max_abs},
         {"skipped", z.skipped}};
  j["witness"] = json_opt_point(z.witness);
  return j;
}

// --- config loading ---------------------------------------------------------

// Field-by-field loader shared by parse_config (throws on the first problem)
// and validate_config (collects every problem).
struct Loader {
  std::vector<std::string>* diags = nullptr;
  bool ok = true;

  void report(const std::string& where, const std::string& what) {
    ok = false;
    if (!diags) throw ConfigError(where, what);
    diags->push_back(where + ": " + what);
  }

  std::optional<Expr> expr_field(const Json& j, const std::string& where,
                                 bool xy_only = false) {
    if (!j.is_string()) {
      report(where, "expected an expression string");
      return std::nullopt;
    }
    try {
      Expr e = parse(j.get<std::string>());
      if (xy_only && (depends_on(e, Var::p) || depends_on(e, Var::q))) {
        report(where, "expression must depend on x and y only");
        return std::nullopt;
      }
      return e;
    } catch (const ParseError& pe) {
      report(where, pe.what());
      return std::nullopt;
    }
  }

  std::optional<int> sign_field(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
      const int v = j.get<int>();
      if (v == 1 || v == -1) return v;
    } else if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == "+" || s == "+1") return 1;
      if (s == "-" || s == "-1") return -1;
    }
    report(where, "expected +1 or -1 (or \"+\"/\"-\")");
    return std::nullopt;
  }

  void check_keys(const Json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : allowed)
        if (it.key() == k) known = true;
      if (!known) report(where, "unknown field \"" + it.key() + "\"");
    }
  }
};

Config do_parse_config(const Json& j, Loader& ld) {
  Config cfg;
  cfg.echo = j;
  if (!j.is_object()) {
    ld.report("$", "config must be a JSON object");
    return cfg;
  }
  ld.check_keys(j, "$",
                {"schema_version", "structure", "sample_plan", "epsilons",
                 "region_sign", "family", "solutions", "rescale_h",
                 "divergence_phi", "tolerances"});

  if (j.contains("schema_version") &&
      (!j["schema_version"].is_number_integer() ||
       j["schema_version"].get<int>() != kSchemaVersion))
    ld.report("schema_version",
              "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");

  // structure: five coefficients, or a two_form routed through effectivity.
  if (!j.contains("structure") || !j["structure"].is_object()) {
    ld.report("structure", "required object with A..E or two_form");
  } else {
    const Json& st = j["structure"];
    if (st.contains("two_form")) {
      ld.check_keys(st, "structure", {"two_form"});
      const Json& tf = st["two_form"];
      static const char* kCoeffs[6] = {"c_xy", "c_xp", "c_xq",
                                       "c_yp", "c_yq", "c_pq"};
      TwoForm b;
      Expr* slots[6] = {&b.c_xy, &b.c_xp, &b.c_xq, &b.c_yp, &b.c_yq, &b.c_pq};
      if (!tf.is_object()) {
        ld.report("structure.two_form", "expected an object of six coefficients");
      } else {
        ld.check_keys(tf, "structure.two_form",
                      {"c_xy", "c_xp", "c_xq", "c_yp", "c_yq", "c_pq"});
        for (int i = 0; i < 6; ++i) {
          const std::string where = std::string("structure.two_form.") + kCoeffs[i];
          if (!tf.contains(kCoeffs[i])) {
            ld.report(where, "missing coefficient");
            continue;
          }
          if (auto e = ld.expr_field(tf[kCoeffs[i]], where)) *slots[i] = *e;
        }
        if (ld.ok) {
          try {
            cfg.structure = from_two_form(b, cfg.plan);
          } catch (const NotEffectiveError& ne) {
            ld.report("structure.two_form", ne.what());
          }
        }
      }
    } else {
      ld.check_keys(st, "structure", {"A", "B", "C", "D", "E"});
      static const char* kNames[5] = {"A", "B", "C", "D", "E"};
      Expr* slots[5] = {&cfg.structure.A, &cfg.structure.B, &cfg.structure.C,
                        &cfg.structure.D, &cfg.structure.E};
      for (int i = 0; i < 5; ++i) {
        const std::string where = std::string("structure.") + kNames[i];
        if (!st.contains(kNames[i])) {
          ld.report(where, "missing coefficient");
          continue;
        }
        if (auto e = ld.expr_field(st[kNames[i]], where)) *slots[i] = *e;
      }
    }
  }

  if (j.contains("sample_plan")) {
    const Json& sp = j["sample_plan"];
    ld.check_keys(sp, "sample_plan",
                  {"count", "seed", "bounds", "pfaffian_floor"});
    if (sp.contains("count")) {
      if (!sp["count"].is_number_integer() || sp["count"].get<int>() < 1)
        ld.report("sample_plan.count", "expected an integer >= 1");
      else
        cfg.plan.count = sp["count"].get<int>();
    }
    if (sp.contains("seed")) {
      if (!sp["seed"].is_number_unsigned() && !sp["seed"].is_number_integer())
        ld.report("sample_plan.seed", "expected an integer");
      else
        cfg.plan.seed = sp["seed"].get<std::uint64_t>();
    }
    if (sp.contains("bounds")) {
      const Json& bd = sp["bounds"];
      ld.check_keys(bd, "sample_plan.bounds", {"x", "y", "p", "q"});
      for (Var v : kVars) {
        const char* name = var_name(v);
        if (!bd.contains(name)) continue;
        const Json& pair = bd[name];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number() ||
            !(pair[0].get<double>() < pair[1].get<double>()))
          ld.report(std::string("sample_plan.bounds.") + name,
                    "expected [min, max] with min < max");
        else
          cfg.plan.bounds[static_cast<std::size_t>(v)] = {
              pair[0].get<double>(), pair[1].get<double>()};
      }
    }
    if (sp.contains("pfaffian_floor")) {
      if (!sp["pfaffian_floor"].is_number() ||
          sp["pfaffian_floor"].get<double>() < 0)
        ld.report("sample_plan.pfaffian_floor", "expected a number >= 0");
      else
        cfg.plan.floor = sp["pfaffian_floor"].get<double>();
    }
  }

  if (j.contains("epsilons")) {
    const Json& ep = j["epsilons"];
    ld.check_keys(ep, "epsilons", {"eps2", "eps3"});
    if (ep.contains("eps2"))
      if (auto v = ld.sign_field(ep["eps2"], "epsilons.eps2")) cfg.eps2 = *v;
    if (ep.contains("eps3"))
      if (auto v = ld.sign_field(ep["eps3"], "epsilons.eps3")) cfg.eps3 = *v;
  }

  if (j.contains("region_sign"))
    if (auto v = ld.sign_field(j["region_sign"], "region_sign"))
      cfg.region.sign = *v;

  if (j.contains("family")) {
    if (!j["family"].is_array()) {
      ld.report("family", "expected an array of coefficient triples");
    } else {
      int idx = 0;
      for (const Json& fc : j["family"]) {
        const std::string where = "family[" + std::to_string(idx++) + "]";
        if (!fc.is_object() || !fc.contains("a1") || !fc.contains("a2") ||
            !fc.contains("a3") || !fc["a1"].is_number() ||
            !fc["a2"].is_number() || !fc["a3"].is_number()) {
          ld.report(where, "expected {\"a1\": num, \"a2\": num, \"a3\": num}");
          continue;
        }
        ld.check_keys(fc, where, {"a1", "a2", "a3"});
        cfg.family.push_back(FamilyCoeffs{fc["a1"].get<double>(),
                                          fc["a2"].get<double>(),
                                          fc["a3"].get<double>(), cfg.eps2,
                                          cfg.eps3});
      }
    }
  }

  if (j.contains("solutions")) {
    if (!j["solutions"].is_array()) {
      ld.report("solutions", "expected an array of expression strings");
    } else {
      int idx = 0;
      for (const Json& f : j["solutions"]) {
        const std::string where = "solutions[" + std::to_string(idx++) + "]";
        if (auto e = ld.expr_field(f, where, /*xy_only=*/true))
          cfg.solutions.emplace_back(f.get<std::string>(), *e);
      }
    }
  }

  if (j.contains("rescale_h"))
    cfg.rescale_h = ld.expr_field(j["rescale_h"], "rescale_h");
  if (j.contains("divergence_phi"))
    cfg.divergence_phi = ld.expr_field(j["divergence_phi"], "divergence_phi");

  if (j.contains("tolerances")) {
    const Json& tl = j["tolerances"];
    ld.check_keys(tl, "tolerances", {"zero", "matrix"});
    if (tl.contains("zero")) {
      if (!tl["zero"].is_number() || tl["zero"].get<double>() <= 0)
        ld.report("tolerances.zero", "expected a positive number");
      else
        cfg.zero_tol = tl["zero"].get<double>();
    }
    if (tl.contains("matrix")) {
      if (!tl["matrix"].is_number() || tl["matrix"].get<double>() <= 0)
        ld.report("tolerances.matrix", "expected a positive number");
      else
        cfg.matrix_tol = tl["matrix"].get<double>();
    }
  }

  // Epsilons arrive after family entries may have been parsed; re-stamp.
  for (FamilyCoeffs& c : cfg.family) {
    c.eps2 = cfg.eps2;
    c.eps3 = cfg.eps3;
  }
  return cfg;
}

}  // namespace

Config parse_config(const Json& j) {
  Loader ld;
  return do_parse_config(j, ld);
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& pe) {
    throw ConfigError("$", std::string("invalid JSON: ") + pe.what());
  }
  return parse_config(j);
}

std::vector<std::string> validate_config(const Json& j) {
  std::vector<std::string> diags;
  Loader ld;
  ld.diags = &diags;
  do_parse_config(j, ld);
  return diags;
}

// --- pipeline ----------------------------------------------------------------

namespace {

struct Failures {
  std::vector<std::string> items;

  void check(bool ok, const std::string& what) {
    if (!ok) items.push_back(what);
  }
};

Json classify_json(const GenClassification& c) {
  return Json{{"type", to_string(c.type)},
              {"gamma1", c.gamma1},
              {"gamma2", c.gamma2},
              {"square_residual", c.square_residual},
              {"eta_residual", c.eta_residual}};
}

const char* expected_j_rho_type(int sgn_pf) {
  // eps1 = -1 throughout the pipeline: GaC in the elliptic case, GaPC in the
  // hyperbolic one.
  return sgn_pf > 0 ? "GaC" : "GaPC";
}

const char* expected_antidiag_type(int eps) { return eps > 0 ? "GaPC" : "GaC"; }

}  // namespace

RunResult run_pipeline(const Config& cfg) {
  Json rep;
  Failures fails;
  rep["tool"] = Json{{"name", "mage"}, {"version", kVersion}};
  rep["schema_version"] = kSchemaVersion;
  rep["generated_at"] = "";  // stamped by the CLI; blank keeps reports comparable
  rep["config"] = cfg.echo;

  const MAStructure& s = cfg.structure;
  const Expr pf = pfaffian(s);

  // Classification.
  const PfaffianClass cls = classify(s, cfg.plan);
  rep["pfaffian"] = Json{
      {"expression", to_string(simplify(pf))},
      {"class", to_string(cls.kind)},
      {"counts",
       Json{{"positive", cls.n_positive},
            {"negative", cls.n_negative},
            {"degenerate", cls.n_degenerate}}},
      {"witnesses", Json{{"positive", json_opt_point(cls.positive_witness)},
                         {"negative", json_opt_point(cls.negative_witness)},
                         {"degenerate", json_opt_point(cls.degenerate_witness)}}}};

  const bool definite = cls.kind == PfaffianClass::Kind::Elliptic ||
                        cls.kind == PfaffianClass::Kind::Hyperbolic;
  if (!definite)
    throw ConfigError("region_sign",
                      "structure is " + std::string(to_string(cls.kind)) +
                          " on the sampling box; the pipeline needs a "
                          "sign-definite region (adjust bounds)");
  const int sgn_pf = cls.kind == PfaffianClass::Kind::Elliptic ? 1 : -1;
  if (sgn_pf != cfg.region.sign)
    throw ConfigError("region_sign", "declared sign disagrees with samples");

  const SamplePlan guarded = cfg.plan.with_pfaffian(pf);
  const std::vector<Point> pts = sample(guarded);

  // Pfaffian oracle and determinant identity.
  {
    double oracle_dev = 0.0, det_dev = 0.0;
    for (const Point& pt : pts) {
      const double closed = evaluate(pf, pt);
      const double quotient = pfaffian_oracle(s, pt);
      oracle_dev = std::max(oracle_dev, std::fabs(closed - quotient) /
                                            (1.0 + std::fabs(closed)));
      const double det = determinant(matrix_at(to_two_form(s), pt));
      det_dev = std::max(det_dev, std::fabs(det - closed * closed) /
                                      std::max(1.0, closed * closed));
    }
    rep["pfaffian"]["wedge_quotient_max_rel_dev"] = oracle_dev;
    rep["pfaffian"]["determinant_identity_max_rel_dev"] = det_dev;
    fails.check(oracle_dev <= cfg.zero_tol, "pfaffian wedge-quotient oracle");
    fails.check(det_dev <= 1e-8, "det(alpha) = Pf^2 identity");
  }

  // Normalization.
  const MAStructure n = normalize(s, cfg.region, cfg.plan);
  {
    const Expr pf_n = pfaffian(n);
    double unit_dev = 0.0, idem_dev = 0.0, inv_dev = 0.0;
    const MAStructure nn = normalize(n, cfg.region, cfg.plan);
    const Expr coeff_diffs[5] = {nn.A - n.A, nn.B - n.B, nn.C - n.C,
                                 nn.D - n.D, nn.E - n.E};
    for (const Point& pt : pts) {
      unit_dev = std::max(
          unit_dev, std::fabs(std::fabs(evaluate(pf_n, pt)) - 1.0));
      for (const Expr& d : coeff_diffs)
        idem_dev = std::max(idem_dev, std::fabs(evaluate(d, pt)));
      inv_dev = std::max(
          inv_dev, max_norm(rho_at(n, pt, 0.0) - rho_at(s, pt, cfg.plan.floor)));
    }
    rep["normalization"] =
        Json{{"region_sign", cfg.region.sign},
             {"normalized_pfaffian_unit_max_dev", unit_dev},
             {"idempotence_max_dev", idem_dev},
             {"rho_invariance_max_dev", inv_dev},
             {"coefficients",
              Json{{"A", to_string(simplify(n.A))},
                   {"B", to_string(simplify(n.B))},
                   {"C", to_string(simplify(n.C))},
                   {"D", to_string(simplify(n.D))},
                   {"E", to_string(simplify(n.E))}}}};
    fails.check(unit_dev <= 1e-9, "normalized Pfaffian is +-1");
    fails.check(idem_dev <= 1e-9, "normalization idempotence");
    fails.check(inv_dev <= cfg.matrix_tol, "rho invariance under normalization");
  }

  // rho and its square.
  {
    double sq_dev = 0.0;
    for (const Point& pt : pts) {
      const Mat4 r = rho_at(s, pt, cfg.plan.floor);
      sq_dev = std::max(sq_dev,
                        max_norm(r * r + static_cast<double>(sgn_pf) *
                                             Mat4::identity()));
    }
    rep["rho"] = Json{{"matrix_at_first_sample",
                       json_mat4(rho_at(s, pts.front(), cfg.plan.floor))},
                      {"square_identity_max_dev", sq_dev}};
    fails.check(sq_dev <= cfg.matrix_tol, "rho^2 = -sgn(Pf) Id");
  }

  // The three generalized structures plus the Hitchin-pair construction.
  {
    struct Entry {
      const char* name;
      GenEndo g;
      std::string expected;
    };
    std::vector<Entry> entries;
    entries.push_back(
        {"J_rho", j_rho(s, pts.front(), -1, cfg.plan.floor),
         expected_j_rho_type(sgn_pf)});
    entries.push_back(
        {"J_alpha", j_alpha(s, pts.front(), cfg.eps2),
         expected_antidiag_type(cfg.eps2)});
    entries.push_back({"J_omega", j_omega(cfg.eps3),
                       expected_antidiag_type(cfg.eps3)});
    entries.push_back({"J_banos", build_banos(s, pts.front(), cfg.plan.floor),
                       "GaC"});

    Json out = Json::object();
    for (const Entry& e : entries) {
      GenClassification worst = classify_gen(e.g, cfg.matrix_tol);
      for (std::size_t i = 1; i < pts.size(); ++i) {
        GenEndo g;
        if (std::string(e.name) == "J_rho")
          g = j_rho(s, pts[i], -1, cfg.plan.floor);
        else if (std::string(e.name) == "J_alpha")
          g = j_alpha(s, pts[i], cfg.eps2);
        else if (std::string(e.name) == "J_banos")
          g = build_banos(s, pts[i], cfg.plan.floor);
        else
          break;  // J_omega is constant
        const GenClassification c = classify_gen(g, cfg.matrix_tol);
        worst.square_residual = std::max(worst.square_residual, c.square_residual);
        worst.eta_residual = std::max(worst.eta_residual, c.eta_residual);
        if (c.type != worst.type) worst.type = GenType::None;
      }
      Json je = classify_json(worst);
      je["expected_type"] = e.expected;
      je["blocks_at_first_sample"] = json_blocks(e.g);
      if (std::string(e.name) == "J_banos")
        je["ct_block_norm"] = max_norm(e.g.ct);
      out[e.name] = je;
      fails.check(std::string(to_string(worst.type)) == e.expected,
                  std::string(e.name) + " classification");
      fails.check(worst.square_residual <= cfg.matrix_tol &&
                      worst.eta_residual <= cfg.matrix_tol,
                  std::string(e.name) + " residuals");
    }
    rep["structures"] = out;
  }

  // Pairwise anticommutativity.
  {
    const AntiCommutativityResult ac =
        anticommutativity_check(s, cfg.eps2, cfg.eps3, cfg.plan, cfg.zero_tol);
    double worst3[3] = {0, 0, 0};
    for (const Point& pt : pts) {
      const GenEndo jr = j_rho(s, pt, -1, cfg.plan.floor);
      const GenEndo ja = j_alpha(s, pt, cfg.eps2);
      const GenEndo jw = j_omega(cfg.eps3);
      worst3[0] = std::max(worst3[0], max_norm(anticommutator(jr, ja).assemble()));
      worst3[1] = std::max(worst3[1], max_norm(anticommutator(jr, jw).assemble()));
      worst3[2] = std::max(worst3[2], max_norm(anticommutator(ja, jw).assemble()));
    }
    rep["anticommutativity"] =
        Json{{"eps1_forced", -1},
             {"holds", ac.holds},
             {"pfaffian_vs_eps_product_max_dev", ac.max_deviation},
             {"witness", json_opt_point(ac.witness)},
             {"anticommutator_norms",
              Json{{"J_rho_J_alpha", worst3[0]},
                   {"J_rho_J_omega", worst3[1]},
                   {"J_alpha_J_omega", worst3[2]}}}};
    if (ac.holds) {
      fails.check(worst3[0] <= cfg.matrix_tol && worst3[1] <= cfg.matrix_tol &&
                      worst3[2] <= cfg.matrix_tol,
                  "pairwise anticommutators vanish");
    }
  }

  // Family members on the configured epsilons.
  {
    Json fam = Json::array();
    for (const FamilyCoeffs& c : cfg.family) {
      Json e{{"coeffs", Json::array({c.a1, c.a2, c.a3})}};
      const double kv = k_value(c, sgn_pf);
      e["k"] = kv;
      const bool adm = is_admissible(c, sgn_pf);
      e["admissible"] = adm;
      if (adm) {
        const int k = kv > 0 ? 1 : -1;
        e["quadric"] = to_string(quadric_type(sgn_pf, k, cfg.eps2, cfg.eps3));
        e["member_expected_type"] = k == 1 ? "GaPC" : "GaC";
        try {
          double sq_dev = 0.0, eta_dev = 0.0;
          GenClassification first_cls;
          const Mat8 id = Mat8::identity();
          for (std::size_t i = 0; i < pts.size(); ++i) {
            const GenEndo m =
                build_family_member(s, c, pts[i], cfg.plan.floor);
            const Mat8 mm = m.assemble();
            sq_dev = std::max(
                sq_dev, max_norm(mm * mm - static_cast<double>(k) * id));
            eta_dev = std::max(
                eta_dev, max_norm(mm.transposed() * eta() * mm +
                                  static_cast<double>(k) * eta()));
            if (i == 0) first_cls = classify_gen(m, cfg.matrix_tol);
          }
          e["square_identity_max_dev"] = sq_dev;
          e["eta_identity_max_dev"] = eta_dev;
          e["classification"] = classify_json(first_cls);
          fails.check(sq_dev <= 1e-9 && eta_dev <= 1e-9,
                      "family member identities for (" + std::to_string(c.a1) +
                          ", " + std::to_string(c.a2) + ", " +
                          std::to_string(c.a3) + ")");
        } catch (const PreconditionError& pe) {
          e["not_built"] = pe.what();
        }
      }
      fam.push_back(e);
    }
    rep["family"] = fam;
  }

  // PDE residuals for candidate solutions.
  {
    Json sols = Json::array();
    for (const auto& [src, f] : cfg.solutions) {
      const Expr res = simplify(residual(s, f));
      const Expr pb = simplify(pullback_oracle(s, f));
      const ZeroResult agreement = is_zero(res - pb, cfg.plan, 1e-8);
      const ZeroResult vanishes = is_zero(res, cfg.plan, cfg.zero_tol);
      sols.push_back(Json{{"f", src},
                          {"residual", to_string(res)},
                          {"pullback", to_string(pb)},
                          {"derived_equation", to_string(res) + " = 0"},
                          {"oracle_agreement", json_zero(agreement)},
                          {"residual_is_zero", json_zero(vanishes)}});
      fails.check(agreement.is_zero(), "residual/pullback agreement for " + src);
    }
    rep["solutions"] = sols;
  }

  // Integrability: closedness of the normalized form plus the Nijenhuis
  // probe on the diagonal structure built from rho.
  {
    const IntegrabilityResult lr =
        lr_integrability(s, cfg.region, cfg.plan, cfg.zero_tol);
    Json coeffs = Json::array();
    for (const ZeroResult& z : lr.coefficients) coeffs.push_back(json_zero(z));
    Json integ{{"lychagin_rubtsov", to_string(lr.verdict)},
               {"d_normalized_alpha_coefficients", coeffs}};

    const GenEndoField jfield = j_rho_field(s, cfg.region, -1);
    try {
      const IsotropyCertificate cert =
          certify_isotropic(jfield, guarded, cfg.matrix_tol);
      std::vector<Point> probe_pts(pts.begin(),
                                   pts.begin() + std::min<std::size_t>(
                                                     3, pts.size()));
      const NijenhuisProbe probe = nijenhuis_basis_probe(cert, probe_pts);
      integ["nijenhuis_probe"] =
          Json{{"max_abs", probe.max_abs},
               {"worst_pair", Json::array({probe.worst_pair_i,
                                           probe.worst_pair_j})},
               {"worst_point", json_point(probe.worst_point)},
               {"isotropy_max_pairing", cert.max_pairing}};
    } catch (const NonIsotropicError& ne) {
      integ["nijenhuis_probe"] = Json{{"refused", ne.what()}};
    } catch (const UnclassifiableError& ue) {
      integ["nijenhuis_probe"] = Json{{"refused", ue.what()}};
      fails.check(false, "diagonal rho structure classifiable at tolerance");
    }
    rep["integrability"] = integ;
  }

  if (cfg.divergence_phi) {
    const DivergenceResult dv =
        divergence_check(s, *cfg.divergence_phi, cfg.plan, cfg.zero_tol);
    Json coeffs = Json::array();
    for (const ZeroResult& z : dv.coefficients) coeffs.push_back(json_zero(z));
    rep["divergence"] = Json{{"phi", to_string(*cfg.divergence_phi)},
                             {"holds", dv.holds},
                             {"coefficients", coeffs}};
  }

  if (cfg.rescale_h) {
    const RescaleReport rr =
        rescale_transform(s, *cfg.rescale_h, cfg.plan, cfg.eps2);
    rep["rescale"] = Json{
        {"h", to_string(*cfg.rescale_h)},
        {"pfaffian_law", json_zero(rr.pfaffian_law)},
        {"rho_law_max_dev", rr.rho_law_max_deviation},
        {"family_preserved", rr.family_preserved},
        {"j_alpha_tc_scale_at_first_sample", rr.j_alpha_tc_scale},
        {"j_alpha_ct_scale_at_first_sample", rr.j_alpha_ct_scale}};
    fails.check(rr.pfaffian_law.is_zero(), "Pf(h a) = h^2 Pf(a)");
    fails.check(rr.rho_law_max_deviation <= cfg.matrix_tol,
                "rho(h a) = sgn(h) rho(a)");
  }

  rep["verification"] =
      Json{{"ok", fails.items.empty()}, {"failures", fails.items}};
  return RunResult{rep, fails.items.empty()};
}

Json quadric_sweep(const Config& cfg) {
  Json out;
  out["tool"] = Json{{"name", "mage"}, {"version", kVersion}};
  const PfaffianClass cls = classify(cfg.structure, cfg.plan);
  const int structure_sgn =
      cls.kind == PfaffianClass::Kind::Elliptic
          ? 1
          : cls.kind == PfaffianClass::Kind::Hyperbolic ? -1 : 0;
  out["structure_class"] = to_string(cls.kind);

  std::mt19937_64 rng(cfg.plan.seed);
  const Expr pf = pfaffian(cfg.structure);
  Json cells = Json::array();
  for (int sgn_pf : {1, -1})
    for (int k : {1, -1})
      for (int eps2 : {1, -1})
        for (int eps3 : {1, -1}) {
          const CellSpec cell{sgn_pf, k, eps2, eps3};
          const QuadricType qt = quadric_type(sgn_pf, k, eps2, eps3);
          Json jc{{"sgn_pf", sgn_pf}, {"k", k},
                  {"eps2", eps2},     {"eps3", eps3},
                  {"quadric", to_string(qt)},
                  {"member_type", k == 1 ? "GaPC" : "GaC"},
                  {"conic_a2_zero", induced_conic_a2_zero(sgn_pf, k, eps3)}};
          if (qt == QuadricType::Empty) {
            int found = 0;
            for (int i = 0; i < 100000; ++i)
              if (draw_admissible(cell, rng)) ++found;
            jc["admissible_found_in_1e5_draws"] = found;
          } else {
            Json samples = Json::array();
            int produced = 0;
            while (produced < 5) {
              if (auto c = draw_admissible(cell, rng)) {
                samples.push_back(Json::array({c->a1, c->a2, c->a3}));
                ++produced;
              }
            }
            jc["admissible_samples"] = samples;
            if (sgn_pf == structure_sgn) {
              // Verify the member identities on this structure where the
              // anticommutativity hypothesis allows a genuine member.
              double sq_dev = 0.0, eta_dev = 0.0;
              int verified = 0;
              const Mat8 id = Mat8::identity();
              const auto pts = sample(cfg.plan.with_pfaffian(pf));
              for (int t = 0; t < 10 && verified < 5; ++t) {
                auto c = draw_admissible(cell, rng);
                if (!c) continue;
                try {
                  for (std::size_t i = 0; i < std::min<std::size_t>(3, pts.size()); ++i) {
                    const GenEndo m = build_family_member(cfg.structure, *c,
                                                          pts[i], cfg.plan.floor);
                    const Mat8 mm = m.assemble();
                    sq_dev = std::max(sq_dev, max_norm(mm * mm -
                                                       static_cast<double>(k) * id));
                    eta_dev = std::max(eta_dev,
                                       max_norm(mm.transposed() * eta() * mm +
                                                static_cast<double>(k) * eta()));
                  }
                  ++verified;
                } catch (const PreconditionError&) {
                  // Structure does not satisfy Pf = eps2*eps3; skip.
                }
              }
              jc["verified_members"] = verified;
              if (verified > 0) {
                jc["square_identity_max_dev"] = sq_dev;
                jc["eta_identity_max_dev"] = eta_dev;
              }
            }
          }
          cells.push_back(jc);
        }
  out["cells"] = cells;
  return out;
}

Json residual_report(const Config& cfg) {
  Json out;
  out["tool"] = Json{{"name", "mage"}, {"version", kVersion}};
  Json sols = Json::array();
  for (const auto& [src, f] : cfg.solutions) {
    const Expr res = simplify(residual(cfg.structure, f));
    const Expr pb = simplify(pullback_oracle(cfg.structure, f));
    sols.push_back(Json{{"f", src},
                        {"residual", to_string(res)},
                        {"pullback", to_string(pb)},
                        {"derived_equation", to_string(res) + " = 0"},
                        {"oracle_agreement",
                         json_zero(is_zero(res - pb, cfg.plan, 1e-8))},
                        {"residual_is_zero",
                         json_zero(is_zero(res, cfg.plan, cfg.zero_tol))}});
  }
  out["solutions"] = sols;
  return out;
}

Json integrability_report(const Config& cfg) {
  Json out;
  out["tool"] = Json{{"name", "mage"}, {"version", kVersion}};
  const PfaffianClass cls = classify(cfg.structure, cfg.plan);
  out["pfaffian_class"] = to_string(cls.kind);
  const IntegrabilityResult lr =
      lr_integrability(cfg.structure, cfg.region, cfg.plan, cfg.zero_tol);
  Json coeffs = Json::array();
  for (const ZeroResult& z : lr.coefficients) coeffs.push_back(json_zero(z));
  out["lychagin_rubtsov"] = to_string(lr.verdict);
  out["d_normalized_alpha_coefficients"] = coeffs;
  if (cfg.divergence_phi) {
    const DivergenceResult dv =
        divergence_check(cfg.structure, *cfg.divergence_phi, cfg.plan,
                         cfg.zero_tol);
    out["divergence_holds"] = dv.holds;
  }
  return out;
}

}  // namespace mage
