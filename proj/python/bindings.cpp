// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mage/pipeline.hpp"

namespace py = pybind11;
using namespace mage;

namespace {

Point as_point(double x, double y, double p, double q) { return {x, y, p, q}; }

std::vector<std::vector<double>> mat4_list(const Mat4& m) {
  std::vector<std::vector<double>> rows(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = m(i, j) + 0.0;
  return rows;
}

Var var_from_name(const std::string& name) {
  for (Var v : kVars)
    if (name == var_name(v)) return v;
  throw Error("unknown variable '" + name + "' (expected x, y, p or q)");
}

SamplePlan plan_from_kwargs(int count, std::uint64_t seed) {
  SamplePlan plan;
  plan.count = count;
  plan.seed = seed;
  return plan;
}

}  // namespace

PYBIND11_MODULE(_mage, m) {
  m.doc() = "Monge-Ampere structures and the generalized almost geometries "
            "they induce";
  m.attr("__version__") = kVersion;

  // Base first: pybind11 tries translators most-recently-registered first,
  // so the derived ones must come after the base to win the match.
  py::register_exception<Error>(m, "MageError");
  py::register_exception<ParseError>(m, "ExprParseError");
  py::register_exception<EvalError>(m, "EvalDomainError");

  py::class_<Expr>(m, "Expr")
      .def(py::init([](const std::string& src) { return parse(src); }))
      .def("__str__", [](const Expr& e) { return to_string(e); })
      .def("__repr__",
           [](const Expr& e) { return "Expr(\"" + to_string(e) + "\")"; })
      .def(
          "evaluate",
          [](const Expr& e, double x, double y, double p, double q) {
            return evaluate(e, as_point(x, y, p, q));
          },
          py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("p") = 0.0,
          py::arg("q") = 0.0)
      .def("diff",
           [](const Expr& e, const std::string& v) {
             return differentiate(e, var_from_name(v));
           })
      .def("simplify", [](const Expr& e) { return simplify(e); });

  m.def("parse", [](const std::string& src) { return parse(src); });
  m.def("prove_zero", &prove_zero);

  py::class_<MAStructure>(m, "MAStructure")
      .def(py::init([](const std::string& A, const std::string& B,
                       const std::string& C, const std::string& D,
                       const std::string& E) {
             return MAStructure{parse(A), parse(B), parse(C), parse(D),
                                parse(E)};
           }),
           py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"),
           py::arg("E"))
      .def("pfaffian",
           [](const MAStructure& s) { return simplify(pfaffian(s)); })
      .def(
          "pfaffian_at",
          [](const MAStructure& s, double x, double y, double p, double q) {
            return evaluate(pfaffian(s), as_point(x, y, p, q));
          },
          py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("p") = 0.0,
          py::arg("q") = 0.0)
      .def(
          "classify",
          [](const MAStructure& s, int count, std::uint64_t seed) {
            return std::string(
                to_string(classify(s, plan_from_kwargs(count, seed)).kind));
          },
          py::arg("count") = 100, py::arg("seed") = 42)
      .def(
          "rho_at",
          [](const MAStructure& s, double x, double y, double p, double q) {
            return mat4_list(rho_at(s, as_point(x, y, p, q)));
          },
          py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("p") = 0.0,
          py::arg("q") = 0.0)
      .def("residual",
           [](const MAStructure& s, const std::string& f) {
             return simplify(residual(s, parse(f)));
           })
      .def("pullback",
           [](const MAStructure& s, const std::string& f) {
             return simplify(pullback_oracle(s, parse(f)));
           })
      .def(
          "normalize",
          [](const MAStructure& s, int sign, int count, std::uint64_t seed) {
            return normalize(s, SignedRegion{sign},
                             plan_from_kwargs(count, seed));
          },
          py::arg("sign") = 1, py::arg("count") = 100, py::arg("seed") = 42)
      .def("__repr__", [](const MAStructure& s) {
        return "MAStructure(A=\"" + to_string(simplify(s.A)) + "\", B=\"" +
               to_string(simplify(s.B)) + "\", C=\"" + to_string(simplify(s.C)) +
               "\", D=\"" + to_string(simplify(s.D)) + "\", E=\"" +
               to_string(simplify(s.E)) + "\")";
      });

  py::class_<GenEndo>(m, "GenEndo")
      .def("blocks",
           [](const GenEndo& g) {
             py::dict d;
             d["tt"] = mat4_list(g.tt);
             d["tc"] = mat4_list(g.tc);
             d["ct"] = mat4_list(g.ct);
             d["cc"] = mat4_list(g.cc);
             return d;
           })
      .def("classify",
           [](const GenEndo& g, double tol) {
             const GenClassification c = classify_gen(g, tol);
             py::dict d;
             d["type"] = std::string(to_string(c.type));
             d["gamma1"] = c.gamma1;
             d["gamma2"] = c.gamma2;
             d["square_residual"] = c.square_residual;
             d["eta_residual"] = c.eta_residual;
             return d;
           },
           py::arg("tol") = 1e-10)
      .def("anticommutator", [](const GenEndo& a, const GenEndo& b) {
        return anticommutator(a, b);
      })
      .def("isotropic", [](const GenEndo& g, double tol) {
        return isotropy_check(g, tol).isotropic;
      }, py::arg("tol") = 1e-10);

  m.def(
      "j_rho",
      [](const MAStructure& s, double x, double y, double p, double q,
         int eps1) { return j_rho(s, as_point(x, y, p, q), eps1); },
      py::arg("s"), py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("p") = 0.0,
      py::arg("q") = 0.0, py::arg("eps1") = -1);
  m.def(
      "j_alpha",
      [](const MAStructure& s, double x, double y, double p, double q,
         int eps2) { return j_alpha(s, as_point(x, y, p, q), eps2); },
      py::arg("s"), py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("p") = 0.0,
      py::arg("q") = 0.0, py::arg("eps2") = 1);
  m.def("j_omega", &j_omega, py::arg("eps3") = 1);
  m.def(
      "banos",
      [](const MAStructure& s, double x, double y, double p, double q) {
        return build_banos(s, as_point(x, y, p, q));
      },
      py::arg("s"), py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("p") = 0.0,
      py::arg("q") = 0.0);

  m.def("k_value", [](double a1, double a2, double a3, int eps2, int eps3,
                      int sgn_pf) {
    return k_value(FamilyCoeffs{a1, a2, a3, eps2, eps3}, sgn_pf);
  });
  m.def("quadric_type", [](int sgn_pf, int k, int eps2, int eps3) {
    return std::string(to_string(quadric_type(sgn_pf, k, eps2, eps3)));
  });

  m.def(
      "lr_integrability",
      [](const MAStructure& s, int sign, int count, std::uint64_t seed) {
        return std::string(to_string(
            lr_integrability(s, SignedRegion{sign}, plan_from_kwargs(count, seed))
                .verdict));
      },
      py::arg("s"), py::arg("sign") = 1, py::arg("count") = 100,
      py::arg("seed") = 42);
  m.def(
      "divergence_check",
      [](const MAStructure& s, const std::string& phi) {
        return divergence_check(s, parse(phi)).holds;
      },
      py::arg("s"), py::arg("phi") = "0");

  m.def("run_config", [](const std::string& config_json) {
    const Json j = Json::parse(config_json);
    const Config cfg = parse_config(j);
    return run_pipeline(cfg).report.dump(2);
  });
  m.def("validate_config", [](const std::string& config_json) {
    return validate_config(Json::parse(config_json));
  });
}
