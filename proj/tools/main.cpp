// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "io.hpp"
#include "spectwist/gauge.hpp"

namespace {

using namespace spectwist;
using io::json;

constexpr int kOk = 0;
constexpr int kAxiomFailure = 1;
constexpr int kInputError = 2;

struct Common {
  bool json_out = false;
  std::uint64_t seed = 1;
  double tol = 1e-10;
};

std::string fmt_signs(const KOSigns& s) {
  const auto sg = [](int v) { return v > 0 ? std::string("+1") : v < 0 ? std::string("-1") : std::string("0"); };
  return "(" + sg(s.eps) + "," + sg(s.eps_prime) + "," + sg(s.eps_double_prime) + ")";
}

json signs_json(const KOSigns& s) {
  return {{"epsilon", s.eps}, {"epsilon_prime", s.eps_prime}, {"epsilon_double_prime", s.eps_double_prime}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw io::SchemaError("cannot write " + path);
  out << j.dump(2) << "\n";
}

cplx parse_pair(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw io::SchemaError(std::string(what) + ": expected RE,IM");
  }
}

std::string fmt_matrix(const CMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      out += fmt::format(" {:+.4f}{:+.4f}i", z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
    }
    out += "\n";
  }
  return out;
}

json axioms_json(const AxiomReport& r) {
  json axioms = json::array();
  for (const auto& a : r.results)
    axioms.push_back({{"name", a.name}, {"defect", a.defect}, {"passed", a.passed}, {"mandatory", a.mandatory},
                      {"note", a.note}});
  const auto unit = [](const AlgebraShape::Unit& u) { return json::array({u.k, u.i, u.j}); };
  return {{"axioms", axioms},
          {"signs", signs_json(r.signs)},
          {"ko_dimension", r.ko_dim},
          {"mandatory_passed", r.mandatory_passed()},
          {"first_order", r.first_order_holds() ? "HOLDS" : "VIOLATED"},
          {"first_order_witness",
           {{"a", unit(r.first_order_witness.a)},
            {"b", unit(r.first_order_witness.b)},
            {"defect", r.first_order_witness.defect}}},
          {"warnings", r.warnings}};
}

std::string axioms_text(const AxiomReport& r) {
  std::string out = fmt::format("{:<34} {:>12}  {}\n", "axiom", "defect", "status");
  for (const auto& a : r.results) {
    std::string status = a.passed ? "ok" : (a.mandatory ? "FAILED" : "VIOLATED");
    if (!a.mandatory) status += " (optional)";
    out += fmt::format("{:<34} {:>12.3e}  {}\n", a.name, a.defect, status);
  }
  out += fmt::format("KO signs: {}  KO dimension: {}\n", fmt_signs(r.signs),
                     r.ko_dim >= 0 ? std::to_string(r.ko_dim) : std::string("undefined"));
  out += fmt::format("first_order: {}\n", r.first_order_holds() ? "HOLDS" : "VIOLATED");
  if (!r.first_order_holds())
    out += fmt::format("first-order witness: a = E({},{},{}), b = E({},{},{}), defect {:.6e}\n",
                       r.first_order_witness.a.k, r.first_order_witness.a.i, r.first_order_witness.a.j,
                       r.first_order_witness.b.k, r.first_order_witness.b.i, r.first_order_witness.b.j,
                       r.first_order_witness.defect);
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

int cmd_check(const Common& c, const std::string& path, bool require_first_order, int samples) {
  const TwistedTriple t = io::load_triple(path);
  Rng rng(c.seed);
  const AxiomReport r = check_axioms(t, samples, rng, Tolerance(c.tol));
  const bool ok = r.mandatory_passed() && (!require_first_order || r.first_order_holds());
  if (c.json_out) {
    json j = axioms_json(r);
    j["result"] = ok ? "PASS" : "FAIL";
    emit(j);
  } else {
    std::cout << fmt::format("triple: Hilbert dimension {}, algebra blocks [{}]\n", t.dim(),
                             fmt::join(t.shape().block_dims(), ","));
    std::cout << axioms_text(r);
    std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kOk : kAxiomFailure;
}

Perturbation normalized_input(const TwistedTriple& t, const Perturbation& p, const Tolerance& tol, bool& was) {
  was = p.normalized(t.sigma(), tol);
  return was ? p : normalize(t, p);
}

int cmd_fluctuate(const Common& c, const std::string& triple_path, const std::string& pert_path, bool check_mu) {
  const TwistedTriple t = io::load_triple(triple_path);
  const Tolerance tol(c.tol);
  bool was_normalized = false;
  const Perturbation p = normalized_input(t, io::load_pert(pert_path, t.shape()), tol, was_normalized);
  const FluctuationReport f = fluctuate(t, p, tol);
  std::optional<double> mu_defect;
  if (check_mu) mu_defect = rel_defect(act_mu(t, p, t.dirac(), tol), f.d_omega);
  const bool ok = !mu_defect || *mu_defect <= tol.abs_eps;
  if (c.json_out) {
    json j = {{"input_normalized", was_normalized},
              {"omega1", io::to_json(f.omega1)},
              {"omega1_hat", io::to_json(f.omega1_hat)},
              {"omega2", io::to_json(f.omega2)},
              {"d_omega", io::to_json(f.d_omega)},
              {"omega2_agreement", f.omega2_agreement},
              {"selfadjoint_omega1", f.selfadjoint_omega1},
              {"selfadjoint_d_omega", f.selfadjoint_d_omega},
              {"j_compatible", f.j_compatible},
              {"first_order_defect", f.first_order_defect}};
    if (mu_defect) j["mu_defect"] = *mu_defect;
    emit(j);
  } else {
    std::cout << fmt::format("pairs: {}{}\n", p.size(), was_normalized ? "" : " (normalized on input)");
    std::cout << fmt::format("||omega1|| = {:.6e}  ||omega1_hat|| = {:.6e}  ||omega2|| = {:.6e}\n", f.omega1.norm(),
                             f.omega1_hat.norm(), f.omega2.norm());
    std::cout << fmt::format("omega2 agreement: {:.3e}\n", f.omega2_agreement);
    std::cout << fmt::format("selfadjoint omega1: {}  selfadjoint D_omega: {}  J-compatible: {}\n",
                             f.selfadjoint_omega1 ? "yes" : "no", f.selfadjoint_d_omega ? "yes" : "no",
                             f.j_compatible ? "yes" : "no");
    if (mu_defect) std::cout << fmt::format("mu agreement defect: {:.3e}\n", *mu_defect);
    std::cout << "D_omega =\n" << fmt_matrix(f.d_omega);
  }
  return ok ? kOk : kAxiomFailure;
}

int cmd_gauge(const Common& c, const std::string& triple_path, const std::string& pert_path,
              const std::string& unitary_path) {
  const TwistedTriple t = io::load_triple(triple_path);
  const Tolerance tol(c.tol);
  bool was_normalized = false;
  const Perturbation p = normalized_input(t, io::load_pert(pert_path, t.shape()), tol, was_normalized);
  const Unitary u(io::load_element(unitary_path, t.shape()), tol);
  const GaugeDiracReport r = gauge_dirac(t, p, u, tol);
  const double rel = rel_defect(r.lhs, r.rhs);
  const bool ok = rel <= tol.abs_eps && r.bare.defect <= tol.abs_eps;
  if (c.json_out) {
    emit({{"input_normalized", was_normalized},
          {"defect", r.defect},
          {"relative_defect", rel},
          {"bare_law_defect", r.bare.defect},
          {"gauged_d_omega", io::to_json(r.lhs)},
          {"d_omega_of_gauged_pert", io::to_json(r.rhs)},
          {"result", ok ? "PASS" : "FAIL"}});
  } else {
    std::cout << fmt::format("covariance defect: {:.3e} (relative {:.3e})\n", r.defect, rel);
    std::cout << fmt::format("bare Dirac law defect: {:.3e}\n", r.bare.defect);
    std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kOk : kAxiomFailure;
}

int cmd_pert_mul(const Common& c, const std::string& triple_path, const std::string& p_path,
                 const std::string& q_path, const std::string& output) {
  const TwistedTriple t = io::load_triple(triple_path);
  const Tolerance tol(c.tol);
  const Perturbation p = io::load_pert(p_path, t.shape());
  const Perturbation q = io::load_pert(q_path, t.shape());
  const Perturbation r = pert_mul(p, q);
  const bool inputs_normalized = p.normalized(t.sigma(), tol) && q.normalized(t.sigma(), tol);
  const bool normalized = r.normalized(t.sigma(), tol);
  std::optional<double> action;
  if (inputs_normalized) action = rel_defect(act_mu(t, r, t.dirac(), tol), act_mu(t, p, act_mu(t, q, t.dirac(), tol), tol));
  const bool ok = !inputs_normalized || (normalized && *action <= tol.abs_eps);
  if (!output.empty()) write_file(output, io::to_json(r));
  if (c.json_out) {
    json j = {{"pairs", r.size()}, {"normalized", normalized}, {"product", io::to_json(r)}};
    if (action) j["action_defect"] = *action;
    emit(j);
  } else {
    std::cout << fmt::format("product: {} pairs, normalized: {}\n", r.size(), normalized ? "yes" : "no");
    if (action) std::cout << fmt::format("action defect: {:.3e}\n", *action);
    if (!output.empty()) std::cout << "written: " << output << "\n";
  }
  return ok ? kOk : kAxiomFailure;
}

int cmd_model_u1u2(const Common& c, const std::string& kx_s, const std::string& ky_s, int verify,
                   const std::string& output) {
  if (verify < 0) throw io::SchemaError("--verify must be non-negative");
  const U1U2Model m = build_u1u2(parse_pair(kx_s, "--kx"), parse_pair(ky_s, "--ky"));
  const Tolerance tol(c.tol);
  Rng rng(c.seed);
  const AxiomReport axioms = check_axioms(m.triple, 4, rng, tol);
  double formula = 0.0;
  double restriction = 0.0;
  for (int n = 0; n < verify; ++n) {
    const Perturbation p = Perturbation::random_normalized(m.triple.shape(), m.triple.sigma(), 2, rng);
    formula = std::max(formula, verify_fluctuation_formula(m, p).max_defect);
    const FlucParams f = extract_params(m, selfadjoint_symmetrize(m.triple, p));
    restriction = std::max(restriction, std::abs(f.phi_prime - std::conj(f.phi)));
    for (size_t i = 0; i < 2; ++i)
      restriction = std::max(restriction, std::abs(f.sigma_upper[i] - std::conj(f.sigma_lower[i])));
  }
  const bool ok = axioms.mandatory_passed() && formula <= tol.abs_eps && restriction <= tol.abs_eps;
  const json triple = io::triple_to_json(m.triple);
  if (!output.empty()) write_file(output, triple);
  if (c.json_out) {
    json v = axioms_json(axioms);
    v["samples"] = verify;
    v["max_formula_defect"] = formula;
    v["max_selfadjoint_restriction_defect"] = restriction;
    v["result"] = ok ? "PASS" : "FAIL";
    emit({{"triple", triple}, {"verification", v}});
  } else {
    std::cout << axioms_text(axioms);
    std::cout << fmt::format("formula check over {} perturbations: max defect {:.3e}\n", verify, formula);
    std::cout << fmt::format("selfadjoint restriction: max defect {:.3e}\n", restriction);
    if (!output.empty()) std::cout << "written: " << output << "\n";
    std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kOk : kAxiomFailure;
}

struct MoritaOptions {
  std::string triple;
  bool self = false;
  std::string omega;
  std::string idempotent;
  bool symmetrize = false;
  int samples = 5;
};

int cmd_morita(const Common& c, const MoritaOptions& o) {
  const TwistedTriple t = io::load_triple(o.triple);
  const Tolerance tol(c.tol);
  Rng rng(c.seed);
  if (o.self == !o.idempotent.empty()) throw io::SchemaError("morita: give exactly one of --self or --idempotent");
  if (o.self && o.omega.empty()) throw io::SchemaError("morita --self requires --omega");
  if (!o.self && !o.omega.empty()) throw io::SchemaError("morita --omega is only supported with --self");

  const IdempotentData e = o.self ? make_idempotent(t, 1, AlgebraElement::unit(t.shape())) : io::load_idempotent(o.idempotent, t);
  const IdempotentReport ir = check_idempotent(t, e, tol);
  require_admissible(t, e, tol);

  HermitianConnection conn = grassmann(t, e, Side::right);
  std::optional<Perturbation> p;
  if (o.self) {
    bool was = false;
    p = normalized_input(t, io::load_pert(o.omega, t.shape()), tol, was);
    if (o.symmetrize) p = selfadjoint_symmetrize(t, *p);
    conn = right_connection(t, e, {*p});
  }
  const HermitianReport hr = check_hermitian(t, e, conn, o.samples, rng, tol);

  json j = {{"idempotent",
             {{"n", e.n},
              {"twist_invariant", ir.twist_invariant},
              {"twist_commuting", ir.twist_commuting},
              {"lift_defect", std::max(ir.lift, ir.lift_inverse)}}},
            {"hermitian_defect", hr.max_defect}};
  std::string text = fmt::format("idempotent: n = {}, twist-invariant: {}, twist-commuting: {}\n", e.n,
                                 ir.twist_invariant ? "yes" : "no", ir.twist_commuting ? "yes" : "no");
  text += fmt::format("hermitian connection defect: {:.3e}\n", hr.max_defect);
  bool ok = hr.passed;

  const RightMorita right = build_right_triple(t, e, conn, tol);
  const AxiomReport right_axioms = check_axioms(right.triple, o.samples, rng, tol);
  ok = ok && right_axioms.mandatory_passed();
  j["right"] = {{"mandatory_passed", right_axioms.mandatory_passed()},
                {"bracket_defect", right.bracket_defect},
                {"dirac", io::to_json(right.dirac_full)}};
  text += fmt::format("right triple: axioms {}, bracket defect {:.3e}\n",
                      right_axioms.mandatory_passed() ? "PASS" : "FAIL", right.bracket_defect);
  if (p) {
    const double d = rel_defect(right.dirac_full, t.dirac() + eta(t, *p).op);
    ok = ok && d <= tol.abs_eps;
    j["right"]["d_plus_omega_defect"] = d;
    text += fmt::format("D_R = D + omega: defect {:.3e}\n", d);
  }

  const bool first_order = [&] {
    if (!t.has_real()) return false;
    Rng probe(c.seed);
    return check_axioms(t, 2, probe, tol).first_order_holds();
  }();
  if (t.has_real() && first_order) {
    const HermitianConnection left_conn = conjugate_connection(t, e, conn, tol);
    const LeftMorita left = build_left_triple(t, e, left_conn, tol);
    const AxiomReport left_axioms = check_axioms(left.triple, o.samples, rng, tol);
    ok = ok && left_axioms.mandatory_passed();
    j["left"] = {{"mandatory_passed", left_axioms.mandatory_passed()}, {"bracket_defect", left.bracket_defect}};
    text += fmt::format("left triple: axioms {}, bracket defect {:.3e}\n",
                        left_axioms.mandatory_passed() ? "PASS" : "FAIL", left.bracket_defect);
    if (p) {
      const double d = rel_defect(left.dirac_full, t.dirac() + t.eps_prime() * t.jconj(eta(t, *p).op));
      ok = ok && d <= tol.abs_eps;
      j["left"]["d_plus_conjugate_omega_defect"] = d;
      text += fmt::format("D_L = D + eps' J omega J^-1: defect {:.3e}\n", d);
    }
  } else {
    j["left"] = {{"skipped", t.has_real() ? "first-order condition fails" : "no real structure"}};
    text += std::string("left triple: skipped (") + (t.has_real() ? "first-order condition fails" : "no real structure") + ")\n";
  }

  if (t.has_real() && t.has_grading() && (first_order || conn.source)) {
    const RealMorita real = build_real_triple(t, e, conn, tol);
    j["real"] = {{"delegated_to_fluctuation", real.delegated_to_fluctuation},
                 {"route_defect", real.route_defect},
                 {"dirac", io::to_json(real.dirac_full)}};
    text += fmt::format("real triple: {}route defect {:.3e}\n",
                        real.delegated_to_fluctuation ? "via fluctuation, " : "", real.route_defect);
    ok = ok && real.route_defect <= tol.abs_eps;
    if (!real.delegated_to_fluctuation) {
      const AxiomReport ra = check_axioms(real.triple, o.samples, rng, tol);
      ok = ok && ra.mandatory_passed();
      j["real"]["mandatory_passed"] = ra.mandatory_passed();
      j["real"]["signs"] = signs_json(ra.signs);
      text += fmt::format("real triple: axioms {}, KO signs {}\n", ra.mandatory_passed() ? "PASS" : "FAIL",
                          fmt_signs(ra.signs));
    }
  } else {
    const char* why = !t.has_real() || !t.has_grading() ? "needs grading and real structure" : "first-order condition fails";
    j["real"] = {{"skipped", why}};
    text += std::string("real triple: skipped (") + why + ")\n";
  }
  j["result"] = ok ? "PASS" : "FAIL";
  if (c.json_out)
    emit(j);
  else
    std::cout << text << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kAxiomFailure;
}

int guarded(const std::function<int()>& f) {
  try {
    return f();
  } catch (const io::SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAxiomFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for finite-dimensional real twisted spectral triples"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json_out, "Emit a machine-readable JSON report");
  app.add_option("--seed", common.seed, "Seed for sampled checks");
  app.add_option("--tol", common.tol, "Absolute tolerance")->check(CLI::PositiveNumber);

  std::string triple, pert, pert2, unitary, output;
  bool require_first_order = false;
  bool check_mu = false;
  int samples = 4;

  auto* check = app.add_subcommand("check", "Verify the axioms of a triple file");
  check->add_option("triple", triple, "Triple file")->required();
  check->add_flag("--require-first-order", require_first_order, "Fail when the first-order condition is violated");
  check->add_option("--samples", samples, "Random samples per identity")->check(CLI::PositiveNumber);

  auto* fluc = app.add_subcommand("fluctuate", "Twisted inner fluctuation of D by a perturbation");
  fluc->add_option("triple", triple, "Triple file")->required();
  fluc->add_option("pert", pert, "Perturbation file")->required();
  fluc->add_flag("--check-mu", check_mu, "Also compare with the action of mu(p) on D");

  auto* gauge = app.add_subcommand("gauge", "Gauge covariance of the fluctuated Dirac operator");
  gauge->add_option("triple", triple, "Triple file")->required();
  gauge->add_option("pert", pert, "Perturbation file")->required();
  gauge->add_option("unitary", unitary, "Unitary algebra element file")->required();

  auto* mul = app.add_subcommand("pert-mul", "Product of two perturbations");
  mul->add_option("triple", triple, "Triple file")->required();
  mul->add_option("p", pert, "Left factor")->required();
  mul->add_option("q", pert2, "Right factor")->required();
  mul->add_option("--output", output, "Write the product to this file");

  auto* model = app.add_subcommand("model", "Built-in models");
  model->require_subcommand(1);
  std::string kx = "1,0", ky = "1,0";
  int verify = 100;
  auto* u1u2 = model->add_subcommand("u1u2", "The twisted U(1) x U(2) model");
  u1u2->add_option("--kx", kx, "k_x as RE,IM");
  u1u2->add_option("--ky", ky, "k_y as RE,IM");
  u1u2->add_option("--verify", verify, "Random perturbations for the formula check");
  u1u2->add_option("--output", output, "Write the triple file here");

  MoritaOptions mo;
  auto* morita = app.add_subcommand("morita", "Morita equivalent triples");
  morita->add_option("triple", mo.triple, "Triple file")->required();
  morita->add_flag("--self", mo.self, "Self-Morita equivalence with e = 1");
  morita->add_option("--omega", mo.omega, "Perturbation file generating the connection (with --self)");
  morita->add_option("--idempotent", mo.idempotent, "Idempotent file {n, element}; Grassmann connection");
  morita->add_flag("--symmetrize", mo.symmetrize, "Replace omega by its selfadjoint part");
  morita->add_option("--samples", mo.samples, "Random samples per identity")->check(CLI::PositiveNumber);

  for (auto* sub : {check, fluc, gauge, mul, u1u2, morita}) {
    sub->add_flag("--json", common.json_out, "Emit a machine-readable JSON report");
    sub->add_option("--seed", common.seed, "Seed for sampled checks");
    sub->add_option("--tol", common.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  return guarded([&] {
    if (*check) return cmd_check(common, triple, require_first_order, samples);
    if (*fluc) return cmd_fluctuate(common, triple, pert, check_mu);
    if (*gauge) return cmd_gauge(common, triple, pert, unitary);
    if (*mul) return cmd_pert_mul(common, triple, pert, pert2, output);
    if (*u1u2) return cmd_model_u1u2(common, kx, ky, verify, output);
    return cmd_morita(common, mo);
  });
}
