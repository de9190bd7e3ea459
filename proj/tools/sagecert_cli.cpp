#include <sagecert/sagecert.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace sagecert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefused = 2;
constexpr int kExitInput = 3;
constexpr int kExitSolver = 4;

struct Options {
  int level = 0;
  int pmult = 0;
  int q = 0;
  double tol = 1e-8;
  std::string mode = "float";
  std::string format = "json";
  unsigned seed = 0;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const Options& opt) {
  if (opt.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // text: stable flat key listing
  std::function<void(const json&, const std::string&)> walk = [&](const json& node, const std::string& prefix) {
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end(); ++it)
        walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (node.is_array() && !node.empty() && (node[0].is_object() || node[0].is_array())) {
      for (size_t i = 0; i < node.size(); ++i) walk(node[i], prefix + "[" + std::to_string(i) + "]");
    } else {
      std::cout << prefix << ": " << node.dump() << "\n";
    }
  };
  walk(j, "");
}

SolverOptions solver_opts(const Options& opt) {
  SolverOptions s;
  s.tol_feas = opt.tol;
  s.tol_gap = opt.tol;
  return s;
}

int cmd_certify(const std::string& path, const Options& opt) {
  auto input = input_from_json(load_json(path));
  json out;
  out["input"] = path;
  out["seed"] = opt.seed;
  bool member;
  if (input.is_polynomial) {
    auto r = poly_sage_membership(input.polynomial, solver_opts(opt));
    member = r.member;
    out["member"] = r.member;
    out["margin"] = r.margin;
    if (r.certificate) {
      out["certificate"] = certificate_to_json(r.certificate->inner);
      out["certificate"]["chat"] = r.certificate->chat;
      auto w = orthant_dominated(input.polynomial);
      out["certificate"]["orthant_witness"] = orthant_witness_to_json(w);
      if (opt.mode == "exact") {
        auto v = validate_certificate(input.polynomial.exponents, r.certificate->chat,
                                      r.certificate->inner, ValidateMode::Exact);
        out["exact_validation"] = v.valid;
      }
    }
  } else {
    auto r = sage_membership(input.signomial.exponents, input.signomial.coeffs, solver_opts(opt));
    member = r.member;
    out["member"] = r.member;
    out["margin"] = r.margin;
    if (r.certificate) {
      out["certificate"] = certificate_to_json(*r.certificate);
      if (opt.mode == "exact") {
        auto v = validate_certificate(input.signomial.exponents, input.signomial.coeffs,
                                      *r.certificate, ValidateMode::Exact);
        out["exact_validation"] = v.valid;
      }
    }
  }
  emit(out, opt);
  return member ? kExitOk : kExitRefused;
}

int bound_exit(const BoundResult& b) {
  switch (b.status) {
    case BoundStatus::Optimal: return kExitOk;
    case BoundStatus::Infeasible: return kExitRefused;
    case BoundStatus::Unbounded: return kExitRefused;
    default: return kExitSolver;
  }
}

int cmd_bound(const std::string& path, const Options& opt) {
  auto input = input_from_json(load_json(path));
  json out;
  out["input"] = path;
  out["seed"] = opt.seed;
  BoundResult b;
  if (input.is_polynomial) {
    b = poly_bound(input.polynomial, {}, opt.pmult, opt.q, solver_opts(opt));
    out = bound_result_to_json(b);
    out["pmult"] = opt.pmult;
    out["q"] = opt.q;
  } else {
    b = sage_bound(input.signomial, opt.level, solver_opts(opt));
    auto d = sage_bound_dual(input.signomial, opt.level, solver_opts(opt));
    out = bound_result_to_json(b);
    if (std::isinf(d.value))
      out["dual_route_value"] = d.value > 0 ? "inf" : "-inf";
    else
      out["dual_route_value"] = d.value;
  }
  emit(out, opt);
  return bound_exit(b);
}

int cmd_decompose(const std::string& path, const Options& opt) {
  auto input = input_from_json(load_json(path));
  const auto& A = input.signomial.exponents;
  std::vector<double> target = input.signomial.coeffs;
  if (input.is_polynomial) target = signomial_representative(input.polynomial).coeffs;

  auto r = sage_membership(A, target, solver_opts(opt));
  json out;
  out["member"] = r.member;
  if (!r.member) {
    out["margin"] = r.margin;
    emit(out, opt);
    return kExitRefused;
  }
  auto cf = cancellation_free(A, target, *r.certificate, solver_opts(opt));
  out["cancellation_free"] = certificate_to_json(cf);
  json circuits = json::array();
  for (const auto& part : cf.parts) {
    auto cd = circuit_decompose(A, part);
    json cj = circuit_decomposition_to_json(cd);
    cj["part_index"] = part.k;
    circuits.push_back(cj);
  }
  out["circuits"] = circuits;
  if (input.is_polynomial) {
    auto polys = poly_age_decompose(input.polynomial, cf);
    out["age_polynomials"] = polys;
  }
  emit(out, opt);
  return kExitOk;
}

int cmd_validate(const std::string& instance, const std::string& certpath, const Options& opt) {
  auto input = input_from_json(load_json(instance));
  auto cert = certificate_from_json(load_json(certpath));
  std::vector<double> target = input.signomial.coeffs;
  if (input.is_polynomial) target = signomial_representative(input.polynomial).coeffs;
  auto verdict = validate_certificate(input.signomial.exponents, target, cert,
                                      opt.mode == "exact" ? ValidateMode::Exact : ValidateMode::Float);
  json out;
  out["valid"] = verdict.valid;
  out["mode"] = opt.mode;
  out["reasons"] = verdict.reasons;
  emit(out, opt);
  return verdict.valid ? kExitOk : kExitRefused;
}

int cmd_newton(const std::string& path, const Options& opt) {
  auto input = input_from_json(load_json(path));
  auto rep = extreme_indices(input.signomial.exponents);
  auto fp = find_face_partition(input.signomial.exponents);
  emit(newton_report_to_json(rep, fp), opt);
  return kExitOk;
}

int cmd_orthant(const std::string& path, const Options& opt) {
  auto input = input_from_json(load_json(path));
  if (!input.is_polynomial) throw std::invalid_argument("orthant dominance applies to polynomials");
  auto w = orthant_dominated(input.polynomial);
  json out = orthant_witness_to_json(w);
  out["summary"] = w.dominated ? "orthant-dominated" : "not orthant-dominated";
  emit(out, opt);
  return kExitOk;
}

Signomial embedded_case(const std::string& name) {
  auto rv = [](std::initializer_list<const char*> vals) {
    RatVec v;
    for (const char* s : vals) v.push_back(parse_rational(s));
    return v;
  };
  if (name == "ex6.1")
    return make_signomial(2,
                          {rv({"0", "0"}), rv({"2", "0"}), rv({"1", "0"}), rv({"0", "2"}),
                           rv({"0", "1"}), rv({"2", "2"})},
                          {0, 3, -4, 2, -2, 1});
  if (name == "ex6.2")
    return make_signomial(2,
                          {rv({"0", "0"}), rv({"2", "0"}), rv({"0", "2"}), rv({"2", "2"}),
                           rv({"1", "2"}), rv({"2", "1"})},
                          {0, 1, 1, 1.9, -2, -2});
  if (name == "ex6.3")
    return make_signomial(1, {rv({"0"}), rv({"1"}), rv({"2"}), rv({"3"}), rv({"4"})},
                          {1, -4, 7, -4, 1});
  if (name == "sec6.2a")
    return make_signomial(2,
                          {rv({"0", "0"}), rv({"1", "0"}), rv({"0", "1"}), rv({"0.30", "0.58"}),
                           rv({"0.21", "0.08"}), rv({"0.16", "0.54"})},
                          {33.94, 67.29, 1, 38.28, -57.75, -40.37});
  if (name == "sec6.2b")
    return make_signomial(2,
                          {rv({"0", "0"}), rv({"1", "0"}), rv({"0", "1"}), rv({"2", "2"}),
                           rv({"0.52", "0.15"}), rv({"1.30", "1.38"})},
                          {0.31, 0.85, 2.55, 0.65, -1.48, -1.73});
  throw std::invalid_argument("unknown case " + name);
}

int cmd_reproduce(const std::string& name, const Options& opt) {
  auto f = embedded_case(name);
  json out;
  out["case"] = name;
  bool all_ok = true;
  auto check = [&](const std::string& label, double got, double expect, double tol) {
    bool ok = std::fabs(got - expect) <= tol;
    all_ok = all_ok && ok;
    json cj;
    cj["label"] = label;
    cj["value"] = got;
    cj["expected"] = expect;
    cj["tolerance"] = tol;
    cj["pass"] = ok;
    out["checks"].push_back(cj);
    return ok;
  };

  if (name == "ex6.1") {
    auto b0 = sage_bound(f, 0, solver_opts(opt));
    auto b1 = sage_bound(f, 1, solver_opts(opt));
    check("level0", b0.value, -1.83333, 1e-4);
    check("level1", b1.value, -1.746505595, 1e-5);
    check("gap", std::fabs(b0.value - b1.value), 0.08682, 2e-4);
  } else if (name == "ex6.2") {
    auto b0 = sage_bound(f, 0, solver_opts(opt));
    bool inf_ok = b0.status == BoundStatus::Infeasible;
    json cj;
    cj["label"] = "level0_infeasible";
    cj["value"] = to_string(b0.status);
    cj["pass"] = inf_ok;
    out["checks"].push_back(cj);
    all_ok = all_ok && inf_ok;
    auto b1 = sage_bound(f, 1, solver_opts(opt));
    check("level1", b1.value, -0.122211863, 1e-5);
  } else if (name == "ex6.3") {
    auto b0 = sage_bound(f, 0, solver_opts(opt));
    auto b1 = sage_bound(f, 1, solver_opts(opt));
    check("level0", b0.value, -0.3333333, 1e-5);
    check("level1", b1.value, 0.2857720944, 1e-6);
  } else if (name == "sec6.2a") {
    auto b0 = sage_bound(f, 0, solver_opts(opt));
    auto b1 = sage_bound(f, 1, solver_opts(opt));
    check("level0", b0.value, -24.054866, 1e-3);
    check("level1", b1.value, -21.31651, 1e-3);
  } else {
    auto b0 = sage_bound(f, 0, solver_opts(opt));
    auto b1 = sage_bound(f, 1, solver_opts(opt));
    check("level0", b0.value, 0.00354263, 1e-4);
    check("level1", b1.value, 0.13793126, 1e-4);
  }
  out["pass"] = all_ok;
  emit(out, opt);
  return all_ok ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAGE nonnegativity certificates and bounds for signomials and sparse polynomials"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--tol", opt.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--mode", opt.mode, "validation mode: float|exact")->check(CLI::IsMember({"float", "exact"}));
  app.add_option("--format", opt.format, "output format: json|text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", opt.seed, "seed recorded in reports");

  std::string input, certfile, repro_case;

  auto* certify = app.add_subcommand("certify", "SAGE membership with certificate");
  certify->add_option("input", input)->required();

  auto* bound = app.add_subcommand("bound", "SAGE lower bound");
  bound->add_option("input", input)->required();
  bound->add_option("--level", opt.level, "hierarchy level (signomials)")->check(CLI::NonNegativeNumber);
  bound->add_option("--pmult", opt.pmult, "multiplier level (polynomials)")->check(CLI::NonNegativeNumber);
  bound->add_option("--q", opt.q, "constraint product level")->check(CLI::NonNegativeNumber);

  auto* decomp = app.add_subcommand("decompose", "cancellation-free and circuit decomposition");
  decomp->add_option("input", input)->required();

  auto* validate = app.add_subcommand("validate", "re-check a certificate file");
  validate->add_option("input", input)->required();
  validate->add_option("certificate", certfile)->required();

  auto* newton = app.add_subcommand("newton", "Newton polytope report and face partition");
  newton->add_option("input", input)->required();

  auto* orthant = app.add_subcommand("orthant", "orthant dominance test");
  orthant->add_option("input", input)->required();

  auto* repro = app.add_subcommand("reproduce", "rerun a published example");
  repro->add_option("--case", repro_case, "ex6.1|ex6.2|ex6.3|sec6.2a|sec6.2b")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) return cmd_certify(input, opt);
    if (bound->parsed()) return cmd_bound(input, opt);
    if (decomp->parsed()) return cmd_decompose(input, opt);
    if (validate->parsed()) return cmd_validate(input, certfile, opt);
    if (newton->parsed()) return cmd_newton(input, opt);
    if (orthant->parsed()) return cmd_orthant(input, opt);
    if (repro->parsed()) return cmd_reproduce(repro_case, opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitInput;
}
