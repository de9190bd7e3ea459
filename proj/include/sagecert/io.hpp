#pragma once

#include <sagecert/decompose.hpp>
#include <sagecert/optimize.hpp>
#include <sagecert/polyform.hpp>

#include <json.hpp>

#include <charconv>
#include <string>

namespace sagecert {

using nlohmann::json;

// Exact rational to string: decimal when the denominator divides a power of
// ten, p/q otherwise.
inline std::string rat_to_string(const Rat& q) {
  mpz_class den = q.get_den();
  if (den == 1) return q.get_num().get_str();
  mpz_class d = den;
  int twos = 0, fives = 0;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) { d /= 2; ++twos; }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) { d /= 5; ++fives; }
  if (d != 1) return q.get_num().get_str() + "/" + q.get_den().get_str();
  int k = std::max(twos, fives);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, k);
  mpz_class scaled = q.get_num() * (p10 / den);
  bool neg = scaled < 0;
  std::string digits = (neg ? mpz_class(-scaled) : scaled).get_str();
  while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
  digits.insert(digits.end() - k, '.');
  return (neg ? "-" : "") + digits;
}

namespace detail {

inline std::string shortest_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline Rat exponent_entry_from_json(const json& e) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  if (e.is_number_integer()) return Rat(e.get<long>());
  if (e.is_number_float()) {
    // accepted only when the shortest decimal form round-trips exactly
    double d = e.get<double>();
    Rat q = parse_rational(shortest_double(d));
    if (to_double(q) != d) throw std::invalid_argument("exponent entry does not round-trip a decimal literal");
    return q;
  }
  throw std::invalid_argument("exponent entry must be a string or number");
}

}  // namespace detail

inline json signomial_to_json(const Signomial& f, const std::string& kind = "signomial") {
  json j;
  j["kind"] = kind;
  j["n"] = f.n();
  json cols = json::array();
  for (int c = 0; c < f.m(); ++c) {
    json col = json::array();
    for (int d = 0; d < f.n(); ++d) col.push_back(rat_to_string(f.exponents.col(c)[d]));
    cols.push_back(col);
  }
  j["exponents"] = cols;
  j["coeffs"] = f.coeffs;
  return j;
}

inline json polynomial_to_json(const SparsePolynomial& p) {
  return signomial_to_json(Signomial{p.exponents, p.coeffs}, "polynomial");
}

struct ParsedInput {
  bool is_polynomial = false;
  Signomial signomial;             // always populated (canonical)
  SparsePolynomial polynomial;     // populated when is_polynomial
};

inline ParsedInput input_from_json(const json& j) {
  if (!j.contains("kind") || !j.contains("n") || !j.contains("exponents") || !j.contains("coeffs"))
    throw std::invalid_argument("input needs kind, n, exponents, coeffs");
  std::string kind = j["kind"].get<std::string>();
  int n = j["n"].get<int>();
  std::vector<RatVec> cols;
  for (const auto& col : j["exponents"]) {
    RatVec c;
    for (const auto& e : col) c.push_back(detail::exponent_entry_from_json(e));
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("exponent column has the wrong dimension");
    cols.push_back(std::move(c));
  }
  std::vector<double> coeffs = j["coeffs"].get<std::vector<double>>();
  ParsedInput out;
  if (kind == "polynomial") {
    out.is_polynomial = true;
    out.polynomial = make_polynomial(n, cols, coeffs);
    out.signomial = Signomial{out.polynomial.exponents, out.polynomial.coeffs};
  } else if (kind == "signomial") {
    out.signomial = make_signomial(n, cols, coeffs);
  } else {
    throw std::invalid_argument("kind must be signomial or polynomial");
  }
  return out;
}

inline json certificate_to_json(const SageCertificate& cert) {
  json j;
  json parts = json::array();
  for (const auto& p : cert.parts) {
    json pj;
    pj["k"] = p.k;
    pj["nu"] = p.nu;
    pj["c"] = p.cvec;
    parts.push_back(pj);
  }
  j["parts"] = parts;
  j["residual"] = cert.residual;
  return j;
}

inline SageCertificate certificate_from_json(const json& j) {
  SageCertificate cert;
  for (const auto& pj : j.at("parts")) {
    AgeCertificate p;
    p.k = pj.at("k").get<int>();
    for (const auto& e : pj.at("nu")) {
      if (e.is_string())
        p.nu.push_back(to_double(parse_rational(e.get<std::string>())));
      else
        p.nu.push_back(e.get<double>());
    }
    p.cvec = pj.at("c").get<std::vector<double>>();
    cert.parts.push_back(std::move(p));
  }
  cert.residual = j.at("residual").get<std::vector<double>>();
  return cert;
}

inline json circuit_decomposition_to_json(const CircuitDecomposition& cd) {
  json j;
  json parts = json::array();
  for (const auto& p : cd.parts) {
    json pj;
    pj["k"] = p.cert.k;
    pj["nu"] = p.cert.nu;
    pj["c"] = p.cert.cvec;
    pj["circuit"] = !p.singleton;
    pj["theta"] = p.theta;
    parts.push_back(pj);
  }
  j["parts"] = parts;
  j["remainder"] = cd.remainder;
  return j;
}

inline json bound_result_to_json(const BoundResult& b) {
  json j;
  if (std::isinf(b.value))
    j["value"] = b.value > 0 ? "inf" : "-inf";
  else
    j["value"] = b.value;
  j["status"] = to_string(b.status);
  j["level"] = b.level;
  if (!std::isnan(b.dual_value)) j["dual_value"] = b.dual_value;
  j["solver_iters"] = b.solver_iters;
  if (b.inaccurate) j["inaccurate"] = true;
  if (b.certificate) j["certificate"] = certificate_to_json(*b.certificate);
  return j;
}

inline json newton_report_to_json(const NewtonReport& rep, const FacePartition& fp) {
  json j;
  j["extreme_indices"] = rep.extreme_indices;
  j["nonextreme_indices"] = rep.nonextreme_indices;
  j["is_simplicial_hull"] = rep.is_simplicial_hull;
  j["contains_origin"] = rep.contains_origin;
  json blocks = json::array();
  for (size_t b = 0; b < fp.blocks.size(); ++b) {
    json bj;
    bj["columns"] = fp.blocks[b];
    if (fp.witnesses[b]) {
      json s = json::array();
      for (const auto& v : fp.witnesses[b]->s) s.push_back(rat_to_string(v));
      bj["witness_s"] = s;
      bj["witness_r"] = rat_to_string(fp.witnesses[b]->r);
    }
    blocks.push_back(bj);
  }
  j["partition"] = blocks;
  return j;
}

inline json orthant_witness_to_json(const OrthantWitness& w) {
  json j;
  j["dominated"] = w.dominated;
  j["b"] = w.b;
  if (w.dominated) {
    j["s"] = w.s;
    json x0 = json::array();
    for (uint8_t bit : w.s) x0.push_back(bit ? -1 : 1);
    j["x0"] = x0;
  } else {
    j["inconsistent_terms"] = w.inconsistent_terms;
  }
  return j;
}

}  // namespace sagecert
