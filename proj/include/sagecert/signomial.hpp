#pragma once

#include <sagecert/rational.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sagecert {

// n x m matrix of exact rational exponent vectors with pairwise distinct
// columns. Column j is the exponent vector of the j-th basis function.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;
  ExponentMatrix(int n, std::vector<RatVec> columns) : n_(n), cols_(std::move(columns)) {
    if (n_ < 1 || cols_.empty()) throw std::invalid_argument("exponent matrix needs n >= 1, m >= 1");
    for (const auto& c : cols_)
      if (static_cast<int>(c.size()) != n_) throw std::invalid_argument("exponent column dimension mismatch");
    for (size_t i = 0; i < cols_.size(); ++i)
      for (size_t j = i + 1; j < cols_.size(); ++j)
        if (cols_[i] == cols_[j]) throw std::invalid_argument("duplicate exponent columns");
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(cols_.size()); }
  const RatVec& col(int j) const { return cols_[j]; }
  const std::vector<RatVec>& columns() const { return cols_; }

  bool operator==(const ExponentMatrix& o) const { return n_ == o.n_ && cols_ == o.cols_; }

  // index of the zero column, -1 when absent
  int zero_column() const {
    for (int j = 0; j < m(); ++j) {
      bool z = true;
      for (const auto& v : cols_[j])
        if (v != 0) { z = false; break; }
      if (z) return j;
    }
    return -1;
  }

  bool all_nonneg_integer() const {
    for (const auto& c : cols_)
      for (const auto& v : c)
        if (v < 0 || v.get_den() != 1) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<RatVec> cols_;
};

inline bool lex_less(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// f(x) = sum_i c_i exp(a_i^T x). Zero coefficients are kept so index sets
// over the support stay well defined.
struct Signomial {
  ExponentMatrix exponents;
  std::vector<double> coeffs;

  int n() const { return exponents.n(); }
  int m() const { return exponents.m(); }
};

struct EvalResult {
  double value;
  bool overflow;
};

// Canonicalizes: duplicates merged by summing coefficients, columns sorted
// lexicographically, zero coefficients retained.
inline Signomial make_signomial(int n, std::vector<RatVec> columns, std::vector<double> coeffs) {
  if (columns.empty()) throw std::invalid_argument("make_signomial: no columns");
  if (columns.size() != coeffs.size()) throw std::invalid_argument("make_signomial: column/coefficient count mismatch");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw std::invalid_argument("make_signomial: non-finite coefficient");
  for (const auto& c : columns)
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("make_signomial: column dimension mismatch");

  std::vector<int> order(columns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lex_less(columns[a], columns[b]); });

  std::vector<RatVec> ucols;
  std::vector<double> ucoef;
  for (int idx : order) {
    if (!ucols.empty() && ucols.back() == columns[idx]) {
      ucoef.back() += coeffs[idx];
    } else {
      ucols.push_back(columns[idx]);
      ucoef.push_back(coeffs[idx]);
    }
  }
  return Signomial{ExponentMatrix(n, std::move(ucols)), std::move(ucoef)};
}

inline Signomial make_signomial(const ExponentMatrix& a, std::vector<double> coeffs) {
  return make_signomial(a.n(), a.columns(), std::move(coeffs));
}

inline EvalResult evaluate(const Signomial& f, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != f.n()) throw std::invalid_argument("evaluate: dimension mismatch");
  double acc = 0.0;
  bool overflow = false;
  for (int j = 0; j < f.m(); ++j) {
    double dot = 0.0;
    for (int i = 0; i < f.n(); ++i) dot += to_double(f.exponents.col(j)[i]) * x[i];
    double term = f.coeffs[j] * std::exp(dot);
    if (std::isinf(term)) overflow = true;
    acc += term;
  }
  if (std::isinf(acc)) overflow = true;
  return {acc, overflow};
}

inline Signomial multiply(const Signomial& f, const Signomial& g) {
  if (f.n() != g.n()) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<RatVec> cols;
  std::vector<double> coefs;
  cols.reserve(static_cast<size_t>(f.m()) * g.m());
  for (int i = 0; i < f.m(); ++i) {
    for (int j = 0; j < g.m(); ++j) {
      RatVec s(f.n());
      for (int d = 0; d < f.n(); ++d) s[d] = f.exponents.col(i)[d] + g.exponents.col(j)[d];
      cols.push_back(std::move(s));
      coefs.push_back(f.coeffs[i] * g.coeffs[j]);
    }
  }
  return make_signomial(f.n(), std::move(cols), std::move(coefs));
}

inline Signomial one_signomial(int n) {
  return Signomial{ExponentMatrix(n, {RatVec(n, Rat(0))}), {1.0}};
}

inline Signomial power(const Signomial& f, int ell) {
  if (ell < 0) throw std::invalid_argument("power: negative exponent");
  Signomial acc = one_signomial(f.n());
  for (int k = 0; k < ell; ++k) acc = multiply(acc, f);
  return acc;
}

// Ensures the zero exponent column is present (coefficient 0 when inserted).
inline Signomial with_zero_column(const Signomial& f) {
  if (f.exponents.zero_column() >= 0) return f;
  auto cols = f.exponents.columns();
  auto coeffs = f.coeffs;
  cols.push_back(RatVec(f.n(), Rat(0)));
  coeffs.push_back(0.0);
  return make_signomial(f.n(), std::move(cols), std::move(coeffs));
}

// Sparse polynomial p(x) = sum_i c_i x^{a_i}; exponents are nonnegative integers.
struct SparsePolynomial {
  ExponentMatrix exponents;
  std::vector<double> coeffs;

  int n() const { return exponents.n(); }
  int m() const { return exponents.m(); }
};

inline SparsePolynomial make_polynomial(int n, std::vector<RatVec> columns, std::vector<double> coeffs) {
  Signomial s = make_signomial(n, std::move(columns), std::move(coeffs));
  if (!s.exponents.all_nonneg_integer())
    throw std::invalid_argument("polynomial exponents must be nonnegative integers");
  return SparsePolynomial{std::move(s.exponents), std::move(s.coeffs)};
}

inline double evaluate(const SparsePolynomial& p, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != p.n()) throw std::invalid_argument("evaluate: dimension mismatch");
  double acc = 0.0;
  for (int j = 0; j < p.m(); ++j) {
    double term = p.coeffs[j];
    for (int i = 0; i < p.n(); ++i) {
      long e = p.exponents.col(j)[i].get_num().get_si();
      term *= std::pow(x[i], static_cast<double>(e));
    }
    acc += term;
  }
  return acc;
}

inline SparsePolynomial multiply(const SparsePolynomial& p, const SparsePolynomial& q) {
  Signomial s = multiply(Signomial{p.exponents, p.coeffs}, Signomial{q.exponents, q.coeffs});
  return SparsePolynomial{std::move(s.exponents), std::move(s.coeffs)};
}

inline SparsePolynomial power(const SparsePolynomial& p, int ell) {
  Signomial s = power(Signomial{p.exponents, p.coeffs}, ell);
  return SparsePolynomial{std::move(s.exponents), std::move(s.coeffs)};
}

}  // namespace sagecert
