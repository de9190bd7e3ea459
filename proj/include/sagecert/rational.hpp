#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sagecert {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline double to_double(const Rat& q) { return q.get_d(); }

// Parses "-12", "0.30", "3/10", "1.25e2" into an exact rational.
inline Rat parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Rat q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }

  bool neg = false;
  std::size_t i = 0;
  if (t[i] == '+' || t[i] == '-') {
    neg = (t[i] == '-');
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  long exp10 = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    char ch = t[i];
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + s);
      seen_dot = true;
    } else if (ch == 'e' || ch == 'E') {
      exp10 = std::stol(t.substr(i + 1));
      break;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else {
      throw std::invalid_argument("bad decimal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal: " + s);

  mpz_class num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  long shift = exp10 - frac_digits;
  mpz_class den = 1;
  if (shift >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    num *= p;
  } else {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
  }
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Nearest rational with denominator <= max_den, via continued fractions.
inline Rat rationalize(double x, unsigned long long max_den = 1000000000000ull) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize non-finite value");
  bool neg = x < 0;
  double a = std::fabs(x);
  // p/q convergents
  unsigned long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = a;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9.2e18) break;
    unsigned long long ai = static_cast<unsigned long long>(fl);
    if (q1 != 0 && ai > (max_den - q0) / q1) {
      // take best semiconvergent that respects the bound
      unsigned long long amax = (max_den - q0) / q1;
      if (amax > 0) {
        unsigned long long p2 = p0 + amax * p1, q2 = q0 + amax * q1;
        double e1 = std::fabs(a - double(p1) / double(q1));
        double e2 = std::fabs(a - double(p2) / double(q2));
        if (e2 < e1) { p1 = p2; q1 = q2; }
      }
      break;
    }
    unsigned long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
    if (double(p1) / double(q1) == a) break;
  }
  Rat q(mpz_class(std::to_string(p1)), mpz_class(std::to_string(q1 == 0 ? 1 : q1)));
  q.canonicalize();
  return neg ? Rat(-q) : q;
}

// Exact double -> rational (every finite double is rational).
inline Rat rat_from_double_exact(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite");
  Rat q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

// Dense rational matrix, row major.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rat& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Rat inv = m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) /= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

// Solves A x = b exactly; empty optional when inconsistent. For underdetermined
// systems free variables are set to zero.
inline std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
  RatMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  for (int p : pivots)
    if (p == a.cols()) return std::nullopt;
  RatVec x(a.cols(), Rat(0));
  for (size_t k = 0; k < pivots.size(); ++k) {
    // row k has leading 1 at pivots[k]
    x[pivots[k]] = aug(static_cast<int>(k), a.cols());
  }
  return x;
}

// Fraction-free (Bareiss) elimination on an integer copy of A, followed by
// back-substitution for an exact rational basis of the right nullspace.
// Basis vectors are returned as primitive integer vectors.
inline std::vector<RatVec> nullspace(const RatMat& a) {
  int rows = a.rows(), cols = a.cols();
  // clear denominators row-wise (row scaling keeps the kernel)
  std::vector<std::vector<mpz_class>> z(rows, std::vector<mpz_class>(cols));
  for (int i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den().get_mpz_t());
    for (int j = 0; j < cols; ++j) {
      Rat v = a(i, j) * Rat(l);
      z[i][j] = v.get_num();
    }
  }
  std::vector<int> pivot_col;
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (z[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(z[piv], z[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        mpz_class t = z[r][c] * z[i][j] - z[i][c] * z[r][j];
        mpz_divexact(z[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      z[i][c] = 0;
    }
    prev = z[r][c];
    pivot_col.push_back(c);
    ++r;
  }
  int nr = r;
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    RatVec v(cols, Rat(0));
    v[fc] = 1;
    for (int i = nr - 1; i >= 0; --i) {
      int pc = pivot_col[i];
      Rat s(0);
      for (int j = pc + 1; j < cols; ++j)
        if (v[j] != 0) s += Rat(z[i][j]) * v[j];
      v[pc] = -s / Rat(z[i][pc]);
    }
    // normalize to a primitive integer vector, first nonzero positive
    mpz_class l = 1;
    for (int j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v[j].get_den().get_mpz_t());
    mpz_class g = 0;
    for (int j = 0; j < cols; ++j) {
      Rat t = v[j] * Rat(l);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_num().get_mpz_t());
    }
    if (g == 0) g = 1;
    int sign = 0;
    for (int j = 0; j < cols; ++j) {
      v[j] = v[j] * Rat(l) / Rat(g);
      if (sign == 0 && v[j] != 0) sign = (v[j] > 0) ? 1 : -1;
    }
    if (sign < 0)
      for (auto& t : v) t = -t;
    basis.push_back(std::move(v));
  }
  return basis;
}

// true iff the points are affinely independent
inline bool affinely_independent(const std::vector<RatVec>& pts) {
  if (pts.empty()) return true;
  int n = static_cast<int>(pts[0].size());
  int m = static_cast<int>(pts.size());
  RatMat lifted(n + 1, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) lifted(i, j) = pts[j][i];
    lifted(n, j) = 1;
  }
  return rank(lifted) == m;
}

}  // namespace sagecert
