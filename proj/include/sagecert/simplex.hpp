#pragma once

#include <sagecert/rational.hpp>

#include <vector>

namespace sagecert {

// Exact LP in standard form: min c^T x  s.t.  A x = b, x >= 0.
// Dense two-phase primal simplex with Bland's rule over rationals.
// Problem sizes here are small (tens of rows/columns), so exactness wins
// over speed.

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status;
  Rat value;
  RatVec x;
};

class StandardLp {
 public:
  StandardLp(int nvars) : nvars_(nvars), c_(nvars, Rat(0)) {}

  int add_row(const RatVec& coeffs, const Rat& rhs) {
    rows_.push_back(coeffs);
    rhs_.push_back(rhs);
    return static_cast<int>(rows_.size()) - 1;
  }
  void set_cost(int var, const Rat& v) { c_[var] = v; }
  int nvars() const { return nvars_; }

  LpResult solve() const;

 private:
  int nvars_;
  RatVec c_;
  std::vector<RatVec> rows_;
  RatVec rhs_;
};

namespace detail {

struct Tableau {
  int m, n;  // constraint rows, structural + artificial columns
  std::vector<RatVec> a;
  RatVec b;
  std::vector<int> basis;

  void pivot(int r, int c) {
    Rat inv = a[r][c];
    for (int j = 0; j < n; ++j) a[r][j] /= inv;
    b[r] /= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    basis[r] = c;
  }
};

// Bland's rule simplex on a feasible tableau. allow[j] marks columns that may
// enter. Returns false when unbounded.
inline bool simplex_iterate(Tableau& t, const RatVec& cost, const std::vector<bool>& allow) {
  for (;;) {
    // reduced costs
    RatVec y(t.m);
    // cost of basis
    int enter = -1;
    for (int j = 0; j < t.n; ++j) {
      if (!allow[j]) continue;
      bool basic = false;
      for (int i = 0; i < t.m; ++i)
        if (t.basis[i] == j) { basic = true; break; }
      if (basic) continue;
      Rat rc = cost[j];
      for (int i = 0; i < t.m; ++i)
        if (t.a[i][j] != 0) rc -= cost[t.basis[i]] * t.a[i][j];
      if (rc < 0) { enter = j; break; }  // Bland: first improving index
    }
    if (enter < 0) return true;
    int leave = -1;
    Rat best;
    for (int i = 0; i < t.m; ++i) {
      if (t.a[i][enter] > 0) {
        Rat ratio = t.b[i] / t.a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && t.basis[i] < t.basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
  }
}

}  // namespace detail

inline LpResult StandardLp::solve() const {
  int m = static_cast<int>(rows_.size());
  int n = nvars_;
  detail::Tableau t;
  t.m = m;
  t.n = n + m;  // artificials appended
  t.a.assign(m, RatVec(t.n, Rat(0)));
  t.b.resize(m);
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    bool flip = rhs_[i] < 0;
    for (int j = 0; j < n; ++j) t.a[i][j] = flip ? Rat(-rows_[i][j]) : rows_[i][j];
    t.b[i] = flip ? Rat(-rhs_[i]) : rhs_[i];
    t.a[i][n + i] = 1;
    t.basis[i] = n + i;
  }

  // phase 1
  RatVec cost1(t.n, Rat(0));
  for (int i = 0; i < m; ++i) cost1[n + i] = 1;
  std::vector<bool> allow(t.n, true);
  if (!detail::simplex_iterate(t, cost1, allow)) return {LpStatus::Infeasible, Rat(0), {}};
  Rat p1(0);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n) p1 += t.b[i];
  if (p1 != 0) return {LpStatus::Infeasible, Rat(0), {}};

  // drive artificials out of the basis where possible
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    int c = -1;
    for (int j = 0; j < n; ++j)
      if (t.a[i][j] != 0) { c = j; break; }
    if (c >= 0) t.pivot(i, c);
    // else: redundant row, artificial stays basic at zero
  }

  // phase 2: artificials may not re-enter
  RatVec cost2(t.n, Rat(0));
  for (int j = 0; j < n; ++j) cost2[j] = c_[j];
  for (int j = n; j < t.n; ++j) allow[j] = false;
  if (!detail::simplex_iterate(t, cost2, allow)) return {LpStatus::Unbounded, Rat(0), {}};

  RatVec x(n, Rat(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) x[t.basis[i]] = t.b[i];
  Rat val(0);
  for (int j = 0; j < n; ++j) val += c_[j] * x[j];
  return {LpStatus::Optimal, val, x};
}

// exists x >= 0 with A x = b?
inline bool lp_feasible(const std::vector<RatVec>& rows, const RatVec& rhs, int nvars) {
  StandardLp lp(nvars);
  for (size_t i = 0; i < rows.size(); ++i) lp.add_row(rows[i], rhs[i]);
  return lp.solve().status == LpStatus::Optimal;
}

}  // namespace sagecert
