#pragma once

#include <sagecert/decompose.hpp>
#include <sagecert/sage_cones.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace sagecert {

enum class BoundStatus { Optimal, Infeasible, Unbounded, SolverLimit };

inline const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Optimal: return "Optimal";
    case BoundStatus::Infeasible: return "Infeasible";
    case BoundStatus::Unbounded: return "Unbounded";
    case BoundStatus::SolverLimit: return "SolverLimit";
  }
  return "?";
}

struct BoundResult {
  BoundStatus status = BoundStatus::SolverLimit;
  double value = std::numeric_limits<double>::quiet_NaN();
  double dual_value = std::numeric_limits<double>::quiet_NaN();
  int level = 0;
  std::optional<SageCertificate> certificate;
  std::optional<DualVector> dual;
  std::optional<Solution> farkas;
  std::optional<ConeProgram> farkas_program;  // program the certificate refutes
  std::optional<Signomial> target;            // the certified signomial at the optimum
  int solver_iters = 0;
  int exp_blocks = 0;
  bool inaccurate = false;  // solver met only its acceptable tolerance tier
};

namespace detail {

struct HierarchyTarget {
  Signomial product;        // Sig(A,1)^ell * f, canonical support
  std::vector<double> w;    // coefficients of Sig(A,1)^ell on that support
  int zero_col;
};

inline HierarchyTarget hierarchy_target(const Signomial& f_in, int ell) {
  Signomial f = with_zero_column(make_signomial(f_in.exponents, f_in.coeffs));
  Signomial ones{f.exponents, std::vector<double>(f.m(), 1.0)};
  Signomial p = power(ones, ell);
  Signomial t = multiply(p, f);
  HierarchyTarget ht;
  ht.w.assign(t.m(), 0.0);
  for (int j = 0; j < p.m(); ++j) {
    // locate p's column in t's support (t is sorted)
    const auto& col = p.exponents.col(j);
    int lo = 0, hi = t.m() - 1, at = -1;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      if (t.exponents.col(mid) == col) { at = mid; break; }
      if (lex_less(t.exponents.col(mid), col)) lo = mid + 1; else hi = mid - 1;
    }
    if (at < 0) throw std::logic_error("power support missing from product support");
    ht.w[at] = p.coeffs[j];
  }
  ht.product = std::move(t);
  ht.zero_col = ht.product.exponents.zero_column();
  return ht;
}

struct BoundProgram {
  ConeModel model;
  int gamma;
  std::vector<AgePartVars> parts;
  std::vector<int> part_index;  // column index per part
};

// sup gamma s.t. chat - gamma w in C_SAGE(A). AGE parts are created for every
// nonextremal column whose target coefficient can be negative for some gamma;
// zero cross-support is imposed only where the sign is gamma-independent.
inline BoundProgram build_bound_program(const ExponentMatrix& A, const std::vector<double>& chat,
                                        const std::vector<double>& w, const NewtonReport& rep) {
  int m = A.m();
  std::vector<bool> is_ext(m, false);
  for (int j : rep.extreme_indices) is_ext[j] = true;

  std::vector<bool> maybe_neg(m, false), certain_neg(m, false), dead(m, false);
  for (int j = 0; j < m; ++j) {
    maybe_neg[j] = chat[j] < 0 || w[j] > 0;
    certain_neg[j] = chat[j] < 0 && w[j] == 0.0;
    dead[j] = chat[j] == 0.0 && w[j] == 0.0;
  }

  BoundProgram bp;
  bp.gamma = bp.model.add_free();
  for (int i = 0; i < m; ++i) {
    if (!maybe_neg[i] || is_ext[i] || dead[i]) continue;
    std::vector<int> support;
    for (int j = 0; j < m; ++j) {
      if (j == i || dead[j]) continue;
      if (certain_neg[j]) continue;  // cross-support must vanish there
      support.push_back(j);
    }
    bp.parts.push_back(add_age_part(bp.model, A, i, support, -1));
    bp.part_index.push_back(i);
  }

  for (int j = 0; j < m; ++j) {
    if (dead[j]) continue;
    int row = bp.model.add_row(chat[j]);
    bp.model.coef(row, bp.gamma, w[j]);
    for (const auto& p : bp.parts) {
      if (p.index == j) bp.model.coef(row, p.v_own, 1.0);
      for (size_t t = 0; t < p.support.size(); ++t)
        if (p.support[t] == j) bp.model.coef(row, p.exps[t][2], 1.0 / kE);
    }
    if (!certain_neg[j]) {
      int res = bp.model.add_nonneg();
      bp.model.coef(row, res, 1.0);
    }
  }
  bp.model.objective(bp.gamma, -1.0);  // maximize gamma
  return bp;
}

inline SageCertificate extract_bound_certificate(const ExponentMatrix& A, const BoundProgram& bp,
                                                 const Solution& sol,
                                                 const std::vector<double>& target,
                                                 const SolverOptions& opts,
                                                 double* shortfall_out = nullptr) {
  int m = static_cast<int>(target.size());
  SageCertificate cert;
  double scale = scale_of(target);
  for (size_t pi = 0; pi < bp.parts.size(); ++pi) {
    const auto& p = bp.parts[pi];
    AgeCertificate ac;
    ac.k = p.index;
    ac.nu.assign(m, 0.0);
    ac.cvec.assign(m, 0.0);
    ac.cvec[p.index] = sol.x[p.v_own];
    for (size_t t = 0; t < p.support.size(); ++t) {
      ac.nu[p.support[t]] = std::max(0.0, sol.x[p.exps[t][1]]);
      ac.cvec[p.support[t]] = std::max(0.0, sol.x[p.exps[t][2]] / kE);
    }
    if (ac.cvec[p.index] >= -1e-9 * scale) continue;  // effectively nonnegative: fold into residual
    cert.parts.push_back(std::move(ac));
  }
  tidy_certificate(target, cert);
  double shortfall = finalize_parts(A, cert, opts);
  if (shortfall_out) *shortfall_out = shortfall;
  return cert;
}

}  // namespace detail

// Level-ell SAGE lower bound, primal form:
//   sup{ gamma : Sig(A,1)^ell (f - gamma) is SAGE }.
inline BoundResult sage_bound(const Signomial& f, int level = 0, const SolverOptions& opts = {}) {
  auto ht = detail::hierarchy_target(f, level);
  const auto& A = ht.product.exponents;
  auto rep = extreme_indices(A);
  auto bp = detail::build_bound_program(A, ht.product.coeffs, ht.w, rep);
  auto prog = bp.model.build();
  auto sol = solve(prog, opts);

  BoundResult out;
  out.level = level;
  out.solver_iters = sol.iters;
  out.inaccurate = sol.inaccurate;
  out.exp_blocks = prog.num_exp_blocks();
  switch (sol.status) {
    case SolveStatus::Optimal: {
      out.status = BoundStatus::Optimal;
      out.value = -sol.pobj;
      out.dual_value = -sol.dobj;
      std::vector<double> target = ht.product.coeffs;
      for (int j = 0; j < A.m(); ++j) target[j] -= out.value * ht.w[j];
      double shortfall = 0;
      auto raw = detail::extract_bound_certificate(A, bp, sol, target, opts, &shortfall);
      if (shortfall > 1e-7) out.inaccurate = true;
      // hierarchy solutions may spread mass over coordinates that end up
      // negative at the optimum; rewrite into the restricted shape
      try {
        out.certificate = cancellation_free(A, target, raw, opts);
      } catch (const std::invalid_argument&) {
        out.certificate = std::move(raw);  // low-accuracy solve: keep the raw shape
        out.inaccurate = true;
      }
      out.target = Signomial{A, target};
      break;
    }
    case SolveStatus::PrimalInfeasible:
      out.status = BoundStatus::Infeasible;
      out.value = -std::numeric_limits<double>::infinity();
      out.farkas = sol;
      out.farkas_program = std::move(prog);
      break;
    case SolveStatus::DualInfeasible:
      out.status = BoundStatus::Unbounded;
      out.value = std::numeric_limits<double>::infinity();
      out.farkas = sol;
      out.farkas_program = std::move(prog);
      break;
    default:
      out.status = BoundStatus::SolverLimit;
      break;
  }
  return out;
}

// Same bound through the conic dual:
//   inf{ chat^T v : w^T v = 1, v in C_SAGE(A)^dag }.
inline BoundResult sage_bound_dual(const Signomial& f, int level = 0, const SolverOptions& opts = {}) {
  auto ht = detail::hierarchy_target(f, level);
  const auto& A = ht.product.exponents;
  int m = A.m();
  auto rep = extreme_indices(A);

  ConeModel M;
  int v0 = M.add_nonneg(m);
  int norm = M.add_row(1.0);
  for (int j = 0; j < m; ++j) {
    M.coef(norm, v0 + j, ht.w[j]);
    M.objective(v0 + j, ht.product.coeffs[j]);
  }
  auto frag = append_dual_age_constraints(M, A, rep.nonextreme_indices, v0);
  auto prog = M.build();
  auto sol = solve(prog, opts);

  BoundResult out;
  out.level = level;
  out.solver_iters = sol.iters;
  out.inaccurate = sol.inaccurate;
  out.exp_blocks = prog.num_exp_blocks();
  switch (sol.status) {
    case SolveStatus::Optimal: {
      out.status = BoundStatus::Optimal;
      out.value = sol.pobj;
      out.dual_value = sol.dobj;
      DualVector dv;
      dv.v.assign(m, 0.0);
      for (int j = 0; j < m; ++j) dv.v[j] = std::max(0.0, sol.x[v0 + j]);
      for (int k : frag.active) {
        std::vector<double> mu(A.n());
        for (int d = 0; d < A.n(); ++d) mu[d] = sol.x[frag.mu_start.at(k) + d];
        dv.mus[k] = std::move(mu);
      }
      out.dual = std::move(dv);
      break;
    }
    case SolveStatus::DualInfeasible:
      out.status = BoundStatus::Infeasible;  // dual objective unbounded below: no finite bound
      out.value = -std::numeric_limits<double>::infinity();
      out.farkas = sol;
      break;
    case SolveStatus::PrimalInfeasible:
      out.status = BoundStatus::Unbounded;
      out.value = std::numeric_limits<double>::infinity();
      out.farkas = sol;
      break;
    default:
      out.status = BoundStatus::SolverLimit;
      break;
  }
  return out;
}

// Constrained relaxation in the dual form
//   inf{ c^T v : v in C_SAGE(A)^dag, v_1 = 1, G^T v >= 0 },
// where G's columns are the constraints together with their products of up
// to q factors, all over a shared canonical exponent set.
inline BoundResult constrained_bound(const Signomial& f, const std::vector<Signomial>& gs, int q = 1,
                                     const SolverOptions& opts = {}) {
  if (gs.empty()) return sage_bound_dual(f, 0, opts);
  for (const auto& g : gs)
    if (g.n() != f.n()) throw std::invalid_argument("constrained_bound: dimension mismatch");

  std::vector<Signomial> prods;
  std::vector<Signomial> frontier = gs;
  for (int d = 1; d <= std::max(1, q); ++d) {
    if (d == 1) {
      prods = gs;
      continue;
    }
    std::vector<Signomial> next;
    for (const auto& h : frontier)
      for (const auto& g : gs) next.push_back(multiply(h, g));
    frontier = next;
    prods.insert(prods.end(), next.begin(), next.end());
  }

  // shared support
  std::vector<RatVec> cols;
  auto add_cols = [&](const Signomial& s) {
    for (int j = 0; j < s.m(); ++j)
      if (std::find(cols.begin(), cols.end(), s.exponents.col(j)) == cols.end())
        cols.push_back(s.exponents.col(j));
  };
  Signomial f0 = with_zero_column(make_signomial(f.exponents, f.coeffs));
  add_cols(f0);
  for (const auto& h : prods) add_cols(h);
  std::sort(cols.begin(), cols.end(), lex_less);
  ExponentMatrix A(f.n(), cols);
  int m = A.m();
  auto embed = [&](const Signomial& s) {
    std::vector<double> c(m, 0.0);
    for (int j = 0; j < s.m(); ++j) {
      auto it = std::lower_bound(cols.begin(), cols.end(), s.exponents.col(j), lex_less);
      c[it - cols.begin()] = s.coeffs[j];
    }
    return c;
  };
  auto cf = embed(f0);
  int zc = A.zero_column();
  auto rep = extreme_indices(A);

  ConeModel M;
  int v0 = M.add_nonneg(m);
  int norm = M.add_row(1.0);
  M.coef(norm, v0 + zc, 1.0);
  for (int j = 0; j < m; ++j) M.objective(v0 + j, cf[j]);
  for (const auto& h : prods) {
    auto ch = embed(h);
    int row = M.add_row(0.0);
    for (int j = 0; j < m; ++j) M.coef(row, v0 + j, ch[j]);
    int sl = M.add_nonneg();
    M.coef(row, sl, -1.0);
  }
  append_dual_age_constraints(M, A, rep.nonextreme_indices, v0);
  auto prog = M.build();
  auto sol = solve(prog, opts);

  BoundResult out;
  out.level = q;
  out.solver_iters = sol.iters;
  out.inaccurate = sol.inaccurate;
  out.exp_blocks = prog.num_exp_blocks();
  switch (sol.status) {
    case SolveStatus::Optimal:
      out.status = BoundStatus::Optimal;
      out.value = sol.pobj;
      out.dual_value = sol.dobj;
      break;
    case SolveStatus::DualInfeasible:
      out.status = BoundStatus::Infeasible;
      out.value = -std::numeric_limits<double>::infinity();
      out.farkas = sol;
      break;
    case SolveStatus::PrimalInfeasible:
      out.status = BoundStatus::Unbounded;
      out.value = std::numeric_limits<double>::infinity();
      out.farkas = sol;
      break;
    default:
      out.status = BoundStatus::SolverLimit;
      break;
  }
  return out;
}

struct ExactnessReport {
  bool thm_simplicial_signs = false;   // simplicial hull vertices, nonextremal coefficients <= 0
  bool thm_partition_bound = false;    // verified partition with the 2/1 nonextremal-count rule
  bool cor_window = false;             // simplex Newton polytope with zero column, sign condition
  double window_c1 = 0;                // coefficient at the zero exponent
  bool thm_bounded_iff_finite = false; // origin in Newt(A) and the (1+eps) dilation condition
  NewtonReport newton;
  FacePartition partition;
};

namespace detail {

// exists eps > 0 with (1+eps) a_j in Newt(A)? exact LP with a cap on eps
inline bool dilation_possible(const ExponentMatrix& A, int j) {
  int n = A.n(), m = A.m();
  StandardLp lp(m + 2);  // lambda, eps, cap slack
  for (int d = 0; d < n; ++d) {
    RatVec row(m + 2, Rat(0));
    for (int c = 0; c < m; ++c) row[c] = A.col(c)[d];
    row[m] = -A.col(j)[d];
    lp.add_row(row, A.col(j)[d]);
  }
  RatVec ones(m + 2, Rat(0));
  for (int c = 0; c < m; ++c) ones[c] = 1;
  lp.add_row(ones, Rat(1));
  RatVec cap(m + 2, Rat(0));
  cap[m] = 1;
  cap[m + 1] = 1;
  lp.add_row(cap, Rat(1));
  lp.set_cost(m, Rat(-1));
  auto res = lp.solve();
  return res.status == LpStatus::Optimal && res.x[m] > 0;
}

}  // namespace detail

inline ExactnessReport exactness_report(const ExponentMatrix& A, const std::vector<double>& c) {
  if (static_cast<int>(c.size()) != A.m()) throw std::invalid_argument("exactness_report: size mismatch");
  ExactnessReport er;
  er.newton = extreme_indices(A);
  std::vector<bool> is_ext(A.m(), false);
  for (int j : er.newton.extreme_indices) is_ext[j] = true;

  er.thm_simplicial_signs = er.newton.is_simplicial_hull;
  for (int j : er.newton.nonextreme_indices)
    if (c[j] > 0) er.thm_simplicial_signs = false;

  er.partition = find_face_partition(A);
  er.thm_partition_bound = true;
  for (const auto& blk : er.partition.blocks) {
    int nonext = 0;
    std::vector<RatVec> verts;
    for (int j : blk) {
      if (is_ext[j]) verts.push_back(A.col(j));
      else ++nonext;
    }
    bool face_simplicial = verts.empty() ? true : affinely_independent(verts);
    if (nonext > (face_simplicial ? 2 : 1)) er.thm_partition_bound = false;
  }

  int zc = A.zero_column();
  {
    std::vector<RatVec> verts;
    for (int j : er.newton.extreme_indices) verts.push_back(A.col(j));
    bool simplex_hull = affinely_independent(verts);
    er.cor_window = simplex_hull && zc >= 0;
    if (zc >= 0) er.window_c1 = c[zc];
    if (er.cor_window)
      for (int j : er.newton.nonextreme_indices)
        if (j != zc && c[j] > 0) er.cor_window = false;
  }

  er.thm_bounded_iff_finite = er.newton.contains_origin;
  if (er.thm_bounded_iff_finite)
    for (int j : er.newton.nonextreme_indices)
      if (!detail::dilation_possible(A, j)) { er.thm_bounded_iff_finite = false; break; }
  return er;
}

// Literal sign conditions for exactness of the constrained relaxation on a
// simplicial support with vertex 0: at every nonextremal index the objective
// must be decreasing and each constraint increasing in the dual coordinate.
inline bool constrained_exactness_applies(const Signomial& f, const std::vector<Signomial>& gs) {
  Signomial f0 = with_zero_column(make_signomial(f.exponents, f.coeffs));
  auto rep = extreme_indices(f0.exponents);
  std::vector<RatVec> verts;
  for (int j : rep.extreme_indices) verts.push_back(f0.exponents.col(j));
  if (!affinely_independent(verts)) return false;
  int zc = f0.exponents.zero_column();
  bool zero_is_vertex = false;
  for (int j : rep.extreme_indices) zero_is_vertex |= j == zc;
  if (!zero_is_vertex) return false;
  for (int i : rep.nonextreme_indices) {
    if (f0.coeffs[i] > 0) return false;
    for (const auto& g : gs) {
      for (int j = 0; j < g.m(); ++j)
        if (g.exponents.col(j) == f0.exponents.col(i) && g.coeffs[j] < 0) return false;
    }
  }
  return true;
}

struct OracleResult {
  double value = std::numeric_limits<double>::infinity();
  bool at_infinity = false;
  std::vector<double> argmin;
};

namespace detail {

inline void gradient(const Signomial& f, const std::vector<double>& x, std::vector<double>& g) {
  g.assign(f.n(), 0.0);
  for (int j = 0; j < f.m(); ++j) {
    double dot = 0;
    for (int i = 0; i < f.n(); ++i) dot += to_double(f.exponents.col(j)[i]) * x[i];
    double t = f.coeffs[j] * std::exp(dot);
    for (int i = 0; i < f.n(); ++i) g[i] += t * to_double(f.exponents.col(j)[i]);
  }
}

inline double descend(const Signomial& f, std::vector<double>& x, int max_iter) {
  double fx = evaluate(f, x).value;
  if (!std::isfinite(fx)) return fx;
  std::vector<double> g, xn(x.size());
  double t = 1.0;  // step memory across iterations
  for (int it = 0; it < max_iter; ++it) {
    gradient(f, x, g);
    double gn2 = 0, gni = 0;
    for (double v : g) { gn2 += v * v; gni = std::max(gni, std::fabs(v)); }
    if (gni <= 1e-13 * (1.0 + std::fabs(fx))) break;
    t = std::min(t * 2.0, 1e8);
    bool moved = false;
    for (int bt = 0; bt < 80; ++bt) {
      for (size_t i = 0; i < x.size(); ++i) xn[i] = x[i] - t * g[i];
      double fn = evaluate(f, xn).value;
      if (std::isfinite(fn) && fn <= fx - 0.3 * t * gn2) {
        x = xn;
        fx = fn;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return fx;
}

}  // namespace detail

// Deterministic multistart gradient descent with backtracking from a fixed
// grid in [-10,10]^n, plus ray probes along coordinate and diagonal
// directions to spot an infimum at infinity. Constraints are handled by a
// penalty sweep. Meant as a slow, independent check of the conic bounds.
inline OracleResult reference_minimize(const Signomial& f, const std::vector<Signomial>& gs = {},
                                       int max_iter = 10000) {
  int n = f.n();
  if (n > 4) throw std::invalid_argument("reference_minimize: dimension too large");

  auto run_multistart = [&](const Signomial& obj) {
    OracleResult best;
    std::vector<double> grid = {-10, -5, 0, 5, 10};
    std::vector<int> idx(n, 0);
    for (;;) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = grid[idx[i]];
      double v = detail::descend(obj, x, max_iter);
      if (v < best.value) { best.value = v; best.argmin = x; }
      int d = 0;
      while (d < n && ++idx[d] == static_cast<int>(grid.size())) idx[d++] = 0;
      if (d == n) break;
    }
    // ray probes
    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < n; ++i) {
      std::vector<double> e(n, 0.0);
      e[i] = 1;
      dirs.push_back(e);
      e[i] = -1;
      dirs.push_back(e);
    }
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<double> e(n);
      for (int i = 0; i < n; ++i) e[i] = (mask >> i) & 1 ? 1.0 : -1.0;
      dirs.push_back(e);
    }
    double scale = 1.0 + std::fabs(best.value);
    for (const auto& d : dirs) {
      double v10 = 0, v20 = 0, v40 = 0;
      std::vector<double> x(n);
      auto at = [&](double t) {
        for (int i = 0; i < n; ++i) x[i] = t * d[i];
        return evaluate(obj, x).value;
      };
      v10 = at(10);
      v20 = at(20);
      v40 = at(40);
      if (std::isfinite(v40) && v40 <= v20 + 1e-12 * scale && v20 <= v10 + 1e-12 * scale &&
          v40 <= best.value + 1e-7 * scale) {
        if (v40 < best.value) {
          best.value = v40;
          for (int i = 0; i < n; ++i) x[i] = 40 * d[i];
          best.argmin = x;
        }
        if (v20 > v40) best.at_infinity = true;
      }
    }
    return best;
  };

  if (gs.empty()) return run_multistart(f);

  // penalty sweep: minimize f + rho * sum min(0, g)^2 by direct multistart
  // on a merged signomial is not expressible, so descend on the penalized
  // objective numerically.
  OracleResult best;
  std::vector<double> grid = {-10, -5, 0, 5, 10};
  auto feasible = [&](const std::vector<double>& x) {
    for (const auto& g : gs)
      if (evaluate(g, x).value < -1e-6) return false;
    return true;
  };
  for (double rho : {10.0, 1e2, 1e3, 1e4, 1e5, 1e6, 1e8, 1e10}) {
    std::vector<int> idx(n, 0);
    for (;;) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = grid[idx[i]];
      // projected-gradient style descent on the penalized objective
      double fx = 0;
      auto peval = [&](const std::vector<double>& p) {
        double v = evaluate(f, p).value;
        for (const auto& g : gs) {
          double gv = evaluate(g, p).value;
          if (gv < 0) v += rho * gv * gv;
        }
        return v;
      };
      fx = peval(x);
      std::vector<double> xn(n), gr(n);
      for (int it = 0; it < max_iter && std::isfinite(fx); ++it) {
        // numerical gradient of the penalized objective
        double h = 1e-6;
        for (int i = 0; i < n; ++i) {
          auto xp = x, xm = x;
          xp[i] += h;
          xm[i] -= h;
          gr[i] = (peval(xp) - peval(xm)) / (2 * h);
        }
        double gn2 = 0, gni = 0;
        for (double v : gr) { gn2 += v * v; gni = std::max(gni, std::fabs(v)); }
        if (gni <= 1e-10 * (1 + std::fabs(fx))) break;
        double t = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
          for (int i = 0; i < n; ++i) xn[i] = x[i] - t * gr[i];
          double fn = peval(xn);
          if (std::isfinite(fn) && fn <= fx - 0.3 * t * gn2) {
            x = xn;
            fx = fn;
            moved = true;
            break;
          }
          t *= 0.5;
        }
        if (!moved) break;
      }
      if (feasible(x)) {
        double v = evaluate(f, x).value;
        if (v < best.value) { best.value = v; best.argmin = x; }
      }
      int d = 0;
      while (d < n && ++idx[d] == static_cast<int>(grid.size())) idx[d++] = 0;
      if (d == n) break;
    }
  }
  return best;
}

}  // namespace sagecert
