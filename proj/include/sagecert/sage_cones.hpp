#pragma once

#include <sagecert/highprec.hpp>
#include <sagecert/newton.hpp>
#include <sagecert/signomial.hpp>
#include <sagecert/solver.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sagecert {

// Incremental conic model: variables in block order, equality rows as triplets.
class ConeModel {
 public:
  int add_free(int k = 1) { return add_block(BlockKind::Free, k); }
  int add_nonneg(int k = 1) { return add_block(BlockKind::Nonneg, k); }
  std::array<int, 3> add_exp() {
    int u = add_block(BlockKind::Exp, 3);
    return {u, u + 1, u + 2};
  }
  int add_row(double rhs) {
    rhs_.push_back(rhs);
    return static_cast<int>(rhs_.size()) - 1;
  }
  void coef(int row, int var, double v) {
    if (v != 0.0) entries_.push_back({row, var, v});
  }
  void objective(int var, double v) { obj_[var] = v; }
  int nvar() const { return nvar_; }

  ConeProgram build() const {
    ConeProgram p;
    p.nvar = nvar_;
    p.nrow = static_cast<int>(rhs_.size());
    p.obj.assign(nvar_, 0.0);
    for (const auto& [var, v] : obj_) p.obj[var] = v;
    p.entries = entries_;
    p.rhs = rhs_;
    p.blocks = blocks_;
    p.validate();
    return p;
  }

 private:
  int add_block(BlockKind kind, int k) {
    blocks_.push_back({kind, k});
    int start = nvar_;
    nvar_ += k;
    return start;
  }
  int nvar_ = 0;
  std::vector<ConeBlock> blocks_;
  std::vector<TripletEntry> entries_;
  std::vector<double> rhs_;
  std::map<int, double> obj_;
};

struct AgeCertificate {
  int k = -1;
  std::vector<double> nu;    // length m, entry k is zero
  std::vector<double> cvec;  // length m
};

struct SageCertificate {
  std::vector<AgeCertificate> parts;
  std::vector<double> residual;
};

struct DualVector {
  std::vector<double> v;
  std::map<int, std::vector<double>> mus;
};

// Membership outcome; on refusal `margin` is the least feasibility slack
// (positive) and `evidence` may carry a Farkas certificate of the strict
// feasibility program.
struct MembershipResult {
  bool member = false;
  double margin = 0.0;
  std::optional<SageCertificate> certificate;
  std::optional<Solution> evidence;
  std::string note;
  int solver_iters = 0;
  int exp_blocks = 0;
};

inline constexpr double kMemberTol = 1e-8;

namespace detail {

inline double scale_of(const std::vector<double>& c) {
  double s = 1.0;
  for (double v : c) s = std::max(s, std::fabs(v));
  return s;
}

constexpr double kE = 2.718281828459045235360287;

// One AGE block: entropy epigraph per support column, kernel equalities,
// budget row tying sum of epigraphs to the free own-coordinate variable.
struct AgePartVars {
  int index;
  int v_own;
  std::vector<int> support;
  std::vector<std::array<int, 3>> exps;  // (p, q=nu_j, r=e*c_j)
};

// Cleans a solver nu: drops noise-level entries (and entries whose budget
// coefficient vanished, which would send the entropy to infinity), then
// projects the rest onto the exact kernel of (A_{minus k} - a_k 1^T) so the
// certificate satisfies the kernel equations to roundoff rather than solver
// tolerance.
inline std::vector<double> kernel_project_nu(const ExponentMatrix& A, int k,
                                             const std::vector<double>& nu,
                                             const std::vector<double>* budgets = nullptr) {
  int m = A.m();
  std::vector<double> out(m, 0.0);
  double numax = 0;
  for (int j = 0; j < m; ++j)
    if (j != k) numax = std::max(numax, nu[j]);
  if (numax <= 0) return out;
  double bscale = budgets ? scale_of(*budgets) : 0.0;
  std::vector<int> supp;
  for (int j = 0; j < m; ++j) {
    if (j == k || nu[j] <= 1e-7 * numax) continue;
    if (budgets && (*budgets)[j] <= 1e-11 * bscale) continue;
    supp.push_back(j);
  }
  if (supp.empty()) return out;

  std::vector<RatVec> cols;
  for (int j : supp) cols.push_back(A.col(j));
  cols.push_back(A.col(k));
  ExponentMatrix sub(A.n(), cols);
  auto basis = kernel_basis(sub, static_cast<int>(supp.size()));
  int d = static_cast<int>(supp.size());
  int r = static_cast<int>(basis.size());
  if (r == 0) return out;
  RatVec nu_rat(d);
  for (int t = 0; t < d; ++t) nu_rat[t] = rationalize(nu[supp[t]]);
  RatMat gram(r, r);
  RatVec rhs(r, Rat(0));
  for (int i2 = 0; i2 < r; ++i2) {
    for (int j2 = 0; j2 < r; ++j2) {
      Rat acc(0);
      for (int t = 0; t < d; ++t) acc += basis[i2][t] * basis[j2][t];
      gram(i2, j2) = acc;
    }
    for (int t = 0; t < d; ++t) rhs[i2] += basis[i2][t] * nu_rat[t];
  }
  auto w = solve_linear(gram, rhs);
  if (!w) return out;
  bool ok = true;
  RatVec proj(d, Rat(0));
  for (int t = 0; t < d; ++t) {
    for (int i2 = 0; i2 < r; ++i2) proj[t] += basis[i2][t] * (*w)[i2];
    if (proj[t] < 0) ok = false;
  }
  if (!ok) {  // keep the raw solver values rather than clip into the cone wall
    for (int j = 0; j < m; ++j) out[j] = j == k ? 0.0 : std::max(0.0, nu[j]);
    return out;
  }
  for (int t = 0; t < d; ++t) out[supp[t]] = to_double(proj[t]);
  return out;
}

// Forces parts + residual to reproduce the target exactly in floating point:
// own-index coordinates are pinned, positive coordinates are scaled when the
// solver overshoots, everything else lands in the residual.
inline void tidy_certificate(const std::vector<double>& c, SageCertificate& cert) {
  int m = static_cast<int>(c.size());
  cert.residual.assign(m, 0.0);
  for (int j = 0; j < m; ++j) {
    int own = -1;
    double total = 0;
    for (size_t pi = 0; pi < cert.parts.size(); ++pi) {
      if (cert.parts[pi].k == j) own = static_cast<int>(pi);
      else total += cert.parts[pi].cvec[j];
    }
    if (own >= 0) {
      cert.parts[own].cvec[j] = c[j] - total;
    } else if (total > c[j] && total > 0) {
      double f = c[j] / total;
      double acc = 0;
      for (auto& p : cert.parts) {
        p.cvec[j] = std::max(0.0, p.cvec[j] * f);
        acc += p.cvec[j];
      }
      cert.residual[j] = std::max(0.0, c[j] - acc);
    } else {
      cert.residual[j] = std::max(0.0, c[j] - total);
    }
  }
}

inline AgePartVars add_age_part(ConeModel& M, const ExponentMatrix& A, int i,
                                const std::vector<int>& support, int s_var) {
  AgePartVars part;
  part.index = i;
  part.v_own = M.add_free();
  part.support = support;
  int n = A.n();
  for (size_t t = 0; t < support.size(); ++t) part.exps.push_back(M.add_exp());
  // kernel rows: sum_j nu_j (a_j - a_i) = 0
  for (int d = 0; d < n; ++d) {
    int row = M.add_row(0.0);
    for (size_t t = 0; t < support.size(); ++t) {
      double coef = to_double(A.col(support[t])[d] - A.col(i)[d]);
      M.coef(row, part.exps[t][1], coef);
    }
  }
  // budget: v_own + s + sum_j p_j - slack = 0
  int row = M.add_row(0.0);
  M.coef(row, part.v_own, 1.0);
  if (s_var >= 0) M.coef(row, s_var, 1.0);
  for (const auto& e : part.exps) M.coef(row, e[0], 1.0);
  int sl = M.add_nonneg();
  M.coef(row, sl, -1.0);
  return part;
}

}  // namespace detail

enum class AgeMode { Decide, Certify };

// Membership of c in C_AGE(A, k): nu >= 0 in ker(A_{minus k} - a_k 1^T) with
// D(nu, e c_{minus k}) <= c_k. Compiled as a least-slack feasibility program;
// extreme a_k short-circuits to a sign test. Decide mode skips the kernel
// projection that polishes the certificate.
inline MembershipResult age_membership(const ExponentMatrix& A, int k, const std::vector<double>& c,
                                       AgeMode mode = AgeMode::Certify,
                                       const SolverOptions& opts = {}) {
  int m = A.m();
  if (k < 0 || k >= m || static_cast<int>(c.size()) != m)
    throw std::invalid_argument("age_membership: bad index or size");
  for (int j = 0; j < m; ++j)
    if (j != k && c[j] < 0) throw std::invalid_argument("age_membership: c off the distinguished index must be nonnegative");

  double scale = detail::scale_of(c);
  MembershipResult res;
  auto trivial = [&](const char* note) {
    res.member = c[k] >= -kMemberTol * scale;
    res.margin = -c[k];
    res.note = note;
    if (res.member) {
      AgeCertificate cert;
      cert.k = k;
      cert.nu.assign(m, 0.0);
      cert.cvec = c;
      res.certificate = SageCertificate{{cert}, std::vector<double>(m, 0.0)};
    }
    return res;
  };

  if (column_is_extreme(A, k)) return trivial("extreme index: C_AGE = nonnegative orthant");

  std::vector<int> support;
  for (int j = 0; j < m; ++j)
    if (j != k && c[j] > 0) support.push_back(j);
  if (support.empty()) return trivial("empty positive support forces nu = 0");

  ConeModel M;
  int s = M.add_free();
  auto part = detail::add_age_part(M, A, k, support, s);
  // own coordinate pinned to c_k, support coordinates pinned via r = e c_j
  {
    int row = M.add_row(c[k]);
    M.coef(row, part.v_own, 1.0);
  }
  for (size_t t = 0; t < support.size(); ++t) {
    int row = M.add_row(detail::kE * c[support[t]]);
    M.coef(row, part.exps[t][2], 1.0);
  }
  M.objective(s, 1.0);
  auto prog = M.build();
  auto sol = solve(prog, opts);
  res.solver_iters = sol.iters;
  res.exp_blocks = prog.num_exp_blocks();
  if (sol.status != SolveStatus::Optimal) {
    res.member = false;
    res.margin = std::numeric_limits<double>::infinity();
    res.evidence = sol;
    res.note = std::string("margin program: ") + to_string(sol.status);
    return res;
  }
  res.margin = sol.pobj;
  res.member = sol.pobj <= kMemberTol * scale;
  if (res.member || sol.pobj <= 1e-6 * scale) {
    // near-miss margins still get their best nu reported; the member flag
    // stays strict
    AgeCertificate cert;
    cert.k = k;
    cert.nu.assign(m, 0.0);
    cert.cvec = c;
    for (size_t t = 0; t < support.size(); ++t) cert.nu[support[t]] = std::max(0.0, sol.x[part.exps[t][1]]);
    if (mode == AgeMode::Certify) cert.nu = detail::kernel_project_nu(A, k, cert.nu);
    res.certificate = SageCertificate{{cert}, std::vector<double>(m, 0.0)};
  }
  return res;
}

namespace detail {

// Polishes every part after tidying: nu is masked at dead budgets and
// reprojected onto the kernel; when the stored nu no longer certifies the
// entropy inequality (targets grazing zero at the optimum can do this), a
// fresh nu is derived from scratch. Returns the worst relative entropy
// shortfall that survives (0 when every part certifies cleanly).
inline double finalize_parts(const ExponentMatrix& A, SageCertificate& cert,
                             const SolverOptions& opts) {
  double worst = 0.0;
  for (auto& part : cert.parts) {
    part.nu = kernel_project_nu(A, part.k, part.nu, &part.cvec);
    double scale = scale_of(part.cvec);
    double d = relent_shifted_double(part.nu, part.cvec);
    if (d <= part.cvec[part.k] + 1e-8 * scale) continue;
    auto clipped = part.cvec;
    for (int j = 0; j < static_cast<int>(clipped.size()); ++j)
      if (j != part.k && clipped[j] < 0) clipped[j] = 0;
    auto mem = age_membership(A, part.k, clipped, AgeMode::Certify, opts);
    if (mem.certificate) {
      part.nu = mem.certificate->parts[0].nu;
      d = relent_shifted_double(part.nu, part.cvec);
    }
    worst = std::max(worst, (d - part.cvec[part.k]) / scale);
  }
  return worst;
}

}  // namespace detail

// Joint SAGE membership with the support restriction: one AGE part per
// negative-coefficient index, zero cross-support among them.
inline MembershipResult sage_membership(const ExponentMatrix& A, const std::vector<double>& c,
                                        const SolverOptions& opts = {}) {
  int m = A.m();
  if (static_cast<int>(c.size()) != m) throw std::invalid_argument("sage_membership: size mismatch");
  double scale = detail::scale_of(c);

  MembershipResult res;
  std::vector<int> neg;
  for (int j = 0; j < m; ++j)
    if (c[j] < 0) neg.push_back(j);
  if (neg.empty()) {
    res.member = true;
    res.margin = 0.0;
    res.certificate = SageCertificate{{}, c};
    res.note = "nonnegative coefficients";
    return res;
  }

  auto rep = extreme_indices(A);
  std::vector<bool> is_ext(m, false);
  for (int j : rep.extreme_indices) is_ext[j] = true;
  std::vector<bool> is_neg(m, false);
  for (int j : neg) is_neg[j] = true;

  std::vector<int> pos;
  for (int j = 0; j < m; ++j)
    if (!is_neg[j] && c[j] > 0) pos.push_back(j);

  ConeModel M;
  int s = M.add_free();
  std::vector<detail::AgePartVars> parts;
  for (int i : neg)
    if (!is_ext[i]) parts.push_back(detail::add_age_part(M, A, i, pos, s));

  // coordinate sums
  std::map<int, int> neg_row;
  for (int j : neg) neg_row[j] = M.add_row(c[j]);
  for (const auto& p : parts) M.coef(neg_row[p.index], p.v_own, 1.0);
  for (size_t t = 0; t < pos.size(); ++t) {
    int row = M.add_row(c[pos[t]]);
    for (const auto& p : parts) M.coef(row, p.exps[t][2], 1.0 / detail::kE);
    int r = M.add_nonneg();
    M.coef(row, r, 1.0);
  }
  M.objective(s, 1.0);
  auto prog = M.build();
  auto sol = solve(prog, opts);
  res.solver_iters = sol.iters;
  res.exp_blocks = prog.num_exp_blocks();

  if (sol.status == SolveStatus::PrimalInfeasible) {
    res.member = false;
    res.margin = std::numeric_limits<double>::infinity();
    res.evidence = sol;
    res.note = "negative coefficient on an extreme exponent";
    return res;
  }
  if (sol.status != SolveStatus::Optimal) {
    res.member = false;
    res.margin = std::numeric_limits<double>::infinity();
    res.evidence = sol;
    res.note = std::string("margin program: ") + to_string(sol.status);
    return res;
  }
  res.margin = sol.pobj;
  res.member = sol.pobj <= kMemberTol * scale;
  if (res.member) {
    SageCertificate cert;
    for (const auto& p : parts) {
      AgeCertificate ac;
      ac.k = p.index;
      ac.nu.assign(m, 0.0);
      ac.cvec.assign(m, 0.0);
      ac.cvec[p.index] = sol.x[p.v_own];
      for (size_t t = 0; t < pos.size(); ++t) {
        ac.nu[pos[t]] = std::max(0.0, sol.x[p.exps[t][1]]);
        ac.cvec[pos[t]] = std::max(0.0, sol.x[p.exps[t][2]] / detail::kE);
      }
      cert.parts.push_back(std::move(ac));
    }
    detail::tidy_certificate(c, cert);
    if (detail::finalize_parts(A, cert, opts) > 1e-7)
      res.note = "certificate accurate only to the solver tier";
    res.certificate = std::move(cert);
  } else {
    // strict feasibility program for a Farkas certificate
    ConeModel Ms;
    std::vector<detail::AgePartVars> sparts;
    for (int i : neg)
      if (!is_ext[i]) sparts.push_back(detail::add_age_part(Ms, A, i, pos, -1));
    std::map<int, int> nrow;
    for (int j : neg) nrow[j] = Ms.add_row(c[j]);
    for (const auto& p : sparts) Ms.coef(nrow[p.index], p.v_own, 1.0);
    for (size_t t = 0; t < pos.size(); ++t) {
      int row = Ms.add_row(c[pos[t]]);
      for (const auto& p : sparts) Ms.coef(row, p.exps[t][2], 1.0 / detail::kE);
      int r = Ms.add_nonneg();
      Ms.coef(row, r, 1.0);
    }
    auto ssol = solve(Ms.build(), opts);
    if (ssol.status == SolveStatus::PrimalInfeasible) res.evidence = ssol;
  }
  return res;
}

// Appends the dual AGE constraints  v_k ln(v_k / v_j) <= (a_k - a_j)^T mu_k
// for each k in `active` (extreme k dropped: their dual cone is the orthant).
// Returns per-k indices of the mu variables.
struct DualFragment {
  std::vector<int> active;                 // retained k
  std::map<int, int> mu_start;             // k -> first of n free vars
  std::map<int, std::vector<int>> pair_j;  // k -> list of paired j
};

inline DualFragment append_dual_age_constraints(ConeModel& M, const ExponentMatrix& A,
                                                const std::vector<int>& active, int v_start,
                                                const std::vector<int>* pair_with = nullptr) {
  DualFragment frag;
  int n = A.n(), m = A.m();
  for (int k : active) {
    if (column_is_extreme(A, k)) continue;
    frag.active.push_back(k);
    int mu = M.add_free(n);
    frag.mu_start[k] = mu;
    std::vector<int> js;
    if (pair_with) {
      js = *pair_with;
    } else {
      for (int j = 0; j < m; ++j)
        if (j != k) js.push_back(j);
    }
    frag.pair_j[k] = js;
    for (int j : js) {
      if (j == k) continue;
      auto e = M.add_exp();  // (p, q, r): p = -(a_k - a_j)^T mu_k, q = v_k, r = v_j
      int rp = M.add_row(0.0);
      M.coef(rp, e[0], 1.0);
      for (int d = 0; d < n; ++d) M.coef(rp, mu + d, to_double(A.col(k)[d] - A.col(j)[d]));
      int rq = M.add_row(0.0);
      M.coef(rq, e[1], 1.0);
      M.coef(rq, v_start + k, -1.0);
      int rr = M.add_row(0.0);
      M.coef(rr, e[2], 1.0);
      M.coef(rr, v_start + j, -1.0);
    }
  }
  return frag;
}

// Builds the standalone dual feasibility fragment program over v >= 0.
// Used directly by tests and for sampling feasible dual vectors.
struct DualFeasibilityProgram {
  ConeModel model;
  int v_start;
  DualFragment frag;
};

inline DualFeasibilityProgram dual_feasibility(const ExponentMatrix& A, const std::vector<int>& active) {
  DualFeasibilityProgram out;
  out.v_start = out.model.add_nonneg(A.m());
  out.frag = append_dual_age_constraints(out.model, A, active, out.v_start);
  return out;
}

struct Verdict {
  bool valid = true;
  std::vector<std::string> reasons;

  void fail(std::string r) {
    valid = false;
    reasons.push_back(std::move(r));
  }
};

enum class ValidateMode { Float, Exact };

// Independent re-check of a SAGE certificate. Float mode verifies all
// invariants at 1e-7; exact mode reconstructs nu in the kernel by exact
// rational projection and evaluates the entropy bound in 256-bit arithmetic.
inline Verdict validate_certificate(const ExponentMatrix& A, const std::vector<double>& c,
                                    const SageCertificate& cert, ValidateMode mode = ValidateMode::Float) {
  Verdict v;
  int m = A.m();
  double scale = detail::scale_of(c);
  const double tol = 1e-7 * scale;
  if (static_cast<int>(c.size()) != m || static_cast<int>(cert.residual.size()) != m) {
    v.fail("dimension mismatch");
    return v;
  }
  std::vector<bool> is_neg(m, false);
  for (int j = 0; j < m; ++j) is_neg[j] = c[j] < 0;
  int zero_col = A.zero_column();

  std::vector<bool> seen(m, false);
  for (const auto& p : cert.parts) {
    if (p.k < 0 || p.k >= m || static_cast<int>(p.nu.size()) != m || static_cast<int>(p.cvec.size()) != m) {
      v.fail("malformed part");
      return v;
    }
    if (seen[p.k]) v.fail("duplicate part index");
    seen[p.k] = true;
    if (!is_neg[p.k] && p.k != zero_col) v.fail("part index is neither a negative coordinate nor the constant term");
    for (int j = 0; j < m; ++j) {
      if (j != p.k && p.cvec[j] < -tol) v.fail("part has a negative off-index coefficient");
      if (j != p.k && is_neg[j] && std::fabs(p.cvec[j]) > tol) v.fail("cross support on a negative coordinate");
      if (p.nu[j] < -tol) v.fail("negative nu entry");
    }
  }
  for (int j = 0; j < m; ++j) {
    if (cert.residual[j] < -1e-9 * scale) v.fail("negative residual");
    double acc = cert.residual[j];
    for (const auto& p : cert.parts) acc += p.cvec[j];
    if (std::fabs(acc - c[j]) > 1e-7 * scale) v.fail("parts plus residual do not reproduce the target");
  }
  if (!v.valid) return v;

  for (const auto& p : cert.parts) {
    // kernel residual
    double knorm = 1.0;
    std::vector<double> kres(A.n(), 0.0);
    for (int j = 0; j < m; ++j) {
      if (j == p.k || p.nu[j] == 0.0) continue;
      for (int d = 0; d < A.n(); ++d) {
        double coef = to_double(A.col(j)[d] - A.col(p.k)[d]);
        kres[d] += p.nu[j] * coef;
        knorm += std::fabs(p.nu[j] * coef);
      }
    }
    if (mode == ValidateMode::Float) {
      for (int d = 0; d < A.n(); ++d)
        if (std::fabs(kres[d]) > 1e-9 * knorm) v.fail("nu is not in the kernel (float)");
      std::vector<double> nu_off, c_off;
      double dacc = 0.0;
      bool finite = true;
      for (int j = 0; j < m; ++j) {
        if (j == p.k || p.nu[j] <= 0) continue;
        if (p.cvec[j] <= 0) { finite = false; break; }
        dacc += p.nu[j] * (std::log(p.nu[j] / p.cvec[j]) - 1.0);
      }
      if (!finite)
        v.fail("nu charges a zero coefficient");
      else if (dacc > p.cvec[p.k] + tol)
        v.fail("entropy inequality fails (float)");
    } else {
      // exact: project rationalized nu onto the kernel basis
      auto basis = kernel_basis(A, p.k);
      std::vector<int> off_idx;
      for (int j = 0; j < m; ++j)
        if (j != p.k) off_idx.push_back(j);
      int d = static_cast<int>(off_idx.size());
      int r = static_cast<int>(basis.size());
      RatVec nu_rat(d);
      double numax = 1.0;
      for (int t = 0; t < d; ++t) {
        nu_rat[t] = rationalize(std::max(0.0, p.nu[off_idx[t]]));
        numax = std::max(numax, std::fabs(p.nu[off_idx[t]]));
      }
      RatVec proj(d, Rat(0));
      if (r > 0) {
        RatMat gram(r, r);
        RatVec rhs(r, Rat(0));
        for (int i = 0; i < r; ++i) {
          for (int j2 = 0; j2 < r; ++j2) {
            Rat acc(0);
            for (int t = 0; t < d; ++t) acc += basis[i][t] * basis[j2][t];
            gram(i, j2) = acc;
          }
          for (int t = 0; t < d; ++t) rhs[i] += basis[i][t] * nu_rat[t];
        }
        auto w = solve_linear(gram, rhs);
        if (!w) { v.fail("kernel projection failed"); continue; }
        for (int t = 0; t < d; ++t)
          for (int i = 0; i < r; ++i) proj[t] += basis[i][t] * (*w)[i];
      }
      bool off_kernel = false;
      for (int t = 0; t < d; ++t)
        if (std::fabs(to_double(proj[t] - nu_rat[t])) > 1e-6 * numax) off_kernel = true;
      if (off_kernel) { v.fail("nu is not in the kernel (exact projection)"); continue; }
      RatVec nu_clip(d);
      std::vector<double> c_off(d);
      for (int t = 0; t < d; ++t) {
        nu_clip[t] = proj[t] < 0 ? Rat(0) : proj[t];
        c_off[t] = p.cvec[off_idx[t]];
      }
      auto de = relative_entropy_shifted(nu_clip, c_off);
      if (!de.finite)
        v.fail("nu charges a zero coefficient (exact)");
      else if (!(de.value <= Real256(p.cvec[p.k] + 1e-9 * scale)))
        v.fail("entropy inequality fails (exact)");
    }
  }
  return v;
}

}  // namespace sagecert
