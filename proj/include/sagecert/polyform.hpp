#pragma once

#include <sagecert/decompose.hpp>
#include <sagecert/optimize.hpp>
#include <sagecert/sage_cones.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace sagecert {

inline bool exponent_is_even(const RatVec& a) {
  for (const auto& v : a) {
    if (v.get_den() != 1) return false;
    mpz_class num = v.get_num();
    if (mpz_odd_p(num.get_mpz_t())) return false;
  }
  return true;
}

// Signomial representative: keep coefficients on even terms, flip the rest to
// -|c_i|. Nonnegativity of the representative implies nonnegativity of p.
inline Signomial signomial_representative(const SparsePolynomial& p) {
  std::vector<double> chat(p.m());
  for (int j = 0; j < p.m(); ++j)
    chat[j] = exponent_is_even(p.exponents.col(j)) ? p.coeffs[j] : -std::fabs(p.coeffs[j]);
  return Signomial{p.exponents, std::move(chat)};
}

struct OrthantWitness {
  bool dominated = false;
  std::vector<uint8_t> s;                // sign-vector bits (size n), present when dominated
  std::vector<uint8_t> b;                // target parity bits (size m)
  std::vector<int> inconsistent_terms;   // term indices whose parity rows combine to 0 = 1
};

// Decides orthant dominance by solving A^T s = b over GF(2), where b_i = 1
// exactly when c_i > 0 on a non-even term. Structural zeros add no row (they
// cannot force a sign). On inconsistency the combining rows are reported as
// the absence proof.
inline OrthantWitness orthant_dominated(const SparsePolynomial& p) {
  int n = p.n(), m = p.m();
  OrthantWitness w;
  w.b.assign(m, 0);
  for (int i = 0; i < m; ++i)
    w.b[i] = (p.coeffs[i] > 0 && !exponent_is_even(p.exponents.col(i))) ? 1 : 0;

  // rows: parity of a_i, rhs b_i, combination tracking over original rows
  struct Row {
    std::vector<uint8_t> bits;
    uint8_t rhs;
    std::vector<uint8_t> combo;
  };
  std::vector<Row> rows;
  for (int i = 0; i < m; ++i) {
    if (p.coeffs[i] == 0.0) continue;
    Row row;
    row.bits.assign(n, 0);
    for (int d = 0; d < n; ++d) {
      mpz_class num = p.exponents.col(i)[d].get_num();
      row.bits[d] = mpz_odd_p(num.get_mpz_t()) ? 1 : 0;
    }
    row.rhs = w.b[i];
    row.combo.assign(m, 0);
    row.combo[i] = 1;
    rows.push_back(std::move(row));
  }
  m = static_cast<int>(rows.size());
  int mfull = p.m();
  std::vector<int> pivot_row(n, -1);
  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    for (int r = rank; r < m; ++r)
      if (rows[r].bits[col]) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(rows[pr], rows[rank]);
    for (int r = 0; r < m; ++r) {
      if (r == rank || !rows[r].bits[col]) continue;
      for (int d = 0; d < n; ++d) rows[r].bits[d] ^= rows[rank].bits[d];
      rows[r].rhs ^= rows[rank].rhs;
      for (int t = 0; t < mfull; ++t) rows[r].combo[t] ^= rows[rank].combo[t];
    }
    pivot_row[col] = rank;
    ++rank;
  }
  for (int r = rank; r < m; ++r) {
    if (rows[r].rhs) {
      w.dominated = false;
      for (int t = 0; t < mfull; ++t)
        if (rows[r].combo[t]) w.inconsistent_terms.push_back(t);
      return w;
    }
  }
  w.dominated = true;
  w.s.assign(n, 0);
  for (int col = 0; col < n; ++col)
    if (pivot_row[col] >= 0) w.s[col] = rows[pivot_row[col]].rhs;
  return w;
}

struct PolySageCertificate {
  std::vector<double> chat;  // representative coefficients, in C_SAGE(A)
  SageCertificate inner;
};

struct PolyMembershipResult {
  bool member = false;
  double margin = 0.0;
  std::optional<PolySageCertificate> certificate;
  std::optional<Solution> evidence;
  int exp_blocks = 0;
};

// p is a SAGE polynomial iff its signomial representative is SAGE.
inline PolyMembershipResult poly_sage_membership(const SparsePolynomial& p,
                                                 const SolverOptions& opts = {}) {
  Signomial rep = signomial_representative(p);
  auto r = sage_membership(rep.exponents, rep.coeffs, opts);
  PolyMembershipResult out;
  out.member = r.member;
  out.margin = r.margin;
  out.evidence = r.evidence;
  out.exp_blocks = r.exp_blocks;
  if (r.member) out.certificate = PolySageCertificate{rep.coeffs, *r.certificate};
  return out;
}

// Circuit nonnegativity test for  sum_i c_i x^{A_i} + b x^beta  with even
// simplicial outer exponents: nonnegative iff
//   |b| <= Theta  (beta not even)   or   -b <= Theta  (beta even),
// Theta = prod (c_i/lambda_i)^{lambda_i} at the barycentric weights of beta.
inline bool circuit_nonneg_oracle(const std::vector<RatVec>& outer, const RatVec& beta,
                                  const std::vector<double>& c, double b) {
  if (outer.empty() || outer.size() != c.size()) throw std::invalid_argument("circuit oracle: size mismatch");
  for (const auto& a : outer)
    if (!exponent_is_even(a)) throw std::invalid_argument("circuit oracle: outer exponents must be even");
  if (!affinely_independent(outer)) throw std::invalid_argument("circuit oracle: outer set must be simplicial");
  for (double ci : c)
    if (!(ci > 0)) throw std::invalid_argument("circuit oracle: weights must be positive");
  RatVec lambda = barycentric(beta, outer);
  for (const auto& l : lambda)
    if (l < 0) throw std::invalid_argument("circuit oracle: beta outside the simplex");

  Real256 log_theta(0.0);
  for (size_t i = 0; i < outer.size(); ++i) {
    if (lambda[i] == 0) continue;
    Real256 li(lambda[i]), ci(c[i]);
    log_theta = log_theta + li * (ci.log() - li.log());
  }
  Real256 theta = log_theta.exp();
  double lhs = exponent_is_even(beta) ? -b : std::fabs(b);
  return Real256(lhs) <= theta + Real256(1e-20);
}

// Rewrites a cancellation-free certificate of the signomial representative
// into a sum of AGE polynomials plus an even nonnegative remainder.
inline std::vector<std::vector<double>> poly_age_decompose(const SparsePolynomial& p,
                                                           const SageCertificate& cert) {
  Signomial rep = signomial_representative(p);
  auto verdict = validate_certificate(p.exponents, rep.coeffs, cert, ValidateMode::Float);
  if (!verdict.valid) throw std::invalid_argument("poly_age_decompose: certificate is not cancellation-free for the representative");

  std::vector<std::vector<double>> out;
  for (const auto& part : cert.parts) {
    std::vector<double> poly = part.cvec;
    double sign = p.coeffs[part.k] >= 0 ? 1.0 : -1.0;
    poly[part.k] = -sign * part.cvec[part.k];
    out.push_back(std::move(poly));
  }
  bool nonzero = false;
  for (double v : cert.residual)
    if (std::fabs(v) > 1e-12) nonzero = true;
  if (nonzero) out.push_back(cert.residual);
  return out;
}

// Degree-independent SAGE bound for sparse polynomial optimization:
//   sup{ gamma : C(f - gamma - sum_h h s_h) in C_POLYSAGE(A''), s_h SAGE
//        polynomials over A' }, with A' from Poly(A,1)^pmult and h ranging
//   over products of up to q constraints. pmult = 0 uses scalar multipliers.
inline BoundResult poly_bound(const SparsePolynomial& p, const std::vector<SparsePolynomial>& gs,
                              int pmult = 0, int q = 0, const SolverOptions& opts = {}) {
  for (const auto& g : gs)
    if (g.n() != p.n()) throw std::invalid_argument("poly_bound: dimension mismatch");

  // base support with the zero term
  Signomial f0s = with_zero_column(Signomial{p.exponents, p.coeffs});
  SparsePolynomial f0{f0s.exponents, f0s.coeffs};
  const int n = p.n();

  std::vector<SparsePolynomial> H;
  if (!gs.empty() && q >= 1) {
    std::vector<SparsePolynomial> frontier = gs;
    H = gs;
    for (int d = 2; d <= q; ++d) {
      std::vector<SparsePolynomial> next;
      for (const auto& h : frontier)
        for (const auto& g : gs) next.push_back(multiply(h, g));
      frontier = next;
      H.insert(H.end(), next.begin(), next.end());
    }
  }
  int total_deg = (H.empty() ? 0 : q) + pmult;

  SparsePolynomial base{f0.exponents, std::vector<double>(f0.m(), 1.0)};
  // widen the base so A'' also covers every constraint's support
  {
    std::vector<RatVec> cols = f0.exponents.columns();
    std::vector<double> ones(cols.size(), 1.0);
    for (const auto& g : gs)
      for (int j = 0; j < g.m(); ++j)
        if (std::find(cols.begin(), cols.end(), g.exponents.col(j)) == cols.end()) {
          cols.push_back(g.exponents.col(j));
          ones.push_back(1.0);
        }
    base = make_polynomial(n, cols, ones);
  }
  SparsePolynomial apow = total_deg == 0 ? make_polynomial(n, {RatVec(n, Rat(0))}, {1.0})
                                         : power(base, total_deg);
  ExponentMatrix A2 = apow.exponents;  // A''
  if (total_deg == 0) A2 = f0.exponents;
  int m2 = A2.m();
  auto find_col = [](const ExponentMatrix& A, const RatVec& col) {
    for (int j = 0; j < A.m(); ++j)
      if (A.col(j) == col) return j;
    return -1;
  };
  int zc = A2.zero_column();
  if (zc < 0) throw std::logic_error("zero column missing from the Lagrangian support");

  auto rep2 = extreme_indices(A2);
  std::vector<bool> even2(m2);
  for (int j = 0; j < m2; ++j) even2[j] = exponent_is_even(A2.col(j));

  ConeModel M;
  int gamma = M.add_free();

  // multiplier coefficient variables
  ExponentMatrix A1 = pmult == 0 ? ExponentMatrix(n, {RatVec(n, Rat(0))}) : power(base, pmult).exponents;
  int m1 = A1.m();
  struct Mult {
    int sigma;  // first of m1 variables
  };
  std::vector<Mult> mults;

  // SAGE-polynomial membership block: returns the chat variable indices for
  // coefficients tied elsewhere by inequalities.
  auto add_polysage_block = [&](const ExponentMatrix& A, const NewtonReport& rep) {
    int m = A.m();
    int chat = M.add_free(m);
    std::vector<bool> is_ext(m, false);
    for (int j : rep.extreme_indices) is_ext[j] = true;
    std::vector<detail::AgePartVars> parts;
    for (int i = 0; i < m; ++i) {
      if (is_ext[i]) continue;
      std::vector<int> support;
      for (int j = 0; j < m; ++j)
        if (j != i) support.push_back(j);
      parts.push_back(detail::add_age_part(M, A, i, support, -1));
    }
    for (int j = 0; j < m; ++j) {
      int row = M.add_row(0.0);
      M.coef(row, chat + j, -1.0);
      for (const auto& pt : parts) {
        if (pt.index == j) M.coef(row, pt.v_own, 1.0);
        for (size_t t = 0; t < pt.support.size(); ++t)
          if (pt.support[t] == j) M.coef(row, pt.exps[t][2], 1.0 / detail::kE);
      }
      int res = M.add_nonneg();
      M.coef(row, res, 1.0);
    }
    return chat;
  };

  // multipliers
  std::vector<NewtonReport> rep1;
  if (!H.empty()) {
    if (pmult == 0) {
      for (size_t h = 0; h < H.size(); ++h) mults.push_back({M.add_nonneg(1)});
    } else {
      auto r1 = extreme_indices(A1);
      std::vector<bool> even1(m1);
      for (int j = 0; j < m1; ++j) even1[j] = exponent_is_even(A1.col(j));
      for (size_t h = 0; h < H.size(); ++h) {
        int sigma = M.add_free(m1);
        int chat1 = add_polysage_block(A1, r1);
        // chat <= sigma; chat_j <= -sigma_j on non-even terms
        for (int j = 0; j < m1; ++j) {
          int row = M.add_row(0.0);
          M.coef(row, chat1 + j, 1.0);
          M.coef(row, sigma + j, -1.0);
          int sl = M.add_nonneg();
          M.coef(row, sl, 1.0);
          if (!even1[j]) {
            int row2 = M.add_row(0.0);
            M.coef(row2, chat1 + j, 1.0);
            M.coef(row2, sigma + j, 1.0);
            int sl2 = M.add_nonneg();
            M.coef(row2, sl2, 1.0);
          }
        }
        mults.push_back({sigma});
      }
    }
  }

  // Lagrangian coefficients: ell_j = f_j - gamma [j = zc] - sum_h conv(h, sigma_h)_j
  std::vector<double> fb(m2, 0.0);
  for (int j = 0; j < f0.m(); ++j) {
    int at = find_col(A2, f0.exponents.col(j));
    if (at < 0) throw std::logic_error("objective support missing from the Lagrangian support");
    fb[at] = f0.coeffs[j];
  }
  // conv index maps: (h term u, sigma position v) -> column of A''
  struct ConvEntry {
    int col;
    double hcoef;
    int sigma_var;
  };
  std::vector<ConvEntry> conv;
  for (size_t h = 0; h < H.size(); ++h) {
    for (int u = 0; u < H[h].m(); ++u) {
      for (int v = 0; v < m1; ++v) {
        RatVec sum(n);
        for (int d = 0; d < n; ++d) sum[d] = H[h].exponents.col(u)[d] + A1.col(v)[d];
        int at = find_col(A2, sum);
        if (at < 0) throw std::logic_error("product support missing from the Lagrangian support");
        int svar = pmult == 0 ? mults[h].sigma : mults[h].sigma + v;
        conv.push_back({at, H[h].coeffs[u], svar});
      }
    }
  }

  int chat2 = add_polysage_block(A2, rep2);
  for (int j = 0; j < m2; ++j) {
    // chat_j + slack = ell_j
    int row = M.add_row(fb[j]);
    M.coef(row, chat2 + j, 1.0);
    if (j == zc) M.coef(row, gamma, 1.0);
    for (const auto& ce : conv)
      if (ce.col == j) M.coef(row, ce.sigma_var, ce.hcoef);
    int sl = M.add_nonneg();
    M.coef(row, sl, 1.0);
    if (!even2[j]) {
      // chat_j + slack = -ell_j
      int row2 = M.add_row(-fb[j]);
      M.coef(row2, chat2 + j, 1.0);
      if (j == zc) M.coef(row2, gamma, -1.0);
      for (const auto& ce : conv)
        if (ce.col == j) M.coef(row2, ce.sigma_var, -ce.hcoef);
      int sl2 = M.add_nonneg();
      M.coef(row2, sl2, 1.0);
    }
  }
  M.objective(gamma, -1.0);

  auto prog = M.build();
  auto sol = solve(prog, opts);
  BoundResult out;
  out.level = pmult * 100 + q;  // packed for reporting
  out.solver_iters = sol.iters;
  out.inaccurate = sol.inaccurate;
  out.exp_blocks = prog.num_exp_blocks();
  switch (sol.status) {
    case SolveStatus::Optimal:
      out.status = BoundStatus::Optimal;
      out.value = -sol.pobj;
      out.dual_value = -sol.dobj;
      break;
    case SolveStatus::PrimalInfeasible:
      out.status = BoundStatus::Infeasible;
      out.value = -std::numeric_limits<double>::infinity();
      out.farkas = sol;
      break;
    case SolveStatus::DualInfeasible:
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

}  // namespace sagecert
