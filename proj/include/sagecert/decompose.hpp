#pragma once

#include <sagecert/sage_cones.hpp>

#include <algorithm>
#include <vector>

namespace sagecert {

// Row-sum preserving transfer: given w with w_{\i} >= 0, v with v_{\j} >= 0
// and w_k + v_k < 0 for k in {i, j}, produces (w', v') in the conic hull of
// {w, v} with w'_j = v'_i = 0 and w' + v' = w + v.
inline std::pair<RatVec, RatVec> transfer_pair(const RatVec& w, const RatVec& v, int i, int j) {
  int m = static_cast<int>(w.size());
  if (static_cast<int>(v.size()) != m || i == j || i < 0 || j < 0 || i >= m || j >= m)
    throw std::invalid_argument("transfer_pair: bad indices");
  for (int t = 0; t < m; ++t) {
    if (t != i && w[t] < 0) throw std::invalid_argument("transfer_pair: w negative off its index");
    if (t != j && v[t] < 0) throw std::invalid_argument("transfer_pair: v negative off its index");
  }
  if (!(w[i] + v[i] < 0) || !(w[j] + v[j] < 0))
    throw std::invalid_argument("transfer_pair: row sums not negative at the distinguished indices");

  Rat d = w[i] * v[j] - v[i] * w[j];
  if (d <= 0) throw std::logic_error("transfer_pair: degenerate system");
  Rat alpha = (w[i] + v[i]) * v[j] / d;   // w-weight in w'
  Rat beta = -(w[i] + v[i]) * w[j] / d;   // v-weight in w'
  Rat gam = -(w[j] + v[j]) * v[i] / d;    // w-weight in v'
  Rat delta = w[i] * (w[j] + v[j]) / d;   // v-weight in v'
  if (alpha < 0 || beta < 0 || gam < 0 || delta < 0)
    throw std::logic_error("transfer_pair: conic coefficients came out negative");
  RatVec wh(m), vh(m);
  for (int t = 0; t < m; ++t) {
    wh[t] = alpha * w[t] + beta * v[t];
    vh[t] = gam * w[t] + delta * v[t];
  }
  wh[j] = 0;
  vh[i] = 0;
  return {wh, vh};
}

namespace detail {

inline RatVec rationalize_vec(const std::vector<double>& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = rationalize(v[i]);
  return out;
}

// Caps coefficient growth during long runs of exact row operations: entries
// whose denominators outgrow ~50 bits are rounded back to denominator 1e15.
// Zeros and signs are preserved exactly; the value moves by at most ~1e-15
// relative, which the final residual recomputation absorbs.
inline void compact_row(RatVec& row) {
  for (auto& q : row) {
    if (q == 0) continue;
    if (mpz_sizeinbase(q.get_den().get_mpz_t(), 2) > 50)
      q = rationalize(to_double(q), 1000000000000000ull);
  }
}

}  // namespace detail

// Rewrites an arbitrary AGE decomposition of c into one indexed only by the
// negative coordinates of c, with zero cross-support among them: the
// redistribution step removes parts at nonnegative coordinates, then forward
// elimination and back-substitution with transfer_pair zero the off-diagonal
// block. Row operations are exact on rationalized inputs.
inline SageCertificate cancellation_free(const ExponentMatrix& A, const std::vector<double>& c,
                                         const SageCertificate& input,
                                         const SolverOptions& opts = {}) {
  int m = A.m();
  if (static_cast<int>(c.size()) != m) throw std::invalid_argument("cancellation_free: size mismatch");
  std::vector<int> neg;
  for (int j = 0; j < m; ++j)
    if (c[j] < 0) neg.push_back(j);

  // already in the target shape? return unchanged
  {
    bool ok = true;
    std::vector<bool> is_neg(m, false);
    for (int j : neg) is_neg[j] = true;
    std::vector<bool> seen(m, false);
    for (const auto& p : input.parts) {
      if (p.k < 0 || p.k >= m || !is_neg[p.k] || seen[p.k]) { ok = false; break; }
      seen[p.k] = true;
      for (int j = 0; j < m; ++j) {
        if (j != p.k && p.cvec[j] < 0) { ok = false; break; }
        if (j != p.k && is_neg[j] && p.cvec[j] != 0.0) { ok = false; break; }
      }
      if (!ok) break;
    }
    for (int j = 0; j < m && ok; ++j) {
      double acc = j < static_cast<int>(input.residual.size()) ? input.residual[j] : 0.0;
      if (acc < 0) ok = false;
      for (const auto& p : input.parts) acc += p.cvec[j];
      if (std::fabs(acc - c[j]) > 1e-9 * (1 + std::fabs(c[j]))) ok = false;
    }
    if (ok) return input;
  }

  // rationalize and preprocess
  struct Row {
    int k;
    RatVec vec;
  };
  std::vector<Row> rows;
  RatVec residual(m, Rat(0));
  if (!input.residual.empty()) {
    if (static_cast<int>(input.residual.size()) != m) throw std::invalid_argument("cancellation_free: bad residual");
    residual = detail::rationalize_vec(input.residual);
    for (const auto& r : residual)
      if (r < 0) throw std::invalid_argument("cancellation_free: negative residual");
  }
  for (const auto& p : input.parts) {
    if (p.k < 0 || p.k >= m || static_cast<int>(p.cvec.size()) != m)
      throw std::invalid_argument("cancellation_free: malformed part");
    Row r{p.k, detail::rationalize_vec(p.cvec)};
    for (int j = 0; j < m; ++j)
      if (j != r.k && r.vec[j] < 0) throw std::invalid_argument("cancellation_free: part negative off its index");
    rows.push_back(std::move(r));
  }
  // exact target: what the rationalized inputs actually sum to
  RatVec target = residual;
  for (const auto& r : rows)
    for (int j = 0; j < m; ++j) target[j] += r.vec[j];
  for (int j = 0; j < m; ++j)
    if (std::fabs(to_double(target[j]) - c[j]) > 1e-7 * (1 + std::fabs(c[j])))
      throw std::invalid_argument("cancellation_free: parts do not sum to the target");

  std::vector<bool> is_neg(m, false);
  for (int j = 0; j < m; ++j) is_neg[j] = target[j] < 0;

  // merge duplicate indices, move all-nonnegative rows into the residual
  auto sweep = [&]() {
    std::vector<Row> merged;
    for (auto& r : rows) {
      bool found = false;
      for (auto& mr : merged)
        if (mr.k == r.k) {
          for (int j = 0; j < m; ++j) mr.vec[j] += r.vec[j];
          found = true;
          break;
        }
      if (!found) merged.push_back(std::move(r));
    }
    rows.clear();
    for (auto& r : merged) {
      if (r.vec[r.k] >= 0) {
        for (int j = 0; j < m; ++j) residual[j] += r.vec[j];
      } else {
        rows.push_back(std::move(r));
      }
    }
  };
  sweep();

  // redistribute parts indexed at nonnegative target coordinates
  for (;;) {
    int at = -1;
    for (size_t r = 0; r < rows.size(); ++r)
      if (!is_neg[rows[r].k]) { at = static_cast<int>(r); break; }
    if (at < 0) break;
    Row w = rows[at];
    rows.erase(rows.begin() + at);
    int k = w.k;
    Rat denom = residual[k];
    for (const auto& r : rows) denom += r.vec[k];
    // denom = target_k - w_k > 0 since target_k >= 0 > w_k
    for (auto& r : rows) {
      Rat lam = r.vec[k] / denom;
      for (int j = 0; j < m; ++j) r.vec[j] += lam * w.vec[j];
      detail::compact_row(r.vec);
    }
    Rat lamr = residual[k] / denom;
    for (int j = 0; j < m; ++j) residual[j] += lamr * w.vec[j];
    detail::compact_row(residual);
    sweep();
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.k < b.k; });
  int kcount = static_cast<int>(rows.size());

  // forward elimination then back-substitution over the |N| x |N| block
  auto apply = [&](int a, int b) {
    int i = rows[a].k, j = rows[b].k;
    if (rows[a].vec[j] == 0 && rows[b].vec[i] == 0) return;
    auto [wh, vh] = transfer_pair(rows[a].vec, rows[b].vec, i, j);
    rows[a].vec = std::move(wh);
    rows[b].vec = std::move(vh);
    detail::compact_row(rows[a].vec);
    detail::compact_row(rows[b].vec);
  };
  for (int a = 0; a < kcount; ++a)
    for (int b = a + 1; b < kcount; ++b) apply(a, b);
  for (int a = kcount - 1; a >= 1; --a)
    for (int b = a - 1; b >= 0; --b) apply(a, b);

  // residual recomputed against the target keeps the sum identity exact even
  // after row compaction; mass on negative coordinates moves to the diagonal
  residual = target;
  for (const auto& r : rows)
    for (int j = 0; j < m; ++j) residual[j] -= r.vec[j];
  for (auto& r : rows) {
    if (residual[r.k] != 0) {
      r.vec[r.k] += residual[r.k];
      residual[r.k] = 0;
    }
  }

  SageCertificate out;
  for (const auto& r : rows) {
    AgeCertificate ac;
    ac.k = r.k;
    ac.cvec.resize(m);
    for (int j = 0; j < m; ++j) ac.cvec[j] = to_double(r.vec[j]);
    // fresh nu for the reshaped row; rows built from approximately-AGE input
    // inherit its slop, so revalidate against the float certificate tolerance
    // rather than the strict membership tolerance
    auto mem = age_membership(A, r.k, [&] {
      auto cv = ac.cvec;
      for (int j = 0; j < m; ++j)
        if (j != r.k && cv[j] < 0) cv[j] = 0;
      return cv;
    }(), AgeMode::Certify, opts);
    double scale = detail::scale_of(ac.cvec);
    if (!mem.certificate || (!mem.member && mem.margin > 1e-6 * scale))
      throw std::invalid_argument("cancellation_free: a reshaped row failed AGE validation");
    ac.nu = mem.certificate->parts[0].nu;
    out.parts.push_back(std::move(ac));
  }
  out.residual.resize(m);
  for (int j = 0; j < m; ++j) out.residual[j] = std::max(0.0, to_double(residual[j]));
  return out;
}

struct CircuitAgeCertificate {
  AgeCertificate cert;   // unscaled part
  double theta = 1.0;    // positive weight
  bool singleton = false;
};

struct CircuitDecomposition {
  std::vector<CircuitAgeCertificate> parts;
  std::vector<double> remainder;
  bool mixture_exact = false;  // rational identity sum theta_i lambda_i = lambda verified
};

// Splits one AGE certificate into simplicial-circuit pieces by decomposing
// nu/(1^T nu) into simplicial-support mixtures. nu is first projected exactly
// onto the kernel so the mixture identity holds in rational arithmetic.
inline CircuitDecomposition circuit_decompose(const ExponentMatrix& A, const AgeCertificate& cert) {
  int m = A.m();
  if (cert.k < 0 || cert.k >= m || static_cast<int>(cert.nu.size()) != m ||
      static_cast<int>(cert.cvec.size()) != m)
    throw std::invalid_argument("circuit_decompose: malformed certificate");

  CircuitDecomposition out;
  double numax = 0;
  for (int j = 0; j < m; ++j)
    if (j != cert.k) numax = std::max(numax, cert.nu[j]);
  if (numax <= 1e-14) {
    out.remainder = cert.cvec;
    out.mixture_exact = true;
    return out;
  }

  std::vector<int> supp;
  for (int j = 0; j < m; ++j)
    if (j != cert.k && cert.nu[j] > 1e-12 * numax) supp.push_back(j);

  // exact kernel projection on the support
  std::vector<RatVec> sub_cols;
  for (int j : supp) sub_cols.push_back(A.col(j));
  sub_cols.push_back(A.col(cert.k));
  ExponentMatrix sub(A.n(), sub_cols);
  auto basis = kernel_basis(sub, static_cast<int>(supp.size()));
  int d = static_cast<int>(supp.size());
  RatVec nu_rat(d);
  for (int t = 0; t < d; ++t) nu_rat[t] = rationalize(cert.nu[supp[t]]);
  RatVec proj(d, Rat(0));
  int rnk = static_cast<int>(basis.size());
  if (rnk == 0) throw std::invalid_argument("circuit_decompose: nu support has a trivial kernel");
  RatMat gram(rnk, rnk);
  RatVec rhs(rnk, Rat(0));
  for (int i = 0; i < rnk; ++i) {
    for (int j = 0; j < rnk; ++j) {
      Rat acc(0);
      for (int t = 0; t < d; ++t) acc += basis[i][t] * basis[j][t];
      gram(i, j) = acc;
    }
    for (int t = 0; t < d; ++t) rhs[i] += basis[i][t] * nu_rat[t];
  }
  auto wsol = solve_linear(gram, rhs);
  if (!wsol) throw std::invalid_argument("circuit_decompose: projection failed");
  for (int t = 0; t < d; ++t)
    for (int i = 0; i < rnk; ++i) proj[t] += basis[i][t] * (*wsol)[i];
  for (int t = 0; t < d; ++t) {
    if (std::fabs(to_double(proj[t]) - cert.nu[supp[t]]) > 1e-6 * std::max(1.0, numax))
      throw std::invalid_argument("circuit_decompose: nu is not in the kernel");
    if (proj[t] < 0) throw std::invalid_argument("circuit_decompose: projected nu has negative entries");
  }

  Rat total(0);
  for (int t = 0; t < d; ++t) total += proj[t];
  RatVec lambda(d);
  for (int t = 0; t < d; ++t) lambda[t] = proj[t] / total;
  RatVec h(A.n());
  for (int dd = 0; dd < A.n(); ++dd) h[dd] = A.col(cert.k)[dd];
  std::vector<RatVec> bcols;
  for (int j : supp) bcols.push_back(A.col(j));
  auto mix = decompose_mixture(bcols, h, lambda);
  out.mixture_exact = check_mixture(bcols, lambda, mix);

  out.remainder = cert.cvec;
  for (const auto& part : mix) {
    CircuitAgeCertificate cp;
    cp.theta = to_double(part.theta);
    cp.cert.k = cert.k;
    cp.cert.nu.assign(m, 0.0);
    cp.cert.cvec.assign(m, 0.0);
    std::vector<double> nu_off(m, 0.0), c_off(m, 0.0);
    for (int t = 0; t < d; ++t) {
      if (part.lambda[t] == 0) continue;
      Rat nu_i = part.lambda[t] * total;
      int j = supp[t];
      cp.cert.nu[j] = to_double(nu_i);
      // keep ratios with the original certificate: c_j^(i) = (c_j / nu_j) nu_j^(i)
      cp.cert.cvec[j] = cert.cvec[j] * to_double(nu_i / proj[t]);
    }
    cp.cert.cvec[cert.k] = relent_shifted_double(cp.cert.nu, cp.cert.cvec);
    cp.singleton = false;
    out.parts.push_back(cp);
  }
  for (const auto& cp : out.parts)
    for (int j = 0; j < m; ++j) out.remainder[j] -= cp.theta * cp.cert.cvec[j];
  return out;
}

}  // namespace sagecert
