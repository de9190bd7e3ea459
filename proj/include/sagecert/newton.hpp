#pragma once

#include <sagecert/rational.hpp>
#include <sagecert/signomial.hpp>
#include <sagecert/simplex.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace sagecert {

struct NewtonReport {
  std::vector<int> extreme_indices;
  std::vector<int> nonextreme_indices;
  bool is_simplicial_hull = false;  // ext Newt(A) affinely independent
  bool contains_origin = false;
};

struct FaceWitness {
  RatVec s;  // normal
  Rat r;     // offset: s^T a = r on the block, s^T a < r off it
};

struct FacePartition {
  std::vector<std::vector<int>> blocks;
  std::vector<std::optional<FaceWitness>> witnesses;  // absent for the trivial block
};

struct MixturePart {
  RatVec lambda;  // probability vector with affinely independent support
  Rat theta;      // positive weight
};

using MixtureDecomposition = std::vector<MixturePart>;

inline bool is_simplicial(const std::vector<RatVec>& points) {
  if (points.empty()) throw std::invalid_argument("is_simplicial: empty point list");
  return affinely_independent(points);
}

// a_k extreme in conv(columns) iff it is not a convex combination of the others
inline bool column_is_extreme(const ExponentMatrix& a, int k) {
  int n = a.n(), m = a.m();
  if (m == 1) return true;
  std::vector<RatVec> rows(n + 1, RatVec(m - 1, Rat(0)));
  RatVec rhs(n + 1);
  int col = 0;
  for (int j = 0; j < m; ++j) {
    if (j == k) continue;
    for (int i = 0; i < n; ++i) rows[i][col] = a.col(j)[i];
    rows[n][col] = 1;
    ++col;
  }
  for (int i = 0; i < n; ++i) rhs[i] = a.col(k)[i];
  rhs[n] = 1;
  return !lp_feasible(rows, rhs, m - 1);
}

inline bool hull_contains(const ExponentMatrix& a, const RatVec& point) {
  int n = a.n(), m = a.m();
  std::vector<RatVec> rows(n + 1, RatVec(m, Rat(0)));
  RatVec rhs(n + 1);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) rows[i][j] = a.col(j)[i];
    rows[n][j] = 1;
  }
  for (int i = 0; i < n; ++i) rhs[i] = point[i];
  rhs[n] = 1;
  return lp_feasible(rows, rhs, m);
}

inline NewtonReport extreme_indices(const ExponentMatrix& a) {
  NewtonReport rep;
  for (int k = 0; k < a.m(); ++k) {
    if (column_is_extreme(a, k))
      rep.extreme_indices.push_back(k);
    else
      rep.nonextreme_indices.push_back(k);
  }
  std::vector<RatVec> verts;
  for (int k : rep.extreme_indices) verts.push_back(a.col(k));
  rep.is_simplicial_hull = affinely_independent(verts);
  rep.contains_origin = hull_contains(a, RatVec(a.n(), Rat(0)));
  return rep;
}

// Exact barycentric coordinates of a point in the affine hull of a simplex.
// Weights sum to 1 and may be negative outside the simplex.
inline RatVec barycentric(const RatVec& point, const std::vector<RatVec>& simplex) {
  if (!affinely_independent(simplex)) throw std::invalid_argument("barycentric: simplex not affinely independent");
  int n = static_cast<int>(point.size());
  int k = static_cast<int>(simplex.size());
  RatMat sys(n + 1, k);
  RatVec rhs(n + 1);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) sys(i, j) = simplex[j][i];
    sys(n, j) = 1;
  }
  for (int i = 0; i < n; ++i) rhs[i] = point[i];
  rhs[n] = 1;
  auto sol = solve_linear(sys, rhs);
  if (!sol) throw std::invalid_argument("barycentric: point not in affine hull");
  return *sol;
}

namespace detail {

// Carathéodory step: shrink lambda's support to an affinely independent set
// while keeping B lambda and the coordinate sum fixed. The dependence
// direction is oriented so the highest-index removable coordinate drops first.
inline RatVec caratheodory_reduce(const std::vector<RatVec>& bcols, RatVec lambda) {
  for (;;) {
    std::vector<int> supp;
    for (size_t j = 0; j < lambda.size(); ++j)
      if (lambda[j] != 0) supp.push_back(static_cast<int>(j));
    std::vector<RatVec> pts;
    for (int j : supp) pts.push_back(bcols[j]);
    if (affinely_independent(pts)) return lambda;

    int n = static_cast<int>(bcols[0].size());
    RatMat lifted(n + 1, static_cast<int>(supp.size()));
    for (size_t c = 0; c < supp.size(); ++c) {
      for (int i = 0; i < n; ++i) lifted(i, static_cast<int>(c)) = bcols[supp[c]][i];
      lifted(n, static_cast<int>(c)) = 1;
    }
    auto ker = nullspace(lifted);
    RatVec d = ker.front();

    auto zeroed_index = [&](bool flip) {
      Rat best_t;
      int best_idx = -1;
      for (size_t c = 0; c < supp.size(); ++c) {
        Rat dc = flip ? Rat(-d[c]) : d[c];
        if (dc > 0) {
          Rat t = lambda[supp[c]] / dc;
          if (best_idx < 0 || t < best_t || (t == best_t && supp[c] > best_idx)) {
            best_t = t;
            best_idx = supp[c];
          }
        }
      }
      return std::pair<int, Rat>(best_idx, best_t);
    };
    auto [iplus, tplus] = zeroed_index(false);
    auto [iminus, tminus] = zeroed_index(true);
    bool flip = iminus > iplus;
    Rat t = flip ? tminus : tplus;
    for (size_t c = 0; c < supp.size(); ++c) {
      Rat dc = flip ? Rat(-d[c]) : d[c];
      lambda[supp[c]] -= t * dc;
    }
  }
}

}  // namespace detail

// Splits a probability vector lambda with B lambda = h into a convex
// combination of simplicial-support vectors: extract a Carathéodory point,
// stretch t -> lambda1 + t(lambda - lambda1) to the last nonnegative T, and
// recurse on the endpoint with weight 1 - 1/T.
inline MixtureDecomposition decompose_mixture(const std::vector<RatVec>& bcols, const RatVec& h,
                                              const RatVec& lambda) {
  int d = static_cast<int>(bcols.size());
  if (static_cast<int>(lambda.size()) != d) throw std::invalid_argument("decompose_mixture: size mismatch");
  Rat sum(0);
  RatVec bl(h.size(), Rat(0));
  for (int j = 0; j < d; ++j) {
    if (lambda[j] < 0) throw std::invalid_argument("decompose_mixture: lambda not in the simplex");
    sum += lambda[j];
    for (size_t i = 0; i < h.size(); ++i) bl[i] += bcols[j][i] * lambda[j];
  }
  if (sum != 1) throw std::invalid_argument("decompose_mixture: lambda does not sum to 1");
  if (bl != h) throw std::invalid_argument("decompose_mixture: B lambda != h");

  MixtureDecomposition parts;
  RatVec cur = lambda;
  Rat weight(1);
  for (;;) {
    RatVec l1 = detail::caratheodory_reduce(bcols, cur);
    if (l1 == cur) {
      parts.push_back({cur, weight});
      break;
    }
    // T = max{t : l1 + t(cur - l1) >= 0}
    Rat T;
    bool unbounded = true;
    for (int j = 0; j < d; ++j) {
      Rat diff = cur[j] - l1[j];
      if (diff < 0) {
        Rat t = l1[j] / (l1[j] - cur[j]);
        if (unbounded || t < T) { T = t; unbounded = false; }
      }
    }
    if (unbounded) {  // cur >= l1 everywhere means cur == l1
      parts.push_back({cur, weight});
      break;
    }
    Rat z = 1 - 1 / T;
    parts.push_back({l1, weight * z});
    RatVec next(d);
    for (int j = 0; j < d; ++j) next[j] = l1[j] + T * (cur[j] - l1[j]);
    cur = std::move(next);
    weight *= (1 - z);
  }
  return parts;
}

inline bool check_mixture(const std::vector<RatVec>& bcols, const RatVec& lambda,
                          const MixtureDecomposition& parts) {
  Rat tsum(0);
  RatVec acc(lambda.size(), Rat(0));
  for (const auto& p : parts) {
    if (p.theta <= 0) return false;
    tsum += p.theta;
    std::vector<RatVec> pts;
    Rat lsum(0);
    for (size_t j = 0; j < p.lambda.size(); ++j) {
      if (p.lambda[j] < 0) return false;
      lsum += p.lambda[j];
      if (p.lambda[j] != 0) pts.push_back(bcols[j]);
      acc[j] += p.theta * p.lambda[j];
    }
    if (lsum != 1) return false;
    if (!affinely_independent(pts)) return false;
  }
  return tsum == 1 && acc == lambda;
}

// Searches for an exact witness (s, r) with s^T a = r on the block and
// s^T a <= r - delta off it, maximizing the margin delta under |s|_1 <= 1.
inline std::optional<FaceWitness> find_face_witness(const ExponentMatrix& a,
                                                    const std::vector<int>& block) {
  int n = a.n(), m = a.m();
  std::vector<bool> in_block(m, false);
  for (int j : block) in_block[j] = true;
  int off_count = m - static_cast<int>(block.size());

  // vars: s+ (n), s- (n), r+ , r-, delta, slack_j (off-block), norm slack
  int nv = 2 * n + 3 + off_count + 1;
  int vsp = 0, vsm = n, vrp = 2 * n, vrm = 2 * n + 1, vd = 2 * n + 2, vslack = 2 * n + 3;
  int vnorm = vslack + off_count;
  StandardLp lp(nv);
  for (int j : block) {
    RatVec row(nv, Rat(0));
    for (int i = 0; i < n; ++i) {
      row[vsp + i] = a.col(j)[i];
      row[vsm + i] = -a.col(j)[i];
    }
    row[vrp] = -1;
    row[vrm] = 1;
    lp.add_row(row, Rat(0));
  }
  int sidx = 0;
  for (int j = 0; j < m; ++j) {
    if (in_block[j]) continue;
    RatVec row(nv, Rat(0));
    for (int i = 0; i < n; ++i) {
      row[vsp + i] = a.col(j)[i];
      row[vsm + i] = -a.col(j)[i];
    }
    row[vrp] = -1;
    row[vrm] = 1;
    row[vd] = 1;
    row[vslack + sidx] = 1;
    lp.add_row(row, Rat(0));
    ++sidx;
  }
  {
    RatVec row(nv, Rat(0));
    for (int i = 0; i < n; ++i) { row[vsp + i] = 1; row[vsm + i] = 1; }
    row[vnorm] = 1;
    lp.add_row(row, Rat(1));
  }
  lp.set_cost(vd, Rat(-1));  // maximize delta
  auto res = lp.solve();
  if (res.status != LpStatus::Optimal) return std::nullopt;
  if (res.x[vd] <= 0) return std::nullopt;
  FaceWitness w;
  w.s.resize(n);
  for (int i = 0; i < n; ++i) w.s[i] = res.x[vsp + i] - res.x[vsm + i];
  w.r = res.x[vrp] - res.x[vrm];
  return w;
}

inline bool witness_verifies(const ExponentMatrix& a, const std::vector<int>& block,
                             const FaceWitness& w) {
  std::vector<bool> in_block(a.m(), false);
  for (int j : block) in_block[j] = true;
  for (int j = 0; j < a.m(); ++j) {
    Rat dot(0);
    for (int i = 0; i < a.n(); ++i) dot += w.s[i] * a.col(j)[i];
    if (in_block[j] && dot != w.r) return false;
    if (!in_block[j] && dot >= w.r) return false;
  }
  return true;
}

// Accepts iff every block's hull is an exposed face of Newt(A) containing
// exactly that block's columns. The trivial one-block partition always passes.
inline std::optional<FacePartition> verify_face_partition(const ExponentMatrix& a,
                                                          const std::vector<std::vector<int>>& blocks) {
  std::vector<bool> seen(a.m(), false);
  int count = 0;
  for (const auto& b : blocks) {
    for (int j : b) {
      if (j < 0 || j >= a.m() || seen[j]) throw std::invalid_argument("blocks do not partition the columns");
      seen[j] = true;
      ++count;
    }
  }
  if (count != a.m()) throw std::invalid_argument("blocks do not partition the columns");

  FacePartition fp;
  fp.blocks = blocks;
  if (blocks.size() == 1) {
    fp.witnesses.push_back(std::nullopt);
    return fp;
  }
  for (const auto& b : blocks) {
    auto w = find_face_witness(a, b);
    if (!w || !witness_verifies(a, b, *w)) return std::nullopt;
    fp.witnesses.push_back(std::move(w));
  }
  return fp;
}

namespace detail {

// largest t with a_j + t(a_j - a_k) in the hull; > 0 iff a_k lies on the
// minimal face of Newt(A) containing a_j
inline bool on_minimal_face(const ExponentMatrix& a, int j, int k) {
  int n = a.n(), m = a.m();
  // vars: lambda (m), t, cap slack
  int nv = m + 2;
  StandardLp lp(nv);
  for (int i = 0; i < n; ++i) {
    RatVec row(nv, Rat(0));
    for (int c = 0; c < m; ++c) row[c] = a.col(c)[i];
    row[m] = a.col(k)[i] - a.col(j)[i];
    lp.add_row(row, a.col(j)[i]);
  }
  {
    RatVec row(nv, Rat(0));
    for (int c = 0; c < m; ++c) row[c] = 1;
    lp.add_row(row, Rat(1));
  }
  {
    RatVec row(nv, Rat(0));
    row[m] = 1;
    row[m + 1] = 1;
    lp.add_row(row, Rat(1));  // cap t at 1
  }
  lp.set_cost(m, Rat(-1));  // maximize t
  auto res = lp.solve();
  return res.status == LpStatus::Optimal && res.x[m] > 0;
}

}  // namespace detail

// Best-effort discovery: group columns by shared minimal faces (union-find on
// the "lies on my minimal face" relation), then verify. Falls back to the
// trivial partition; never returns an unverified split.
inline FacePartition find_face_partition(const ExponentMatrix& a) {
  int m = a.m();
  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      if (j != k && detail::on_minimal_face(a, j, k)) unite(j, k);

  std::vector<std::vector<int>> groups(m);
  for (int j = 0; j < m; ++j) groups[find(j)].push_back(j);
  std::vector<std::vector<int>> blocks;
  for (auto& g : groups)
    if (!g.empty()) blocks.push_back(std::move(g));

  if (blocks.size() > 1) {
    auto fp = verify_face_partition(a, blocks);
    if (fp) return *fp;
  }
  FacePartition trivial;
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  trivial.blocks.push_back(std::move(all));
  trivial.witnesses.push_back(std::nullopt);
  return trivial;
}

// Exact rational basis of {nu over [m]\{i} : sum_j nu_j (a_j - a_i) = 0}.
// Rows of the returned matrix are indexed by [m]\{i} in column order.
inline std::vector<RatVec> kernel_basis(const ExponentMatrix& a, int i) {
  int n = a.n(), m = a.m();
  if (i < 0 || i >= m) throw std::invalid_argument("kernel_basis: bad index");
  RatMat sys(n, m - 1);
  int col = 0;
  for (int j = 0; j < m; ++j) {
    if (j == i) continue;
    for (int d = 0; d < n; ++d) sys(d, col) = a.col(j)[d] - a.col(i)[d];
    ++col;
  }
  return nullspace(sys);
}

}  // namespace sagecert
