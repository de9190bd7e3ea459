#pragma once

#include <sagecert/cone_program.hpp>
#include <sagecert/expcone.hpp>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace sagecert {

struct SolverOptions {
  double tol_feas = 1e-8;
  double tol_gap = 1e-8;
  double tol_inf = 1e-9;
  // acceptance tier when the step size collapses at the floating-point floor
  // of the central path; solutions in this tier are returned as Optimal with
  // Solution::inaccurate set and their true residuals reported
  double tol_feas_acceptable = 1e-6;
  double tol_gap_acceptable = 1e-7;
  int max_iter = 200;
  bool verbose = false;
};

// Homogeneous self-dual interior-point method for
//   min c^T x  s.t.  A x = b,  x in K,
// K a product of free, nonnegative and exponential-cone blocks.
//
// Central-path following on the embedding (x, y, z, tau, kappa) with
// Mehrotra predictor-corrector on the symmetric part and damped steps on the
// exponential blocks. The KKT system is a quasi-definite LDL^T solve with
// static regularization and two rounds of iterative refinement. Infeasibility
// emerges as a Farkas certificate via tau/kappa.
class ExpConeSolver {
 public:
  ExpConeSolver(const ConeProgram& prog, const SolverOptions& opts) : p_(prog), o_(opts) {
    prog.validate();
  }

  Solution run() {
    presolve();
    if (early_) return early_sol_;
    scale();
    init_point();
    build_pattern();

    Solution best;
    double best_err = std::numeric_limits<double>::infinity();
    int stall = 0;

    // once tolerances are met keep polishing briefly; boundary instances gain
    // one or two digits that certificate extraction later spends
    Solution met;
    double met_err = std::numeric_limits<double>::infinity();
    bool met_found = false;
    int polish = 0;
    const double ultra = 1e-2 * std::min(o_.tol_feas, o_.tol_gap);

    for (iter_ = 0; iter_ <= o_.max_iter; ++iter_) {
      compute_mu();
      Solution cand;
      double err;
      bool done = check_termination(cand, err);
      if (done && cand.status != SolveStatus::Optimal) return cand;
      if (done) {
        met_found = true;
        if (err < met_err) { met_err = err; met = cand; }
        if (err <= ultra || ++polish >= 8) return met;
      } else if (met_found && ++polish >= 8) {
        return met;
      }
      if (err < best_err) { best_err = err; best = cand; }
      if (iter_ == o_.max_iter) break;

      factor_kkt();

      // predictor
      Direction aff = direction(0.0, nullptr);
      double a_aff = step_length(aff);
      double mu_aff = mu_after(aff, a_aff);
      double sigma = std::pow(std::max(0.0, mu_aff / mu_), 3.0);
      sigma = std::min(1.0, std::max(1e-8, sigma));

      // corrector
      Direction dir = direction(sigma, &aff);
      double alpha = 0.98 * step_length(dir, "comb");
      if (alpha < 1e-7) {  // centering fallback
        dir = direction(1.0, nullptr);
        alpha = 0.98 * step_length(dir, "cent");
      }
      if (alpha < 1e-6) {
        if (met_found) return met;
        if (++stall >= 5) break;  // step collapse at the numerical floor
      } else {
        stall = 0;
      }
      if (o_.verbose)
        std::fprintf(stderr, "it %3d mu %9.2e tau %9.2e kappa %9.2e sigma %5.3f alpha %7.5f pres %9.2e dres %9.2e gap %9.2e\n",
                     iter_, mu_, tau_, kappa_, sigma, alpha, cand.res_primal, cand.res_dual, cand.rel_gap);
      take_step(dir, alpha);
    }

    if (met_found) {
      met.iters = iter_;
      return met;
    }
    // stalled or out of iterations: accept the relaxed optimality tier, then
    // relaxed infeasibility certificates, else classify
    if (best.res_primal <= o_.tol_feas_acceptable && best.res_dual <= o_.tol_feas_acceptable &&
        best.rel_gap <= o_.tol_gap_acceptable) {
      best.status = SolveStatus::Optimal;
      best.inaccurate = true;
    } else if (pinf_quality_ <= std::max(1e3 * o_.tol_inf, 1e-6)) {
      best = inf_candidate_p_;
      best.status = SolveStatus::PrimalInfeasible;
      best.inaccurate = true;
    } else if (dinf_quality_ <= std::max(1e3 * o_.tol_inf, 1e-6)) {
      best = inf_candidate_d_;
      best.status = SolveStatus::DualInfeasible;
      best.inaccurate = true;
    } else if (mu_ < 1e-10 || (tau_ < 1e-8 && kappa_ < 1e-8)) {
      // complementarity vanished without a verifiable optimum or certificate
      best.status = SolveStatus::IllPosed;
    } else {
      best.status = SolveStatus::IterLimit;
    }
    best.iters = iter_;
    return best;
  }

 private:
  struct Direction {
    std::vector<double> dx, dy, dz;
    double dtau = 0, dkappa = 0;
  };

  const ConeProgram& p_;
  SolverOptions o_;

  bool early_ = false;
  Solution early_sol_;

  // consolidated matrix in original scaling
  std::vector<TripletEntry> a_;
  std::vector<double> b0_, c0_;
  std::vector<int> row_map_;  // original row -> compact row (-1 dropped)
  int nrow_ = 0, nvar_ = 0;

  // scaled data
  std::vector<double> as_;  // values aligned with a_
  std::vector<double> bs_, cs_;
  std::vector<double> rowscale_, colscale_;
  double bscale_ = 1, cscale_ = 1;

  // iterate
  std::vector<double> x_, y_, z_;
  double tau_ = 1, kappa_ = 1, mu_ = 1, theta_ = 0;
  int iter_ = 0;

  Eigen::SparseMatrix<double> kkt_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  static constexpr double kReg = 1e-10;

  // best infeasibility certificates seen, for exit-time classification
  double pinf_quality_ = std::numeric_limits<double>::infinity();
  double dinf_quality_ = std::numeric_limits<double>::infinity();
  Solution inf_candidate_p_, inf_candidate_d_;

  void presolve() {
    nvar_ = p_.nvar;
    // consolidate duplicate triplets
    std::vector<TripletEntry> ents = p_.entries;
    std::sort(ents.begin(), ents.end(), [](const TripletEntry& a, const TripletEntry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<TripletEntry> merged;
    for (const auto& e : ents) {
      if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
        merged.back().value += e.value;
      else
        merged.push_back(e);
    }
    std::vector<bool> nonempty(p_.nrow, false);
    for (const auto& e : merged)
      if (e.value != 0.0) nonempty[e.row] = true;
    row_map_.assign(p_.nrow, -1);
    for (int i = 0; i < p_.nrow; ++i) {
      if (nonempty[i]) {
        row_map_[i] = nrow_++;
      } else if (p_.rhs[i] != 0.0) {
        // empty row with nonzero rhs: exact Farkas certificate
        early_ = true;
        early_sol_.status = SolveStatus::PrimalInfeasible;
        early_sol_.x.assign(p_.nvar, 0.0);
        early_sol_.z.assign(p_.nvar, 0.0);
        early_sol_.y.assign(p_.nrow, 0.0);
        early_sol_.y[i] = 1.0 / p_.rhs[i];
        return;
      }
    }
    b0_.assign(nrow_, 0.0);
    for (int i = 0; i < p_.nrow; ++i)
      if (row_map_[i] >= 0) b0_[row_map_[i]] = p_.rhs[i];
    for (auto& e : merged)
      if (e.value != 0.0 && row_map_[e.row] >= 0)
        a_.push_back({row_map_[e.row], e.col, e.value});
    c0_ = p_.obj;
  }

  // Ruiz equilibration, 3 passes, uniform scale inside each exp block so
  // cone membership is preserved; then scalar normalization of b and c.
  void scale() {
    rowscale_.assign(nrow_, 1.0);
    colscale_.assign(nvar_, 1.0);
    as_.resize(a_.size());
    for (size_t k = 0; k < a_.size(); ++k) as_[k] = a_[k].value;

    for (int pass = 0; pass < 3; ++pass) {
      std::vector<double> rmax(nrow_, 0.0), cmax(nvar_, 0.0);
      for (size_t k = 0; k < a_.size(); ++k) {
        double v = std::fabs(as_[k]);
        rmax[a_[k].row] = std::max(rmax[a_[k].row], v);
        cmax[a_[k].col] = std::max(cmax[a_[k].col], v);
      }
      // uniform scaling per exp block
      int off = 0;
      for (const auto& blk : p_.blocks) {
        if (blk.kind == BlockKind::Exp) {
          double g = 0.0;
          int cnt = 0;
          for (int i = 0; i < 3; ++i)
            if (cmax[off + i] > 0) { g += std::log(cmax[off + i]); ++cnt; }
          double gm = cnt ? std::exp(g / cnt) : 1.0;
          for (int i = 0; i < 3; ++i) cmax[off + i] = gm;
        }
        off += blk.size;
      }
      std::vector<double> rs(nrow_), csc(nvar_);
      for (int i = 0; i < nrow_; ++i) rs[i] = rmax[i] > 0 ? 1.0 / std::sqrt(rmax[i]) : 1.0;
      for (int j = 0; j < nvar_; ++j) csc[j] = cmax[j] > 0 ? 1.0 / std::sqrt(cmax[j]) : 1.0;
      for (size_t k = 0; k < a_.size(); ++k) as_[k] *= rs[a_[k].row] * csc[a_[k].col];
      for (int i = 0; i < nrow_; ++i) rowscale_[i] *= rs[i];
      for (int j = 0; j < nvar_; ++j) colscale_[j] *= csc[j];
    }
    bs_.resize(nrow_);
    cs_.resize(nvar_);
    double bmax = 0, cmax = 0;
    for (int i = 0; i < nrow_; ++i) { bs_[i] = rowscale_[i] * b0_[i]; bmax = std::max(bmax, std::fabs(bs_[i])); }
    for (int j = 0; j < nvar_; ++j) { cs_[j] = colscale_[j] * c0_[j]; cmax = std::max(cmax, std::fabs(cs_[j])); }
    bscale_ = 1.0 / std::max(1.0, bmax);
    cscale_ = 1.0 / std::max(1.0, cmax);
    for (auto& v : bs_) v *= bscale_;
    for (auto& v : cs_) v *= cscale_;
  }

  void init_point() {
    x_.assign(nvar_, 0.0);
    z_.assign(nvar_, 0.0);
    y_.assign(nrow_, 0.0);
    tau_ = kappa_ = 1.0;
    theta_ = 0.0;
    int off = 0;
    for (const auto& blk : p_.blocks) {
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) { x_[off + i] = 1.0; z_[off + i] = 1.0; }
        theta_ += blk.size;
      } else if (blk.kind == BlockKind::Exp) {
        x_[off] = 0.0; x_[off + 1] = 1.0; x_[off + 2] = 2.0;
        auto bar = expcone_barrier(x_[off], x_[off + 1], x_[off + 2]);
        for (int i = 0; i < 3; ++i) z_[off + i] = -bar.g[i];
        theta_ += 3;
      }
      off += blk.size;
    }
  }

  void compute_mu() {
    double s = tau_ * kappa_;
    for (int j = 0; j < nvar_; ++j) s += x_[j] * z_[j];
    mu_ = s / (theta_ + 1.0);
  }

  // residuals of the embedding, scaled space
  void embedding_residuals(std::vector<double>& rd, std::vector<double>& rp, double& rg) const {
    rd.assign(nvar_, 0.0);
    rp.assign(nrow_, 0.0);
    for (int j = 0; j < nvar_; ++j) rd[j] = cs_[j] * tau_ - z_[j];
    for (int i = 0; i < nrow_; ++i) rp[i] = bs_[i] * tau_;
    for (size_t k = 0; k < a_.size(); ++k) {
      rd[a_[k].col] -= as_[k] * y_[a_[k].row];
      rp[a_[k].row] -= as_[k] * x_[a_[k].col];
    }
    double cx = 0, by = 0;
    for (int j = 0; j < nvar_; ++j) cx += cs_[j] * x_[j];
    for (int i = 0; i < nrow_; ++i) by += bs_[i] * y_[i];
    rg = kappa_ + cx - by;
  }

  void build_pattern() {
    int dim = nvar_ + nrow_;
    std::vector<Eigen::Triplet<double>> tr;
    int off = 0;
    for (const auto& blk : p_.blocks) {
      if (blk.kind == BlockKind::Exp) {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) tr.emplace_back(off + i, off + j, i == j ? -1.0 : 0.0);
      } else {
        for (int i = 0; i < blk.size; ++i) tr.emplace_back(off + i, off + i, -1.0);
      }
      off += blk.size;
    }
    for (size_t k = 0; k < a_.size(); ++k) {
      tr.emplace_back(nvar_ + a_[k].row, a_[k].col, as_[k]);
      tr.emplace_back(a_[k].col, nvar_ + a_[k].row, as_[k]);
    }
    for (int i = 0; i < nrow_; ++i) tr.emplace_back(nvar_ + i, nvar_ + i, kReg);
    kkt_.resize(dim, dim);
    kkt_.setFromTriplets(tr.begin(), tr.end());
    kkt_.makeCompressed();
    ldlt_.analyzePattern(kkt_);
  }

  // H block-diagonal scaling: orthant z/x, exp mu * hess F(x), free 0.
  void factor_kkt() {
    // overwrite values in the sparse matrix
    int off = 0;
    for (const auto& blk : p_.blocks) {
      if (blk.kind == BlockKind::Free) {
        for (int i = 0; i < blk.size; ++i) set_kkt(off + i, off + i, -kReg);
      } else if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i)
          set_kkt(off + i, off + i, -(z_[off + i] / x_[off + i]) - kReg);
      } else {
        auto bar = expcone_barrier(x_[off], x_[off + 1], x_[off + 2]);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            set_kkt(off + i, off + j, -mu_ * bar.h[i][j] - (i == j ? kReg : 0.0));
      }
      off += blk.size;
    }
    ldlt_.factorize(kkt_);
    if (ldlt_.info() != Eigen::Success) {
      // bump regularization until factorization succeeds
      double reg = kReg * 100;
      while (reg <= 1e-4) {
        int o2 = 0;
        for (const auto& blk : p_.blocks) {
          for (int i = 0; i < blk.size; ++i) add_kkt(o2 + i, o2 + i, -reg);
          o2 += blk.size;
        }
        for (int i = 0; i < nrow_; ++i) add_kkt(nvar_ + i, nvar_ + i, reg);
        ldlt_.factorize(kkt_);
        if (ldlt_.info() == Eigen::Success) break;
        reg *= 100;
      }
    }
  }

  void set_kkt(int r, int c, double v) { kkt_.coeffRef(r, c) = v; }
  void add_kkt(int r, int c, double v) { kkt_.coeffRef(r, c) += v; }

  // K u = rhs with 2 rounds of refinement against the unregularized system
  Eigen::VectorXd solve_kkt(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd u = ldlt_.solve(rhs);
    for (int round = 0; round < 2; ++round) {
      Eigen::VectorXd r = rhs - kkt_ * u;
      // the stored matrix carries the regularization; undo it in the residual
      for (int j = 0; j < nvar_; ++j) r[j] -= kReg * u[j];
      for (int i = 0; i < nrow_; ++i) r[nvar_ + i] += kReg * u[nvar_ + i];
      u += ldlt_.solve(r);
    }
    return u;
  }

  // scaled residual row of the complementarity linearization
  //   dz + H dx = -psi
  void centering_psi(double sigma, const Direction* aff, std::vector<double>& psi) const {
    psi.assign(nvar_, 0.0);
    int off = 0;
    for (const auto& blk : p_.blocks) {
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) {
          int j = off + i;
          double corr = aff ? aff->dx[j] * aff->dz[j] : 0.0;
          psi[j] = z_[j] - sigma * mu_ / x_[j] + corr / x_[j];
        }
      } else if (blk.kind == BlockKind::Exp) {
        auto bar = expcone_barrier(x_[off], x_[off + 1], x_[off + 2]);
        for (int i = 0; i < 3; ++i) psi[off + i] = z_[off + i] + sigma * mu_ * bar.g[i];
      }
      off += blk.size;
    }
  }

  Direction direction(double sigma, const Direction* aff) const {
    std::vector<double> rd, rp;
    double rg;
    embedding_residuals(rd, rp, rg);
    std::vector<double> psi;
    centering_psi(sigma, aff, psi);

    int dim = nvar_ + nrow_;
    Eigen::VectorXd rhs1(dim), rhs2(dim);
    double f = 1.0 - sigma;
    for (int j = 0; j < nvar_; ++j) {
      rhs1[j] = f * rd[j] + psi[j];
      rhs2[j] = cs_[j];
    }
    for (int i = 0; i < nrow_; ++i) {
      rhs1[nvar_ + i] = f * rp[i];
      rhs2[nvar_ + i] = bs_[i];
    }
    Eigen::VectorXd u1 = solve_kkt(rhs1);
    Eigen::VectorXd u2 = solve_kkt(rhs2);

    double corr_tk = aff ? aff->dtau * aff->dkappa : 0.0;
    double e_rhs = sigma * mu_ - tau_ * kappa_ - corr_tk;

    double cu1 = 0, cu2 = 0, bu1 = 0, bu2 = 0;
    for (int j = 0; j < nvar_; ++j) { cu1 += cs_[j] * u1[j]; cu2 += cs_[j] * u2[j]; }
    for (int i = 0; i < nrow_; ++i) { bu1 += bs_[i] * u1[nvar_ + i]; bu2 += bs_[i] * u2[nvar_ + i]; }

    double den = cu2 - bu2 - kappa_ / tau_;
    double num = -f * rg - e_rhs / tau_ - cu1 + bu1;
    double dtau = std::fabs(den) > 1e-300 ? num / den : 0.0;

    Direction d;
    d.dx.resize(nvar_);
    d.dy.resize(nrow_);
    d.dz.resize(nvar_);
    for (int j = 0; j < nvar_; ++j) d.dx[j] = u1[j] + dtau * u2[j];
    for (int i = 0; i < nrow_; ++i) d.dy[i] = u1[nvar_ + i] + dtau * u2[nvar_ + i];
    d.dtau = dtau;
    d.dkappa = (e_rhs - kappa_ * dtau) / tau_;

    // dz from the linearized complementarity; free blocks stay exactly zero
    int off = 0;
    for (const auto& blk : p_.blocks) {
      if (blk.kind == BlockKind::Free) {
        for (int i = 0; i < blk.size; ++i) d.dz[off + i] = 0.0;
      } else if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) {
          int j = off + i;
          d.dz[j] = -(z_[j] / x_[j]) * d.dx[j] - psi[j];
        }
      } else {
        auto bar = expcone_barrier(x_[off], x_[off + 1], x_[off + 2]);
        for (int i = 0; i < 3; ++i) {
          double acc = 0;
          for (int j = 0; j < 3; ++j) acc += mu_ * bar.h[i][j] * d.dx[off + j];
          d.dz[off + i] = -acc - psi[off + i];
        }
      }
      off += blk.size;
    }
    return d;
  }

  double step_length(const Direction& d, const char* tag = nullptr) const {
    double a = 1.0;
    int off = 0;
    for (const auto& blk : p_.blocks) {
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) {
          int j = off + i;
          if (d.dx[j] < 0) a = std::min(a, -x_[j] / d.dx[j] * 0.9995);
          if (d.dz[j] < 0) a = std::min(a, -z_[j] / d.dz[j] * 0.9995);
        }
      }
      off += blk.size;
    }
    double a_orth = a;
    if (d.dtau < 0) a = std::min(a, -tau_ / d.dtau * 0.9995);
    if (d.dkappa < 0) a = std::min(a, -kappa_ / d.dkappa * 0.9995);
    double a_tk = a;

    auto ok = [&](double alpha) {
      int o = 0;
      for (const auto& blk : p_.blocks) {
        if (blk.kind == BlockKind::Exp) {
          if (!expcone_interior(x_[o] + alpha * d.dx[o], x_[o + 1] + alpha * d.dx[o + 1],
                                x_[o + 2] + alpha * d.dx[o + 2]))
            return false;
          if (!expcone_dual_interior(z_[o] + alpha * d.dz[o], z_[o + 1] + alpha * d.dz[o + 1],
                                     z_[o + 2] + alpha * d.dz[o + 2]))
            return false;
        }
        o += blk.size;
      }
      return true;
    };
    while (a > 1e-11 && !ok(a)) a *= 0.8;
    double a_exp = a;

    // keep exponential blocks and tau*kappa from racing to the boundary
    auto balanced = [&](double alpha) {
      double m = (tau_ + alpha * d.dtau) * (kappa_ + alpha * d.dkappa);
      int o = 0;
      double total = m;
      std::vector<double> blocks_mu;
      for (const auto& blk : p_.blocks) {
        if (blk.kind == BlockKind::Exp) {
          double s = 0;
          for (int i = 0; i < 3; ++i)
            s += (x_[o + i] + alpha * d.dx[o + i]) * (z_[o + i] + alpha * d.dz[o + i]);
          blocks_mu.push_back(s / 3.0);
          total += s;
        } else if (blk.kind == BlockKind::Nonneg) {
          for (int i = 0; i < blk.size; ++i)
            total += (x_[o + i] + alpha * d.dx[o + i]) * (z_[o + i] + alpha * d.dz[o + i]);
        }
        o += blk.size;
      }
      double mu_new = total / (theta_ + 1.0);
      if (mu_new <= 0) return false;
      double eta = 1e-6;
      if (m < eta * mu_new) return false;
      for (double bm : blocks_mu)
        if (bm < eta * mu_new) return false;
      return true;
    };
    while (a > 1e-11 && !balanced(a)) a *= 0.8;
    if (tag && o_.verbose)
      std::fprintf(stderr, "  [%s] a_orth %8.2e a_tk %8.2e a_exp %8.2e a_bal %8.2e\n", tag, a_orth,
                   a_tk, a_exp, a);
    return a;
  }

  double mu_after(const Direction& d, double a) const {
    double s = (tau_ + a * d.dtau) * (kappa_ + a * d.dkappa);
    for (int j = 0; j < nvar_; ++j) s += (x_[j] + a * d.dx[j]) * (z_[j] + a * d.dz[j]);
    return s / (theta_ + 1.0);
  }

  void take_step(const Direction& d, double a) {
    for (int j = 0; j < nvar_; ++j) { x_[j] += a * d.dx[j]; z_[j] += a * d.dz[j]; }
    for (int i = 0; i < nrow_; ++i) y_[i] += a * d.dy[i];
    tau_ += a * d.dtau;
    kappa_ += a * d.dkappa;
  }

  // maps a scaled iterate back to the original data
  void unscale(std::vector<double>& xu, std::vector<double>& yu, std::vector<double>& zu) const {
    xu.assign(nvar_, 0.0);
    zu.assign(nvar_, 0.0);
    yu.assign(p_.nrow, 0.0);
    for (int j = 0; j < nvar_; ++j) {
      xu[j] = colscale_[j] * x_[j] / bscale_;
      zu[j] = z_[j] / colscale_[j] / cscale_;
    }
    for (int i = 0; i < p_.nrow; ++i)
      if (row_map_[i] >= 0) yu[i] = rowscale_[row_map_[i]] * y_[row_map_[i]] / cscale_;
  }

  bool check_termination(Solution& out, double& err) {
    std::vector<double> xu, yu, zu;
    unscale(xu, yu, zu);

    // unscaled residuals at the affine point (divide by tau)
    std::vector<double> ax(p_.nrow, 0.0), aty(p_.nvar, 0.0);
    for (const auto& e : p_.entries) {
      ax[e.row] += e.value * xu[e.col];
      aty[e.col] += e.value * yu[e.row];
    }
    double bnorm = 0, cnorm = 0;
    for (double v : p_.rhs) bnorm = std::max(bnorm, std::fabs(v));
    for (double v : p_.obj) cnorm = std::max(cnorm, std::fabs(v));
    double cx = 0, by = 0;
    for (int j = 0; j < p_.nvar; ++j) cx += p_.obj[j] * xu[j];
    for (int i = 0; i < p_.nrow; ++i) by += p_.rhs[i] * yu[i];

    double pres = 0, dres = 0, axnorm = 0, atyz = 0;
    for (int i = 0; i < p_.nrow; ++i) {
      pres = std::max(pres, std::fabs(ax[i] - p_.rhs[i] * tau_));
      axnorm = std::max(axnorm, std::fabs(ax[i]));
    }
    for (int j = 0; j < p_.nvar; ++j) {
      dres = std::max(dres, std::fabs(aty[j] + zu[j] - p_.obj[j] * tau_));
      atyz = std::max(atyz, std::fabs(aty[j] + zu[j]));
    }
    double pres_rel = pres / tau_ / (1.0 + bnorm);
    double dres_rel = dres / tau_ / (1.0 + cnorm);
    double pobj = cx / tau_, dobj = by / tau_;
    double gap_rel = std::fabs(pobj - dobj) / (1.0 + std::max(std::fabs(pobj), std::fabs(dobj)));

    err = std::max({pres_rel, dres_rel, gap_rel});
    out.iters = iter_;
    out.x = xu;
    out.y = yu;
    out.z = zu;
    for (auto& v : out.x) v /= tau_;
    for (auto& v : out.y) v /= tau_;
    for (auto& v : out.z) v /= tau_;
    out.pobj = pobj;
    out.dobj = dobj;
    out.res_primal = pres_rel;
    out.res_dual = dres_rel;
    out.rel_gap = gap_rel;
    out.status = SolveStatus::IterLimit;

    if (pres_rel <= o_.tol_feas && dres_rel <= o_.tol_feas && gap_rel <= o_.tol_gap) {
      out.status = SolveStatus::Optimal;
      return true;
    }

    // infeasibility certificates (rays, unscaled, not divided by tau)
    if (by > 0) {
      double q = atyz / by * (1.0 + cnorm);
      if (q < pinf_quality_) {
        pinf_quality_ = q;
        inf_candidate_p_ = out;
        inf_candidate_p_.x = xu;
        inf_candidate_p_.y = yu;
        inf_candidate_p_.z = zu;
        for (auto& v : inf_candidate_p_.y) v /= by;
        for (auto& v : inf_candidate_p_.z) v /= by;
        inf_candidate_p_.pobj = inf_candidate_p_.dobj = 0;
      }
      if (q <= std::max(o_.tol_inf, 1e-2 * o_.tol_feas) || (q <= 1e3 * o_.tol_inf && tau_ < 1e-9)) {
        out = inf_candidate_p_;
        out.status = SolveStatus::PrimalInfeasible;
        return true;
      }
    }
    if (cx < 0) {
      double q = axnorm / (-cx) * (1.0 + bnorm);
      if (q < dinf_quality_) {
        dinf_quality_ = q;
        inf_candidate_d_ = out;
        inf_candidate_d_.x = xu;
        for (auto& v : inf_candidate_d_.x) v /= -cx;
        inf_candidate_d_.y = yu;
        inf_candidate_d_.z = zu;
        inf_candidate_d_.pobj = inf_candidate_d_.dobj = 0;
      }
      if (q <= std::max(o_.tol_inf, 1e-2 * o_.tol_feas) || (q <= 1e3 * o_.tol_inf && tau_ < 1e-9)) {
        out = inf_candidate_d_;
        out.status = SolveStatus::DualInfeasible;
        return true;
      }
    }
    return false;
  }
};

inline Solution solve(const ConeProgram& prog, const SolverOptions& opts = {}) {
  ExpConeSolver s(prog, opts);
  return s.run();
}

}  // namespace sagecert
