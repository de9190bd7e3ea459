#pragma once

#include <sagecert/expcone.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sagecert {

enum class BlockKind { Free, Nonneg, Exp };

struct ConeBlock {
  BlockKind kind;
  int size;  // Exp blocks have size exactly 3
};

struct TripletEntry {
  int row, col;
  double value;
};

// Conic standard form: min c^T x  s.t.  A x = b,  x in K,
// K an ordered product of free, nonnegative and exponential-cone blocks.
struct ConeProgram {
  int nvar = 0;
  int nrow = 0;
  std::vector<double> obj;
  std::vector<TripletEntry> entries;
  std::vector<double> rhs;
  std::vector<ConeBlock> blocks;

  void validate() const {
    int total = 0;
    for (const auto& b : blocks) {
      if (b.kind == BlockKind::Exp && b.size != 3) throw std::invalid_argument("exp block must have size 3");
      if (b.size <= 0) throw std::invalid_argument("bad block size");
      total += b.size;
    }
    if (total != nvar) throw std::invalid_argument("block sizes do not sum to the variable count");
    if (static_cast<int>(obj.size()) != nvar) throw std::invalid_argument("objective size mismatch");
    if (static_cast<int>(rhs.size()) != nrow) throw std::invalid_argument("rhs size mismatch");
    for (const auto& e : entries)
      if (e.row < 0 || e.row >= nrow || e.col < 0 || e.col >= nvar)
        throw std::invalid_argument("triplet index out of range");
  }

  int num_exp_blocks() const {
    int k = 0;
    for (const auto& b : blocks)
      if (b.kind == BlockKind::Exp) ++k;
    return k;
  }
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, IllPosed, IterLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::PrimalInfeasible: return "PrimalInfeasible";
    case SolveStatus::DualInfeasible: return "DualInfeasible";
    case SolveStatus::IllPosed: return "IllPosed";
    case SolveStatus::IterLimit: return "IterLimit";
  }
  return "?";
}

struct Solution {
  SolveStatus status = SolveStatus::IterLimit;
  std::vector<double> x, y, z;  // Optimal: scaled by 1/tau. Infeasible: certificate rays.
  double pobj = 0, dobj = 0;
  double res_primal = 0, res_dual = 0, rel_gap = 0;
  bool inaccurate = false;  // met only the acceptable tolerance tier
  int iters = 0;
};

struct ResidualReport {
  double primal_eq;     // ||A x - b||_inf
  double primal_cone;   // worst cone violation of x
  double dual_eq;       // ||A^T y + z - c||_inf
  double dual_cone;     // worst dual-cone violation of z
  double gap;           // |c^T x - b^T y|
  double farkas_eq;     // infeasibility certificates: ||A^T y + z||_inf (primal), ||A x||_inf (dual)
  double farkas_scale;  // b^T y (primal) or -c^T x (dual), positive for a valid ray
};

namespace detail {

inline double cone_violation(const std::vector<ConeBlock>& blocks, const std::vector<double>& x, bool dual) {
  double viol = 0.0;
  int off = 0;
  for (const auto& b : blocks) {
    if (b.kind == BlockKind::Nonneg) {
      for (int i = 0; i < b.size; ++i) viol = std::max(viol, -x[off + i]);
    } else if (b.kind == BlockKind::Exp) {
      viol = std::max(viol, dual ? expcone_dual_violation(x[off], x[off + 1], x[off + 2])
                                 : expcone_violation(x[off], x[off + 1], x[off + 2]));
    } else if (dual) {
      for (int i = 0; i < b.size; ++i) viol = std::max(viol, std::fabs(x[off + i]));
    }
    off += b.size;
  }
  return viol;
}

}  // namespace detail

// Recomputes feasibility and gap directly from the program data, independent
// of solver state.
inline ResidualReport residuals(const ConeProgram& p, const Solution& s) {
  if (static_cast<int>(s.x.size()) != p.nvar || static_cast<int>(s.y.size()) != p.nrow ||
      static_cast<int>(s.z.size()) != p.nvar)
    throw std::invalid_argument("residuals: dimension mismatch");
  ResidualReport r{};
  std::vector<double> ax(p.nrow, 0.0), aty(p.nvar, 0.0);
  for (const auto& e : p.entries) {
    ax[e.row] += e.value * s.x[e.col];
    aty[e.col] += e.value * s.y[e.row];
  }
  double peq = 0, deq = 0, f_eq = 0;
  for (int i = 0; i < p.nrow; ++i) peq = std::max(peq, std::fabs(ax[i] - p.rhs[i]));
  for (int j = 0; j < p.nvar; ++j) {
    deq = std::max(deq, std::fabs(aty[j] + s.z[j] - p.obj[j]));
    f_eq = std::max(f_eq, std::fabs(aty[j] + s.z[j]));
  }
  double cx = 0, by = 0, axn = 0;
  for (int j = 0; j < p.nvar; ++j) cx += p.obj[j] * s.x[j];
  for (int i = 0; i < p.nrow; ++i) by += p.rhs[i] * s.y[i];
  for (int i = 0; i < p.nrow; ++i) axn = std::max(axn, std::fabs(ax[i]));

  r.primal_eq = peq;
  r.dual_eq = deq;
  r.gap = std::fabs(cx - by);
  r.primal_cone = detail::cone_violation(p.blocks, s.x, false);
  r.dual_cone = detail::cone_violation(p.blocks, s.z, true);
  if (s.status == SolveStatus::PrimalInfeasible) {
    r.farkas_eq = f_eq;
    r.farkas_scale = by;
  } else if (s.status == SolveStatus::DualInfeasible) {
    r.farkas_eq = axn;
    r.farkas_scale = -cx;
  } else {
    r.farkas_eq = 0;
    r.farkas_scale = 0;
  }
  return r;
}

// Line-based text dump with shortest round-trip doubles; reload is bit exact.
namespace detail {
inline std::string dtos(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
}  // namespace detail

inline void dump(const ConeProgram& p, std::ostream& os) {
  os << "coneprog v1\n";
  os << "dims " << p.nvar << " " << p.nrow << "\n";
  os << "blocks";
  for (const auto& b : p.blocks) {
    char k = b.kind == BlockKind::Free ? 'f' : (b.kind == BlockKind::Nonneg ? 'l' : 'e');
    os << " " << k << b.size;
  }
  os << "\nobj";
  for (double v : p.obj) os << " " << detail::dtos(v);
  os << "\nrhs";
  for (double v : p.rhs) os << " " << detail::dtos(v);
  os << "\nnnz " << p.entries.size() << "\n";
  for (const auto& e : p.entries) os << e.row << " " << e.col << " " << detail::dtos(e.value) << "\n";
  os << "end\n";
}

inline ConeProgram load(std::istream& is) {
  ConeProgram p;
  std::string tok;
  is >> tok;
  if (tok != "coneprog") throw std::invalid_argument("bad program header");
  is >> tok;  // version
  is >> tok >> p.nvar >> p.nrow;
  is >> tok;  // "blocks"
  std::string line;
  std::getline(is, line);
  {
    std::istringstream ls(line);
    std::string bs;
    while (ls >> bs) {
      ConeBlock b;
      b.kind = bs[0] == 'f' ? BlockKind::Free : (bs[0] == 'l' ? BlockKind::Nonneg : BlockKind::Exp);
      b.size = std::stoi(bs.substr(1));
      p.blocks.push_back(b);
    }
  }
  auto read_doubles = [&is](int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
      std::string t;
      is >> t;
      double d;
      auto res = std::from_chars(t.data(), t.data() + t.size(), d);
      if (res.ec != std::errc()) throw std::invalid_argument("bad number in program file");
      v[i] = d;
    }
    return v;
  };
  is >> tok;  // "obj"
  p.obj = read_doubles(p.nvar);
  is >> tok;  // "rhs"
  p.rhs = read_doubles(p.nrow);
  std::size_t nnz;
  is >> tok >> nnz;
  for (std::size_t k = 0; k < nnz; ++k) {
    TripletEntry e;
    std::string t;
    is >> e.row >> e.col >> t;
    auto res = std::from_chars(t.data(), t.data() + t.size(), e.value);
    if (res.ec != std::errc()) throw std::invalid_argument("bad number in program file");
    p.entries.push_back(e);
  }
  is >> tok;
  if (tok != "end") throw std::invalid_argument("bad program trailer");
  p.validate();
  return p;
}

}  // namespace sagecert
