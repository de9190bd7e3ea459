#pragma once

#include <cmath>
#include <limits>

namespace sagecert {

// K_exp = cl{ (u,v,w) : v exp(u/v) <= w, v > 0 },
// dual cone K_exp^dag = cl{ (p,q,r) : p < 0, q >= p - p ln(-p/r), r > 0 }.

inline double expcone_zeta(double u, double v, double w) {
  return v * std::log(w / v) - u;
}

inline bool expcone_interior(double u, double v, double w) {
  return v > 0 && w > 0 && expcone_zeta(u, v, w) > 0;
}

inline bool expcone_member(double u, double v, double w, double tol = 0.0) {
  if (v < -tol || w < -tol) return false;
  if (v <= tol) return u <= tol && w >= -tol;
  if (w <= tol) return false;
  return v * std::log(w / v) - u >= -tol;
}

// closure convention at v = 0: u <= 0, w >= 0
inline double expcone_violation(double u, double v, double w) {
  double viol = 0.0;
  viol = std::max(viol, -v);
  viol = std::max(viol, -w);
  if (v > 0 && w > 0) {
    viol = std::max(viol, u - v * std::log(w / v));
  } else if (v > 0 && w <= 0) {
    viol = std::max(viol, v);
  } else {
    viol = std::max(viol, u);
  }
  return viol;
}

inline bool expcone_dual_interior(double p, double q, double r) {
  return p < 0 && r > 0 && q > p - p * std::log(-p / r);
}

inline bool expcone_dual_member(double p, double q, double r, double tol = 0.0) {
  if (p > tol || r < -tol) return false;
  if (p >= -tol) return q >= -tol && r >= -tol;
  if (r <= tol) return false;
  return q - p + p * std::log(-p / r) >= -tol;
}

inline double expcone_dual_violation(double p, double q, double r) {
  double viol = 0.0;
  viol = std::max(viol, p);
  viol = std::max(viol, -r);
  if (p < 0 && r > 0) {
    viol = std::max(viol, (p - p * std::log(-p / r)) - q);
  } else if (p < 0) {
    viol = std::max(viol, -p);
  } else {
    viol = std::max(viol, -q);
  }
  return viol;
}

// 3-logarithmically-homogeneous barrier F(u,v,w) = -ln(zeta) - ln v - ln w.
struct ExpBarrier {
  double g[3];     // gradient
  double h[3][3];  // Hessian
};

inline ExpBarrier expcone_barrier(double u, double v, double w) {
  ExpBarrier b;
  double lwv = std::log(w / v);
  double zeta = v * lwv - u;
  double gz[3] = {-1.0, lwv - 1.0, v / w};  // grad of zeta
  double iz = 1.0 / zeta;

  b.g[0] = iz;
  b.g[1] = -gz[1] * iz - 1.0 / v;
  b.g[2] = -gz[2] * iz - 1.0 / w;

  // hess(F) = gz gz^T / zeta^2 - hess(zeta)/zeta + diag(0, 1/v^2, 1/w^2)
  double hz[3][3] = {{0, 0, 0}, {0, -1.0 / v, 1.0 / w}, {0, 1.0 / w, -v / (w * w)}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b.h[i][j] = gz[i] * gz[j] * iz * iz - hz[i][j] * iz;
  b.h[1][1] += 1.0 / (v * v);
  b.h[2][2] += 1.0 / (w * w);
  return b;
}

}  // namespace sagecert
