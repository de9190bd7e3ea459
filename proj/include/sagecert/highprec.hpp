#pragma once

#include <mpfr.h>

#include <sagecert/rational.hpp>

#include <utility>

namespace sagecert {

// 256-bit floating point, just enough surface for entropy and weighted
// geometric-mean evaluations.
class Real256 {
 public:
  static constexpr int kBits = 256;

  Real256() { mpfr_init2(v_, kBits); mpfr_set_zero(v_, 1); }
  explicit Real256(double d) { mpfr_init2(v_, kBits); mpfr_set_d(v_, d, MPFR_RNDN); }
  explicit Real256(const Rat& q) { mpfr_init2(v_, kBits); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  Real256(const Real256& o) { mpfr_init2(v_, kBits); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real256(Real256&& o) noexcept { mpfr_init2(v_, kBits); mpfr_swap(v_, o.v_); }
  Real256& operator=(Real256 o) { mpfr_swap(v_, o.v_); return *this; }
  ~Real256() { mpfr_clear(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  friend Real256 operator+(const Real256& a, const Real256& b) {
    Real256 r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real256 operator-(const Real256& a, const Real256& b) {
    Real256 r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real256 operator*(const Real256& a, const Real256& b) {
    Real256 r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real256 operator/(const Real256& a, const Real256& b) {
    Real256 r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend bool operator<(const Real256& a, const Real256& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real256& a, const Real256& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }

  Real256 log() const { Real256 r; mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
  Real256 exp() const { Real256 r; mpfr_exp(r.v_, v_, MPFR_RNDN); return r; }

 private:
  mpfr_t v_;
};

// D(nu, e c) = sum_j nu_j (ln nu_j - ln c_j - 1), with 0 ln 0 = 0.
// Returns +inf (as a flag) when some nu_j > 0 has c_j <= 0.
struct RelEntResult {
  Real256 value;
  bool finite;
};

inline RelEntResult relative_entropy_shifted(const std::vector<Rat>& nu, const std::vector<double>& c) {
  RelEntResult out{Real256(0.0), true};
  Real256 one(1.0);
  for (size_t j = 0; j < nu.size(); ++j) {
    if (nu[j] == 0) continue;
    if (nu[j] < 0 || c[j] <= 0) { out.finite = false; return out; }
    Real256 n(nu[j]), cj(c[j]);
    out.value = out.value + n * (n.log() - cj.log() - one);
  }
  return out;
}

inline double relent_shifted_double(const std::vector<double>& nu, const std::vector<double>& c) {
  double acc = 0;
  for (size_t j = 0; j < nu.size(); ++j) {
    if (nu[j] <= 0) continue;
    if (c[j] <= 0) return std::numeric_limits<double>::infinity();
    acc += nu[j] * (std::log(nu[j] / c[j]) - 1.0);
  }
  return acc;
}

}  // namespace sagecert
