#include <catch2/catch.hpp>

#include <sagecert/decompose.hpp>
#include <sagecert/polyform.hpp>

#include <set>

using namespace sagecert;

namespace {

RatVec rv(std::initializer_list<const char*> vals) {
  RatVec v;
  for (const char* s : vals) v.push_back(parse_rational(s));
  return v;
}

ExponentMatrix em1(std::initializer_list<const char*> exps) {
  std::vector<RatVec> cols;
  for (const char* e : exps) cols.push_back(rv({e}));
  return ExponentMatrix(1, cols);
}

bool is_simplicial_circuit(const ExponentMatrix& A, const std::vector<double>& cvec) {
  std::vector<RatVec> pts;
  for (int j = 0; j < A.m(); ++j)
    if (std::fabs(cvec[j]) > 1e-9) pts.push_back(A.col(j));
  if (pts.size() == 1) return true;
  if (affinely_independent(pts)) return false;  // must be dependent as a whole
  for (size_t drop = 0; drop < pts.size(); ++drop) {
    std::vector<RatVec> sub;
    for (size_t t = 0; t < pts.size(); ++t)
      if (t != drop) sub.push_back(pts[t]);
    if (!affinely_independent(sub)) return false;
  }
  // count extreme points of the hull
  ExponentMatrix sup(static_cast<int>(pts[0].size()), pts);
  auto rep = extreme_indices(sup);
  return rep.extreme_indices.size() == pts.size() - 1;
}

}  // namespace

TEST_CASE("transfer_pair matches the closed-form solution", "[decompose]") {
  RatVec w = {Rat(-2), Rat(3)}, v = {Rat(1), Rat(-4)};
  auto [wh, vh] = transfer_pair(w, v, 0, 1);
  CHECK(wh == RatVec{Rat(-1), Rat(0)});
  CHECK(vh == RatVec{Rat(0), Rat(-1)});
  // row sums preserved exactly
  CHECK(wh[0] + vh[0] == w[0] + v[0]);
  CHECK(wh[1] + vh[1] == w[1] + v[1]);
}

TEST_CASE("transfer_pair rejects violated hypotheses", "[decompose]") {
  // already-disjoint supports: w_j + v_j = 0 fails the strict hypothesis
  CHECK_THROWS_AS(transfer_pair({Rat(-1), Rat(0)}, {Rat(0), Rat(-1) + Rat(1)}, 0, 1),
                  std::invalid_argument);
  // symmetric boundary case w = (-1,1), v = (1,-1): w_1 + v_1 = 0
  CHECK_THROWS_AS(transfer_pair({Rat(-1), Rat(1)}, {Rat(1), Rat(-1)}, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("transfer_pair zeroes the designated entries on random valid input", "[decompose]") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> num(1, 9);
  for (int t = 0; t < 40; ++t) {
    int m = 4;
    RatVec w(m, Rat(0)), v(m, Rat(0));
    for (int j = 0; j < m; ++j) {
      w[j] = Rat(num(rng), 3);
      w[j].canonicalize();
      v[j] = Rat(num(rng), 2);
      v[j].canonicalize();
    }
    w[0] = -Rat(num(rng)) - v[0] - 1;  // force w0 + v0 < 0
    v[1] = -Rat(num(rng)) - w[1] - 1;
    auto [wh, vh] = transfer_pair(w, v, 0, 1);
    CHECK(wh[1] == 0);
    CHECK(vh[0] == 0);
    for (int j = 0; j < m; ++j) CHECK(wh[j] + vh[j] == w[j] + v[j]);
    for (int j = 1; j < m; ++j) CHECK(wh[j] >= 0);
    for (int j = 0; j < m; ++j)
      if (j != 1) CHECK(vh[j] >= 0);
  }
}

TEST_CASE("cancellation_free is idempotent on restricted input", "[decompose]") {
  auto A = em1({"0", "2", "1"});
  std::vector<double> c = {1, 1, -2};
  auto r = sage_membership(A, c);
  REQUIRE(r.member);
  auto out = cancellation_free(A, c, *r.certificate);
  REQUIRE(out.parts.size() == r.certificate->parts.size());
  for (size_t i = 0; i < out.parts.size(); ++i) {
    CHECK(out.parts[i].k == r.certificate->parts[i].k);
    CHECK(out.parts[i].cvec == r.certificate->parts[i].cvec);
  }
}

TEST_CASE("cancellation_free on nonnegative targets returns the trivial shape", "[decompose]") {
  auto A = em1({"0", "2", "1"});
  std::vector<double> c = {1, 2, 3};
  SageCertificate cert{{}, c};
  auto out = cancellation_free(A, c, cert);
  CHECK(out.parts.empty());
  CHECK(out.residual == c);
}

TEST_CASE("cancellation_free removes cross support", "[decompose]") {
  // hand-built AGE parts with deliberate cross support on A = [0,1,2,3]
  auto A = em1({"0", "1", "2", "3"});
  AgeCertificate w;
  w.k = 1;
  w.cvec = {1, -1.7, 1, 0.2};
  w.nu = {1, 0, 1, 0};
  AgeCertificate v;
  v.k = 2;
  v.cvec = {1, 0.5, -2.8, 2};
  v.nu = {1, 0.5, 0, 2};  // any nonneg placeholder; rebuilt on output
  std::vector<double> c = {2, -1.2, -1.8, 2.2};
  SageCertificate cert{{w, v}, std::vector<double>(4, 0.0)};

  auto out = cancellation_free(A, c, cert);
  REQUIRE(out.parts.size() == 2);
  std::vector<int> idx = {out.parts[0].k, out.parts[1].k};
  std::sort(idx.begin(), idx.end());
  CHECK(idx == std::vector<int>{1, 2});
  for (const auto& part : out.parts) {
    for (int j = 0; j < 4; ++j) {
      if (j == part.k) {
        CHECK(part.cvec[j] < 0);
      } else if (c[j] < 0) {
        CHECK(part.cvec[j] == 0.0);  // exact cross-zero
      } else {
        CHECK(part.cvec[j] >= 0.0);
      }
    }
  }
  for (int j = 0; j < 4; ++j) {
    double acc = out.residual[j];
    for (const auto& part : out.parts) acc += part.cvec[j];
    CHECK(acc == Approx(c[j]).margin(1e-9));
  }
  auto verdict = validate_certificate(A, c, out, ValidateMode::Float);
  CHECK(verdict.valid);
}

TEST_CASE("cancellation_free redistributes parts at nonnegative coordinates", "[decompose]") {
  // a part indexed at a coordinate whose target is positive must disappear
  auto A = em1({"0", "1", "2", "3"});
  AgeCertificate w;
  w.k = 1;
  w.cvec = {1, -1.7, 1, 0.2};
  w.nu = {1, 0, 1, 0};
  AgeCertificate u;  // lives at index 2 but the target there ends up positive
  u.k = 2;
  u.cvec = {1, 0.6, -0.4, 2};
  u.nu = {};
  std::vector<double> c = {2, -1.1, 0.6, 2.2};
  SageCertificate cert{{w, u}, std::vector<double>(4, 0.0)};
  auto out = cancellation_free(A, c, cert);
  REQUIRE(out.parts.size() == 1);
  CHECK(out.parts[0].k == 1);
  auto verdict = validate_certificate(A, c, out, ValidateMode::Float);
  CHECK(verdict.valid);
}

TEST_CASE("cancellation_free rejects inconsistent input", "[decompose]") {
  auto A = em1({"0", "1", "2"});
  AgeCertificate w;
  w.k = 1;
  w.cvec = {1, -1, 1};
  SageCertificate cert{{w}, std::vector<double>(3, 0.0)};
  CHECK_THROWS_AS(cancellation_free(A, {5, -1, 1}, cert), std::invalid_argument);
}

TEST_CASE("circuit_decompose splits a mixed nu into simplicial circuits", "[decompose]") {
  auto A = em1({"0", "1", "2", "3"});
  AgeCertificate cert;
  cert.k = 1;
  cert.nu = {7, 0, 3, 2};
  cert.cvec = {5, 0, 5, 5};
  cert.cvec[1] = relent_shifted_double(cert.nu, cert.cvec);
  auto out = circuit_decompose(A, cert);
  REQUIRE(out.parts.size() == 2);
  double tsum = 0;
  std::vector<double> nu_acc(4, 0.0);
  std::set<std::set<int>> supports;
  for (const auto& p : out.parts) {
    CHECK(p.theta > 0);
    tsum += p.theta;
    for (int j = 0; j < 4; ++j) nu_acc[j] += p.theta * p.cert.nu[j];
    CHECK(is_simplicial_circuit(A, p.cert.cvec));
    std::set<int> s;
    for (int j = 0; j < 4; ++j)
      if (std::fabs(p.cert.cvec[j]) > 1e-9) s.insert(j);
    supports.insert(s);
  }
  CHECK(supports == std::set<std::set<int>>{{0, 1, 2}, {0, 1, 3}});
  CHECK(tsum == Approx(1.0).margin(1e-12));
  for (int j = 0; j < 4; ++j) CHECK(nu_acc[j] == Approx(cert.nu[j]).margin(1e-12));
  for (double r : out.remainder) CHECK(r >= -1e-9);
}

TEST_CASE("circuit_decompose with zero nu returns the whole vector as remainder", "[decompose]") {
  auto A = em1({"0", "1", "2"});
  AgeCertificate cert;
  cert.k = 1;
  cert.nu = {0, 0, 0};
  cert.cvec = {1, 0.5, 2};
  auto out = circuit_decompose(A, cert);
  CHECK(out.parts.empty());
  CHECK(out.remainder == cert.cvec);
}

TEST_CASE("circuit_decompose on an already-simplicial support", "[decompose]") {
  auto A = em1({"0", "2", "1"});
  auto r = age_membership(A, 2, {1, 1, -2});
  REQUIRE(r.member);
  auto out = circuit_decompose(A, r.certificate->parts[0]);
  REQUIRE(out.parts.size() == 1);
  CHECK(out.parts[0].theta == Approx(1.0));
  CHECK(is_simplicial_circuit(A, out.parts[0].cert.cvec));
  for (double rr : out.remainder) CHECK(rr >= -1e-9);

  // Motzkin support
  ExponentMatrix mz(3, {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"}),
                        rv({"2", "2", "2"})});
  auto rm = age_membership(mz, 3, {1, 1, 1, -3});
  REQUIRE(rm.member);
  auto om = circuit_decompose(mz, rm.certificate->parts[0]);
  REQUIRE(om.parts.size() == 1);
  CHECK(is_simplicial_circuit(mz, om.parts[0].cert.cvec));
}

TEST_CASE("poly_age_decompose recovers the Motzkin form as itself", "[decompose]") {
  auto p = make_polynomial(3, {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"}),
                               rv({"2", "2", "2"})},
                           {1, 1, 1, -3});
  auto rep = signomial_representative(p);
  auto mem = sage_membership(rep.exponents, rep.coeffs);
  REQUIRE(mem.member);
  auto cf = cancellation_free(rep.exponents, rep.coeffs, *mem.certificate);
  auto parts = poly_age_decompose(p, cf);
  REQUIRE(parts.size() == 1);
  for (int j = 0; j < 4; ++j) CHECK(parts[0][j] == Approx(p.coeffs[j]).margin(1e-6));
}

TEST_CASE("poly_age_decompose splits a merged pair of AGE polynomials", "[decompose]") {
  // Motzkin plus a binomial-square-style AGE polynomial over merged support
  std::vector<RatVec> cols = {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"}),
                              rv({"2", "2", "2"}), rv({"0", "0", "0"}), rv({"2", "2", "0"}),
                              rv({"8", "0", "0"}), rv({"0", "8", "0"})};
  std::vector<double> c = {1, 1, 1, -3, 1, -2, 0.5, 0.5};
  auto p = make_polynomial(3, cols, c);
  auto rep = signomial_representative(p);
  auto mem = sage_membership(rep.exponents, rep.coeffs);
  REQUIRE(mem.member);
  auto cf = cancellation_free(rep.exponents, rep.coeffs, *mem.certificate);
  auto parts = poly_age_decompose(p, cf);
  REQUIRE(parts.size() == 2);
  // parts sum back to p and each is itself a SAGE polynomial
  for (int j = 0; j < p.m(); ++j) {
    double acc = 0;
    for (const auto& q : parts) acc += q[j];
    CHECK(acc == Approx(p.coeffs[j]).margin(1e-6));
  }
  for (const auto& q : parts) {
    auto qp = SparsePolynomial{p.exponents, q};
    auto qr = poly_sage_membership(qp);
    CHECK(qr.member);
  }
}
