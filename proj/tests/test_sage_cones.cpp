#include <catch2/catch.hpp>

#include <sagecert/sage_cones.hpp>

#include <random>

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

ExponentMatrix motzkin_exponents() {
  return ExponentMatrix(3, {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"}),
                            rv({"2", "2", "2"})});
}

}  // namespace

TEST_CASE("age membership boundary on a segment", "[sage]") {
  // 1 + e^{2x} - 2 e^x: nu = (t,t), min of 2t(ln t - 1) is -2 at t = 1
  auto A = em1({"0", "2", "1"});
  auto r = age_membership(A, 2, {1, 1, -2});
  REQUIRE(r.member);
  REQUIRE(r.certificate.has_value());
  const auto& part = r.certificate->parts[0];
  CHECK(part.nu[0] == Approx(1.0).margin(1e-5));
  CHECK(part.nu[1] == Approx(1.0).margin(1e-5));

  auto bad = age_membership(A, 2, {1, 1, -2.01});
  CHECK_FALSE(bad.member);
  CHECK(bad.margin == Approx(0.01).margin(1e-6));
}

TEST_CASE("age membership trivial cases", "[sage]") {
  auto A = em1({"0", "2", "1"});
  // nonnegative c with nonextremal index: nu = 0 works
  auto r = age_membership(A, 2, {1, 1, 0.5});
  CHECK(r.member);
  // extreme index short-circuits to a sign test
  auto e = age_membership(A, 0, {-0.5, 1, 1});
  CHECK_FALSE(e.member);
  auto e2 = age_membership(A, 0, {0.5, 1, 1});
  CHECK(e2.member);
  CHECK_THROWS_AS(age_membership(A, 2, {-1, 1, -2}), std::invalid_argument);
}

TEST_CASE("age membership on the Motzkin support", "[sage]") {
  auto A = motzkin_exponents();
  auto r = age_membership(A, 3, {1, 1, 1, -3});
  REQUIRE(r.member);
  const auto& part = r.certificate->parts[0];
  for (int j = 0; j < 3; ++j) CHECK(part.nu[j] == Approx(1.0).margin(1e-4));
  auto bad = age_membership(A, 3, {1, 1, 1, -3.001});
  CHECK_FALSE(bad.member);
}

TEST_CASE("sage membership basic", "[sage]") {
  auto A = em1({"0", "2", "1"});
  auto r = sage_membership(A, {1, 1, -2});
  REQUIRE(r.member);
  REQUIRE(r.certificate->parts.size() == 1);
  CHECK(r.certificate->parts[0].k == 2);
  auto verdict = validate_certificate(A, {1, 1, -2}, *r.certificate, ValidateMode::Float);
  CHECK(verdict.valid);

  auto triv = sage_membership(A, {1, 0, 2});
  REQUIRE(triv.member);
  CHECK(triv.certificate->parts.empty());
  CHECK(triv.certificate->residual == std::vector<double>{1, 0, 2});
}

TEST_CASE("sage membership refuses the quartic counterexample", "[sage]") {
  auto A = em1({"0", "1", "2", "3", "4"});
  auto r = sage_membership(A, {1, -4, 7, -4, 1});
  CHECK_FALSE(r.member);
  CHECK(r.margin > 1e-4);
  // the one-shift of it is a member (value shifted well below the sage bound)
  auto ok = sage_membership(A, {1 + 0.5, -4, 7, -4, 1});
  CHECK(ok.member);
}

TEST_CASE("negative coefficient at an extreme exponent is refused with a certificate", "[sage]") {
  auto A = em1({"0", "2", "1"});
  auto r = sage_membership(A, {-0.25, 1, 1});
  REQUIRE_FALSE(r.member);
  REQUIRE(r.evidence.has_value());
  CHECK(r.evidence->status == SolveStatus::PrimalInfeasible);
}

TEST_CASE("sage membership is monotone under adding nonnegative vectors", "[sage]") {
  auto A = em1({"0", "1", "2", "3"});
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(0.0, 1.5);
  int accepted = 0;
  for (int t = 0; t < 12; ++t) {
    std::vector<double> c = {d(rng), -d(rng), d(rng), d(rng)};
    auto r = sage_membership(A, c);
    if (!r.member) continue;
    ++accepted;
    std::vector<double> c2 = c;
    for (auto& v : c2) v += d(rng);
    auto r2 = sage_membership(A, c2);
    CHECK(r2.member);
  }
  CHECK(accepted > 0);
}

TEST_CASE("accepted vectors evaluate nonnegative", "[sage]") {
  auto A = motzkin_exponents();
  std::vector<double> c = {1, 1, 1, -3};
  auto r = sage_membership(A, c);
  REQUIRE(r.member);
  Signomial f{A, c};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  double worst = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> x = {d(rng), d(rng), d(rng)};
    worst = std::min(worst, evaluate(f, x).value);
  }
  CHECK(worst >= -1e-6 * 3);
}

TEST_CASE("dual fragment structure", "[sage]") {
  // both extreme: fragment adds nothing beyond v >= 0
  auto A2 = em1({"0", "1"});
  auto f2 = dual_feasibility(A2, {0, 1});
  CHECK(f2.frag.active.empty());
  CHECK(f2.model.build().num_exp_blocks() == 0);

  auto A = em1({"0", "2", "1"});
  auto f = dual_feasibility(A, {2});
  REQUIRE(f.frag.active == std::vector<int>{2});
  CHECK(f.model.build().num_exp_blocks() == 2);

  ExponentMatrix square(2, {rv({"0", "0"}), rv({"2", "0"}), rv({"1", "0"}),
                            rv({"0", "2"}), rv({"0", "1"}), rv({"2", "2"})});
  auto fs = dual_feasibility(square, {2, 4});
  CHECK(fs.model.build().num_exp_blocks() == 10);
}

TEST_CASE("sampled dual-feasible vectors pair nonnegatively with members", "[sage]") {
  auto A = em1({"0", "2", "1"});
  std::vector<double> c = {1, 1, -2};
  auto mem = sage_membership(A, c);
  REQUIRE(mem.member);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> d(0.1, 2.0);
  for (int t = 0; t < 6; ++t) {
    auto df = dual_feasibility(A, {2});
    // bounded random objective over v plus normalization v_0 = 1
    int row = df.model.add_row(1.0);
    df.model.coef(row, df.v_start + 0, 1.0);
    for (int j = 0; j < 3; ++j) {
      int cap = df.model.add_row(5.0);  // v_j + slack = 5 keeps the sample bounded
      int sl = df.model.add_nonneg();
      df.model.coef(cap, df.v_start + j, 1.0);
      df.model.coef(cap, sl, 1.0);
      df.model.objective(df.v_start + j, d(rng) - 1.0);
    }
    auto sol = solve(df.model.build());
    REQUIRE(sol.status == SolveStatus::Optimal);
    double dot = 0;
    for (int j = 0; j < 3; ++j) dot += c[j] * sol.x[df.v_start + j];
    CHECK(dot >= -1e-6);
  }
}

TEST_CASE("certificate validation in exact mode", "[sage]") {
  auto A = motzkin_exponents();
  std::vector<double> c = {1, 1, 1, -3};
  auto r = sage_membership(A, c);
  REQUIRE(r.member);
  auto v = validate_certificate(A, c, *r.certificate, ValidateMode::Exact);
  CHECK(v.valid);

  // perturb nu off the kernel
  auto broken = *r.certificate;
  broken.parts[0].nu[0] += 1e-3;
  auto bad = validate_certificate(A, c, broken, ValidateMode::Exact);
  CHECK_FALSE(bad.valid);

  // trivial certificate validates
  SageCertificate triv{{}, {1, 2, 3, 0}};
  CHECK(validate_certificate(em1({"0", "1", "2", "3"}), {1, 2, 3, 0}, triv, ValidateMode::Exact).valid);
}

TEST_CASE("validation rejects structural garbage", "[sage]") {
  auto A = em1({"0", "2", "1"});
  std::vector<double> c = {1, 1, -2};
  auto r = sage_membership(A, c);
  REQUIRE(r.member);
  auto cert = *r.certificate;
  cert.residual[0] = -1.0;
  CHECK_FALSE(validate_certificate(A, c, cert, ValidateMode::Float).valid);
  cert = *r.certificate;
  cert.parts[0].k = 1;  // wrong index: coordinate sums break
  CHECK_FALSE(validate_certificate(A, c, cert, ValidateMode::Float).valid);
}
