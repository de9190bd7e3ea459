#include <catch2/catch.hpp>

#include <sagecert/io.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace sagecert;

#ifndef SAGECERT_CLI_PATH
#define SAGECERT_CLI_PATH "sagecert"
#endif
#ifndef SAGECERT_DATA_DIR
#define SAGECERT_DATA_DIR "data"
#endif

namespace {

struct CmdResult {
  int exit_code;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  std::string cmd = std::string(SAGECERT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int rc = pclose(pipe);
  return {WEXITSTATUS(rc), out};
}

std::string data(const std::string& name) { return std::string(SAGECERT_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("rational to string round trip", "[io]") {
  CHECK(rat_to_string(Rat(3, 10)) == "0.3");
  CHECK(rat_to_string(Rat(-19, 10)) == "-1.9");
  CHECK(rat_to_string(Rat(7)) == "7");
  CHECK(rat_to_string(Rat(1, 3)) == "1/3");
  for (const char* s : {"0.30", "-4.25", "17", "2/7", "0.000125"}) {
    Rat q = parse_rational(s);
    CHECK(parse_rational(rat_to_string(q)) == q);
  }
}

TEST_CASE("signomial json round trip preserves structure", "[io]") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> cdist(-3, 3);
  std::uniform_int_distribution<int> edist(-4, 4);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 3;
    std::vector<RatVec> cols;
    std::vector<double> cs;
    for (int j = 0; j < 4; ++j) {
      RatVec c(n);
      for (int i = 0; i < n; ++i) {
        c[i] = Rat(edist(rng), 1 + (t % 2));
        c[i].canonicalize();
      }
      cols.push_back(c);
      cs.push_back(cdist(rng));
    }
    Signomial f;
    try {
      f = make_signomial(n, cols, cs);
    } catch (const std::invalid_argument&) {
      continue;  // duplicate columns in the draw
    }
    auto j = signomial_to_json(f);
    auto g = input_from_json(j).signomial;
    CHECK(g.exponents == f.exponents);
    CHECK(g.coeffs == f.coeffs);
  }
}

TEST_CASE("json input is canonicalized on read", "[io]") {
  json j;
  j["kind"] = "signomial";
  j["n"] = 1;
  j["exponents"] = {{"1"}, {"0"}, {"1"}};
  j["coeffs"] = {2.0, 1.0, 3.0};
  auto f = input_from_json(j).signomial;
  REQUIRE(f.m() == 2);
  CHECK(f.coeffs == std::vector<double>{1, 5});
}

TEST_CASE("json exponents accept round-trippable numbers only", "[io]") {
  json j;
  j["kind"] = "signomial";
  j["n"] = 1;
  j["exponents"] = {{0.3}, {1}};
  j["coeffs"] = {1.0, 1.0};
  auto f = input_from_json(j).signomial;
  CHECK(f.exponents.col(0)[0] == Rat(3, 10));
  CHECK(f.exponents.col(1)[0] == Rat(1));
}

TEST_CASE("certificate json round trip", "[io]") {
  auto A = ExponentMatrix(1, {{parse_rational("0")}, {parse_rational("2")}, {parse_rational("1")}});
  auto r = sage_membership(A, {1, 1, -2});
  REQUIRE(r.member);
  auto j = certificate_to_json(*r.certificate);
  auto back = certificate_from_json(j);
  REQUIRE(back.parts.size() == 1);
  CHECK(back.parts[0].k == r.certificate->parts[0].k);
  CHECK(back.parts[0].nu == r.certificate->parts[0].nu);
  CHECK(back.residual == r.certificate->residual);
  auto verdict = validate_certificate(A, {1, 1, -2}, back);
  CHECK(verdict.valid);
}

TEST_CASE("cli bound reproduces the quartic level-0 value", "[cli]") {
  auto r = run_cli("bound --level 0 " + data("ex6_3.json"));
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(std::fabs(j["value"].get<double>() - (-0.3333333)) <= 1e-5);
  CHECK(j.contains("dual_route_value"));
}

TEST_CASE("cli certify emits a certificate for the Motzkin form", "[cli]") {
  auto r = run_cli("certify " + data("motzkin.json"));
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["member"].get<bool>());
  CHECK(j.contains("certificate"));
  CHECK(j["certificate"].contains("chat"));
}

TEST_CASE("cli certify refuses with exit code 2", "[cli]") {
  auto r = run_cli("certify " + data("ex6_3.json"));
  CHECK(r.exit_code == 2);
  auto j = json::parse(r.output);
  CHECK_FALSE(j["member"].get<bool>());
}

TEST_CASE("cli bound on an infeasible level returns exit 2", "[cli]") {
  auto r = run_cli("bound --level 0 " + data("ex6_2.json"));
  CHECK(r.exit_code == 2);
  auto j = json::parse(r.output);
  CHECK(j["value"] == "-inf");
  CHECK(j["status"] == "Infeasible");
}

TEST_CASE("cli orthant reports non-dominance with exit 0", "[cli]") {
  auto r = run_cli("orthant " + data("poly_1_x_x3_x4.json"));
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["summary"] == "not orthant-dominated");
}

TEST_CASE("cli newton report", "[cli]") {
  auto r = run_cli("newton " + data("ex6_1.json"));
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["extreme_indices"].size() == 4);
  CHECK_FALSE(j["is_simplicial_hull"].get<bool>());
}

TEST_CASE("cli certificates round trip through validate", "[cli]") {
  auto r = run_cli("certify " + data("motzkin.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.output);
  std::string tmp = "/tmp/sagecert_cli_cert.json";
  {
    std::ofstream out(tmp);
    out << j["certificate"].dump();
  }
  auto v = run_cli("validate " + data("motzkin.json") + " " + tmp);
  CHECK(v.exit_code == 0);
  auto vj = json::parse(v.output);
  CHECK(vj["valid"].get<bool>());

  auto vx = run_cli("--mode exact validate " + data("motzkin.json") + " " + tmp);
  CHECK(vx.exit_code == 0);
}

TEST_CASE("cli decompose emits circuit parts", "[cli]") {
  auto r = run_cli("decompose " + data("motzkin.json"));
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  REQUIRE(j["member"].get<bool>());
  REQUIRE(j["circuits"].size() == 1);
  CHECK(j["circuits"][0]["parts"][0]["circuit"].get<bool>());
  CHECK(j.contains("age_polynomials"));
}

TEST_CASE("cli reports are byte-identical across runs", "[cli]") {
  auto a = run_cli("--seed 7 bound --level 0 " + data("ex6_1.json"));
  auto b = run_cli("--seed 7 bound --level 0 " + data("ex6_1.json"));
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.output == b.output);
}

TEST_CASE("cli rejects malformed input with exit 3", "[cli]") {
  auto r = run_cli("certify /tmp/definitely_missing_file.json");
  CHECK(r.exit_code == 3);
  std::string tmp = "/tmp/sagecert_bad_input.json";
  {
    std::ofstream out(tmp);
    out << "{\"kind\": \"signomial\", \"n\": 1}";
  }
  auto r2 = run_cli("certify " + tmp);
  CHECK(r2.exit_code == 3);
}

TEST_CASE("cli reproduce reruns a published example", "[cli]") {
  auto r = run_cli("reproduce --case ex6.3");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.output);
  CHECK(j["pass"].get<bool>());
  REQUIRE(j["checks"].size() == 2);
  for (const auto& c : j["checks"]) CHECK(c["pass"].get<bool>());
}

TEST_CASE("cli text format", "[cli]") {
  auto r = run_cli("--format text bound --level 0 " + data("ex6_3.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("value:") != std::string::npos);
  CHECK(r.output.find("status:") != std::string::npos);
}
