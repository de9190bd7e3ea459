#include <catch2/catch.hpp>

#include <sagecert/newton.hpp>

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

ExponentMatrix square_with_midpoints() {
  // (0,0),(2,0),(1,0),(0,2),(0,1),(2,2): square hull, two edge midpoints
  return ExponentMatrix(2, {rv({"0", "0"}), rv({"2", "0"}), rv({"1", "0"}),
                            rv({"0", "2"}), rv({"0", "1"}), rv({"2", "2"})});
}

}  // namespace

TEST_CASE("simplex LP basics", "[newton]") {
  // min x1 s.t. x1 + x2 = 1
  StandardLp lp(2);
  lp.add_row({Rat(1), Rat(1)}, Rat(1));
  lp.set_cost(0, Rat(1));
  auto r = lp.solve();
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 0);

  // infeasible: x1 = -1, x >= 0
  StandardLp lp2(1);
  lp2.add_row({Rat(1)}, Rat(-1));
  CHECK(lp2.solve().status == LpStatus::Infeasible);

  // unbounded: min -x1 s.t. x1 - x2 = 0
  StandardLp lp3(2);
  lp3.add_row({Rat(1), Rat(-1)}, Rat(0));
  lp3.set_cost(0, Rat(-1));
  CHECK(lp3.solve().status == LpStatus::Unbounded);
}

TEST_CASE("extreme indices on a segment", "[newton]") {
  auto rep = extreme_indices(em1({"0", "2", "1"}));
  CHECK(rep.extreme_indices == std::vector<int>{0, 1});
  CHECK(rep.nonextreme_indices == std::vector<int>{2});
  CHECK(rep.is_simplicial_hull);
  CHECK(rep.contains_origin);
}

TEST_CASE("extreme indices on the square example", "[newton]") {
  auto rep = extreme_indices(square_with_midpoints());
  CHECK(rep.extreme_indices == std::vector<int>{0, 1, 3, 5});
  CHECK(rep.nonextreme_indices == std::vector<int>{2, 4});
  CHECK_FALSE(rep.is_simplicial_hull);  // square has 4 affinely dependent vertices
}

TEST_CASE("single column is extreme and simplicial", "[newton]") {
  auto rep = extreme_indices(ExponentMatrix(2, {rv({"1", "2"})}));
  CHECK(rep.extreme_indices == std::vector<int>{0});
  CHECK(rep.is_simplicial_hull);
  CHECK_FALSE(rep.contains_origin);
}

TEST_CASE("extreme indices are affinely invariant", "[newton]") {
  auto a = square_with_midpoints();
  // M = [[2,1],[1,1]], b = (3, -5): nonsingular rational map
  std::vector<RatVec> cols;
  for (int j = 0; j < a.m(); ++j) {
    const auto& c = a.col(j);
    cols.push_back({Rat(2) * c[0] + c[1] + 3, c[0] + c[1] - 5});
  }
  auto rep0 = extreme_indices(a);
  auto rep1 = extreme_indices(ExponentMatrix(2, cols));
  CHECK(rep0.extreme_indices == rep1.extreme_indices);
  CHECK(rep0.nonextreme_indices == rep1.nonextreme_indices);
}

TEST_CASE("is_simplicial", "[newton]") {
  CHECK(is_simplicial({rv({"0", "0"}), rv({"2", "0"}), rv({"0", "2"})}));
  CHECK_FALSE(is_simplicial({rv({"0", "0"}), rv({"2", "0"}), rv({"0", "2"}), rv({"2", "2"})}));
  CHECK(is_simplicial({rv({"0", "0"}), rv({"1", "0"}), rv({"0", "1"})}));
}

TEST_CASE("barycentric coordinates", "[newton]") {
  // Motzkin interior point
  auto lam = barycentric(rv({"2", "2", "2"}),
                         {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"})});
  REQUIRE(lam.size() == 3);
  CHECK(lam[0] == Rat(1, 3));
  CHECK(lam[1] == Rat(1, 3));
  CHECK(lam[2] == Rat(1, 3));

  auto ind = barycentric(rv({"2", "4", "0"}),
                         {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"})});
  CHECK(ind == RatVec{Rat(1), Rat(0), Rat(0)});

  auto mid = barycentric(rv({"1"}), {rv({"0"}), rv({"2"})});
  CHECK(mid == RatVec{Rat(1, 2), Rat(1, 2)});

  CHECK_THROWS_AS(barycentric(rv({"1", "1"}), {rv({"0", "0"}), rv({"2", "0"})}),
                  std::invalid_argument);
}

TEST_CASE("decompose_mixture on a segment", "[newton]") {
  std::vector<RatVec> b = {rv({"0"}), rv({"1"}), rv({"2"})};
  RatVec lam = {Rat(1, 4), Rat(1, 2), Rat(1, 4)};
  auto parts = decompose_mixture(b, rv({"1"}), lam);
  CHECK(check_mixture(b, lam, parts));
  REQUIRE(parts.size() == 2);
  // the two parts are {(1/2,0,1/2), (0,1,0)} with weights 1/2 each, in some order
  for (const auto& p : parts) CHECK(p.theta == Rat(1, 2));
}

TEST_CASE("decompose_mixture with simplicial support is a single part", "[newton]") {
  std::vector<RatVec> b = {rv({"0"}), rv({"2"})};
  RatVec lam = {Rat(1, 2), Rat(1, 2)};
  auto parts = decompose_mixture(b, rv({"1"}), lam);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].theta == 1);
  CHECK(parts[0].lambda == lam);

  // Motzkin weights: already simplicial
  std::vector<RatVec> mb = {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"})};
  RatVec ml = {Rat(1, 3), Rat(1, 3), Rat(1, 3)};
  auto mp = decompose_mixture(mb, rv({"2", "2", "2"}), ml);
  REQUIRE(mp.size() == 1);
  CHECK(mp[0].theta == 1);
}

TEST_CASE("decompose_mixture validates inputs", "[newton]") {
  std::vector<RatVec> b = {rv({"0"}), rv({"1"})};
  CHECK_THROWS_AS(decompose_mixture(b, rv({"1"}), {Rat(1, 2), Rat(1, 4)}), std::invalid_argument);
  CHECK_THROWS_AS(decompose_mixture(b, rv({"2"}), {Rat(1, 2), Rat(1, 2)}), std::invalid_argument);
}

TEST_CASE("random mixtures always pass the checker", "[newton]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 2, d = 4 + trial % 3;
    std::vector<RatVec> b;
    for (int j = 0; j < d; ++j) {
      RatVec c(n);
      for (int i = 0; i < n; ++i) c[i] = Rat(coord(rng));
      b.push_back(c);
    }
    // random rational lambda
    std::vector<int> w(d);
    int tot = 0;
    for (int j = 0; j < d; ++j) { w[j] = 1 + coord(rng); tot += w[j]; }
    RatVec lam(d);
    RatVec h(n, Rat(0));
    for (int j = 0; j < d; ++j) {
      lam[j] = Rat(w[j], tot);
      lam[j].canonicalize();
      for (int i = 0; i < n; ++i) h[i] += b[j][i] * lam[j];
    }
    auto parts = decompose_mixture(b, h, lam);
    CHECK(check_mixture(b, lam, parts));
  }
}

TEST_CASE("face partition: trivial block always accepted", "[newton]") {
  auto a = em1({"0", "2", "1"});
  auto fp = verify_face_partition(a, {{0, 1, 2}});
  REQUIRE(fp.has_value());
  CHECK_FALSE(fp->witnesses[0].has_value());
}

TEST_CASE("face partition: two edges of a square", "[newton]") {
  // bottom edge {(0,0),(2,0),(1,0)}, top edge {(0,2),(2,2),(1,2)}
  ExponentMatrix a(2, {rv({"0", "0"}), rv({"2", "0"}), rv({"1", "0"}),
                       rv({"0", "2"}), rv({"2", "2"}), rv({"1", "2"})});
  auto fp = verify_face_partition(a, {{0, 1, 2}, {3, 4, 5}});
  REQUIRE(fp.has_value());
  for (size_t b = 0; b < fp->blocks.size(); ++b) {
    REQUIRE(fp->witnesses[b].has_value());
    CHECK(witness_verifies(a, fp->blocks[b], *fp->witnesses[b]));
  }
}

TEST_CASE("face partition: diagonals of a square are rejected", "[newton]") {
  ExponentMatrix a(2, {rv({"0", "0"}), rv({"2", "2"}), rv({"2", "0"}), rv({"0", "2"})});
  auto fp = verify_face_partition(a, {{0, 1}, {2, 3}});
  CHECK_FALSE(fp.has_value());
}

TEST_CASE("face partition rejects non-partitions", "[newton]") {
  auto a = em1({"0", "2", "1"});
  CHECK_THROWS_AS(verify_face_partition(a, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(verify_face_partition(a, {{0, 1, 2}, {1}}), std::invalid_argument);
}

TEST_CASE("find_face_partition discovers the two-edge split", "[newton]") {
  ExponentMatrix a(2, {rv({"0", "0"}), rv({"2", "0"}), rv({"1", "0"}),
                       rv({"0", "2"}), rv({"2", "2"}), rv({"1", "2"})});
  auto fp = find_face_partition(a);
  REQUIRE(fp.blocks.size() == 2);
  for (size_t b = 0; b < fp.blocks.size(); ++b)
    if (fp.witnesses[b]) CHECK(witness_verifies(a, fp.blocks[b], *fp.witnesses[b]));
}

TEST_CASE("find_face_partition returns trivial when no split exists", "[newton]") {
  CHECK(find_face_partition(em1({"0", "2", "1"})).blocks.size() == 1);
  // simplex with one interior point
  ExponentMatrix a(2, {rv({"0", "0"}), rv({"4", "0"}), rv({"0", "4"}), rv({"1", "1"})});
  CHECK(find_face_partition(a).blocks.size() == 1);
}

TEST_CASE("kernel_basis", "[newton]") {
  auto b = kernel_basis(em1({"0", "2", "1"}), 2);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == RatVec{Rat(1), Rat(1)});

  // extreme index with the rest affinely independent: zero-dimensional kernel
  ExponentMatrix tri(2, {rv({"0", "0"}), rv({"2", "0"}), rv({"0", "2"})});
  CHECK(kernel_basis(tri, 0).empty());

  // Motzkin interior index
  ExponentMatrix mz(3, {rv({"2", "4", "0"}), rv({"4", "2", "0"}), rv({"0", "0", "6"}),
                        rv({"2", "2", "2"})});
  auto kb = kernel_basis(mz, 3);
  REQUIRE(kb.size() == 1);
  CHECK(kb[0] == RatVec{Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("kernel basis vectors satisfy the kernel equations exactly", "[newton]") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + trial % 3;
    int m = n + 2 + trial % 3;
    std::vector<RatVec> cols;
    while (static_cast<int>(cols.size()) < m) {
      RatVec c(n);
      for (int i = 0; i < n; ++i) c[i] = Rat(coord(rng));
      if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    }
    ExponentMatrix a(n, cols);
    for (int i = 0; i < m; ++i) {
      for (const auto& v : kernel_basis(a, i)) {
        RatVec acc(n, Rat(0));
        int col = 0;
        for (int j = 0; j < m; ++j) {
          if (j == i) continue;
          for (int d = 0; d < n; ++d) acc[d] += v[col] * (a.col(j)[d] - a.col(i)[d]);
          ++col;
        }
        for (int d = 0; d < n; ++d) CHECK(acc[d] == 0);
      }
    }
  }
}
