#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "spincycles/error.hpp"
#include "spincycles/homology.hpp"

using namespace spincycles;

namespace {

LatticePolygon poly(std::vector<LatticePoint> v) { return LatticePolygon::from_vertices(std::move(v)); }

const LatticePolygon kD5 = poly({{0, 0}, {5, 0}, {0, 5}});
const LatticePolygon kD7 = poly({{0, 0}, {7, 0}, {0, 7}});
const LatticePolygon kRect = poly({{0, 0}, {4, 0}, {4, 2}, {0, 2}});
const LatticePolygon kSquare = poly({{0, 0}, {3, 0}, {3, 3}, {0, 3}});
const LatticePolygon kTrap = poly({{0, 0}, {4, 0}, {2, 2}, {0, 2}});
const LatticePolygon kTrapCut = poly({{0, 0}, {3, 0}, {3, 1}, {2, 2}, {0, 2}});

const std::vector<const LatticePolygon*> kCorpus{&kD5, &kD7, &kRect, &kSquare, &kTrap, &kTrapCut};

CycleClassZ random_z(std::size_t g, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-5, 5);
  CycleClassZ x(g);
  for (std::size_t k = 0; k < 2 * g; ++k) x[k] = d(rng);
  return x;
}

}  // namespace

TEST_CASE("pairings on basis vectors") {
  CHECK(pairing_f2(CycleClassF2::a(2, 0), CycleClassF2::b(2, 0)));
  CHECK_FALSE(pairing_f2(CycleClassF2::a(2, 0), CycleClassF2::a(2, 1)));
  CHECK(pairing_z(CycleClassZ::a(2, 0), CycleClassZ::b(2, 0)) == 1);
  CHECK(pairing_z(CycleClassZ::b(2, 0), CycleClassZ::a(2, 0)) == -1);
  CHECK(pairing_z(CycleClassZ::a(2, 0) + CycleClassZ::b(2, 1), CycleClassZ::b(2, 0) + CycleClassZ::a(2, 1)) == 0);
  CHECK_THROWS_AS(pairing_f2(CycleClassF2(2), CycleClassF2(3)), Error);
  CHECK_THROWS_AS(pairing_z(CycleClassZ(2), CycleClassZ(3)), Error);
}

TEST_CASE("pairing_f2 is pairing_z mod 2; pairing_z antisymmetric and bilinear") {
  std::mt19937_64 rng(5);
  for (std::size_t g : {1, 3, 40}) {
    for (int t = 0; t < 300; ++t) {
      const auto x = random_z(g, rng), y = random_z(g, rng), z = random_z(g, rng);
      const std::int64_t p = pairing_z(x, y);
      CHECK(pairing_f2(reduce_mod2(x), reduce_mod2(y)) == ((p % 2 + 2) % 2 == 1));
      CHECK(pairing_z(y, x) == -p);
      CHECK(pairing_z(x + z, y) == p + pairing_z(z, y));
    }
  }
}

TEST_CASE("F2 classes span word boundaries") {
  const std::size_t g = 70;
  CycleClassF2 x(g);
  x.set(2 * 40, true);  // a_41
  CHECK(pairing_f2(x, CycleClassF2::b(g, 40)));
  CHECK_FALSE(pairing_f2(x, CycleClassF2::b(g, 39)));
  CHECK(reduce_mod2(lift(x)) == x);
}

TEST_CASE("build_model indexes interior points lexicographically") {
  const auto m = SurfaceModel::build(kD5);
  CHECK(m.genus() == 6);
  const std::vector<LatticePoint> expected{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 1}};
  CHECK(m.points() == expected);
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(m.index(expected[i]) == i);
  CHECK_THROWS_AS(m.index({0, 0}), Error);
  CHECK_THROWS_AS(SurfaceModel::build(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), Error);
}

TEST_CASE("default forest on the rectangle walks left") {
  const auto m = SurfaceModel::build(kRect);
  for (std::int64_t i = 1; i <= 3; ++i) {
    std::vector<LatticePoint> path;
    for (std::int64_t x = i; x >= 0; --x) path.push_back({x, 1});
    CHECK(m.forest()[static_cast<std::size_t>(i - 1)] == path);
  }
}

TEST_CASE("a_class, b_class") {
  const auto m = SurfaceModel::build(kD5);
  CHECK(a_class(m, {1, 1}) == CycleClassF2::a(6, 0));
  CHECK(a_class(m, {1, 1}).bits() == std::vector<int>{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(a_class(m, {3, 1}) == CycleClassF2::a(6, 5));
  CHECK_THROWS_AS(a_class(m, {0, 0}), Error);
  CHECK(b_class(m, {1, 1}) == CycleClassF2::b(6, 0));
  CHECK(b_class(m, {3, 1}) == CycleClassF2::b(6, 5));
  CHECK_THROWS_AS(b_class(m, {5, 0}), Error);
}

TEST_CASE("segment_class") {
  const auto m = SurfaceModel::build(kD5);
  CHECK(segment_class(m, {1, 1}, {2, 1}) == CycleClassF2::b(6, 0) + CycleClassF2::b(6, 3));
  CHECK(segment_class(m, {0, 1}, {1, 1}) == CycleClassF2::b(6, 0));
  CHECK(segment_class(m, {0, 0}, {0, 1}).is_zero());
  CHECK(pairing_f2(segment_class(m, {1, 1}, {2, 1}), a_class(m, {1, 1})));
  CHECK_THROWS_AS(segment_class(m, {0, 0}, {2, 0}), Error);
  CHECK_THROWS_AS(segment_class(m, {4, 1}, {5, 1}), Error);
}

TEST_CASE("segment meets a_v iff v is an endpoint") {
  for (const auto* p : kCorpus) {
    const auto m = SurfaceModel::build(*p);
    for (const auto& s : enumerate_segments(*p)) {
      const auto cls = segment_class(m, s);
      for (const auto& v : m.points()) {
        const bool endpoint = v == s.endpoints[0] || v == s.endpoints[1];
        CHECK(pairing_f2(cls, a_class(m, v)) == endpoint);
      }
    }
  }
}

TEST_CASE("telescoping and disjointness along every B-path, for many forests") {
  for (const auto* p : kCorpus) {
    std::vector<BForest> forests{default_forest(*p)};
    for (std::uint64_t seed = 1; seed <= 6; ++seed) forests.push_back(random_forest(*p, seed));
    for (const auto& f : forests) {
      const auto m = SurfaceModel::build(*p, f);
      for (std::size_t i = 0; i < m.genus(); ++i) {
        CycleClassF2 sum(m.genus());
        std::vector<CycleClassF2> parts;
        for (const auto& seg : m.path_segments(i)) parts.push_back(segment_class(m, seg[0], seg[1]));
        for (const auto& c : parts) sum += c;
        CHECK(sum == CycleClassF2::b(m.genus(), i));
        for (std::size_t k = 0; k < parts.size(); ++k) {
          for (std::size_t l = k + 1; l < parts.size(); ++l) CHECK_FALSE(pairing_f2(parts[k], parts[l]));
        }
      }
    }
  }
}

TEST_CASE("random forests differ from the default and stay valid") {
  const auto base = default_forest(kD7);
  std::size_t different = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_forest(kD7, seed);
    CHECK_NOTHROW(validate_forest(kD7, interior_data(kD7), f));
    different += f != base;
    CHECK(random_forest(kD7, seed) == f);
  }
  CHECK(different >= 3);
}

TEST_CASE("validate_forest rejects broken paths") {
  const auto d = interior_data(kRect);
  auto f = default_forest(kRect);
  auto short_path = f;
  short_path[0].pop_back();  // never reaches the boundary
  CHECK_THROWS_AS(validate_forest(kRect, d, short_path), Error);
  auto long_step = f;
  long_step[2] = {{3, 1}, {1, 1}, {0, 1}};
  CHECK_THROWS_AS(validate_forest(kRect, d, long_step), Error);
  auto wrong_start = f;
  wrong_start[1] = {{1, 1}, {0, 1}};
  CHECK_THROWS_AS(validate_forest(kRect, d, wrong_start), Error);
  auto repeat = f;
  repeat[0] = {{1, 1}, {2, 1}, {1, 1}, {0, 1}};
  CHECK_THROWS_AS(validate_forest(kRect, d, repeat), Error);
  f.pop_back();
  CHECK_THROWS_AS(validate_forest(kRect, d, f), Error);
}

TEST_CASE("hyperelliptic chain") {
  const auto m = SurfaceModel::build(kRect);
  const auto chain = hyperelliptic_chain(m);
  REQUIRE(chain.size() == 7);
  CHECK(chain[0].name == "s0");
  CHECK(chain[1].name == "v1");
  CHECK(chain[6].name == "s3");
  CHECK(pairing_z(chain[0].cls, chain[1].cls) == 1);
  CHECK(pairing_z(chain[0].cls, chain[2].cls) == 0);
  CHECK(pairing_z(chain[1].cls, chain[3].cls) == 0);
  CHECK_THROWS_AS(hyperelliptic_chain(SurfaceModel::build(kD5)), Error);
}

TEST_CASE("chain pairing matrix is the A_{2g+1} pattern") {
  std::vector<LatticePolygon> polys{kRect, kTrap, kTrapCut};
  for (std::int64_t w = 3; w <= 9; ++w) polys.push_back(poly({{0, 0}, {w, 0}, {w, 2}, {0, 2}}));
  for (const auto& p : polys) {
    const auto m = SurfaceModel::build(p);
    const auto chain = hyperelliptic_chain(m);
    REQUIRE(chain.size() == 2 * m.genus() + 1);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = 0; j < chain.size(); ++j) {
        std::int64_t expected = 0;
        if (j == i + 1) expected = 1;
        if (i == j + 1) expected = -1;
        CHECK(pairing_z(chain[i].cls, chain[j].cls) == expected);
      }
    }
  }
}
