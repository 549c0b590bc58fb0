#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "spincycles/error.hpp"
#include "spincycles/polygon.hpp"

using namespace spincycles;

namespace {

LatticePolygon poly(std::vector<LatticePoint> v) { return LatticePolygon::from_vertices(std::move(v)); }

ErrorCode parse_error(std::string_view text) {
  try {
    parse_polygon(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error for " << text);
  return ErrorCode::kMalformedInput;
}

// Oracle: interior count by Pick's theorem, boundary count by edge gcds.
std::int64_t pick_interior(const LatticePolygon& p) {
  std::int64_t boundary = 0;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) boundary += integer_length(v[i], v[(i + 1) % v.size()]);
  return (p.twice_area() - boundary + 2) / 2;
}

// Monotone chain without collinear points; test-side hull.
std::vector<LatticePoint> hull_of(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::vector<LatticePolygon> random_polygons(std::size_t count, std::int64_t box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(0, box);
  std::uniform_int_distribution<int> npts(3, 7);
  std::vector<LatticePolygon> out;
  while (out.size() < count) {
    std::vector<LatticePoint> pts;
    const int n = npts(rng);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    const auto h = hull_of(pts);
    if (h.size() < 3) continue;
    out.push_back(poly(h));
  }
  return out;
}

std::int64_t test_gcd_of_hull_edges(const std::vector<LatticePoint>& hull) {
  std::int64_t g = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const LatticePoint d = hull[(i + 1) % hull.size()] - hull[i];
    g = std::gcd(g, std::gcd(d.x < 0 ? -d.x : d.x, d.y < 0 ? -d.y : d.y));
  }
  return g;
}

const LatticePolygon kD5 = poly({{0, 0}, {5, 0}, {0, 5}});
const LatticePolygon kD7 = poly({{0, 0}, {7, 0}, {0, 7}});
const LatticePolygon kRect = poly({{0, 0}, {4, 0}, {4, 2}, {0, 2}});
const LatticePolygon kSquare = poly({{0, 0}, {3, 0}, {3, 3}, {0, 3}});
const LatticePolygon kTrap = poly({{0, 0}, {4, 0}, {2, 2}, {0, 2}});
const LatticePolygon kTrapCut = poly({{0, 0}, {3, 0}, {3, 1}, {2, 2}, {0, 2}});
const LatticePolygon kCubic = poly({{0, 0}, {3, 0}, {0, 3}});

}  // namespace

TEST_CASE("parse_polygon canonicalizes") {
  const auto a = parse_polygon(R"({"vertices":[[0,0],[5,0],[0,5]]})");
  const auto b = parse_polygon(R"({"vertices":[[0,5],[0,0],[5,0]]})");
  const auto c = parse_polygon(R"({"vertices":[[0,0],[0,5],[5,0]]})");  // clockwise
  CHECK(a == kD5);
  CHECK(b == kD5);
  CHECK(c == kD5);
  CHECK(a.vertices().front() == LatticePoint{0, 0});
}

TEST_CASE("parse_polygon error codes are distinct") {
  CHECK(parse_error(R"({"vertices":[[0,0],[2,0],[1,0]]})") == ErrorCode::kCollinear);
  CHECK(parse_error(R"({"vertices":[[0,0],[2.5,0],[1,3]]})") == ErrorCode::kNonIntegerCoordinate);
  CHECK(parse_error(R"({"vertices":[[0,0],[2,0]]})") == ErrorCode::kTooFewVertices);
  CHECK(parse_error(R"({"vertices":[[0,0],[4,0],[1,1],[0,4]]})") == ErrorCode::kNonConvex);
  CHECK(parse_error(R"({"vertices":[[0,0],[2,0],[2,2],[1,2],[0,2]]})") == ErrorCode::kCollinear);
  CHECK(parse_error(R"({"points":[]})") == ErrorCode::kMalformedInput);
  CHECK(parse_error("not json") == ErrorCode::kMalformedInput);
}

TEST_CASE("serialize round trip") {
  for (const auto& p : random_polygons(200, 12, 7)) {
    CHECK(parse_polygon(serialize_polygon(p)) == p);
  }
}

TEST_CASE("is_smooth") {
  CHECK(is_smooth(kD5));
  CHECK_FALSE(is_smooth(poly({{0, 0}, {2, 0}, {0, 1}})));
  CHECK(is_smooth(kTrap));
  CHECK(is_smooth(kTrapCut));
}

TEST_CASE("interior_data examples") {
  const auto d5 = interior_data(kD5);
  CHECK(d5.genus == 6);
  CHECK(d5.dimension == 2);
  CHECK(d5.root_order == 2);
  CHECK(d5.hull_vertices() == std::vector<LatticePoint>{{1, 1}, {3, 1}, {1, 3}});

  const auto r = interior_data(kRect);
  CHECK(r.genus == 3);
  CHECK(r.dimension == 1);
  CHECK(r.segment[0] == LatticePoint{1, 1});
  CHECK(r.segment[1] == LatticePoint{3, 1});
  CHECK(r.segment_length == 2);
  CHECK_FALSE(r.root_order.has_value());

  const auto s = interior_data(kSquare);
  CHECK(s.genus == 4);
  CHECK(s.dimension == 2);
  CHECK(s.root_order == 1);

  const auto c = interior_data(kCubic);
  CHECK(c.genus == 1);
  CHECK(c.dimension == 0);
  CHECK(c.interior_points == std::vector<LatticePoint>{{1, 1}});

  CHECK_THROWS_AS(interior_data(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), Error);
}

TEST_CASE("interior count agrees with Pick's theorem") {
  for (const auto& p : random_polygons(400, 15, 11)) {
    const std::int64_t expected = pick_interior(p);
    if (expected == 0) {
      CHECK_THROWS(interior_data(p));
      continue;
    }
    const auto d = interior_data(p);
    CHECK(static_cast<std::int64_t>(d.genus) == expected);
    if (d.dimension == 2) {
      CHECK(d.root_order == test_gcd_of_hull_edges(hull_of(d.interior_points)));
    }
  }
}

TEST_CASE("even_points") {
  const auto e5 = even_points(kD5);
  std::set<LatticePoint> even, odd;
  for (const auto& pp : e5) (pp.even ? even : odd).insert(pp.point);
  CHECK(even == std::set<LatticePoint>{{1, 1}, {3, 1}, {1, 3}});
  CHECK(odd == std::set<LatticePoint>{{2, 1}, {1, 2}, {2, 2}});

  std::set<LatticePoint> even7;
  for (const auto& pp : even_points(kD7)) {
    if (pp.even) even7.insert(pp.point);
  }
  std::set<LatticePoint> expected7;
  for (std::int64_t x = 1; x <= 5; x += 2) {
    for (std::int64_t y = 1; x + y <= 6; y += 2) expected7.insert({x, y});
  }
  CHECK(even7.size() == 6);
  CHECK(even7 == expected7);

  CHECK_THROWS_AS(even_points(kSquare), Error);
  CHECK_THROWS_AS(even_points(kRect), Error);
}

TEST_CASE("even polygons: vertices even, parity independent of reference vertex") {
  std::size_t even_polygons = 0;
  for (const auto& p : random_polygons(6000, 14, 3)) {
    if (pick_interior(p) == 0) continue;
    const auto d = interior_data(p);
    if (d.dimension != 2 || *d.root_order % 2 != 0) continue;
    ++even_polygons;
    CHECK(d.genus >= 6);
    const auto& hv = d.hull_vertices();
    for (const auto& v : hv) CHECK(is_even_relative(v, hv.front()));
    const auto parities = even_points(p);
    for (const auto& ref : hv) {
      for (const auto& pp : parities) CHECK(is_even_relative(pp.point, ref) == pp.even);
    }
  }
  CHECK(even_polygons >= 20);
}

TEST_CASE("segments and bridges") {
  const auto segs = enumerate_segments(kD5);
  auto find = [&](LatticePoint u, LatticePoint w) {
    const std::array<LatticePoint, 2> key{std::min(u, w), std::max(u, w)};
    const auto it = std::find_if(segs.begin(), segs.end(), [&](const Segment& s) { return s.endpoints == key; });
    REQUIRE(it != segs.end());
    return *it;
  };
  CHECK(find({0, 1}, {1, 1}).is_bridge);
  CHECK_FALSE(find({1, 1}, {2, 1}).is_bridge);
  CHECK(find({0, 0}, {1, 1}).is_bridge);
  for (const auto& s : segs) CHECK(integer_length(s.endpoints[0], s.endpoints[1]) == 1);
  CHECK(std::is_sorted(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    return a.endpoints < b.endpoints;
  }));
  // Brute-force count of primitive pairs.
  const auto pts = kD5.lattice_points();
  std::size_t primitive = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) primitive += integer_length(pts[i], pts[j]) == 1;
  }
  CHECK(segs.size() == primitive);
}

TEST_CASE("bridge definition holds on every segment") {
  for (const auto* p : {&kD5, &kD7, &kSquare, &kRect}) {
    const auto d = interior_data(*p);
    for (const auto& s : enumerate_segments(*p)) {
      const auto [u, w] = s.endpoints;
      const bool ends = (p->on_boundary(u) && d.on_interior_hull_boundary(w)) ||
                        (p->on_boundary(w) && d.on_interior_hull_boundary(u));
      if (!ends) CHECK_FALSE(s.is_bridge);
      if (s.is_bridge) {
        // Sampled open-segment points avoid the open hull.
        for (int k = 1; k < 8; ++k) {
          const double x = u.x + (w.x - u.x) * k / 8.0;
          const double y = u.y + (w.y - u.y) * k / 8.0;
          if (d.dimension == 2) {
            const auto& hv = d.hull_vertices();
            bool inside = true;
            for (std::size_t i = 0; i < hv.size(); ++i) {
              const auto a = hv[i], b = hv[(i + 1) % hv.size()];
              inside = inside && ((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) > 1e-9);
            }
            CHECK_FALSE(inside);
          }
        }
      }
    }
  }
}

TEST_CASE("normalize_at_vertex") {
  const auto n5 = normalize_at_vertex(kD5, {1, 1});
  CHECK(n5.map.linear == std::array<std::int64_t, 4>{1, 0, 0, 1});
  CHECK(n5.map.translation == LatticePoint{-1, -1});
  CHECK(n5.corner == CornerCase::kEdgesMeet);
  const auto n7 = normalize_at_vertex(kD7, {1, 1});
  CHECK(n7.map.translation == LatticePoint{-1, -1});
  CHECK(n7.corner == CornerCase::kEdgesMeet);
  CHECK_THROWS_AS(normalize_at_vertex(kD5, {2, 1}), Error);

  for (const auto* p : {&kD5, &kD7}) {
    const auto hull = interior_data(*p).hull_vertices();
    for (const auto& kappa : hull) {
      const auto n = normalize_at_vertex(*p, kappa);
      const auto det = n.map.determinant();
      CHECK((det == 1 || det == -1));
      CHECK(n.map.apply(kappa) == LatticePoint{0, 0});
      CHECK(transform(n.image, n.map.inverse()) == *p);
      const auto d = interior_data(n.image);
      CHECK(d.on_interior_hull_boundary({1, 0}));
      CHECK(d.on_interior_hull_boundary({0, 1}));
      CHECK_FALSE(d.in_interior_hull({-1, 0}));
      CHECK_FALSE(d.in_interior_hull({0, -1}));
    }
  }
}

TEST_CASE("classify_regime") {
  CHECK(classify_regime(kD5) == Regime::kSpin);
  CHECK(classify_regime(kRect) == Regime::kHyperelliptic);
  CHECK(classify_regime(kD7) == Regime::kAlgebraicEven);
  CHECK(classify_regime(kCubic) == Regime::kDim0);
  CHECK(classify_regime(kSquare) == Regime::kUnobstructed);
  CHECK(classify_regime(poly({{0, 0}, {5, 0}, {5, 5}, {0, 5}})) == Regime::kHigherRootOdd);
  CHECK_THROWS_AS(classify_regime(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), Error);
}

TEST_CASE("classify_onedim") {
  const auto r = classify_onedim(kRect);
  CHECK(r.alpha == 0);
  CHECK(r.n == 4);
  CHECK(r.blowups == HirzebruchCase::kIsomorphism);
  const auto t = classify_onedim(kTrap);
  CHECK(t.alpha == 1);
  CHECK(t.n == 2);
  CHECK(t.blowups == HirzebruchCase::kIsomorphism);
  const auto c = classify_onedim(kTrapCut);
  CHECK(c.alpha == 1);
  CHECK(c.n == 2);
  CHECK(c.blowups == HirzebruchCase::kOneBlowup);
  CHECK_THROWS_AS(classify_onedim(kD5), Error);
}

TEST_CASE("classify_onedim: alpha + n - 1 = genus on Hirzebruch trapezoids and their cuts") {
  std::size_t seen_two = 0;
  for (std::int64_t n = 1; n <= 6; ++n) {
    for (std::int64_t alpha = 0; alpha <= 4; ++alpha) {
      // Bottom row length n + 2 alpha, top row n, height 2.
      const std::int64_t b = n + 2 * alpha;
      std::vector<std::vector<LatticePoint>> shapes{{{0, 0}, {b, 0}, {n, 2}, {0, 2}}};
      if (b >= 2) shapes.push_back({{0, 0}, {b - 1, 0}, {b - 1, 1}, {n, 2}, {0, 2}});
      if (b >= 2 && n >= 2) shapes.push_back({{0, 1}, {1, 0}, {b - 1, 0}, {b - 1, 1}, {n, 2}, {0, 2}});
      for (const auto& shape : shapes) {
        std::optional<LatticePolygon> maybe;
        try {
          maybe = poly(shape);
        } catch (const Error&) {
          continue;  // the cut is not convex for this (n, alpha)
        }
        const LatticePolygon& p = *maybe;
        if (!is_smooth(p) || pick_interior(p) == 0) continue;
        const auto d = interior_data(p);
        if (d.dimension != 1) continue;
        const auto h = classify_onedim(p);
        CHECK(h.alpha + h.n - 1 == static_cast<std::int64_t>(d.genus));
        CHECK(h.n > 0);
        if (h.blowups == HirzebruchCase::kTwoBlowups) ++seen_two;
        CHECK(transform(h.normalized, h.map.inverse()) == p);
      }
    }
  }
  CHECK(seen_two > 0);
}
