#include "spincycles/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "spincycles/error.hpp"

namespace spincycles {

namespace {

using i128 = __int128;

LatticePoint primitive(LatticePoint v) {
  const std::int64_t d = std::gcd(v.x, v.y);
  return d == 0 ? v : LatticePoint{v.x / d, v.y / d};
}

// Strict-convexity checks on a counterclockwise cycle.
void require_strictly_convex(const std::vector<LatticePoint>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const LatticePoint a = v[i];
    const LatticePoint b = v[(i + 1) % n];
    const LatticePoint c = v[(i + 2) % n];
    const std::int64_t turn = cross(b - a, c - b);
    if (turn == 0) {
      throw Error(ErrorCode::kCollinear,
                  "three consecutive vertices are collinear at " + to_string(b));
    }
    if (turn < 0) {
      throw Error(ErrorCode::kNonConvex, "reflex vertex at " + to_string(b));
    }
  }
  // Every vertex strictly left of every edge it does not touch rules out
  // self-intersecting cycles whose turns are all left.
  for (std::size_t i = 0; i < n; ++i) {
    const LatticePoint a = v[i];
    const LatticePoint b = v[(i + 1) % n];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || j == (i + 1) % n) continue;
      if (cross(b - a, v[j] - a) <= 0) {
        throw Error(ErrorCode::kNonConvex,
                    "vertex " + to_string(v[j]) + " is not strictly inside edge " +
                        to_string(a) + "-" + to_string(b));
      }
    }
  }
}

// Andrew's monotone chain, collinear points dropped.  Input sorted, unique.
std::vector<LatticePoint> convex_hull(const std::vector<LatticePoint>& pts) {
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 1]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 1]) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

bool on_closed_segment(LatticePoint p, LatticePoint a, LatticePoint b) {
  if (cross(b - a, p - a) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Is there t in (0,1) with u + t(w-u) strictly inside the convex polygon?
bool open_segment_meets_interior(const std::vector<LatticePoint>& poly,
                                 LatticePoint u, LatticePoint w) {
  // Interval (lo_num/lo_den, hi_num/hi_den), denominators positive.
  i128 lo_num = 0, lo_den = 1, hi_num = 1, hi_den = 1;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const LatticePoint a = poly[k];
    const LatticePoint edge = poly[(k + 1) % n] - a;
    const i128 fu = cross(edge, u - a);
    const i128 fw = cross(edge, w - a);
    const i128 slope = fw - fu;
    if (slope == 0) {
      if (fu <= 0) return false;
    } else if (slope > 0) {
      // t > -fu / slope
      const i128 num = -fu, den = slope;
      if (num * lo_den > lo_num * den) { lo_num = num; lo_den = den; }
    } else {
      // t < fu / -slope
      const i128 num = fu, den = -slope;
      if (num * hi_den < hi_num * den) { hi_num = num; hi_den = den; }
    }
  }
  return lo_num * hi_den < hi_num * lo_den;
}

}  // namespace

std::int64_t cross(LatticePoint u, LatticePoint v) { return u.x * v.y - u.y * v.x; }

std::int64_t integer_length(LatticePoint p, LatticePoint q) {
  return std::gcd(q.x - p.x, q.y - p.y);
}

std::string to_string(LatticePoint p) {
  std::ostringstream os;
  os << '(' << p.x << ',' << p.y << ')';
  return os.str();
}

LatticePolygon LatticePolygon::from_vertices(std::vector<LatticePoint> vertices) {
  std::vector<LatticePoint> distinct = vertices;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) {
    throw Error(ErrorCode::kTooFewVertices, "a polygon needs at least 3 distinct vertices");
  }
  if (distinct.size() != vertices.size()) {
    throw Error(ErrorCode::kMalformedInput, "repeated vertex");
  }
  std::int64_t twice_area = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    twice_area += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
  }
  if (twice_area == 0) {
    throw Error(ErrorCode::kCollinear, "vertices are collinear (degenerate polygon)");
  }
  if (twice_area < 0) std::reverse(vertices.begin(), vertices.end());
  require_strictly_convex(vertices);
  const auto first = std::min_element(vertices.begin(), vertices.end());
  std::rotate(vertices.begin(), first, vertices.end());
  return LatticePolygon(std::move(vertices));
}

std::int64_t LatticePolygon::twice_area() const {
  std::int64_t a = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    a += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return a;
}

bool LatticePolygon::contains(LatticePoint p) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) < 0) return false;
  }
  return true;
}

bool LatticePolygon::strictly_contains(LatticePoint p) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) <= 0) return false;
  }
  return true;
}

std::vector<LatticePoint> LatticePolygon::lattice_points() const {
  auto [xmin, xmax] = std::minmax_element(vertices_.begin(), vertices_.end(),
                                          [](auto a, auto b) { return a.x < b.x; });
  auto [ymin, ymax] = std::minmax_element(vertices_.begin(), vertices_.end(),
                                          [](auto a, auto b) { return a.y < b.y; });
  std::vector<LatticePoint> out;
  for (std::int64_t x = xmin->x; x <= xmax->x; ++x) {
    for (std::int64_t y = ymin->y; y <= ymax->y; ++y) {
      if (contains({x, y})) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<LatticePoint> LatticePolygon::boundary_lattice_points() const {
  auto pts = lattice_points();
  std::erase_if(pts, [this](LatticePoint p) { return strictly_contains(p); });
  return pts;
}

LatticePolygon parse_polygon(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw Error(ErrorCode::kMalformedInput, "expected an object with a \"vertices\" array");
  }
  std::vector<LatticePoint> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 2) {
      throw Error(ErrorCode::kMalformedInput, "each vertex must be a pair [x, y]");
    }
    for (const auto& c : v) {
      if (!c.is_number_integer()) {
        throw Error(ErrorCode::kNonIntegerCoordinate,
                    "vertex coordinate is not an integer: " + c.dump());
      }
    }
    vertices.push_back({v[0].get<std::int64_t>(), v[1].get<std::int64_t>()});
  }
  return LatticePolygon::from_vertices(std::move(vertices));
}

std::string serialize_polygon(const LatticePolygon& p) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (const auto& v : p.vertices()) doc["vertices"].push_back({v.x, v.y});
  return doc.dump();
}

bool is_smooth(const LatticePolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const LatticePoint next = primitive(v[(i + 1) % n] - v[i]);
    const LatticePoint prev = primitive(v[(i + n - 1) % n] - v[i]);
    const std::int64_t det = cross(next, prev);
    if (det != 1 && det != -1) return false;
  }
  return true;
}

const std::vector<LatticePoint>& InteriorData::hull_vertices() const {
  static const std::vector<LatticePoint> kEmpty;
  return hull ? hull->vertices() : kEmpty;
}

bool InteriorData::in_interior_hull(LatticePoint p) const {
  switch (dimension) {
    case 0: return p == interior_points.front();
    case 1: return on_closed_segment(p, segment[0], segment[1]);
    default: return hull->contains(p);
  }
}

bool InteriorData::on_interior_hull_boundary(LatticePoint p) const {
  if (dimension < 2) return in_interior_hull(p);
  return hull->on_boundary(p);
}

bool InteriorData::in_interior_hull_interior(LatticePoint p) const {
  return dimension == 2 && hull->strictly_contains(p);
}

InteriorData interior_data(const LatticePolygon& p) {
  InteriorData d;
  for (const auto& q : p.lattice_points()) {
    if (p.strictly_contains(q)) d.interior_points.push_back(q);
  }
  if (d.interior_points.empty()) {
    throw Error(ErrorCode::kGenusZero, "polygon has no interior lattice points");
  }
  d.genus = d.interior_points.size();
  const auto hull = convex_hull(d.interior_points);
  if (hull.size() == 1) {
    d.dimension = 0;
    d.segment = {hull[0], hull[0]};
  } else if (hull.size() == 2) {
    d.dimension = 1;
    d.segment = {std::min(hull[0], hull[1]), std::max(hull[0], hull[1])};
    d.segment_length = integer_length(hull[0], hull[1]);
  } else {
    d.dimension = 2;
    d.hull = LatticePolygon::from_vertices(hull);
    std::int64_t g = 0;
    const auto& hv = d.hull->vertices();
    for (std::size_t i = 0; i < hv.size(); ++i) {
      g = std::gcd(g, integer_length(hv[i], hv[(i + 1) % hv.size()]));
    }
    d.root_order = g;
  }
  return d;
}

bool is_even_relative(LatticePoint p, LatticePoint reference) {
  const LatticePoint d = p - reference;
  return d.x % 2 == 0 && d.y % 2 == 0;
}

std::vector<PointParity> even_points(const LatticePolygon& p) {
  const InteriorData d = interior_data(p);
  if (d.dimension != 2 || *d.root_order % 2 != 0) {
    throw Error(ErrorCode::kEvennessUndefined,
                "evenness needs a two-dimensional interior polygon of even root order");
  }
  const LatticePoint reference = d.hull->vertices().front();
  std::vector<PointParity> out;
  out.reserve(d.genus);
  for (const auto& q : d.interior_points) out.push_back({q, is_even_relative(q, reference)});
  return out;
}

bool is_bridge(const LatticePolygon& p, const InteriorData& interior, LatticePoint u,
               LatticePoint w) {
  const bool u_outer = p.on_boundary(u) && interior.on_interior_hull_boundary(w);
  const bool w_outer = p.on_boundary(w) && interior.on_interior_hull_boundary(u);
  if (!u_outer && !w_outer) return false;
  if (interior.dimension < 2) return true;
  return !open_segment_meets_interior(interior.hull->vertices(), u, w);
}

std::vector<Segment> enumerate_segments(const LatticePolygon& p) {
  const InteriorData interior = interior_data(p);
  const auto pts = p.lattice_points();
  std::vector<Segment> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (integer_length(pts[i], pts[j]) != 1) continue;
      out.push_back({{pts[i], pts[j]}, is_bridge(p, interior, pts[i], pts[j])});
    }
  }
  return out;
}

LatticePoint AffineLatticeMap::apply(LatticePoint p) const {
  return {linear[0] * p.x + linear[1] * p.y + translation.x,
          linear[2] * p.x + linear[3] * p.y + translation.y};
}

std::int64_t AffineLatticeMap::determinant() const {
  return linear[0] * linear[3] - linear[1] * linear[2];
}

AffineLatticeMap AffineLatticeMap::inverse() const {
  const std::int64_t det = determinant();
  AffineLatticeMap inv;
  // det is +-1, so the adjugate divided by det stays integral.
  inv.linear = {linear[3] * det, -linear[1] * det, -linear[2] * det, linear[0] * det};
  const LatticePoint t = translation;
  inv.translation = {-(inv.linear[0] * t.x + inv.linear[1] * t.y),
                     -(inv.linear[2] * t.x + inv.linear[3] * t.y)};
  return inv;
}

AffineLatticeMap AffineLatticeMap::then(const AffineLatticeMap& next) const {
  AffineLatticeMap out;
  const auto& a = next.linear;
  const auto& b = linear;
  out.linear = {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  out.translation = next.apply(translation);
  return out;
}

LatticePolygon transform(const LatticePolygon& p, const AffineLatticeMap& map) {
  std::vector<LatticePoint> image;
  image.reserve(p.size());
  for (const auto& v : p.vertices()) image.push_back(map.apply(v));
  return LatticePolygon::from_vertices(std::move(image));
}

std::string_view to_string(CornerCase c) {
  switch (c) {
    case CornerCase::kEdgesMeet: return "edges_meet";
    case CornerCase::kUnitCornerEdge: return "unit_corner_edge";
    case CornerCase::kUnrecognized: return "unrecognized";
  }
  return "unrecognized";
}

Normalization normalize_at_vertex(const LatticePolygon& p, LatticePoint kappa) {
  const InteriorData d = interior_data(p);
  if (d.dimension != 2) {
    throw Error(ErrorCode::kWrongRegime, "normalization needs a two-dimensional interior polygon");
  }
  const auto& hv = d.hull->vertices();
  const auto it = std::find(hv.begin(), hv.end(), kappa);
  if (it == hv.end()) {
    throw Error(ErrorCode::kNotAVertex, to_string(kappa) + " is not a vertex of the interior polygon");
  }
  const std::size_t i = static_cast<std::size_t>(it - hv.begin());
  const std::size_t n = hv.size();
  const LatticePoint e1 = primitive(hv[(i + 1) % n] - kappa);
  const LatticePoint e2 = primitive(hv[(i + n - 1) % n] - kappa);
  if (cross(e1, e2) != 1) {
    throw Error(ErrorCode::kNotSmooth, "interior polygon is not smooth at " + to_string(kappa));
  }
  AffineLatticeMap map;
  map.linear = {e2.y, -e2.x, -e1.y, e1.x};
  const LatticePoint lk{map.linear[0] * kappa.x + map.linear[1] * kappa.y,
                        map.linear[2] * kappa.x + map.linear[3] * kappa.y};
  map.translation = {-lk.x, -lk.y};
  LatticePolygon image = transform(p, map);

  CornerCase corner = CornerCase::kUnrecognized;
  const auto& iv = image.vertices();
  if (std::find(iv.begin(), iv.end(), LatticePoint{-1, -1}) != iv.end()) {
    corner = CornerCase::kEdgesMeet;
  } else {
    for (std::size_t k = 0; k < iv.size(); ++k) {
      if (iv[k] == LatticePoint{0, -1} && iv[(k + 1) % iv.size()] == LatticePoint{-1, 0}) {
        corner = CornerCase::kUnitCornerEdge;
      }
    }
  }
  return {map, std::move(image), corner};
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kDim0: return "dim0";
    case Regime::kHyperelliptic: return "hyperelliptic";
    case Regime::kUnobstructed: return "unobstructed";
    case Regime::kSpin: return "spin";
    case Regime::kAlgebraicEven: return "algebraic_even";
    case Regime::kHigherRootOdd: return "higher_root_odd";
  }
  return "unknown";
}

Regime classify_regime(const LatticePolygon& p) {
  const InteriorData d = interior_data(p);
  if (!is_smooth(p)) {
    throw Error(ErrorCode::kNotSmooth, "polygon is not smooth");
  }
  if (d.dimension == 0) return Regime::kDim0;
  if (d.dimension == 1) return Regime::kHyperelliptic;
  const std::int64_t n = *d.root_order;
  if (n == 1) return Regime::kUnobstructed;
  if (n == 2) return Regime::kSpin;
  return n % 2 == 0 ? Regime::kAlgebraicEven : Regime::kHigherRootOdd;
}

std::string_view to_string(HirzebruchCase c) {
  switch (c) {
    case HirzebruchCase::kIsomorphism: return "isomorphism";
    case HirzebruchCase::kOneBlowup: return "one_blowup";
    case HirzebruchCase::kTwoBlowups: return "two_blowups";
  }
  return "unknown";
}

namespace {

struct OnedimReading {
  std::int64_t alpha = 0;
  std::int64_t n = 0;
  int cuts = 0;
};

// Reads a polygon already placed with interior segment (1,1)-(g,1).  Succeeds
// only when (0,0) is a vertex whose edges run along (1,0) and (0,1).
std::optional<OnedimReading> read_strip(const LatticePolygon& q, std::int64_t g) {
  const auto& v = q.vertices();
  const std::size_t n = v.size();
  const auto it = std::find(v.begin(), v.end(), LatticePoint{0, 0});
  if (it == v.end()) return std::nullopt;
  // Walk counterclockwise from the origin.
  std::vector<LatticePoint> walk;
  for (std::size_t k = 0; k < n; ++k) {
    walk.push_back(v[(static_cast<std::size_t>(it - v.begin()) + k) % n]);
  }
  std::size_t k = 1;
  if (walk[k].y != 0 || walk[k].x <= 0) return std::nullopt;
  const std::int64_t bottom = walk[k].x;
  ++k;
  int right_cuts = 0;
  if (k < n && walk[k] == LatticePoint{g + 1, 1}) {
    right_cuts = 1;
    ++k;
  }
  if (k >= n || walk[k].y != 2) return std::nullopt;
  const std::int64_t top = walk[k].x;
  ++k;
  int left_cuts = 0;
  if (k < n && walk[k] == LatticePoint{1, 2}) {
    // top edge ends at (1,2); the left side then steps down to (0,1)
    ++k;
    if (k >= n || walk[k] != LatticePoint{0, 1}) return std::nullopt;
    left_cuts = 1;
    ++k;
  } else if (k < n && walk[k] == LatticePoint{0, 2}) {
    ++k;
  } else if (top == 0 || top == 1) {
    // degenerate top row: the top-right vertex is already the left end
    if (top == 1) {
      if (k >= n || walk[k] != LatticePoint{0, 1}) return std::nullopt;
      left_cuts = 1;
      ++k;
    }
  } else {
    return std::nullopt;
  }
  if (k != n) return std::nullopt;

  std::int64_t B = bottom;
  std::int64_t T = top;
  if (right_cuts == 0) {
    if (bottom + top != 2 * g + 2) return std::nullopt;
  } else {
    if (bottom + top != 2 * g + 1) return std::nullopt;
    (bottom > top ? B : T) += 1;  // restore the corner on the longer row
  }
  if ((B - T) % 2 != 0) return std::nullopt;
  OnedimReading r;
  r.alpha = (B > T ? B - T : T - B) / 2;
  r.n = std::min(B, T);
  r.cuts = left_cuts + right_cuts;
  if (r.n <= 0 || r.alpha + r.n - 1 != g) return std::nullopt;
  return r;
}

// Unimodular map sending primitive d to (1,0).
AffineLatticeMap align_direction(LatticePoint d) {
  // Solve d.x * v - d.y * u = 1.
  std::int64_t old_r = d.x, r = -d.y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t qt = old_r / r;
    old_r = std::exchange(r, old_r - qt * r);
    old_s = std::exchange(s, old_s - qt * s);
    old_t = std::exchange(t, old_t - qt * t);
  }
  // old_s * d.x + old_t * (-d.y) = old_r = +-1
  std::int64_t v = old_s, u = old_t;
  if (old_r < 0) { v = -v; u = -u; }
  // Columns (d, (u, v)) have determinant d.x*v - d.y*u = 1; invert.
  AffineLatticeMap m;
  m.linear = {v, -u, -d.y, d.x};
  return m;
}

}  // namespace

HirzebruchClassification classify_onedim(const LatticePolygon& p) {
  const InteriorData d = interior_data(p);
  if (d.dimension != 1) {
    throw Error(ErrorCode::kWrongRegime, "interior polygon is not one-dimensional");
  }
  if (!is_smooth(p)) throw Error(ErrorCode::kNotSmooth, "polygon is not smooth");
  const auto g = static_cast<std::int64_t>(d.genus);
  const LatticePoint dir = primitive(d.segment[1] - d.segment[0]);

  AffineLatticeMap base = align_direction(dir);
  const LatticePoint s0 = base.apply(d.segment[0]);
  base.translation = {1 - s0.x, 1 - s0.y};

  const LatticePolygon strip = transform(p, base);
  std::int64_t width = 0;
  for (const auto& v : strip.vertices()) {
    if (v.y < 0 || v.y > 2) {
      throw Error(ErrorCode::kWrongRegime, "polygon does not fit the height-2 strip");
    }
    width = std::max({width, v.x < 0 ? -v.x : v.x});
  }

  std::optional<HirzebruchClassification> best;
  for (int flip_y = 0; flip_y < 2; ++flip_y) {
    for (int flip_x = 0; flip_x < 2; ++flip_x) {
      for (std::int64_t shear = -width - 2; shear <= width + 2; ++shear) {
        AffineLatticeMap m = base;
        if (flip_y) m = m.then({{1, 0, 0, -1}, {0, 2}});
        if (flip_x) m = m.then({{-1, 0, 0, 1}, {g + 1, 0}});
        m = m.then({{1, shear, 0, 1}, {-shear, 0}});
        LatticePolygon image = transform(p, m);
        const auto reading = read_strip(image, g);
        if (!reading) continue;
        if (best && best->alpha >= reading->alpha) continue;
        const HirzebruchCase c = reading->cuts == 0   ? HirzebruchCase::kIsomorphism
                                 : reading->cuts == 1 ? HirzebruchCase::kOneBlowup
                                                      : HirzebruchCase::kTwoBlowups;
        best = HirzebruchClassification{reading->alpha, reading->n, c, m, std::move(image)};
      }
    }
  }
  if (!best) {
    throw Error(ErrorCode::kWrongRegime, "no Hirzebruch normalization found for this polygon");
  }
  return *best;
}

}  // namespace spincycles
