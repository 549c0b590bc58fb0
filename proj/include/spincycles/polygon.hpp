#pragma once

// Exact geometry of convex lattice polygons (Newton polygons of curves on
// smooth toric surfaces).  Everything is integer arithmetic; coordinates are
// expected to stay well below 2^31 so that cross products fit in int64.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spincycles {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) {
    return {a.x - b.x, a.y - b.y};
  }
};

std::int64_t cross(LatticePoint u, LatticePoint v);
/// Integer length of the lattice segment [p, q]: gcd of |dx| and |dy|.
std::int64_t integer_length(LatticePoint p, LatticePoint q);
std::string to_string(LatticePoint p);

/// A convex lattice polygon with at least three vertices.
///
/// Vertices are strictly convex, counterclockwise, and start at the
/// lexicographically smallest vertex.  Only the factory functions construct
/// one, so every instance satisfies these invariants.
class LatticePolygon {
 public:
  /// Validates and canonicalizes a vertex list in either orientation.
  static LatticePolygon from_vertices(std::vector<LatticePoint> vertices);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Twice the signed area; positive.
  std::int64_t twice_area() const;

  bool contains(LatticePoint p) const;
  bool strictly_contains(LatticePoint p) const;
  bool on_boundary(LatticePoint p) const { return contains(p) && !strictly_contains(p); }

  /// All lattice points of the closed polygon, lexicographic.
  std::vector<LatticePoint> lattice_points() const;
  std::vector<LatticePoint> boundary_lattice_points() const;

  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;

 private:
  explicit LatticePolygon(std::vector<LatticePoint> v) : vertices_(std::move(v)) {}
  std::vector<LatticePoint> vertices_;
};

LatticePolygon parse_polygon(std::string_view json_text);
std::string serialize_polygon(const LatticePolygon& p);

bool is_smooth(const LatticePolygon& p);

/// Convex hull of the interior lattice points: a polygon, a segment or a point.
struct InteriorData {
  std::vector<LatticePoint> interior_points;  // lexicographic
  int dimension = 0;
  std::optional<LatticePolygon> hull;  // dimension 2
  std::array<LatticePoint, 2> segment{};  // dimension 1: endpoints, lexicographic
  std::int64_t segment_length = 0;       // dimension 1
  std::size_t genus = 0;
  std::optional<std::int64_t> root_order;  // dimension 2 only

  const std::vector<LatticePoint>& hull_vertices() const;
  bool in_interior_hull(LatticePoint p) const;
  bool on_interior_hull_boundary(LatticePoint p) const;
  /// Topological interior of the hull in R^2; empty unless dimension is 2.
  bool in_interior_hull_interior(LatticePoint p) const;
};

/// Throws kGenusZero when the polygon has no interior lattice points.
InteriorData interior_data(const LatticePolygon& p);

struct PointParity {
  LatticePoint point;
  bool even = false;
};

/// Parity of every lattice point of the interior hull relative to one of its
/// vertices.  Requires an even interior polygon of dimension 2.
std::vector<PointParity> even_points(const LatticePolygon& p);
/// Parity of an arbitrary lattice point relative to a reference vertex.
bool is_even_relative(LatticePoint p, LatticePoint reference);

struct Segment {
  std::array<LatticePoint, 2> endpoints{};  // lexicographic
  bool is_bridge = false;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// All primitive integer segments between lattice points of the polygon,
/// ordered by (first endpoint, second endpoint).
std::vector<Segment> enumerate_segments(const LatticePolygon& p);
bool is_bridge(const LatticePolygon& p, const InteriorData& interior,
               LatticePoint u, LatticePoint w);

/// x -> linear * x + translation with an integer unimodular linear part.
struct AffineLatticeMap {
  std::array<std::int64_t, 4> linear{1, 0, 0, 1};  // row-major
  LatticePoint translation{};

  LatticePoint apply(LatticePoint p) const;
  std::int64_t determinant() const;
  AffineLatticeMap inverse() const;
  AffineLatticeMap then(const AffineLatticeMap& next) const;  // next after this
};

LatticePolygon transform(const LatticePolygon& p, const AffineLatticeMap& map);

enum class CornerCase { kEdgesMeet, kUnitCornerEdge, kUnrecognized };
std::string_view to_string(CornerCase c);

struct Normalization {
  AffineLatticeMap map;
  LatticePolygon image;
  CornerCase corner = CornerCase::kUnrecognized;
};

Normalization normalize_at_vertex(const LatticePolygon& p, LatticePoint kappa);

enum class Regime {
  kDim0,
  kHyperelliptic,
  kUnobstructed,
  kSpin,
  kAlgebraicEven,
  kHigherRootOdd,
};
std::string_view to_string(Regime r);

Regime classify_regime(const LatticePolygon& p);

enum class HirzebruchCase { kIsomorphism, kOneBlowup, kTwoBlowups };
std::string_view to_string(HirzebruchCase c);

struct HirzebruchClassification {
  std::int64_t alpha = 0;
  std::int64_t n = 0;
  HirzebruchCase blowups = HirzebruchCase::kIsomorphism;
  /// Normalizing map: interior segment onto (1,1)-(g,1), corner at the origin.
  AffineLatticeMap map;
  LatticePolygon normalized;
};

/// Reconstructed reading of the dim-1 classification: the polygon is a
/// Hirzebruch trapezoid of height 2 with zero, one or two unit corners cut.
HirzebruchClassification classify_onedim(const LatticePolygon& p);

}  // namespace spincycles
