#pragma once

// Combinatorial model of the curve attached to a lattice polygon, at the
// level of first homology.
//
// Interior lattice points v_1 < ... < v_g (lexicographic) index a symplectic
// basis: a_i is the real oval over v_i, b_i a conjugation-invariant cycle
// over a path from v_i to the boundary.  Such paths are recorded as a
// B-forest.  A primitive segment [u, w] carries the mod-2 class
// beta(u) + beta(w), with beta(x) = b_x for interior x and 0 on the boundary,
// so the classes along any B-path telescope to b_v.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spincycles/cycles.hpp"
#include "spincycles/polygon.hpp"

namespace spincycles {

/// One path per interior point, listed as lattice points: the path of v_i
/// starts at v_i and ends on the boundary of the polygon.
using BForest = std::vector<std::vector<LatticePoint>>;

class SurfaceModel {
 public:
  /// Builds the model with the default B-forest.  Throws kGenusZero.
  static SurfaceModel build(const LatticePolygon& p);
  /// Builds the model with a caller-supplied forest, validated.
  static SurfaceModel build(const LatticePolygon& p, BForest forest);

  const LatticePolygon& polygon() const { return polygon_; }
  const InteriorData& interior() const { return interior_; }
  std::size_t genus() const { return interior_.genus; }
  const std::vector<LatticePoint>& points() const { return interior_.interior_points; }
  /// 0-based index of an interior point.
  std::optional<std::size_t> find_index(LatticePoint v) const;
  std::size_t index(LatticePoint v) const;  // throws kNotInterior
  const BForest& forest() const { return forest_; }
  /// Segments of the B-path at interior index i, in path order.
  std::vector<std::array<LatticePoint, 2>> path_segments(std::size_t i) const;

 private:
  SurfaceModel(LatticePolygon p, InteriorData d, BForest f)
      : polygon_(std::move(p)), interior_(std::move(d)), forest_(std::move(f)) {}

  LatticePolygon polygon_;
  InteriorData interior_;
  BForest forest_;
};

/// Default forest: rows whose leftmost lattice point is on the boundary walk
/// left by unit steps; every other point follows a breadth-first parent over
/// primitive segments.
BForest default_forest(const LatticePolygon& p);
/// A seeded random spanning forest over primitive segments.
BForest random_forest(const LatticePolygon& p, std::uint64_t seed);
/// Throws kMalformedInput describing the first violated forest invariant.
void validate_forest(const LatticePolygon& p, const InteriorData& d, const BForest& forest);

CycleClassF2 a_class(const SurfaceModel& m, LatticePoint v);
CycleClassF2 b_class(const SurfaceModel& m, LatticePoint v);
CycleClassF2 segment_class(const SurfaceModel& m, LatticePoint u, LatticePoint w);
inline CycleClassF2 segment_class(const SurfaceModel& m, const Segment& s) {
  return segment_class(m, s.endpoints[0], s.endpoints[1]);
}

struct ChainCurve {
  std::string name;  // s0, v1, s1, ..., vg, sg
  CycleClassZ cls;
};

/// Integral classes of the 2g+1 chain curves of the hyperelliptic
/// normalization.  Consecutive pairings are +1, all others 0:
///   s0 = -b(v1), vi = a(vi), si = b(vi) - b(v(i+1)), sg = b(vg).
std::vector<ChainCurve> hyperelliptic_chain(const SurfaceModel& m);

}  // namespace spincycles
