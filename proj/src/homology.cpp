#include "spincycles/homology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "spincycles/error.hpp"

namespace spincycles {

namespace {

struct LatticeGraph {
  std::vector<LatticePoint> points;  // lexicographic
  std::map<LatticePoint, std::size_t> id;
  std::vector<bool> boundary;

  explicit LatticeGraph(const LatticePolygon& p) : points(p.lattice_points()) {
    boundary.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      id.emplace(points[i], i);
      boundary[i] = p.on_boundary(points[i]);
    }
  }

  std::vector<std::size_t> neighbours(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i && integer_length(points[i], points[j]) == 1) out.push_back(j);
    }
    return out;
  }
};

bool is_unit_axis_step(LatticePoint d) {
  return (d.x == 0 && (d.y == 1 || d.y == -1)) || (d.y == 0 && (d.x == 1 || d.x == -1));
}

// Preference rank of a step direction for the default forest.
int step_rank(LatticePoint d) {
  if (d == LatticePoint{-1, 0}) return 0;
  if (d == LatticePoint{0, -1}) return 1;
  if (d == LatticePoint{1, 0}) return 2;
  if (d == LatticePoint{0, 1}) return 3;
  return 4;
}

BForest paths_from_parents(const LatticeGraph& graph, const InteriorData& d,
                           const std::vector<std::size_t>& parent) {
  BForest forest;
  forest.reserve(d.genus);
  for (const auto& v : d.interior_points) {
    std::vector<LatticePoint> path{v};
    std::size_t cur = graph.id.at(v);
    while (!graph.boundary[cur]) {
      cur = parent[cur];
      path.push_back(graph.points[cur]);
    }
    forest.push_back(std::move(path));
  }
  return forest;
}

}  // namespace

BForest default_forest(const LatticePolygon& p) {
  const InteriorData d = interior_data(p);
  const LatticeGraph graph(p);
  const std::size_t n = graph.points.size();

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kUnset);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.boundary[i]) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) adj[i] = graph.neighbours(i);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j : adj[i]) {
      if (dist[j] == kUnset) {
        dist[j] = dist[i] + 1;
        queue.push_back(j);
      }
    }
  }

  // Rows whose leftmost lattice point is on the boundary.
  std::map<std::int64_t, bool> left_walk;
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = graph.points[i].y;
    if (!left_walk.contains(y)) left_walk[y] = graph.boundary[i];
  }

  std::vector<std::size_t> parent(n, kUnset);
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.boundary[i]) continue;
    const LatticePoint v = graph.points[i];
    if (left_walk[v.y]) {
      parent[i] = graph.id.at({v.x - 1, v.y});
      continue;
    }
    std::size_t best = kUnset;
    for (std::size_t j : adj[i]) {
      if (dist[j] + 1 != dist[i]) continue;
      if (best == kUnset ||
          step_rank(graph.points[j] - v) < step_rank(graph.points[best] - v)) {
        best = j;
      }
    }
    parent[i] = best;
  }
  return paths_from_parents(graph, d, parent);
}

BForest random_forest(const LatticePolygon& p, std::uint64_t seed) {
  const InteriorData d = interior_data(p);
  const LatticeGraph graph(p);
  const std::size_t n = graph.points.size();
  std::mt19937_64 rng(seed);

  std::vector<bool> rooted = graph.boundary;
  std::vector<std::size_t> parent(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rooted[i]) pending.push_back(i);
  }
  while (!pending.empty()) {
    std::shuffle(pending.begin(), pending.end(), rng);
    std::vector<std::size_t> still;
    for (std::size_t i : pending) {
      std::vector<std::size_t> axis, any;
      for (std::size_t j : graph.neighbours(i)) {
        if (!rooted[j]) continue;
        any.push_back(j);
        if (is_unit_axis_step(graph.points[j] - graph.points[i])) axis.push_back(j);
      }
      if (any.empty()) {
        still.push_back(i);
        continue;
      }
      const auto& pool = (!axis.empty() && (rng() & 1U)) ? axis : any;
      parent[i] = pool[rng() % pool.size()];
      rooted[i] = true;
    }
    pending = std::move(still);
  }
  return paths_from_parents(graph, d, parent);
}

void validate_forest(const LatticePolygon& p, const InteriorData& d, const BForest& forest) {
  if (forest.size() != d.genus) {
    throw Error(ErrorCode::kMalformedInput, "forest must have one path per interior point");
  }
  for (std::size_t i = 0; i < forest.size(); ++i) {
    const auto& path = forest[i];
    const std::string where = "path of " + to_string(d.interior_points[i]);
    if (path.size() < 2 || path.front() != d.interior_points[i]) {
      throw Error(ErrorCode::kMalformedInput, where + " must start at its point and move");
    }
    std::set<std::pair<LatticePoint, LatticePoint>> seen;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const LatticePoint u = path[k];
      const LatticePoint w = path[k + 1];
      if (!p.contains(u) || !p.contains(w)) {
        throw Error(ErrorCode::kMalformedInput, where + " leaves the polygon");
      }
      if (integer_length(u, w) != 1) {
        throw Error(ErrorCode::kNotPrimitive, where + " has a non-primitive step");
      }
      if (!seen.insert({std::min(u, w), std::max(u, w)}).second) {
        throw Error(ErrorCode::kMalformedInput, where + " repeats a segment");
      }
    }
    if (!p.on_boundary(path.back())) {
      throw Error(ErrorCode::kMalformedInput, where + " does not end on the boundary");
    }
  }
}

SurfaceModel SurfaceModel::build(const LatticePolygon& p) {
  return build(p, default_forest(p));
}

SurfaceModel SurfaceModel::build(const LatticePolygon& p, BForest forest) {
  InteriorData d = interior_data(p);
  validate_forest(p, d, forest);
  return SurfaceModel(p, std::move(d), std::move(forest));
}

std::optional<std::size_t> SurfaceModel::find_index(LatticePoint v) const {
  const auto& pts = points();
  const auto it = std::lower_bound(pts.begin(), pts.end(), v);
  if (it == pts.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - pts.begin());
}

std::size_t SurfaceModel::index(LatticePoint v) const {
  const auto i = find_index(v);
  if (!i) throw Error(ErrorCode::kNotInterior, to_string(v) + " is not an interior lattice point");
  return *i;
}

std::vector<std::array<LatticePoint, 2>> SurfaceModel::path_segments(std::size_t i) const {
  const auto& path = forest_.at(i);
  std::vector<std::array<LatticePoint, 2>> out;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) out.push_back({path[k], path[k + 1]});
  return out;
}

CycleClassF2 a_class(const SurfaceModel& m, LatticePoint v) {
  return CycleClassF2::a(m.genus(), m.index(v));
}

CycleClassF2 b_class(const SurfaceModel& m, LatticePoint v) {
  return CycleClassF2::b(m.genus(), m.index(v));
}

CycleClassF2 segment_class(const SurfaceModel& m, LatticePoint u, LatticePoint w) {
  if (!m.polygon().contains(u) || !m.polygon().contains(w)) {
    throw Error(ErrorCode::kMalformedInput, "segment endpoint outside the polygon");
  }
  if (integer_length(u, w) != 1) {
    throw Error(ErrorCode::kNotPrimitive,
                "segment " + to_string(u) + "-" + to_string(w) + " is not primitive");
  }
  CycleClassF2 x(m.genus());
  if (const auto i = m.find_index(u)) x.flip(2 * *i + 1);
  if (const auto i = m.find_index(w)) x.flip(2 * *i + 1);
  return x;
}

std::vector<ChainCurve> hyperelliptic_chain(const SurfaceModel& m) {
  if (classify_regime(m.polygon()) != Regime::kHyperelliptic) {
    throw Error(ErrorCode::kWrongRegime, "the chain exists only in the hyperelliptic regime");
  }
  const HirzebruchClassification h = classify_onedim(m.polygon());
  const AffineLatticeMap back = h.map.inverse();
  const std::size_t g = m.genus();
  std::vector<std::size_t> k(g);
  for (std::size_t i = 0; i < g; ++i) {
    k[i] = m.index(back.apply({static_cast<std::int64_t>(i) + 1, 1}));
  }
  std::vector<ChainCurve> chain;
  chain.push_back({"s0", -CycleClassZ::b(g, k[0])});
  for (std::size_t i = 0; i < g; ++i) {
    chain.push_back({"v" + std::to_string(i + 1), CycleClassZ::a(g, k[i])});
    CycleClassZ s = CycleClassZ::b(g, k[i]);
    if (i + 1 < g) s -= CycleClassZ::b(g, k[i + 1]);
    chain.push_back({"s" + std::to_string(i + 1), std::move(s)});
  }
  return chain;
}

}  // namespace spincycles
