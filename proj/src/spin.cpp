#include "spincycles/spin.hpp"

#include <algorithm>
#include <bit>

#include "spincycles/error.hpp"

namespace spincycles {

namespace {

constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

void require_genus(const QuadraticForm& q, const CycleClassF2& x) {
  if (q.genus() != x.genus()) {
    throw Error(ErrorCode::kGenusMismatch, "class genus " + std::to_string(x.genus()) +
                                               " does not match form genus " +
                                               std::to_string(q.genus()));
  }
}

bool has_spin_form(Regime r) { return r == Regime::kSpin || r == Regime::kAlgebraicEven; }

constexpr const char* kCaveat =
    "homology-level verdict: mod 2 classes are exact, isotopy classes are not modeled";

}  // namespace

QuadraticForm QuadraticForm::from_values(const std::vector<int>& q_a,
                                         const std::vector<int>& q_b) {
  if (q_a.size() != q_b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "q_a and q_b must have the same length");
  }
  CycleClassF2 v(q_a.size());
  for (std::size_t i = 0; i < q_a.size(); ++i) {
    v.set(2 * i, (q_a[i] & 1) != 0);
    v.set(2 * i + 1, (q_b[i] & 1) != 0);
  }
  return QuadraticForm(std::move(v));
}

QuadraticForm QuadraticForm::standard(std::size_t genus, bool arf) {
  CycleClassF2 v(genus);
  for (std::size_t i = 0; i < genus; ++i) v.set(2 * i + 1, true);
  if (genus > 0 && arf) v.set(0, true);
  return QuadraticForm(std::move(v));
}

QuadraticForm canonical_q(const SurfaceModel& m) {
  const Regime r = classify_regime(m.polygon());
  if (!has_spin_form(r)) {
    throw Error(ErrorCode::kWrongRegime, std::string("no canonical spin form in regime ") +
                                             std::string(to_string(r)));
  }
  const auto parities = even_points(m.polygon());
  CycleClassF2 v(m.genus());
  for (std::size_t i = 0; i < m.genus(); ++i) {
    v.set(2 * i, true);
    v.set(2 * i + 1, parities[i].even);
  }
  return QuadraticForm(std::move(v));
}

bool eval_q(const QuadraticForm& q, const CycleClassF2& x) {
  require_genus(q, x);
  // Linear part on the basis plus the products x_{a_i} x_{b_i} coming from
  // polarizing across each hyperbolic pair.
  unsigned parity = 0;
  const auto& qw = q.basis_values().words();
  for (std::size_t w = 0; w < x.words().size(); ++w) {
    const std::uint64_t xw = x.words()[w];
    parity ^= static_cast<unsigned>(std::popcount(xw & qw[w]));
    parity ^= static_cast<unsigned>(std::popcount(xw & (xw >> 1) & kEvenBits));
  }
  return (parity & 1U) != 0;
}

bool arf(const QuadraticForm& q) {
  bool a = false;
  for (std::size_t i = 0; i < q.genus(); ++i) a ^= q.q_a(i) && q.q_b(i);
  return a;
}

bool is_admissible(const QuadraticForm& q, const CycleClassF2& x) {
  require_genus(q, x);
  return !x.is_zero() && eval_q(q, x);
}

std::uint64_t count_admissible(const QuadraticForm& q) {
  if (q.genus() > 31) {
    throw Error(ErrorCode::kGenusTooLarge, "exact admissible count is limited to genus 31");
  }
  // Counts of classes with q = 0 and q = 1, one hyperbolic pair at a time.
  std::uint64_t zeros = 1, ones = 0;
  for (std::size_t i = 0; i < q.genus(); ++i) {
    std::uint64_t c1 = 0;
    for (int xa = 0; xa < 2; ++xa) {
      for (int xb = 0; xb < 2; ++xb) {
        c1 += static_cast<std::uint64_t>(((xa & q.q_a(i)) ^ (xb & q.q_b(i)) ^ (xa & xb)) & 1);
      }
    }
    const std::uint64_t c0 = 4 - c1;
    const std::uint64_t z = zeros * c0 + ones * c1;
    const std::uint64_t o = zeros * c1 + ones * c0;
    zeros = z;
    ones = o;
  }
  return ones;  // the zero class has q = 0
}

std::string_view to_string(VanishingVerdict v) {
  switch (v) {
    case VanishingVerdict::kVanishing: return "vanishing";
    case VanishingVerdict::kNotVanishing: return "not_vanishing";
    case VanishingVerdict::kNoHomologicalObstruction: return "no_homological_obstruction";
    case VanishingVerdict::kOutOfScope: return "out_of_scope";
  }
  return "unknown";
}

VanishingReport vanishing_cycle_report(const LatticePolygon& p, const CycleClassF2& x) {
  const SurfaceModel m = SurfaceModel::build(p);
  if (x.genus() != m.genus()) {
    throw Error(ErrorCode::kGenusMismatch, "class genus does not match the curve genus");
  }
  VanishingReport r;
  r.regime = classify_regime(p);
  r.caveat = kCaveat;
  switch (r.regime) {
    case Regime::kDim0:
    case Regime::kHigherRootOdd:
      r.verdict = VanishingVerdict::kOutOfScope;
      r.reason = "no vanishing-cycle classification is available for this regime";
      return r;
    default:
      break;
  }
  if (x.is_zero()) {
    r.verdict = VanishingVerdict::kNotVanishing;
    r.reason = "the zero class carries no non-separating curve";
    return r;
  }
  switch (r.regime) {
    case Regime::kUnobstructed:
      r.verdict = VanishingVerdict::kVanishing;
      r.reason = "root order 1: every non-separating curve is a vanishing cycle";
      break;
    case Regime::kHyperelliptic:
      r.verdict = VanishingVerdict::kNoHomologicalObstruction;
      r.reason =
          "the hyperelliptic involution acts as -I on H1 and fixes every mod 2 class; "
          "invariance under it is an isotopy condition invisible in homology";
      break;
    case Regime::kSpin: {
      const QuadraticForm q = canonical_q(m);
      r.q_value = eval_q(q, x);
      r.verdict = *r.q_value ? VanishingVerdict::kVanishing : VanishingVerdict::kNotVanishing;
      r.reason = "spin regime: vanishing iff the canonical spin form takes the value 1";
      break;
    }
    case Regime::kAlgebraicEven: {
      const QuadraticForm q = canonical_q(m);
      r.q_value = eval_q(q, x);
      r.verdict = *r.q_value ? VanishingVerdict::kVanishing : VanishingVerdict::kNotVanishing;
      r.reason =
          "even root order > 2: the algebraic monodromy preserves the spin form of the "
          "half-order power; q = 1 is the constraint on transvection classes";
      break;
    }
    default:
      break;
  }
  return r;
}

VanishingSummary vanishing_cycle_summary(const LatticePolygon& p) {
  const SurfaceModel m = SurfaceModel::build(p);
  if (m.genus() > 31) {
    throw Error(ErrorCode::kGenusTooLarge, "class census is limited to genus 31");
  }
  VanishingSummary s;
  s.regime = classify_regime(p);
  s.nonzero_classes = (std::uint64_t{1} << (2 * m.genus())) - 1;
  switch (s.regime) {
    case Regime::kSpin:
    case Regime::kAlgebraicEven:
      s.vanishing_classes = count_admissible(canonical_q(m));
      s.reason = "classes with q = 1";
      break;
    case Regime::kUnobstructed:
    case Regime::kHyperelliptic:
      s.vanishing_classes = s.nonzero_classes;
      s.reason = "no homological obstruction";
      break;
    default:
      s.reason = "out of scope";
      break;
  }
  return s;
}

SymplecticBasis standard_basis(std::size_t genus) {
  SymplecticBasis basis;
  for (std::size_t i = 0; i < genus; ++i) {
    basis.emplace_back(CycleClassF2::a(genus, i), CycleClassF2::b(genus, i));
  }
  return basis;
}

bool is_symplectic_basis(const SymplecticBasis& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const bool expected = i == j;
      if (pairing_f2(basis[i].first, basis[j].second) != expected) return false;
      if (i < j && (pairing_f2(basis[i].first, basis[j].first) ||
                    pairing_f2(basis[i].second, basis[j].second))) {
        return false;
      }
    }
  }
  return true;
}

bool is_q_symplectic(const QuadraticForm& q, const SymplecticBasis& basis) {
  if (basis.size() != q.genus() || !is_symplectic_basis(basis)) return false;
  for (const auto& [a, b] : basis) {
    if (!eval_q(q, b)) return false;
  }
  return true;
}

int index_type(const QuadraticForm& q, const SymplecticBasis& basis, std::size_t i) {
  if (!is_q_symplectic(q, basis)) {
    throw Error(ErrorCode::kNotQSymplectic, "basis is not q-symplectic");
  }
  return eval_q(q, basis.at(i).first) ? 1 : 0;
}

SymplecticBasis retype_pair(const QuadraticForm& q, const SymplecticBasis& basis, std::size_t i,
                            std::size_t j) {
  if (i == j) throw Error(ErrorCode::kSameIndex, "retyping needs two distinct indices");
  if (i >= basis.size() || j >= basis.size()) {
    throw Error(ErrorCode::kLengthMismatch, "index out of range");
  }
  if (index_type(q, basis, i) != index_type(q, basis, j)) {
    throw Error(ErrorCode::kMixedTypes, "indices have different types");
  }
  const CycleClassF2 c = basis[i].second + basis[j].second;
  SymplecticBasis out = basis;
  for (auto& [a, b] : out) {
    if (pairing_f2(c, a)) a += c;
    if (pairing_f2(c, b)) b += c;
  }
  return out;
}

QConsistencyReport check_q_consistency(const LatticePolygon& p, std::size_t random_forests) {
  const SurfaceModel base = SurfaceModel::build(p);
  const QuadraticForm q = canonical_q(base);  // throws kWrongRegime
  const InteriorData& d = base.interior();
  const LatticePoint ref = d.hull_vertices().front();
  QConsistencyReport r;

  std::vector<LatticePoint> edge_dirs;
  const auto& hv = d.hull_vertices();
  for (std::size_t k = 0; k < hv.size(); ++k) edge_dirs.push_back(hv[(k + 1) % hv.size()] - hv[k]);
  auto on_boundary_edge = [&p](const Segment& s) {
    // Both ends on one edge of the polygon.
    const auto& v = p.vertices();
    for (std::size_t k = 0; k < v.size(); ++k) {
      const LatticePoint e = v[(k + 1) % v.size()] - v[k];
      if (cross(e, s.endpoints[0] - v[k]) == 0 && cross(e, s.endpoints[1] - v[k]) == 0) return true;
    }
    return false;
  };
  for (const Segment& s : enumerate_segments(p)) {
    const LatticePoint dir = s.endpoints[1] - s.endpoints[0];
    const bool parallel = std::any_of(edge_dirs.begin(), edge_dirs.end(),
                                      [&](LatticePoint e) { return cross(e, dir) == 0; });
    const bool value = eval_q(q, segment_class(base, s));
    if (parallel && !on_boundary_edge(s)) {
      ++r.segments_checked;
      const bool rule = is_even_relative(s.endpoints[0], ref) != is_even_relative(s.endpoints[1], ref);
      if (rule != value) ++r.parity_mismatches;
    }
    if (s.is_bridge) {
      const bool at_vertex = std::any_of(hv.begin(), hv.end(), [&](LatticePoint v) {
        return v == s.endpoints[0] || v == s.endpoints[1];
      });
      if (at_vertex) {
        ++r.bridges_checked;
        if (!value) ++r.bridge_failures;
      }
    }
  }

  std::vector<BForest> forests{base.forest()};
  for (std::uint64_t seed = 1; seed <= random_forests; ++seed) {
    BForest f = random_forest(p, seed);
    if (std::find(forests.begin(), forests.end(), f) == forests.end()) forests.push_back(std::move(f));
  }
  r.forests = forests.size();
  for (const BForest& f : forests) {
    const SurfaceModel m = SurfaceModel::build(p, f);
    for (std::size_t i = 0; i < m.genus(); ++i) {
      std::vector<CycleClassF2> parts;
      for (const auto& seg : m.path_segments(i)) parts.push_back(segment_class(m, seg[0], seg[1]));
      CycleClassF2 sum(m.genus());
      bool q_sum = false;
      bool disjoint = true;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        sum += parts[k];
        q_sum ^= eval_q(q, parts[k]);
        for (std::size_t l = k + 1; l < parts.size(); ++l) disjoint = disjoint && !pairing_f2(parts[k], parts[l]);
      }
      if (sum != CycleClassF2::b(m.genus(), i) || !disjoint || q_sum != q.q_b(i)) ++r.forest_failures;
    }
  }

  std::size_t even = 0;
  for (const auto& pp : even_points(p)) even += pp.even ? 1 : 0;
  r.arf_census = arf(q) == (even % 2 == 1);
  r.pass = r.parity_mismatches == 0 && r.forest_failures == 0 && r.bridge_failures == 0 &&
           r.arf_census && r.forests >= 3;
  return r;
}

}  // namespace spincycles
