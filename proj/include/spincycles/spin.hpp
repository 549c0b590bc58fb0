#pragma once

// Quadratic refinements of the mod-2 intersection form (spin structures at
// the level of homology) and the canonical one carried by an even polygon.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spincycles/cycles.hpp"
#include "spincycles/homology.hpp"
#include "spincycles/polygon.hpp"

namespace spincycles {

/// q is stored on the basis only: bit 2i is q(a_{i+1}), bit 2i+1 is
/// q(b_{i+1}).  Every other value follows from q(x+y) = q(x)+q(y)+<x,y>.
class QuadraticForm {
 public:
  explicit QuadraticForm(CycleClassF2 basis_values) : values_(std::move(basis_values)) {}
  static QuadraticForm from_values(const std::vector<int>& q_a, const std::vector<int>& q_b);
  /// Genus-g form in normal shape: every pair is (0,1) except the first,
  /// which is (1,1) when `arf` is set.
  static QuadraticForm standard(std::size_t genus, bool arf);

  std::size_t genus() const { return values_.genus(); }
  bool q_a(std::size_t i) const { return values_.get(2 * i); }
  bool q_b(std::size_t i) const { return values_.get(2 * i + 1); }
  const CycleClassF2& basis_values() const { return values_; }

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  CycleClassF2 values_;
};

/// q(a_i) = 1 for every i, q(b_i) = 1 exactly at even interior points.
/// Requires the spin or algebraic_even regime.
QuadraticForm canonical_q(const SurfaceModel& m);

bool eval_q(const QuadraticForm& q, const CycleClassF2& x);
bool arf(const QuadraticForm& q);
bool is_admissible(const QuadraticForm& q, const CycleClassF2& x);
/// |{x != 0 : q(x) = 1}|, exact for genus <= 31.
std::uint64_t count_admissible(const QuadraticForm& q);

enum class VanishingVerdict {
  kVanishing,
  kNotVanishing,
  kNoHomologicalObstruction,
  kOutOfScope,
};
std::string_view to_string(VanishingVerdict v);

struct VanishingReport {
  Regime regime = Regime::kDim0;
  VanishingVerdict verdict = VanishingVerdict::kOutOfScope;
  std::optional<bool> q_value;
  std::string reason;
  /// Homology-level verdicts only: curves with the same class can differ up
  /// to isotopy, which this model does not see.
  std::string caveat;
};

VanishingReport vanishing_cycle_report(const LatticePolygon& p, const CycleClassF2& x);

struct VanishingSummary {
  Regime regime = Regime::kDim0;
  std::uint64_t nonzero_classes = 0;
  std::optional<std::uint64_t> vanishing_classes;  // empty when out of scope
  std::string reason;
};

VanishingSummary vanishing_cycle_summary(const LatticePolygon& p);

/// Basis pairs (a_i, b_i), expressed in standard coordinates.
using SymplecticBasis = std::vector<std::pair<CycleClassF2, CycleClassF2>>;

SymplecticBasis standard_basis(std::size_t genus);
bool is_symplectic_basis(const SymplecticBasis& basis);
bool is_q_symplectic(const QuadraticForm& q, const SymplecticBasis& basis);
/// Type of index i: q(a_i).  Requires a q-symplectic basis.
int index_type(const QuadraticForm& q, const SymplecticBasis& basis, std::size_t i);

/// Flips the types of two indices of equal type by the transvection along
/// c = b_i + b_j, which has q(c) = 0 and meets only a_i and a_j.
SymplecticBasis retype_pair(const QuadraticForm& q, const SymplecticBasis& basis, std::size_t i,
                            std::size_t j);

struct QConsistencyReport {
  std::size_t segments_checked = 0;  // segments meeting the parity lemma's hypothesis
  std::size_t parity_mismatches = 0;
  std::size_t forests = 0;  // distinct forests tried
  std::size_t forest_failures = 0;  // telescoping, pairing or q-sum failures
  std::size_t bridges_checked = 0;  // bridges ending at a vertex of the interior hull
  std::size_t bridge_failures = 0;
  bool arf_census = false;  // Arf = number of even points mod 2
  bool pass = false;
};

/// Checks the canonical form against segment data: the parity rule on
/// primitive segments parallel to an edge of the interior hull and not on the
/// boundary, telescoping and q-sums along the default forest and
/// `random_forests` seeded ones, bridges at hull vertices, and the Arf census.
QConsistencyReport check_q_consistency(const LatticePolygon& p, std::size_t random_forests = 3);

}  // namespace spincycles
