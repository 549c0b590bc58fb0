#pragma once

// Symplectic matrices over F2 and Z, transvections, and enumeration of the
// finite groups they generate over F2.
//
// Over F2 a class of genus <= 16 is packed into a 32-bit word with the same
// interleaved layout as CycleClassF2 (bit 2i = a_{i+1}, bit 2i+1 = b_{i+1}).
// Matrices act on column vectors and are stored by columns: column j is the
// image of the j-th basis vector.  For genus <= 4 the whole matrix packs
// into one 64-bit key (2g bits per column), which is what group closures
// store and hash.

#include <cstdint>
#include <string>
#include <vector>

#include "spincycles/cycles.hpp"
#include "spincycles/spin.hpp"

namespace spincycles {

using PackedClass = std::uint32_t;
inline constexpr std::size_t kMaxPackedGenus = 16;
inline constexpr std::size_t kMaxKeyGenus = 4;

PackedClass pack(const CycleClassF2& x);
CycleClassF2 unpack(PackedClass x, std::size_t genus);
bool pairing_packed(PackedClass x, PackedClass y);
PackedClass pack_form(const QuadraticForm& q);
/// q(x) for a form given by its packed basis values.
bool eval_form_packed(PackedClass form, PackedClass x);

class SymplecticMatrixF2 {
 public:
  static SymplecticMatrixF2 identity(std::size_t genus);
  static SymplecticMatrixF2 from_columns(std::size_t genus, std::vector<PackedClass> columns);
  static SymplecticMatrixF2 from_key(std::size_t genus, std::uint64_t key);

  std::size_t genus() const { return genus_; }
  std::size_t dim() const { return 2 * genus_; }
  PackedClass column(std::size_t j) const { return columns_[j]; }
  const std::vector<PackedClass>& columns() const { return columns_; }

  PackedClass apply(PackedClass x) const;
  CycleClassF2 apply(const CycleClassF2& x) const;
  bool is_symplectic() const;
  /// Canonical packed encoding, genus <= 4.
  std::uint64_t key() const;

  friend SymplecticMatrixF2 operator*(const SymplecticMatrixF2& a, const SymplecticMatrixF2& b);
  friend bool operator==(const SymplecticMatrixF2&, const SymplecticMatrixF2&) = default;

 private:
  SymplecticMatrixF2(std::size_t genus, std::vector<PackedClass> columns)
      : genus_(genus), columns_(std::move(columns)) {}
  std::size_t genus_ = 0;
  std::vector<PackedClass> columns_;
};

/// x -> x + <c,x> c.
SymplecticMatrixF2 transvection_f2(const CycleClassF2& c);
SymplecticMatrixF2 transvection_f2(std::size_t genus, PackedClass c);

/// Right-handed twists act by x -> x + <x,c> c; left-handed ones are their
/// inverses, x -> x - <x,c> c.
enum class TwistSign { kRightHanded, kLeftHanded };

class SymplecticMatrixZ {
 public:
  static SymplecticMatrixZ identity(std::size_t genus);
  static SymplecticMatrixZ from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t genus() const { return dim_ / 2; }
  std::size_t dim() const { return dim_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  CycleClassZ apply(const CycleClassZ& x) const;
  bool is_symplectic() const;
  SymplecticMatrixF2 reduce_mod2() const;
  std::string to_string() const;

  friend SymplecticMatrixZ operator*(const SymplecticMatrixZ& a, const SymplecticMatrixZ& b);
  friend SymplecticMatrixZ operator-(SymplecticMatrixZ m);
  friend bool operator==(const SymplecticMatrixZ&, const SymplecticMatrixZ&) = default;

 private:
  SymplecticMatrixZ(std::size_t dim, std::vector<std::int64_t> entries)
      : dim_(dim), entries_(std::move(entries)) {}
  std::size_t dim_ = 0;
  std::vector<std::int64_t> entries_;  // row-major
};

SymplecticMatrixZ transvection_z(const CycleClassZ& c,
                                 TwistSign sign = TwistSign::kRightHanded);

/// Throws kNotSymplectic when M is not symplectic.
bool preserves_q(const SymplecticMatrixF2& m, const QuadraticForm& q);

struct ClosureOptions {
  std::uint64_t cap = 2'000'000;
  unsigned threads = 1;
};

/// Elements of a generated group, in breadth-first order from the identity.
class GroupClosure {
 public:
  GroupClosure(std::size_t genus, std::vector<std::uint64_t> elements, bool completed);

  std::size_t genus() const { return genus_; }
  std::size_t size() const { return elements_.size(); }
  bool completed() const { return completed_; }
  const std::vector<std::uint64_t>& elements() const { return elements_; }
  SymplecticMatrixF2 element(std::size_t i) const;
  bool contains_key(std::uint64_t key) const;
  /// FNV-1a over the sorted keys; independent of discovery order.
  std::string digest() const;

 private:
  std::size_t genus_;
  std::vector<std::uint64_t> elements_;
  std::vector<std::uint64_t> sorted_;
  bool completed_;
};

/// Breadth-first closure under left multiplication.  Stops with
/// completed() == false once more than `cap` elements are found.
GroupClosure closure(const std::vector<SymplecticMatrixF2>& generators,
                     const ClosureOptions& options = {});

std::vector<SymplecticMatrixF2> all_transvections(std::size_t genus);
/// Transvections along every class with q = 1.
std::vector<SymplecticMatrixF2> admissible_transvections(const QuadraticForm& q);

/// All of Sp(2g, F2) filtered by preserves_q.  Genus <= 3; throws
/// kCapExhausted if the full group does not fit the cap.
GroupClosure q_stabilizer_bruteforce(const QuadraticForm& q, const ClosureOptions& options = {});
/// The same filter applied to an already enumerated full group.
GroupClosure q_stabilizer_in(const QuadraticForm& q, const GroupClosure& full);

enum class GenerationVerdict { kEqual, kProperSubgroup };
std::string_view to_string(GenerationVerdict v);

struct GenerationReport {
  std::size_t genus = 0;
  bool arf = false;
  std::size_t full_order = 0;
  std::size_t closure_order = 0;
  std::size_t stabilizer_order = 0;
  GenerationVerdict verdict = GenerationVerdict::kProperSubgroup;
  std::string closure_digest;
  std::string stabilizer_digest;
};

/// Compares the group generated by admissible transvections with the full
/// q-stabilizer.  Genus <= 3.
GenerationReport verify_transvection_generation(const QuadraticForm& q,
                                                const ClosureOptions& options = {});
/// Same, reusing an enumerated Sp(2g, F2).
GenerationReport verify_transvection_generation(const QuadraticForm& q, const GroupClosure& full,
                                                const ClosureOptions& options = {});

/// Orbit of x under the group generated by `generators`, sorted.
std::vector<PackedClass> orbit(PackedClass x, const std::vector<SymplecticMatrixF2>& generators);

/// Throws kNotCompleted on a truncated closure.
bool membership(const SymplecticMatrixF2& m, const GroupClosure& group);

/// Orbits of all 2^{2g} quadratic forms (packed basis values) under
/// q -> q o M for M in the generated group; each orbit sorted, orbits ordered
/// by their smallest form.
std::vector<std::vector<PackedClass>> form_orbits(std::size_t genus,
                                                  const std::vector<SymplecticMatrixF2>& generators);

/// Orbits of the nonzero classes under every element of `group`.
std::vector<std::vector<PackedClass>> nonzero_orbits(const GroupClosure& group);

}  // namespace spincycles
