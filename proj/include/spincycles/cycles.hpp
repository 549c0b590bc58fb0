#pragma once

// First-homology classes of a genus-g surface in the interleaved symplectic
// basis (a_1, b_1, ..., a_g, b_g).  Coordinate 2i is a_{i+1}, 2i+1 is b_{i+1}.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace spincycles {

/// Mod-2 class, bit-packed in 64-bit words.  A hyperbolic pair (a_i, b_i)
/// never straddles a word boundary.
class CycleClassF2 {
 public:
  CycleClassF2() = default;
  explicit CycleClassF2(std::size_t genus);
  static CycleClassF2 from_bits(const std::vector<int>& bits);
  static CycleClassF2 a(std::size_t genus, std::size_t i);
  static CycleClassF2 b(std::size_t genus, std::size_t i);

  std::size_t genus() const { return genus_; }
  std::size_t size() const { return 2 * genus_; }
  bool get(std::size_t k) const { return (words_[k / 64] >> (k % 64)) & 1U; }
  void set(std::size_t k, bool value);
  void flip(std::size_t k) { words_[k / 64] ^= std::uint64_t{1} << (k % 64); }
  bool is_zero() const;
  std::vector<int> bits() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  CycleClassF2& operator+=(const CycleClassF2& other);
  friend CycleClassF2 operator+(CycleClassF2 x, const CycleClassF2& y) { return x += y; }
  friend bool operator==(const CycleClassF2&, const CycleClassF2&) = default;
  friend auto operator<=>(const CycleClassF2&, const CycleClassF2&) = default;

 private:
  std::size_t genus_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Mod-2 intersection pairing; throws kLengthMismatch on differing genus.
bool pairing_f2(const CycleClassF2& x, const CycleClassF2& y);

/// Integral class.
class CycleClassZ {
 public:
  CycleClassZ() = default;
  explicit CycleClassZ(std::size_t genus) : coords_(2 * genus, 0) {}
  explicit CycleClassZ(std::vector<std::int64_t> coords);
  static CycleClassZ a(std::size_t genus, std::size_t i);
  static CycleClassZ b(std::size_t genus, std::size_t i);

  std::size_t genus() const { return coords_.size() / 2; }
  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t k) const { return coords_[k]; }
  std::int64_t& operator[](std::size_t k) { return coords_[k]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool is_zero() const;

  CycleClassZ& operator+=(const CycleClassZ& other);
  CycleClassZ& operator-=(const CycleClassZ& other);
  friend CycleClassZ operator+(CycleClassZ x, const CycleClassZ& y) { return x += y; }
  friend CycleClassZ operator-(CycleClassZ x, const CycleClassZ& y) { return x -= y; }
  friend CycleClassZ operator-(CycleClassZ x);
  friend bool operator==(const CycleClassZ&, const CycleClassZ&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// Integral symplectic form with <a_i, b_i> = +1.
std::int64_t pairing_z(const CycleClassZ& x, const CycleClassZ& y);

CycleClassF2 reduce_mod2(const CycleClassZ& x);
/// The 0/1 lift of a mod-2 class.
CycleClassZ lift(const CycleClassF2& x);

std::string to_string(const CycleClassF2& x);
std::string to_string(const CycleClassZ& x);

}  // namespace spincycles
