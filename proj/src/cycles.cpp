#include "spincycles/cycles.hpp"

#include <bit>
#include <sstream>

#include "spincycles/error.hpp"

namespace spincycles {

namespace {

constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

void require_same_genus(std::size_t g1, std::size_t g2) {
  if (g1 != g2) {
    throw Error(ErrorCode::kLengthMismatch, "classes have different lengths (genus " +
                                                std::to_string(g1) + " vs " +
                                                std::to_string(g2) + ")");
  }
}

}  // namespace

CycleClassF2::CycleClassF2(std::size_t genus)
    : genus_(genus), words_((2 * genus + 63) / 64, 0) {}

CycleClassF2 CycleClassF2::from_bits(const std::vector<int>& bits) {
  if (bits.size() % 2 != 0) {
    throw Error(ErrorCode::kLengthMismatch, "a class needs an even number of coordinates");
  }
  CycleClassF2 x(bits.size() / 2);
  for (std::size_t k = 0; k < bits.size(); ++k) x.set(k, (bits[k] & 1) != 0);
  return x;
}

CycleClassF2 CycleClassF2::a(std::size_t genus, std::size_t i) {
  CycleClassF2 x(genus);
  x.set(2 * i, true);
  return x;
}

CycleClassF2 CycleClassF2::b(std::size_t genus, std::size_t i) {
  CycleClassF2 x(genus);
  x.set(2 * i + 1, true);
  return x;
}

void CycleClassF2::set(std::size_t k, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (k % 64);
  if (value) {
    words_[k / 64] |= mask;
  } else {
    words_[k / 64] &= ~mask;
  }
}

bool CycleClassF2::is_zero() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::vector<int> CycleClassF2::bits() const {
  std::vector<int> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = get(k) ? 1 : 0;
  return out;
}

CycleClassF2& CycleClassF2::operator+=(const CycleClassF2& other) {
  require_same_genus(genus_, other.genus_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool pairing_f2(const CycleClassF2& x, const CycleClassF2& y) {
  require_same_genus(x.genus(), y.genus());
  unsigned parity = 0;
  for (std::size_t w = 0; w < x.words().size(); ++w) {
    const std::uint64_t yw = y.words()[w];
    const std::uint64_t swapped = ((yw & kEvenBits) << 1) | ((yw >> 1) & kEvenBits);
    parity ^= static_cast<unsigned>(std::popcount(x.words()[w] & swapped));
  }
  return (parity & 1U) != 0;
}

CycleClassZ::CycleClassZ(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
  if (coords_.size() % 2 != 0) {
    throw Error(ErrorCode::kLengthMismatch, "a class needs an even number of coordinates");
  }
}

CycleClassZ CycleClassZ::a(std::size_t genus, std::size_t i) {
  CycleClassZ x(genus);
  x[2 * i] = 1;
  return x;
}

CycleClassZ CycleClassZ::b(std::size_t genus, std::size_t i) {
  CycleClassZ x(genus);
  x[2 * i + 1] = 1;
  return x;
}

bool CycleClassZ::is_zero() const {
  for (auto c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

CycleClassZ& CycleClassZ::operator+=(const CycleClassZ& other) {
  require_same_genus(genus(), other.genus());
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += other.coords_[k];
  return *this;
}

CycleClassZ& CycleClassZ::operator-=(const CycleClassZ& other) {
  require_same_genus(genus(), other.genus());
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= other.coords_[k];
  return *this;
}

CycleClassZ operator-(CycleClassZ x) {
  for (auto& c : x.coords_) c = -c;
  return x;
}

std::int64_t pairing_z(const CycleClassZ& x, const CycleClassZ& y) {
  require_same_genus(x.genus(), y.genus());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.genus(); ++i) {
    s += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
  }
  return s;
}

CycleClassF2 reduce_mod2(const CycleClassZ& x) {
  CycleClassF2 out(x.genus());
  for (std::size_t k = 0; k < x.size(); ++k) out.set(k, (x[k] % 2) != 0);
  return out;
}

CycleClassZ lift(const CycleClassF2& x) {
  CycleClassZ out(x.genus());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x.get(k) ? 1 : 0;
  return out;
}

std::string to_string(const CycleClassF2& x) {
  std::string s;
  for (std::size_t k = 0; k < x.size(); ++k) s += x.get(k) ? '1' : '0';
  return s;
}

std::string to_string(const CycleClassZ& x) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < x.size(); ++k) os << (k ? "," : "") << x[k];
  os << ']';
  return os.str();
}

}  // namespace spincycles
