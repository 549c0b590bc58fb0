#include "spincycles/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>
#include <thread>

#include "spincycles/error.hpp"

namespace spincycles {

namespace {

constexpr PackedClass kEvenBits32 = 0x55555555U;

void require_packable(std::size_t genus) {
  if (genus > kMaxPackedGenus) {
    throw Error(ErrorCode::kGenusTooLarge, "packed F2 classes are limited to genus 16");
  }
}

void require_keyable(std::size_t genus) {
  if (genus == 0 || genus > kMaxKeyGenus) {
    throw Error(ErrorCode::kGenusTooLarge, "group enumeration is limited to genus 1..4");
  }
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

// Open-addressing set of matrix keys.  All-ones is never a key: that matrix
// has rank 1.
class KeySet {
 public:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  explicit KeySet(std::size_t expected = 16) { rehash(std::bit_ceil(2 * expected + 16)); }

  bool contains(std::uint64_t key) const {
    for (std::size_t i = mix(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i] == key) return true;
      if (slots_[i] == kEmpty) return false;
    }
  }

  bool insert(std::uint64_t key) {
    if (2 * (size_ + 1) > slots_.size()) rehash(2 * slots_.size());
    for (std::size_t i = mix(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i] == key) return false;
      if (slots_[i] == kEmpty) {
        slots_[i] = key;
        ++size_;
        return true;
      }
    }
  }

  std::size_t size() const { return size_; }

 private:
  void rehash(std::size_t capacity) {
    std::vector<std::uint64_t> old = std::move(slots_);
    slots_.assign(capacity, kEmpty);
    mask_ = capacity - 1;
    size_ = 0;
    for (auto k : old) {
      if (k != kEmpty) insert(k);
    }
  }

  std::vector<std::uint64_t> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

// A generator as a lookup table on all 2^{2g} vectors.
struct ActionTable {
  std::vector<PackedClass> image;

  ActionTable(const SymplecticMatrixF2& m) : image(std::size_t{1} << m.dim()) {
    for (PackedClass v = 0; v < image.size(); ++v) image[v] = m.apply(v);
  }

  std::uint64_t left_multiply(std::uint64_t key, std::size_t dim) const {
    const std::uint64_t col_mask = (std::uint64_t{1} << dim) - 1;
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      const auto col = static_cast<PackedClass>((key >> (j * dim)) & col_mask);
      out |= static_cast<std::uint64_t>(image[col]) << (j * dim);
    }
    return out;
  }
};

std::vector<std::uint64_t> expand_chunk(const std::vector<std::uint64_t>& frontier,
                                        std::size_t begin, std::size_t end,
                                        const std::vector<ActionTable>& tables,
                                        std::size_t dim, const KeySet& known) {
  std::vector<std::uint64_t> out;
  KeySet local;
  for (std::size_t f = begin; f < end; ++f) {
    for (const auto& t : tables) {
      const std::uint64_t product = t.left_multiply(frontier[f], dim);
      if (!known.contains(product) && local.insert(product)) out.push_back(product);
    }
  }
  return out;
}

}  // namespace

PackedClass pack(const CycleClassF2& x) {
  require_packable(x.genus());
  return x.words().empty() ? 0 : static_cast<PackedClass>(x.words()[0]);
}

CycleClassF2 unpack(PackedClass x, std::size_t genus) {
  require_packable(genus);
  CycleClassF2 out(genus);
  for (std::size_t k = 0; k < 2 * genus; ++k) out.set(k, (x >> k) & 1U);
  return out;
}

bool pairing_packed(PackedClass x, PackedClass y) {
  const PackedClass swapped = ((y & kEvenBits32) << 1) | ((y >> 1) & kEvenBits32);
  return (std::popcount(x & swapped) & 1) != 0;
}

PackedClass pack_form(const QuadraticForm& q) { return pack(q.basis_values()); }

bool eval_form_packed(PackedClass form, PackedClass x) {
  return ((std::popcount(x & form) + std::popcount(x & (x >> 1) & kEvenBits32)) & 1) != 0;
}

SymplecticMatrixF2 SymplecticMatrixF2::identity(std::size_t genus) {
  require_packable(genus);
  std::vector<PackedClass> cols(2 * genus);
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = PackedClass{1} << j;
  return SymplecticMatrixF2(genus, std::move(cols));
}

SymplecticMatrixF2 SymplecticMatrixF2::from_columns(std::size_t genus,
                                                    std::vector<PackedClass> columns) {
  require_packable(genus);
  if (columns.size() != 2 * genus) {
    throw Error(ErrorCode::kLengthMismatch, "a genus-g matrix needs 2g columns");
  }
  const PackedClass mask = genus == kMaxPackedGenus ? ~PackedClass{0}
                                                    : (PackedClass{1} << (2 * genus)) - 1;
  for (auto c : columns) {
    if (c & ~mask) throw Error(ErrorCode::kLengthMismatch, "column has bits beyond 2g");
  }
  return SymplecticMatrixF2(genus, std::move(columns));
}

SymplecticMatrixF2 SymplecticMatrixF2::from_key(std::size_t genus, std::uint64_t key) {
  require_keyable(genus);
  const std::size_t dim = 2 * genus;
  const std::uint64_t col_mask = (std::uint64_t{1} << dim) - 1;
  std::vector<PackedClass> cols(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    cols[j] = static_cast<PackedClass>((key >> (j * dim)) & col_mask);
  }
  return SymplecticMatrixF2(genus, std::move(cols));
}

PackedClass SymplecticMatrixF2::apply(PackedClass x) const {
  PackedClass out = 0;
  while (x != 0) {
    const int j = std::countr_zero(x);
    out ^= columns_[static_cast<std::size_t>(j)];
    x &= x - 1;
  }
  return out;
}

CycleClassF2 SymplecticMatrixF2::apply(const CycleClassF2& x) const {
  if (x.genus() != genus_) throw Error(ErrorCode::kGenusMismatch, "class genus mismatch");
  return unpack(apply(pack(x)), genus_);
}

bool SymplecticMatrixF2::is_symplectic() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool expected = (i / 2 == j / 2);  // only <a_k, b_k> = 1
      if (pairing_packed(columns_[i], columns_[j]) != expected) return false;
    }
  }
  return true;
}

std::uint64_t SymplecticMatrixF2::key() const {
  require_keyable(genus_);
  std::uint64_t k = 0;
  for (std::size_t j = 0; j < dim(); ++j) k |= static_cast<std::uint64_t>(columns_[j]) << (j * dim());
  return k;
}

SymplecticMatrixF2 operator*(const SymplecticMatrixF2& a, const SymplecticMatrixF2& b) {
  if (a.genus_ != b.genus_) throw Error(ErrorCode::kGenusMismatch, "matrix genus mismatch");
  std::vector<PackedClass> cols(b.dim());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = a.apply(b.columns_[j]);
  return SymplecticMatrixF2(a.genus_, std::move(cols));
}

SymplecticMatrixF2 transvection_f2(std::size_t genus, PackedClass c) {
  SymplecticMatrixF2 id = SymplecticMatrixF2::identity(genus);
  std::vector<PackedClass> cols = id.columns();
  for (auto& col : cols) {
    if (pairing_packed(c, col)) col ^= c;
  }
  return SymplecticMatrixF2::from_columns(genus, std::move(cols));
}

SymplecticMatrixF2 transvection_f2(const CycleClassF2& c) {
  return transvection_f2(c.genus(), pack(c));
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "integer overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "integer overflow");
  return r;
}

}  // namespace

SymplecticMatrixZ SymplecticMatrixZ::identity(std::size_t genus) {
  const std::size_t n = 2 * genus;
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return SymplecticMatrixZ(n, std::move(e));
}

SymplecticMatrixZ SymplecticMatrixZ::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t n = rows.size();
  if (n % 2 != 0) throw Error(ErrorCode::kLengthMismatch, "matrix dimension must be even");
  std::vector<std::int64_t> e;
  e.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::kLengthMismatch, "matrix must be square");
    e.insert(e.end(), r.begin(), r.end());
  }
  return SymplecticMatrixZ(n, std::move(e));
}

CycleClassZ SymplecticMatrixZ::apply(const CycleClassZ& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::kGenusMismatch, "class genus mismatch");
  CycleClassZ out(genus());
  for (std::size_t i = 0; i < dim_; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s = checked_add(s, checked_mul(at(i, j), x[j]));
    out[i] = s;
  }
  return out;
}

bool SymplecticMatrixZ::is_symplectic() const {
  // Columns must pair like the standard basis.
  std::vector<CycleClassZ> cols;
  for (std::size_t j = 0; j < dim_; ++j) {
    CycleClassZ c(genus());
    for (std::size_t i = 0; i < dim_; ++i) c[i] = at(i, j);
    cols.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      std::int64_t expected = 0;
      if (i / 2 == j / 2 && i != j) expected = (i % 2 == 0) ? 1 : -1;
      if (pairing_z(cols[i], cols[j]) != expected) return false;
    }
  }
  return true;
}

SymplecticMatrixF2 SymplecticMatrixZ::reduce_mod2() const {
  std::vector<PackedClass> cols(dim_, 0);
  for (std::size_t j = 0; j < dim_; ++j) {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (at(i, j) % 2 != 0) cols[j] |= PackedClass{1} << i;
    }
  }
  return SymplecticMatrixF2::from_columns(genus(), std::move(cols));
}

std::string SymplecticMatrixZ::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dim_; ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < dim_; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

SymplecticMatrixZ operator*(const SymplecticMatrixZ& a, const SymplecticMatrixZ& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::kGenusMismatch, "matrix genus mismatch");
  const std::size_t n = a.dim_;
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        e[i * n + j] = checked_add(e[i * n + j], checked_mul(aik, b.at(k, j)));
      }
    }
  }
  return SymplecticMatrixZ(n, std::move(e));
}

SymplecticMatrixZ operator-(SymplecticMatrixZ m) {
  for (auto& v : m.entries_) v = -v;
  return m;
}

SymplecticMatrixZ transvection_z(const CycleClassZ& c, TwistSign sign) {
  const std::size_t n = c.size();
  const std::int64_t s = sign == TwistSign::kRightHanded ? 1 : -1;
  SymplecticMatrixZ id = SymplecticMatrixZ::identity(c.genus());
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    CycleClassZ e(c.genus());
    e[j] = 1;
    const std::int64_t coeff = checked_mul(s, pairing_z(e, c));
    for (std::size_t i = 0; i < n; ++i) {
      rows[i][j] = checked_add(id.at(i, j), checked_mul(coeff, c[i]));
    }
  }
  return SymplecticMatrixZ::from_rows(rows);
}

bool preserves_q(const SymplecticMatrixF2& m, const QuadraticForm& q) {
  if (m.genus() != q.genus()) throw Error(ErrorCode::kGenusMismatch, "form genus mismatch");
  if (!m.is_symplectic()) throw Error(ErrorCode::kNotSymplectic, "matrix is not symplectic");
  const PackedClass form = pack_form(q);
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (eval_form_packed(form, m.column(j)) != ((form >> j) & 1U)) return false;
  }
  return true;
}

GroupClosure::GroupClosure(std::size_t genus, std::vector<std::uint64_t> elements, bool completed)
    : genus_(genus), elements_(std::move(elements)), sorted_(elements_), completed_(completed) {
  std::sort(sorted_.begin(), sorted_.end());
}

SymplecticMatrixF2 GroupClosure::element(std::size_t i) const {
  return SymplecticMatrixF2::from_key(genus_, elements_.at(i));
}

bool GroupClosure::contains_key(std::uint64_t key) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), key);
}

std::string GroupClosure::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t k : sorted_) {
    for (int b = 0; b < 8; ++b) {
      h ^= (k >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GroupClosure closure(const std::vector<SymplecticMatrixF2>& generators,
                     const ClosureOptions& options) {
  if (generators.empty()) throw Error(ErrorCode::kMalformedInput, "no generators");
  const std::size_t genus = generators.front().genus();
  require_keyable(genus);
  std::vector<ActionTable> tables;
  for (const auto& g : generators) {
    if (g.genus() != genus) throw Error(ErrorCode::kGenusMismatch, "generator genus mismatch");
    if (!g.is_symplectic()) throw Error(ErrorCode::kNotSymplectic, "generator is not symplectic");
    tables.emplace_back(g);
  }
  const std::size_t dim = 2 * genus;
  const unsigned threads = std::max(1U, options.threads);

  KeySet known;
  std::vector<std::uint64_t> elements;
  const std::uint64_t id = SymplecticMatrixF2::identity(genus).key();
  known.insert(id);
  elements.push_back(id);
  std::vector<std::uint64_t> frontier{id};
  bool completed = true;

  while (!frontier.empty()) {
    // Contiguous chunks, merged in chunk order: the discovery order does not
    // depend on the thread count.
    const std::size_t chunks = std::min<std::size_t>(threads, frontier.size());
    std::vector<std::vector<std::uint64_t>> found(chunks);
    const std::size_t step = (frontier.size() + chunks - 1) / chunks;
    std::vector<std::uint64_t> next;
    if (chunks == 1) {
      // Same discovery order as the chunked path, without the second pass.
      for (std::uint64_t f : frontier) {
        for (const auto& t : tables) {
          const std::uint64_t product = t.left_multiply(f, dim);
          if (known.insert(product)) {
            elements.push_back(product);
            next.push_back(product);
          }
        }
      }
    } else {
      std::vector<std::thread> pool;
      for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = std::min(frontier.size(), c * step);
        const std::size_t end = std::min(frontier.size(), begin + step);
        pool.emplace_back([&, c, begin, end] {
          found[c] = expand_chunk(frontier, begin, end, tables, dim, known);
        });
      }
      for (auto& t : pool) t.join();
      for (const auto& chunk : found) {
        for (std::uint64_t k : chunk) {
          if (known.insert(k)) {
            elements.push_back(k);
            next.push_back(k);
          }
        }
      }
    }
    if (elements.size() > options.cap) {
      completed = false;
      elements.resize(options.cap);
      break;
    }
    frontier = std::move(next);
  }
  return GroupClosure(genus, std::move(elements), completed);
}

std::vector<SymplecticMatrixF2> all_transvections(std::size_t genus) {
  require_packable(genus);
  std::vector<SymplecticMatrixF2> out;
  const PackedClass limit = PackedClass{1} << (2 * genus);
  for (PackedClass c = 1; c < limit; ++c) out.push_back(transvection_f2(genus, c));
  return out;
}

std::vector<SymplecticMatrixF2> admissible_transvections(const QuadraticForm& q) {
  require_packable(q.genus());
  const PackedClass form = pack_form(q);
  std::vector<SymplecticMatrixF2> out;
  const PackedClass limit = PackedClass{1} << (2 * q.genus());
  for (PackedClass c = 1; c < limit; ++c) {
    if (eval_form_packed(form, c)) out.push_back(transvection_f2(q.genus(), c));
  }
  return out;
}

GroupClosure q_stabilizer_bruteforce(const QuadraticForm& q, const ClosureOptions& options) {
  if (q.genus() == 0 || q.genus() > 3) {
    throw Error(ErrorCode::kGenusTooLarge, "full-group enumeration is limited to genus 1..3");
  }
  return q_stabilizer_in(q, closure(all_transvections(q.genus()), options));
}

GroupClosure q_stabilizer_in(const QuadraticForm& q, const GroupClosure& full) {
  if (!full.completed()) {
    throw Error(ErrorCode::kCapExhausted, "closure cap exhausted before Sp(2g, F2) was complete");
  }
  if (full.genus() != q.genus()) throw Error(ErrorCode::kGenusMismatch, "form genus mismatch");
  const PackedClass form = pack_form(q);
  const std::size_t dim = 2 * q.genus();
  const std::uint64_t col_mask = (std::uint64_t{1} << dim) - 1;
  std::vector<std::uint64_t> kept;
  for (std::uint64_t key : full.elements()) {
    bool ok = true;
    for (std::size_t j = 0; j < dim && ok; ++j) {
      const auto col = static_cast<PackedClass>((key >> (j * dim)) & col_mask);
      ok = eval_form_packed(form, col) == ((form >> j) & 1U);
    }
    if (ok) kept.push_back(key);
  }
  return GroupClosure(q.genus(), std::move(kept), true);
}

std::string_view to_string(GenerationVerdict v) {
  return v == GenerationVerdict::kEqual ? "equal" : "proper_subgroup";
}

GenerationReport verify_transvection_generation(const QuadraticForm& q,
                                                const ClosureOptions& options) {
  if (q.genus() == 0 || q.genus() > 3) {
    throw Error(ErrorCode::kGenusTooLarge, "generation check is limited to genus 1..3");
  }
  return verify_transvection_generation(q, closure(all_transvections(q.genus()), options), options);
}

GenerationReport verify_transvection_generation(const QuadraticForm& q, const GroupClosure& full,
                                                const ClosureOptions& options) {
  if (q.genus() == 0 || q.genus() > 3) {
    throw Error(ErrorCode::kGenusTooLarge, "generation check is limited to genus 1..3");
  }
  const GroupClosure stabilizer = q_stabilizer_in(q, full);
  const GroupClosure generated = closure(admissible_transvections(q), options);
  if (!generated.completed()) {
    throw Error(ErrorCode::kCapExhausted, "closure cap exhausted");
  }

  GenerationReport r;
  r.genus = q.genus();
  r.arf = arf(q);
  r.full_order = full.size();
  r.closure_order = generated.size();
  r.stabilizer_order = stabilizer.size();
  bool subset = true;
  for (std::uint64_t k : generated.elements()) {
    if (!stabilizer.contains_key(k)) {
      subset = false;
      break;
    }
  }
  r.verdict = (subset && r.closure_order == r.stabilizer_order) ? GenerationVerdict::kEqual
                                                                 : GenerationVerdict::kProperSubgroup;
  r.closure_digest = generated.digest();
  r.stabilizer_digest = stabilizer.digest();
  return r;
}

std::vector<PackedClass> orbit(PackedClass x, const std::vector<SymplecticMatrixF2>& generators) {
  std::set<PackedClass> seen{x};
  std::deque<PackedClass> queue{x};
  while (!queue.empty()) {
    const PackedClass v = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      const PackedClass w = g.apply(v);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return {seen.begin(), seen.end()};
}

bool membership(const SymplecticMatrixF2& m, const GroupClosure& group) {
  if (!group.completed()) {
    throw Error(ErrorCode::kNotCompleted, "membership needs a completed closure");
  }
  if (m.genus() != group.genus()) return false;
  return group.contains_key(m.key());
}

std::vector<std::vector<PackedClass>> form_orbits(
    std::size_t genus, const std::vector<SymplecticMatrixF2>& generators) {
  require_packable(genus);
  if (genus > 8) throw Error(ErrorCode::kGenusTooLarge, "form orbits are limited to genus 8");
  const std::size_t count = std::size_t{1} << (2 * genus);
  std::vector<bool> assigned(count, false);
  std::vector<std::vector<PackedClass>> orbits;
  auto act = [genus](const SymplecticMatrixF2& m, PackedClass form) {
    PackedClass out = 0;
    for (std::size_t j = 0; j < 2 * genus; ++j) {
      if (eval_form_packed(form, m.column(j))) out |= PackedClass{1} << j;
    }
    return out;
  };
  for (PackedClass start = 0; start < count; ++start) {
    if (assigned[start]) continue;
    std::vector<PackedClass> members{start};
    assigned[start] = true;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (const auto& g : generators) {
        const PackedClass f = act(g, members[k]);
        if (!assigned[f]) {
          assigned[f] = true;
          members.push_back(f);
        }
      }
    }
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  return orbits;
}

std::vector<std::vector<PackedClass>> nonzero_orbits(const GroupClosure& group) {
  const std::size_t count = std::size_t{1} << (2 * group.genus());
  std::vector<bool> assigned(count, false);
  std::vector<SymplecticMatrixF2> elements;
  elements.reserve(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) elements.push_back(group.element(i));
  std::vector<std::vector<PackedClass>> orbits;
  for (PackedClass x = 1; x < count; ++x) {
    if (assigned[x]) continue;
    std::vector<PackedClass> members;
    for (const auto& m : elements) {
      const PackedClass y = m.apply(x);
      if (!assigned[y]) {
        assigned[y] = true;
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  return orbits;
}

}  // namespace spincycles
