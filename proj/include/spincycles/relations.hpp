#pragma once

// Words in Dehn twists, rewriting by braid and commutation relations, and
// evaluation of words on integral homology.
//
// A word w = x_1^{e_1} ... x_k^{e_k} denotes the composition of mapping
// classes, so the rightmost letter acts first.  evaluate_word_z therefore
// returns T(x_1)^{e_1} * ... * T(x_k)^{e_k} as a matrix product.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spincycles/cycles.hpp"
#include "spincycles/polygon.hpp"
#include "spincycles/symplectic.hpp"

namespace spincycles {

struct Letter {
  std::string curve;
  std::int64_t exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using TwistWord = std::vector<Letter>;

/// Parses "a b^2 c^-1" style words.  Throws kMalformedInput.
TwistWord parse_word(std::string_view text);
/// Inverse of parse_word; the empty word prints as "1".
std::string to_string(const TwistWord& w);
/// Merges adjacent letters on the same curve and drops zero exponents.
TwistWord normalize(const TwistWord& w);
TwistWord power(const TwistWord& w, std::size_t k);

/// Named relation lhs = rhs assumed to hold, used as a rewrite.
struct Premise {
  std::string name;
  TwistWord lhs;
  TwistWord rhs;
};

class CurveSystem {
 public:
  void add_curve(const std::string& name, std::optional<CycleClassZ> cls = std::nullopt);
  /// Symmetric; throws kUnknownCurve, and kMalformedInput on a diagonal entry.
  void set_intersection(const std::string& x, const std::string& y, int count);
  void add_premise(Premise p);

  bool has_curve(const std::string& name) const { return curves_.contains(name); }
  int intersection(const std::string& x, const std::string& y) const;
  const std::optional<CycleClassZ>& cls(const std::string& name) const;
  std::map<std::string, CycleClassZ> classes() const;
  const Premise& premise(const std::string& name) const;
  std::vector<std::string> curves() const;

 private:
  std::map<std::string, std::optional<CycleClassZ>> curves_;
  std::map<std::pair<std::string, std::string>, int> table_;
  std::map<std::string, Premise> premises_;
};

enum class RuleKind {
  kBraid,            // x y x -> y x y, needs i(x,y) = 1
  kCommute,          // x^e y^f -> y^f x^e, needs i(x,y) = 0
  kConjugateInsert,  // insert x^e x^-e
  kMerge,            // x^e x^f -> x^(e+f), dropped when e+f = 0
  kSplit,            // x^(e+f) -> x^e x^f
  kRelation,         // premise lhs -> rhs
  kRelationInverse,  // premise rhs -> lhs
};
std::string_view to_string(RuleKind k);

struct Rule {
  RuleKind kind = RuleKind::kCommute;
  std::string x;
  std::string y;
  std::int64_t exponent = 0;  // inserted / split-off exponent
  std::string premise;

  static Rule braid(std::string x, std::string y) { return {RuleKind::kBraid, x, y, 0, {}}; }
  static Rule commute(std::string x, std::string y) { return {RuleKind::kCommute, x, y, 0, {}}; }
  static Rule conjugate_insert(std::string x, std::int64_t e) {
    return {RuleKind::kConjugateInsert, x, {}, e, {}};
  }
  static Rule merge() { return {RuleKind::kMerge, {}, {}, 0, {}}; }
  static Rule split(std::int64_t e) { return {RuleKind::kSplit, {}, {}, e, {}}; }
  static Rule relation(std::string name) { return {RuleKind::kRelation, {}, {}, 0, name}; }
  static Rule relation_inverse(std::string name) {
    return {RuleKind::kRelationInverse, {}, {}, 0, name};
  }

  friend bool operator==(const Rule&, const Rule&) = default;
};
std::string to_string(const Rule& r);

/// Applies `rule` at letter index `position`.  Throws kRuleNotApplicable.
TwistWord rewrite_step(const CurveSystem& s, const TwistWord& w, const Rule& rule,
                       std::size_t position);

/// The rule undoing `rule` applied at `position` to `before`.
Rule inverse_rule(const Rule& rule, const TwistWord& before, std::size_t position);

struct TranscriptEntry {
  int step = 0;
  Rule rule;
  std::size_t position = 0;
  TwistWord before;
  TwistWord after;
};

struct DerivationResult {
  bool ok = false;
  std::vector<TranscriptEntry> transcript;
  int steps = 0;  // displayed lines reached
  std::string failure;  // first failing rule, when !ok
};

/// The curve system of the chain relation: i(a,b) = i(b,c) = 1, alpha and
/// beta disjoint from a, b, c, premise "chain": (abc)^4 = alpha beta.
/// Classes in genus 2: a = a1, b = b1, c = a1 - a2, alpha = beta = a2.
CurveSystem chain_curve_system();

/// Rewrites alpha beta into (b^2 a b^2 c)^2 in five displayed steps.
DerivationResult verify_chrel2_derivation(const CurveSystem& s);
DerivationResult verify_chrel2_derivation();
/// Replays `forward` backwards with inverse rules, from its last word.
DerivationResult replay_reversed(const CurveSystem& s, const std::vector<TranscriptEntry>& forward);
/// The word expected after each of the five steps.
std::vector<TwistWord> chrel2_lines();

/// Product of integral transvections; throws kMissingClass.
SymplecticMatrixZ evaluate_word_z(const TwistWord& w, const std::map<std::string, CycleClassZ>& classes,
                                  TwistSign sign = TwistSign::kRightHanded);

struct WordVerdict {
  bool pass = false;
  std::size_t genus = 0;
  TwistWord word;
  std::string right_handed;  // matrix as text
  std::string left_handed;
};

/// j = s0 v1 s1 ... vg sg sg vg ... s1 v1 s0 over the hyperelliptic chain;
/// passes iff j = -I under both sign conventions.  Throws kWrongRegime.
WordVerdict verify_hyperelliptic_word(const LatticePolygon& p);

struct ChainRelationVerdict {
  bool pass = false;
  std::size_t genus = 0;
  bool integral = false;      // (abc)^4 = T_alpha T_beta over Z, both signs
  bool mod2 = false;          // reductions agree
  bool bounding_pair = false;  // T_alpha T_beta^-1 = I
  bool flip_invariant = false;
  std::map<std::string, CycleClassZ> classes;
};

/// Chain relation on the classes a = a1, b = b1, c = a1 - a2 and
/// alpha = beta = a2 inside genus g >= 2.
ChainRelationVerdict verify_chain_relation_homology(std::size_t genus);

}  // namespace spincycles
