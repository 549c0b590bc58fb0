#include "spincycles/relations.hpp"

#include <charconv>
#include <sstream>

#include "spincycles/error.hpp"
#include "spincycles/homology.hpp"

namespace spincycles {

namespace {

[[noreturn]] void not_applicable(const Rule& r, std::size_t position, const std::string& why) {
  throw Error(ErrorCode::kRuleNotApplicable,
              to_string(r) + " at " + std::to_string(position) + ": " + why);
}

bool same(const TwistWord& w, std::size_t at, const TwistWord& pattern) {
  if (at + pattern.size() > w.size()) return false;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (!(w[at + k] == pattern[k])) return false;
  }
  return true;
}

TwistWord splice(const TwistWord& w, std::size_t at, std::size_t erase, const TwistWord& insert) {
  TwistWord out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
  out.insert(out.end(), insert.begin(), insert.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(at + erase), w.end());
  return out;
}

TwistWord word(std::initializer_list<const char*> letters) {
  TwistWord w;
  for (const char* l : letters) w.push_back({l, 1});
  return w;
}

}  // namespace

TwistWord parse_word(std::string_view text) {
  TwistWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    Letter l;
    const auto caret = tok.find('^');
    l.curve = tok.substr(0, caret);
    if (l.curve.empty()) throw Error(ErrorCode::kMalformedInput, "empty curve name in " + tok);
    if (caret != std::string::npos) {
      const char* first = tok.data() + caret + 1;
      const char* last = tok.data() + tok.size();
      const auto [ptr, ec] = std::from_chars(first, last, l.exponent);
      if (ec != std::errc() || ptr != last || l.exponent == 0) {
        throw Error(ErrorCode::kMalformedInput, "bad exponent in " + tok);
      }
    }
    w.push_back(std::move(l));
  }
  return w;
}

std::string to_string(const TwistWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += l.curve;
    if (l.exponent != 1) out += '^' + std::to_string(l.exponent);
  }
  return out;
}

TwistWord normalize(const TwistWord& w) {
  TwistWord out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().curve == l.curve) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else if (l.exponent != 0) {
      out.push_back(l);
    }
  }
  return out;
}

TwistWord power(const TwistWord& w, std::size_t k) {
  TwistWord out;
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

void CurveSystem::add_curve(const std::string& name, std::optional<CycleClassZ> cls) {
  if (name.empty() || name.find_first_of(" ^") != std::string::npos) {
    throw Error(ErrorCode::kMalformedInput, "bad curve name '" + name + "'");
  }
  curves_[name] = std::move(cls);
}

void CurveSystem::set_intersection(const std::string& x, const std::string& y, int count) {
  if (!has_curve(x) || !has_curve(y)) throw Error(ErrorCode::kUnknownCurve, x + "/" + y);
  if (x == y) throw Error(ErrorCode::kMalformedInput, "the intersection table has zero diagonal");
  if (count < 0) throw Error(ErrorCode::kMalformedInput, "negative intersection number");
  table_[{x, y}] = count;
  table_[{y, x}] = count;
}

void CurveSystem::add_premise(Premise p) {
  for (const auto* side : {&p.lhs, &p.rhs}) {
    for (const auto& l : *side) {
      if (!has_curve(l.curve)) throw Error(ErrorCode::kUnknownCurve, l.curve);
    }
  }
  premises_[p.name] = std::move(p);
}

int CurveSystem::intersection(const std::string& x, const std::string& y) const {
  if (!has_curve(x)) throw Error(ErrorCode::kUnknownCurve, x);
  if (!has_curve(y)) throw Error(ErrorCode::kUnknownCurve, y);
  if (x == y) return 0;
  const auto it = table_.find({x, y});
  return it == table_.end() ? 0 : it->second;
}

const std::optional<CycleClassZ>& CurveSystem::cls(const std::string& name) const {
  const auto it = curves_.find(name);
  if (it == curves_.end()) throw Error(ErrorCode::kUnknownCurve, name);
  return it->second;
}

std::map<std::string, CycleClassZ> CurveSystem::classes() const {
  std::map<std::string, CycleClassZ> out;
  for (const auto& [name, c] : curves_) {
    if (c) out.emplace(name, *c);
  }
  return out;
}

const Premise& CurveSystem::premise(const std::string& name) const {
  const auto it = premises_.find(name);
  if (it == premises_.end()) throw Error(ErrorCode::kUnknownCurve, "no premise " + name);
  return it->second;
}

std::vector<std::string> CurveSystem::curves() const {
  std::vector<std::string> out;
  for (const auto& [name, c] : curves_) out.push_back(name);
  return out;
}

std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::kBraid: return "braid";
    case RuleKind::kCommute: return "commute";
    case RuleKind::kConjugateInsert: return "conjugate-insert";
    case RuleKind::kMerge: return "merge";
    case RuleKind::kSplit: return "split";
    case RuleKind::kRelation: return "relation";
    case RuleKind::kRelationInverse: return "relation-inverse";
  }
  return "unknown";
}

std::string to_string(const Rule& r) {
  std::string out(to_string(r.kind));
  switch (r.kind) {
    case RuleKind::kBraid:
    case RuleKind::kCommute: return out + "(" + r.x + "," + r.y + ")";
    case RuleKind::kConjugateInsert: return out + "(" + r.x + "," + std::to_string(r.exponent) + ")";
    case RuleKind::kSplit: return out + "(" + std::to_string(r.exponent) + ")";
    case RuleKind::kRelation:
    case RuleKind::kRelationInverse: return out + "(" + r.premise + ")";
    case RuleKind::kMerge: break;
  }
  return out;
}

TwistWord rewrite_step(const CurveSystem& s, const TwistWord& w, const Rule& rule,
                       std::size_t position) {
  switch (rule.kind) {
    case RuleKind::kBraid: {
      if (s.intersection(rule.x, rule.y) != 1) not_applicable(rule, position, "i(x,y) != 1");
      for (std::int64_t e : {1, -1}) {
        const TwistWord from{{rule.x, e}, {rule.y, e}, {rule.x, e}};
        if (same(w, position, from)) {
          return splice(w, position, 3, {{rule.y, e}, {rule.x, e}, {rule.y, e}});
        }
      }
      not_applicable(rule, position, "no x y x pattern");
    }
    case RuleKind::kCommute: {
      if (s.intersection(rule.x, rule.y) != 0) not_applicable(rule, position, "i(x,y) != 0");
      if (position + 2 > w.size() || w[position].curve != rule.x ||
          w[position + 1].curve != rule.y) {
        not_applicable(rule, position, "no x y pattern");
      }
      return splice(w, position, 2, {w[position + 1], w[position]});
    }
    case RuleKind::kConjugateInsert: {
      if (!s.has_curve(rule.x)) throw Error(ErrorCode::kUnknownCurve, rule.x);
      if (rule.exponent == 0 || position > w.size()) not_applicable(rule, position, "bad insert");
      return splice(w, position, 0, {{rule.x, rule.exponent}, {rule.x, -rule.exponent}});
    }
    case RuleKind::kMerge: {
      if (position + 2 > w.size() || w[position].curve != w[position + 1].curve) {
        not_applicable(rule, position, "letters differ");
      }
      const std::int64_t e = w[position].exponent + w[position + 1].exponent;
      if (e == 0) return splice(w, position, 2, {});
      return splice(w, position, 2, {{w[position].curve, e}});
    }
    case RuleKind::kSplit: {
      if (position >= w.size() || rule.exponent == 0 || rule.exponent == w[position].exponent) {
        not_applicable(rule, position, "bad split");
      }
      const Letter& l = w[position];
      return splice(w, position, 1, {{l.curve, rule.exponent}, {l.curve, l.exponent - rule.exponent}});
    }
    case RuleKind::kRelation:
    case RuleKind::kRelationInverse: {
      const Premise& p = s.premise(rule.premise);
      const bool forward = rule.kind == RuleKind::kRelation;
      const TwistWord& from = forward ? p.lhs : p.rhs;
      const TwistWord& to = forward ? p.rhs : p.lhs;
      if (!same(w, position, from)) not_applicable(rule, position, "premise side not found");
      return splice(w, position, from.size(), to);
    }
  }
  not_applicable(rule, position, "unknown rule");
}

Rule inverse_rule(const Rule& rule, const TwistWord& before, std::size_t position) {
  switch (rule.kind) {
    case RuleKind::kBraid: return Rule::braid(rule.y, rule.x);
    case RuleKind::kCommute: return Rule::commute(rule.y, rule.x);
    case RuleKind::kConjugateInsert: return Rule::merge();
    case RuleKind::kMerge: {
      const Letter& first = before.at(position);
      if (first.exponent + before.at(position + 1).exponent == 0) {
        return Rule::conjugate_insert(first.curve, first.exponent);
      }
      return Rule::split(first.exponent);
    }
    case RuleKind::kSplit: return Rule::merge();
    case RuleKind::kRelation: return Rule::relation_inverse(rule.premise);
    case RuleKind::kRelationInverse: return Rule::relation(rule.premise);
  }
  return rule;
}

CurveSystem chain_curve_system() {
  constexpr std::size_t g = 2;
  CurveSystem s;
  s.add_curve("a", CycleClassZ::a(g, 0));
  s.add_curve("b", CycleClassZ::b(g, 0));
  s.add_curve("c", CycleClassZ::a(g, 0) - CycleClassZ::a(g, 1));
  s.add_curve("alpha", CycleClassZ::a(g, 1));
  s.add_curve("beta", CycleClassZ::a(g, 1));
  s.set_intersection("a", "b", 1);
  s.set_intersection("b", "c", 1);
  s.add_premise({"chain", power(word({"a", "b", "c"}), 4), word({"alpha", "beta"})});
  return s;
}

std::vector<TwistWord> chrel2_lines() {
  const TwistWord b{{"b", 1}};
  const TwistWord bi{{"b", -1}};
  auto conj = [&](const TwistWord& inner) {
    TwistWord w = b;
    w.insert(w.end(), inner.begin(), inner.end());
    w.insert(w.end(), bi.begin(), bi.end());
    return w;
  };
  return {
      conj(power(word({"a", "b", "c"}), 4)),
      power(conj(power(word({"a", "b", "c"}), 2)), 2),
      power(conj(word({"a", "b", "a", "c", "b", "c"})), 2),
      power(conj(word({"b", "a", "b", "b", "c", "b"})), 2),
      power(TwistWord{{"b", 2}, {"a", 1}, {"b", 2}, {"c", 1}}, 2),
  };
}

DerivationResult verify_chrel2_derivation(const CurveSystem& s) {
  struct Move {
    int step;
    Rule rule;
    std::size_t position;
  };
  const std::vector<Move> moves{
      {1, Rule::conjugate_insert("b", 1), 0},
      {1, Rule::commute("b", "alpha"), 1},
      {1, Rule::commute("b", "beta"), 2},
      {1, Rule::relation_inverse("chain"), 1},
      {2, Rule::conjugate_insert("b", -1), 7},
      {3, Rule::commute("c", "a"), 3},
      {3, Rule::commute("c", "a"), 11},
      {4, Rule::braid("a", "b"), 1},
      {4, Rule::braid("c", "b"), 4},
      {4, Rule::braid("a", "b"), 9},
      {4, Rule::braid("c", "b"), 12},
      {5, Rule::merge(), 0},
      {5, Rule::merge(), 2},
      {5, Rule::merge(), 4},
      {5, Rule::merge(), 4},
      {5, Rule::merge(), 6},
      {5, Rule::merge(), 8},
  };
  const auto lines = chrel2_lines();

  DerivationResult r;
  TwistWord w = word({"alpha", "beta"});
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const Move& m = moves[k];
    TranscriptEntry e{m.step, m.rule, m.position, w, {}};
    try {
      e.after = rewrite_step(s, w, m.rule, m.position);
    } catch (const Error& err) {
      r.failure = "step " + std::to_string(m.step) + ": " + err.what();
      return r;
    }
    w = e.after;
    r.transcript.push_back(std::move(e));
    const bool closes_step = k + 1 == moves.size() || moves[k + 1].step != m.step;
    if (closes_step) {
      if (w != lines[static_cast<std::size_t>(m.step - 1)]) {
        r.failure = "step " + std::to_string(m.step) + " ends at " + to_string(w);
        return r;
      }
      r.steps = m.step;
    }
  }
  r.ok = r.steps == 5;
  return r;
}

DerivationResult verify_chrel2_derivation() { return verify_chrel2_derivation(chain_curve_system()); }

DerivationResult replay_reversed(const CurveSystem& s, const std::vector<TranscriptEntry>& forward) {
  DerivationResult r;
  if (forward.empty()) {
    r.ok = true;
    return r;
  }
  TwistWord w = forward.back().after;
  const int last_step = forward.back().step;
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
    const Rule inv = inverse_rule(it->rule, it->before, it->position);
    TranscriptEntry e{last_step + 1 - it->step, inv, it->position, w, {}};
    try {
      e.after = rewrite_step(s, w, inv, it->position);
    } catch (const Error& err) {
      r.failure = err.what();
      return r;
    }
    if (e.after != it->before) {
      r.failure = "reversed step does not restore " + to_string(it->before);
      return r;
    }
    w = e.after;
    r.steps = e.step;
    r.transcript.push_back(std::move(e));
  }
  r.ok = true;
  return r;
}

SymplecticMatrixZ evaluate_word_z(const TwistWord& w, const std::map<std::string, CycleClassZ>& classes,
                                  TwistSign sign) {
  const TwistSign inverse =
      sign == TwistSign::kRightHanded ? TwistSign::kLeftHanded : TwistSign::kRightHanded;
  std::optional<SymplecticMatrixZ> product;
  for (const auto& l : w) {
    const auto it = classes.find(l.curve);
    if (it == classes.end()) throw Error(ErrorCode::kMissingClass, "no class for curve " + l.curve);
    if (!product) product = SymplecticMatrixZ::identity(it->second.genus());
    const SymplecticMatrixZ t = transvection_z(it->second, l.exponent > 0 ? sign : inverse);
    const std::int64_t n = l.exponent > 0 ? l.exponent : -l.exponent;
    for (std::int64_t k = 0; k < n; ++k) *product = *product * t;
  }
  if (!product) {
    // Empty word: any class fixes the genus.
    const std::size_t g = classes.empty() ? 0 : classes.begin()->second.genus();
    return SymplecticMatrixZ::identity(g);
  }
  return *product;
}

WordVerdict verify_hyperelliptic_word(const LatticePolygon& p) {
  const SurfaceModel m = SurfaceModel::build(p);
  const auto chain = hyperelliptic_chain(m);  // throws kWrongRegime
  std::map<std::string, CycleClassZ> classes;
  WordVerdict v;
  v.genus = m.genus();
  for (const auto& c : chain) {
    classes.emplace(c.name, c.cls);
    v.word.push_back({c.name, 1});
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) v.word.push_back({it->name, 1});

  const SymplecticMatrixZ minus_id = -SymplecticMatrixZ::identity(m.genus());
  const SymplecticMatrixZ right = evaluate_word_z(v.word, classes, TwistSign::kRightHanded);
  const SymplecticMatrixZ left = evaluate_word_z(v.word, classes, TwistSign::kLeftHanded);
  v.right_handed = right.to_string();
  v.left_handed = left.to_string();
  v.pass = right == minus_id && left == minus_id;
  return v;
}

ChainRelationVerdict verify_chain_relation_homology(std::size_t genus) {
  if (genus < 2) throw Error(ErrorCode::kGenusTooLarge, "the chain relation needs genus >= 2");
  ChainRelationVerdict v;
  v.genus = genus;
  v.classes = {
      {"a", CycleClassZ::a(genus, 0)},
      {"b", CycleClassZ::b(genus, 0)},
      {"c", CycleClassZ::a(genus, 0) - CycleClassZ::a(genus, 1)},
      {"alpha", CycleClassZ::a(genus, 1)},
      {"beta", CycleClassZ::a(genus, 1)},
  };
  const TwistWord lhs = power(word({"a", "b", "c"}), 4);
  const TwistWord rhs = word({"alpha", "beta"});
  const TwistWord bp{{"alpha", 1}, {"beta", -1}};
  const auto id = SymplecticMatrixZ::identity(genus);

  bool both = true;
  bool mod2 = true;
  bool bounding = true;
  for (TwistSign s : {TwistSign::kRightHanded, TwistSign::kLeftHanded}) {
    const auto l = evaluate_word_z(lhs, v.classes, s);
    const auto r = evaluate_word_z(rhs, v.classes, s);
    const bool holds = l == r;
    if (s == TwistSign::kRightHanded) v.integral = holds;
    both = both && holds;
    mod2 = mod2 && l.reduce_mod2() == r.reduce_mod2();
    bounding = bounding && evaluate_word_z(bp, v.classes, s) == id;
  }
  v.mod2 = mod2;
  v.bounding_pair = bounding;
  v.flip_invariant = both == v.integral;
  v.pass = v.integral && both && v.mod2 && v.bounding_pair;
  return v;
}

}  // namespace spincycles
