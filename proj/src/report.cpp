#include "spincycles/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "spincycles/homology.hpp"
#include "spincycles/relations.hpp"
#include "spincycles/spin.hpp"

namespace spincycles {

namespace {

Json point_json(LatticePoint p) { return Json::array({p.x, p.y}); }

Json points_json(const std::vector<LatticePoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(point_json(p));
  return out;
}

Json word_json(const TwistWord& w) { return to_string(w); }

bool has_spin_form(Regime r) { return r == Regime::kSpin || r == Regime::kAlgebraicEven; }

[[noreturn]] void inapplicable(const std::string& why) { throw Error(ErrorCode::kWrongRegime, why); }

bool packed_arf(PackedClass form, std::size_t genus) {
  bool a = false;
  for (std::size_t i = 0; i < genus; ++i) a ^= ((form >> (2 * i)) & (form >> (2 * i + 1)) & 1U) != 0;
  return a;
}

// Full groups are shared between suites of one run.
class FullGroups {
 public:
  explicit FullGroups(ClosureOptions options) : options_(options) {}

  const GroupClosure& get(std::size_t genus) {
    auto it = cache_.find(genus);
    if (it == cache_.end()) {
      it = cache_.emplace(genus, closure(all_transvections(genus), options_)).first;
    }
    if (!it->second.completed()) {
      throw Error(ErrorCode::kCapExhausted, "closure cap exhausted before Sp(2g, F2) was complete");
    }
    return it->second;
  }

  const ClosureOptions& options() const { return options_; }

 private:
  ClosureOptions options_;
  std::map<std::size_t, GroupClosure> cache_;
};

std::vector<std::size_t> small_genera(const SuiteInput& in) {
  if (in.polygon && !in.genus) inapplicable("this suite takes --genus, not a polygon");
  if (in.genus) {
    if (*in.genus == 0 || *in.genus > 3) {
      throw Error(ErrorCode::kGenusTooLarge, "this suite needs genus 1..3");
    }
    return {*in.genus};
  }
  return {1, 2, 3};
}

std::vector<bool> arfs(const SuiteInput& in) {
  if (in.arf) return {*in.arf};
  return {false, true};
}

SuiteResult generation_suite(const SuiteInput& in, FullGroups& groups) {
  std::vector<QuadraticForm> forms;
  if (in.polygon && !in.genus) {
    const SurfaceModel m = SurfaceModel::build(*in.polygon);
    if (!has_spin_form(classify_regime(*in.polygon))) inapplicable("the polygon has no spin form");
    if (m.genus() > 3) inapplicable("generation is checked for genus <= 3 only");
    forms.push_back(canonical_q(m));
  } else {
    for (std::size_t g : small_genera(in)) {
      for (bool a : arfs(in)) forms.push_back(QuadraticForm::standard(g, a));
    }
  }
  SuiteResult r{true, Json::array()};
  for (const auto& q : forms) {
    const GenerationReport g = verify_transvection_generation(q, groups.get(q.genus()), groups.options());
    const bool asserted = g.genus >= 3;
    const bool pass = !asserted || g.verdict == GenerationVerdict::kEqual;
    r.pass = r.pass && pass;
    r.transcript.push_back({{"genus", g.genus},
                            {"arf", g.arf ? 1 : 0},
                            {"full_order", g.full_order},
                            {"closure_order", g.closure_order},
                            {"stabilizer_order", g.stabilizer_order},
                            {"verdict", std::string(to_string(g.verdict))},
                            {"asserted", asserted},
                            {"closure_digest", g.closure_digest},
                            {"stabilizer_digest", g.stabilizer_digest},
                            {"pass", pass}});
  }
  return r;
}

LatticePolygon rectangle(std::size_t genus) {
  const auto w = static_cast<std::int64_t>(genus) + 1;
  return LatticePolygon::from_vertices({{0, 0}, {w, 0}, {w, 2}, {0, 2}});
}

SuiteResult hyperelliptic_suite(const SuiteInput& in) {
  std::vector<LatticePolygon> polygons;
  if (in.polygon) {
    polygons.push_back(*in.polygon);
  } else if (in.genus) {
    if (*in.genus < 2) inapplicable("a rectangle of genus < 2 is not hyperelliptic");
    polygons.push_back(rectangle(*in.genus));
  } else {
    for (std::size_t g = 2; g <= 6; ++g) polygons.push_back(rectangle(g));
  }
  SuiteResult r{true, Json::array()};
  for (const auto& p : polygons) {
    if (classify_regime(p) != Regime::kHyperelliptic) inapplicable("the polygon is not hyperelliptic");
    const WordVerdict v = verify_hyperelliptic_word(p);
    r.pass = r.pass && v.pass;
    r.transcript.push_back({{"polygon", polygon_json(p)},
                            {"genus", v.genus},
                            {"word", word_json(v.word)},
                            {"letters", v.word.size()},
                            {"right_handed", v.right_handed},
                            {"left_handed", v.left_handed},
                            {"expected", "-I"},
                            {"pass", v.pass}});
  }
  return r;
}

SuiteResult chain_suite(const SuiteInput& in) {
  const std::size_t g = in.genus.value_or(2);
  if (g < 2) inapplicable("the chain relation needs genus >= 2");
  const ChainRelationVerdict v = verify_chain_relation_homology(g);
  Json classes = Json::object();
  for (const auto& [name, c] : v.classes) classes[name] = c.coords();
  return {v.pass,
          {{"genus", v.genus},
           {"relation", "(a b c)^4 = alpha beta"},
           {"classes", classes},
           {"integral", v.integral},
           {"mod2", v.mod2},
           {"bounding_pair", v.bounding_pair},
           {"flip_invariant", v.flip_invariant},
           {"pass", v.pass}}};
}

Json transcript_json(const std::vector<TranscriptEntry>& t) {
  Json out = Json::array();
  for (const auto& e : t) {
    out.push_back({{"step", e.step},
                   {"rule", to_string(e.rule)},
                   {"position", e.position},
                   {"word_before", word_json(e.before)},
                   {"word_after", word_json(e.after)}});
  }
  return out;
}

SuiteResult chrel2_suite() {
  const CurveSystem s = chain_curve_system();
  const DerivationResult d = verify_chrel2_derivation(s);
  const DerivationResult back = replay_reversed(s, d.transcript);
  bool sound = true;
  const auto classes = s.classes();
  for (const auto& e : d.transcript) {
    sound = sound && evaluate_word_z(e.before, classes) == evaluate_word_z(e.after, classes);
  }
  CurveSystem perturbed = chain_curve_system();
  perturbed.set_intersection("a", "c", 1);
  const DerivationResult p = verify_chrel2_derivation(perturbed);

  Json lines = Json::array();
  for (const auto& w : chrel2_lines()) lines.push_back(word_json(w));
  const bool pass = d.ok && back.ok && sound && !p.ok && p.steps == 2;
  return {pass,
          {{"premise", "chain: (a b c)^4 = alpha beta"},
           {"source", "alpha beta"},
           {"target", word_json(chrel2_lines().back())},
           {"steps", d.steps},
           {"lines", lines},
           {"transcript", transcript_json(d.transcript)},
           {"reversed_replay", back.ok},
           {"homology_sound", sound},
           {"perturbed_failure", p.failure},
           {"pass", pass}}};
}

SuiteResult q_consistency_suite(const SuiteInput& in) {
  if (!in.polygon) inapplicable("q-consistency needs a polygon");
  if (!has_spin_form(classify_regime(*in.polygon))) inapplicable("the polygon has no spin form");
  const QConsistencyReport c = check_q_consistency(*in.polygon);
  return {c.pass,
          {{"segments_checked", c.segments_checked},
           {"parity_mismatches", c.parity_mismatches},
           {"forests", c.forests},
           {"forest_failures", c.forest_failures},
           {"bridges_checked", c.bridges_checked},
           {"bridge_failures", c.bridge_failures},
           {"arf_census", c.arf_census},
           {"pass", c.pass}}};
}

SuiteResult arf_suite(const SuiteInput& in, FullGroups& groups) {
  SuiteResult r{true, Json::array()};
  for (std::size_t g : small_genera(in)) {
    const GroupClosure& full = groups.get(g);
    const auto orbits = form_orbits(g, all_transvections(g));
    Json entries = Json::array();
    std::size_t total = 0;
    std::set<bool> seen;
    bool homogeneous = true;
    for (const auto& o : orbits) {
      const bool a = packed_arf(o.front(), g);
      for (PackedClass f : o) homogeneous = homogeneous && packed_arf(f, g) == a;
      seen.insert(a);
      total += o.size();
      entries.push_back({{"arf", a ? 1 : 0}, {"size", o.size()}, {"representative", o.front()}});
    }
    const std::size_t forms = std::size_t{1} << (2 * g);
    const bool pass = homogeneous && orbits.size() == 2 && seen.size() == 2 && total == forms;
    r.pass = r.pass && pass;
    r.transcript.push_back({{"genus", g},
                            {"group_order", full.size()},
                            {"forms", forms},
                            {"orbits", entries},
                            {"pass", pass}});
  }
  return r;
}

SuiteResult transitivity_suite(const SuiteInput& in, FullGroups& groups) {
  SuiteResult r{true, Json::array()};
  for (std::size_t g : small_genera(in)) {
    for (bool a : arfs(in)) {
      const QuadraticForm q = QuadraticForm::standard(g, a);
      const GroupClosure stab = q_stabilizer_in(q, groups.get(g));
      const PackedClass form = pack_form(q);
      std::vector<PackedClass> ones, zeros;
      for (PackedClass x = 1; x < (PackedClass{1} << (2 * g)); ++x) {
        (eval_form_packed(form, x) ? ones : zeros).push_back(x);
      }
      std::set<std::vector<PackedClass>> expected;
      if (!ones.empty()) expected.insert(ones);
      if (!zeros.empty()) expected.insert(zeros);
      const auto orbits = nonzero_orbits(stab);
      const std::set<std::vector<PackedClass>> got(orbits.begin(), orbits.end());
      const bool pass = got == expected && got.size() == orbits.size();
      Json sizes = Json::array();
      for (const auto& o : orbits) sizes.push_back(o.size());
      r.pass = r.pass && pass;
      r.transcript.push_back({{"genus", g},
                              {"arf", a ? 1 : 0},
                              {"stabilizer_order", stab.size()},
                              {"stabilizer_digest", stab.digest()},
                              {"q_one", ones.size()},
                              {"q_zero_nonzero", zeros.size()},
                              {"orbit_sizes", sizes},
                              {"pass", pass}});
    }
  }
  return r;
}

SuiteResult run_one(const std::string& name, const SuiteInput& in, FullGroups& groups) {
  if (name == "generation") return generation_suite(in, groups);
  if (name == "hyperelliptic-word") return hyperelliptic_suite(in);
  if (name == "chain-relation") return chain_suite(in);
  if (name == "chrel2") return chrel2_suite();
  if (name == "q-consistency") return q_consistency_suite(in);
  if (name == "arf-classification") return arf_suite(in, groups);
  if (name == "transitivity") return transitivity_suite(in, groups);
  throw Error(ErrorCode::kMalformedInput, "unknown suite '" + name + "'");
}

void render(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto simple = [](const Json& v) {
    if (v.is_object()) return false;
    if (!v.is_array()) return true;
    return std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); }) &&
           v.dump().size() <= 80;
  };
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (simple(v)) {
        os << pad << k << ": " << scalar(v) << '\n';
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (simple(v)) {
        os << pad << "- " << scalar(v) << '\n';
      } else {
        os << pad << "-\n";
        render(os, v, indent + 2);
      }
    }
  } else {
    os << pad << scalar(j) << '\n';
  }
}

}  // namespace

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCapExhausted: return ExitCode::kCapExhausted;
    case ErrorCode::kWrongRegime:
    case ErrorCode::kGenusTooLarge:
    case ErrorCode::kEvennessUndefined: return ExitCode::kInapplicable;
    default: return ExitCode::kInputError;
  }
}

Json polygon_json(const LatticePolygon& p) { return {{"vertices", points_json(p.vertices())}}; }

Json classify_report(const LatticePolygon& p) {
  const InteriorData d = interior_data(p);
  const Regime regime = classify_regime(p);
  Json j{{"polygon", polygon_json(p)},
         {"smooth", is_smooth(p)},
         {"genus", d.genus},
         {"dimension", d.dimension},
         {"regime", std::string(to_string(regime))}};
  j["root_order"] = d.root_order ? Json(*d.root_order) : Json("undefined");
  if (d.dimension == 2) {
    j["interior_hull"] = points_json(d.hull_vertices());
  } else if (d.dimension == 1) {
    j["interior_hull"] = points_json({d.segment[0], d.segment[1]});
  } else {
    j["interior_hull"] = points_json({d.interior_points.front()});
  }
  if (regime == Regime::kHyperelliptic) {
    const HirzebruchClassification h = classify_onedim(p);
    j["hirzebruch"] = {{"alpha", h.alpha}, {"n", h.n}, {"case", std::string(to_string(h.blowups))}};
  }
  if (has_spin_form(regime)) {
    const QuadraticForm q = canonical_q(SurfaceModel::build(p));
    std::size_t even = 0;
    for (const auto& pp : even_points(p)) even += pp.even ? 1 : 0;
    j["even_points"] = even;
    j["arf"] = arf(q) ? 1 : 0;
  }
  if (d.genus <= 31) {
    const VanishingSummary s = vanishing_cycle_summary(p);
    j["vanishing"] = {{"nonzero_classes", s.nonzero_classes},
                      {"vanishing_classes", s.vanishing_classes ? Json(*s.vanishing_classes) : Json()},
                      {"reason", s.reason}};
  }
  return j;
}

Json qtable_report(const LatticePolygon& p) {
  const SurfaceModel m = SurfaceModel::build(p);
  const QuadraticForm q = canonical_q(m);
  Json qa = Json::array(), qb = Json::array();
  for (std::size_t i = 0; i < q.genus(); ++i) {
    qa.push_back(q.q_a(i) ? 1 : 0);
    qb.push_back(q.q_b(i) ? 1 : 0);
  }
  std::vector<LatticePoint> even;
  for (const auto& pp : even_points(p)) {
    if (pp.even) even.push_back(pp.point);
  }
  std::sort(even.begin(), even.end());
  Json j{{"genus", q.genus()},
         {"points", points_json(m.points())},
         {"q_a", qa},
         {"q_b", qb},
         {"arf", arf(q) ? 1 : 0},
         {"even_points", points_json(even)}};
  if (q.genus() <= 31) j["admissible_count"] = count_admissible(q);
  return j;
}

Json segments_report(const LatticePolygon& p, bool bridges_only) {
  const SurfaceModel m = SurfaceModel::build(p);
  Json list = Json::array();
  for (const Segment& s : enumerate_segments(p)) {
    if (bridges_only && !s.is_bridge) continue;
    list.push_back({{"endpoints", points_json({s.endpoints[0], s.endpoints[1]})},
                    {"is_bridge", s.is_bridge},
                    {"class", segment_class(m, s).bits()}});
  }
  return {{"genus", m.genus()}, {"count", list.size()}, {"segments", list}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "generation",    "hyperelliptic-word", "chain-relation", "chrel2",
      "q-consistency", "arf-classification", "transitivity",
  };
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteInput& input) {
  if (name == "all") return run_suites(suite_names(), input);
  FullGroups groups(input.closure);
  SuiteResult r = run_one(name, input, groups);
  r.transcript = {{"suite", name}, {"pass", r.pass}, {"results", r.transcript}};
  return r;
}

SuiteResult run_suites(const std::vector<std::string>& names, const SuiteInput& input) {
  FullGroups groups(input.closure);
  SuiteResult all{true, Json::array()};
  for (const auto& n : names) {
    try {
      SuiteResult r = run_one(n, input, groups);
      all.pass = all.pass && r.pass;
      all.transcript.push_back({{"suite", n}, {"pass", r.pass}, {"results", r.transcript}});
    } catch (const Error& e) {
      if (exit_code_for(e.code()) != ExitCode::kInapplicable) throw;
      all.transcript.push_back({{"suite", n}, {"skipped", e.what()}});
    }
  }
  all.transcript = {{"suite", "all"}, {"pass", all.pass}, {"suites", all.transcript}};
  return all;
}

std::string render_text(const Json& j) {
  std::ostringstream os;
  render(os, j, 0);
  return os.str();
}

}  // namespace spincycles
