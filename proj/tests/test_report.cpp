#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "spincycles/report.hpp"

using namespace spincycles;

namespace {

LatticePolygon poly(std::vector<LatticePoint> v) { return LatticePolygon::from_vertices(std::move(v)); }

const LatticePolygon kD5 = poly({{0, 0}, {5, 0}, {0, 5}});
const LatticePolygon kRect = poly({{0, 0}, {4, 0}, {4, 2}, {0, 2}});
const LatticePolygon kSquare = poly({{0, 0}, {3, 0}, {3, 3}, {0, 3}});
const LatticePolygon kCubic = poly({{0, 0}, {3, 0}, {0, 3}});

int code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(exit_code_for(e.code()));
  }
  return 0;
}

}  // namespace

TEST_CASE("classify_report fields") {
  const auto q = classify_report(kD5);
  CHECK(q["regime"] == "spin");
  CHECK(q["genus"] == 6);
  CHECK(q["root_order"] == 2);
  CHECK(q["arf"] == 1);
  CHECK(q["even_points"] == 3);
  CHECK(q["vanishing"]["vanishing_classes"] == 2080);
  CHECK(q["polygon"]["vertices"].size() == 3);
  CHECK_FALSE(q.contains("hirzebruch"));

  const auto r = classify_report(kRect);
  CHECK(r["regime"] == "hyperelliptic");
  CHECK(r["root_order"] == "undefined");
  CHECK(r["hirzebruch"]["n"] == 4);
  CHECK(r["hirzebruch"]["alpha"] == 0);
  CHECK_FALSE(r.contains("arf"));

  CHECK(classify_report(kSquare)["regime"] == "unobstructed");
  const auto c = classify_report(kCubic);
  CHECK(c["regime"] == "dim0");
  CHECK(c["vanishing"]["vanishing_classes"].is_null());
}

TEST_CASE("qtable_report") {
  const auto t = qtable_report(kD5);
  CHECK(t["q_b"] == Json::array({1, 0, 1, 0, 0, 1}));
  CHECK(t["q_a"] == Json::array({1, 1, 1, 1, 1, 1}));
  CHECK(t["admissible_count"] == 2080);
  CHECK(t["points"].size() == 6);
  CHECK(code_of([] { qtable_report(kSquare); }) == 3);
  CHECK(code_of([] { qtable_report(kRect); }) == 3);
}

TEST_CASE("segments_report") {
  const auto all = segments_report(kRect, false);
  const auto bridges = segments_report(kRect, true);
  CHECK(all["count"] == all["segments"].size());
  CHECK(bridges["count"] < all["count"]);
  for (const auto& s : bridges["segments"]) CHECK(s["is_bridge"] == true);
  CHECK(all["segments"][0]["class"].size() == 6);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::kCapExhausted) == ExitCode::kCapExhausted);
  CHECK(exit_code_for(ErrorCode::kWrongRegime) == ExitCode::kInapplicable);
  CHECK(exit_code_for(ErrorCode::kGenusTooLarge) == ExitCode::kInapplicable);
  CHECK(exit_code_for(ErrorCode::kMalformedInput) == ExitCode::kInputError);
  CHECK(exit_code_for(ErrorCode::kNonConvex) == ExitCode::kInputError);
}

TEST_CASE("suites") {
  CHECK(suite_names().size() == 7);

  SuiteInput g2;
  g2.genus = 2;
  const auto gen = run_suite("generation", g2);
  CHECK(gen.pass);
  REQUIRE(gen.transcript["results"].size() == 2);
  CHECK(gen.transcript["results"][0]["closure_order"] == 36);
  CHECK(gen.transcript["results"][0]["verdict"] == "proper_subgroup");
  CHECK(gen.transcript["results"][1]["verdict"] == "equal");

  CHECK(run_suite("chrel2", {}).pass);
  CHECK(run_suite("chain-relation", {}).pass);
  CHECK(run_suite("transitivity", g2).pass);
  CHECK(run_suite("arf-classification", g2).pass);

  SuiteInput rect;
  rect.polygon = kRect;
  CHECK(run_suite("hyperelliptic-word", rect).pass);
  CHECK(code_of([&] { run_suite("q-consistency", rect); }) == 3);
  SuiteInput d5;
  d5.polygon = kD5;
  CHECK(run_suite("q-consistency", d5).pass);

  SuiteInput big;
  big.genus = 5;
  CHECK(code_of([&] { run_suite("generation", big); }) == 3);
  SuiteInput capped = g2;
  capped.closure.cap = 10;
  CHECK(code_of([&] { run_suite("generation", capped); }) == 4);
  CHECK(code_of([] { run_suite("nope", {}); }) == 2);
}

TEST_CASE("run_suites marks inapplicable suites as skipped") {
  SuiteInput rect;
  rect.polygon = kRect;
  const auto r = run_suites({"q-consistency", "hyperelliptic-word"}, rect);
  CHECK(r.pass);
  const auto& s = r.transcript["suites"];
  REQUIRE(s.size() == 2);
  CHECK(s[0].contains("skipped"));
  CHECK(s[1]["pass"] == true);
}

TEST_CASE("transcripts are deterministic across thread counts") {
  SuiteInput in;
  in.genus = 2;
  std::string first;
  for (unsigned t : {1U, 3U, 8U}) {
    in.closure.threads = t;
    const auto dump = run_suites({"generation", "arf-classification", "transitivity"}, in).transcript.dump();
    if (first.empty()) first = dump;
    CHECK(dump == first);
  }
}

TEST_CASE("render_text") {
  const Json j = {{"b", 1}, {"a", {{"x", Json::array({1, 2})}}}, {"list", Json::array({{{"k", true}}})}};
  const auto text = render_text(j);
  CHECK(text == render_text(Json::parse(j.dump())));
  CHECK(text.find("a:\n  x: [1,2]\n") != std::string::npos);
  CHECK(text.find("b: 1\n") != std::string::npos);
  CHECK(text.find("k: true") != std::string::npos);
}
