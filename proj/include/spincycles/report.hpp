#pragma once

// JSON reports and verification suites behind the command-line tool.
// Objects are nlohmann::json with sorted keys, so a dump is deterministic.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spincycles/error.hpp"
#include "spincycles/polygon.hpp"
#include "spincycles/symplectic.hpp"

namespace spincycles {

using Json = nlohmann::json;

enum class ExitCode : int {
  kPass = 0,
  kFail = 1,
  kInputError = 2,
  kInapplicable = 3,
  kCapExhausted = 4,
};

/// Exit code for an error escaping a command.
ExitCode exit_code_for(ErrorCode code);

Json polygon_json(const LatticePolygon& p);
Json classify_report(const LatticePolygon& p);
/// Throws kWrongRegime outside the spin and algebraic_even regimes.
Json qtable_report(const LatticePolygon& p);
Json segments_report(const LatticePolygon& p, bool bridges_only);

struct SuiteInput {
  std::optional<LatticePolygon> polygon;
  std::optional<std::size_t> genus;
  std::optional<bool> arf;
  ClosureOptions closure;
};

struct SuiteResult {
  bool pass = false;
  Json transcript;
};

const std::vector<std::string>& suite_names();  // without "all"

/// Runs one suite, or every applicable one for "all".  Throws kWrongRegime
/// (or kMalformedInput) when the suite cannot run on the input, and
/// kCapExhausted when a closure does not fit the cap.
SuiteResult run_suite(const std::string& name, const SuiteInput& input);
/// Several suites sharing one enumeration of each Sp(2g, F2); inapplicable
/// ones are listed as skipped.
SuiteResult run_suites(const std::vector<std::string>& names, const SuiteInput& input);

/// Indented "key: value" lines; nested objects and arrays of objects are
/// expanded, short arrays stay inline.
std::string render_text(const Json& j);

}  // namespace spincycles
