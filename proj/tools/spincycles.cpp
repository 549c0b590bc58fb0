// spincycles: polygon reports and verification suites.
//
//   spincycles classify <file> [--json]
//   spincycles qtable <file> [--json]
//   spincycles segments <file> [--bridges] [--json]
//   spincycles verify <suite> [<file> | --genus G --arf A] [--cap N] [--threads T]
//                     [--json] [--out FILE]
//
// Exit codes: 0 pass, 1 verification failure, 2 input error, 3 inapplicable,
// 4 closure cap exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spincycles/report.hpp"

using namespace spincycles;

namespace {

LatticePolygon load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_polygon(ss.str());
}

std::uint64_t default_cap() {
  if (const char* env = std::getenv("SPINCYCLES_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kMalformedInput, "SPINCYCLES_CAP is not an integer");
    }
  }
  return ClosureOptions{}.cap;
}

int emit(const Json& j, bool json, const std::string& out) {
  const std::string text = json ? j.dump(2) + "\n" : render_text(j);
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorCode::kMalformedInput, "cannot write " + out);
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin structures, vanishing cycles and lattice polygons"};
  app.require_subcommand(1);

  bool json = false;
  std::string file;
  std::string out;

  auto* classify = app.add_subcommand("classify", "regime and invariants of a polygon");
  classify->add_option("file", file, "polygon JSON")->required();
  classify->add_flag("--json", json);

  auto* qtable = app.add_subcommand("qtable", "canonical quadratic form on the basis");
  qtable->add_option("file", file, "polygon JSON")->required();
  qtable->add_flag("--json", json);

  bool bridges = false;
  auto* segments = app.add_subcommand("segments", "primitive segments and their classes");
  segments->add_option("file", file, "polygon JSON")->required();
  segments->add_flag("--bridges", bridges, "bridges only");
  segments->add_flag("--json", json);

  std::string suite;
  std::optional<std::size_t> genus;
  std::optional<int> arf;
  std::optional<std::uint64_t> cap;
  unsigned threads = 1;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suites));
  verify->add_option("file", file, "polygon JSON");
  verify->add_option("--genus", genus);
  verify->add_option("--arf", arf)->check(CLI::Range(0, 1));
  verify->add_option("--cap", cap, "closure element budget");
  verify->add_option("--threads", threads)->check(CLI::Range(1, 256));
  verify->add_flag("--json", json);
  verify->add_option("--out", out, "write the transcript here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kInputError);
  }

  try {
    if (classify->parsed()) return emit(classify_report(load(file)), json, out);
    if (qtable->parsed()) return emit(qtable_report(load(file)), json, out);
    if (segments->parsed()) return emit(segments_report(load(file), bridges), json, out);

    SuiteInput input;
    if (!file.empty()) input.polygon = load(file);
    input.genus = genus;
    if (arf) input.arf = *arf != 0;
    input.closure.cap = cap ? *cap : default_cap();
    input.closure.threads = threads;
    const SuiteResult r = run_suite(suite, input);
    emit(r.transcript, json, out);
    return static_cast<int>(r.pass ? ExitCode::kPass : ExitCode::kFail);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return static_cast<int>(exit_code_for(e.code()));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInputError);
  }
}
