#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "homres/cli.hpp"
#include "homres/error.hpp"
#include "homres/workspace.hpp"

using namespace homres;

namespace {

const std::filesystem::path kData = HOMRES_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "homres");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ws(const char* name) { return (kData / name).string(); }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(cli({"frobnicate", "-w", ws("kx2.json")}).code == kExitUsage);
  CHECK(cli({"run"}).code == kExitUsage);
  CHECK(cli({"run", "-w", ws("kx2.json"), "--task", "no-such-task"}).code == kExitUsage);
  Run missing = cli({"run", "-w", ws("missing.json")});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.doc().contains("error"));
}

TEST_CASE("single tasks") {
  Run g = cli({"gldim", "-w", ws("a2-hereditary.json")});
  REQUIRE(g.code == kExitOk);
  json r = g.doc()["results"][0];
  CHECK(r["status"] == "ok");
  CHECK(r["result"]["gl_dim"] == 1);

  Run e = cli({"run", "-w", ws("a2-hereditary.json"), "--task", "ext_S1_P2"});
  REQUIRE(e.code == kExitOk);
  CHECK(e.doc()["results"][0]["result"]["dims"] == json::parse("[0, 1, 0]"));

  Run t = cli({"verify-thm2", "-w", ws("kx2.json")});
  REQUIRE(t.code == kExitOk);
  CHECK(t.doc()["results"][0]["result"]["consistent"] == true);

  Run ac = cli({"acyclic", "-w", ws("kx2.json"), "--task", "acyclic_zero"});
  REQUIRE(ac.code == kExitOk);
  CHECK(ac.doc()["results"][0]["result"]["acyclic"] == true);
}

TEST_CASE("whole workspaces and the suite") {
  for (const char* name : {"kx2.json", "kx3.json", "a2-hereditary.json"}) {
    Run r = cli({"run", "-w", ws(name)});
    CHECK(r.code == kExitOk);
    for (const auto& res : r.doc()["results"]) CHECK(res["status"] == "ok");
    Run s = cli({"suite", "-w", ws(name)});
    CHECK(s.code == kExitOk);
    CHECK(s.doc()["dossier"]["all_pass"] == true);
    CHECK(cli({"suite", "-w", ws(name)}).out == s.out);
  }
}

TEST_CASE("hypothesis failures exit with 3") {
  auto dir = std::filesystem::temp_directory_path() / "homres-cli-test";
  std::filesystem::create_directories(dir);
  auto file = dir / "w.json";
  std::ofstream(file) << R"({
    "p": 2,
    "algebras": {"sq": {"kind": "quiver", "vertices": 1, "arrows": [[0,0],[0,0]],
                        "relations": [[0,0],[0,1],[1,0],[1,1]]}},
    "modules": {"k": {"algebra": "sq", "builtin": "simple"}},
    "tasks": [{"cmd": "gp", "name": "gp_k", "module": "k", "bound": 3}]
  })";
  Run r = cli({"run", "-w", file.string()});
  CHECK(r.code == kExitHypothesis);
  CHECK(r.doc()["results"][0]["status"] == "hypotheses-not-satisfied");
  CHECK(r.doc()["results"][0]["error"]["kind"] == "unsupported");
  std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes by error kind") {
  CHECK(exit_code_for(ErrorKind::InvalidInput) == kExitUsage);
  CHECK(exit_code_for(ErrorKind::NotFiniteDimensional) == kExitUsage);
  CHECK(exit_code_for(ErrorKind::NotAGenerator) == kExitHypothesis);
  CHECK(exit_code_for(ErrorKind::NeedsFiniteInjdim) == kExitHypothesis);
  CHECK(exit_code_for(ErrorKind::HypothesesNotSatisfied) == kExitHypothesis);
  CHECK(exit_code_for(ErrorKind::Unsupported) == kExitHypothesis);
  CHECK(exit_code_for(ErrorKind::UnsupportedField) == kExitHypothesis);
  CHECK(exit_code_for(ErrorKind::InternalError) == kExitInternal);
}

TEST_CASE("output file and cache") {
  auto dir = std::filesystem::temp_directory_path() / "homres-cli-cache";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto file = dir / "kx2.json";
  std::filesystem::copy_file(kData / "kx2.json", file);
  auto report = dir / "report.json";
  Run plain = cli({"run", "-w", file.string()});
  Run first = cli({"run", "-w", file.string(), "--cache", "-o", report.string()});
  CHECK(first.code == kExitOk);
  CHECK(first.out.empty());
  std::ifstream in(report);
  std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == plain.out);
  CHECK(std::filesystem::exists(dir / "kx2.json.cache"));
  CHECK_FALSE(std::filesystem::is_empty(dir / "kx2.json.cache"));
  Run second = cli({"run", "-w", file.string(), "--cache"});
  CHECK(second.out == plain.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("canon prints the canonical document") {
  Run c = cli({"canon", "-w", ws("a2-hereditary.json")});
  REQUIRE(c.code == kExitOk);
  Workspace w = parse_workspace(c.doc());
  CHECK(canonical_text(store_workspace(w)) == c.out);
}
