#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "homres/error.hpp"
#include "homres/workspace.hpp"

using namespace homres;

namespace {

const std::filesystem::path kData = HOMRES_DATA_DIR;

json minimal() {
  return json::parse(R"({
    "p": 2,
    "algebras": {"d": {"kind": "table", "dim": 2, "structure": [[0,0,0,1],[0,1,1,1],[1,0,1,1]], "unit": [1,0]}},
    "modules": {
      "A": {"algebra": "d", "builtin": "regular"},
      "k": {"algebra": "d", "dim": 1, "action": [[[1]], [[0]]]}
    },
    "complexes": {"c": {"algebra": "d", "lo": -1, "terms": ["k", "A"], "diffs": [[[0],[1]]]}},
    "tasks": [{"cmd": "ext", "source": "k", "target": "k", "max": 2}]
  })");
}

Error load_error(const json& doc) {
  try {
    parse_workspace(doc);
  } catch (const Error& e) {
    return e;
  }
  FAIL("document was accepted");
  return Error(ErrorKind::InternalError, "");
}

}  // namespace

TEST_CASE("minimal document loads") {
  Workspace ws = parse_workspace(minimal());
  CHECK(ws.p == 2);
  CHECK(ws.algebra("d")->dim() == 2);
  CHECK(ws.module("k").dim() == 1);
  CHECK(ws.complex("c").lo() == -1);
  CHECK(ws.tasks.size() == 1);
  CHECK_FALSE(ws.suite.has_value());
}

TEST_CASE("canonical form is a fixed point") {
  for (const char* name : {"kx2.json", "kx3.json", "a2-hereditary.json"}) {
    Workspace ws = load_workspace(kData / name);
    json c = store_workspace(ws);
    Workspace again = parse_workspace(c);
    CHECK(canonical_text(store_workspace(again)) == canonical_text(c));
    CHECK(again.modules.size() == ws.modules.size());
    CHECK(again.tasks.size() == ws.tasks.size());
  }
}

TEST_CASE("canonicalization reduces and sorts structure constants") {
  json doc = minimal();
  doc["algebras"]["d"]["structure"] = json::parse("[[1,0,1,3],[0,1,1,1],[0,0,0,1],[1,1,0,2]]");
  json c = store_workspace(parse_workspace(doc));
  CHECK(c["algebras"]["d"]["structure"] == json::parse("[[0,0,0,1],[0,1,1,1],[1,0,1,1]]"));
  CHECK(c["complexes"]["c"]["lo"] == -1);
}

TEST_CASE("non-associative tables are rejected with a location and the triple") {
  json doc = minimal();
  doc["algebras"]["d"] = json::parse(R"({"kind": "table", "dim": 3,
    "structure": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[0,2,2,1],[2,0,2,1],[1,1,2,1],[2,1,1,1]], "unit": [1,0,0]})");
  doc.erase("modules");
  doc.erase("complexes");
  doc.erase("tasks");
  Error e = load_error(doc);
  CHECK(e.kind() == ErrorKind::InvalidInput);
  CHECK(e.location() == "/algebras/d");
  CHECK(std::string(e.what()).find("(1,1,1)") != std::string::npos);
}

TEST_CASE("reference and shape errors") {
  json doc = minimal();
  doc["tasks"][0]["target"] = "nope";
  Error e = load_error(doc);
  CHECK(e.kind() == ErrorKind::InvalidInput);
  CHECK(e.location() == "/tasks/0/target");

  doc = minimal();
  doc["modules"]["k"]["action"][1] = json::parse("[[0, 1]]");
  e = load_error(doc);
  CHECK(e.location().rfind("/modules/k/action", 0) == 0);

  doc = minimal();
  doc["complexes"]["c"]["terms"][1] = "B";
  e = load_error(doc);
  CHECK(e.location() == "/complexes/c/terms/1");

  doc = minimal();
  doc["p"] = 4;
  CHECK(load_error(doc).kind() == ErrorKind::InvalidInput);

  doc = minimal();
  doc["algebras"]["loop"] = json::parse(R"({"kind": "quiver", "vertices": 1, "arrows": [[0,0]]})");
  e = load_error(doc);
  CHECK(e.kind() == ErrorKind::NotFiniteDimensional);
  CHECK(e.location() == "/algebras/loop");

  doc = minimal();
  doc["tasks"][0]["cmd"] = "frobnicate";
  CHECK(load_error(doc).location() == "/tasks/0/cmd");
}

TEST_CASE("workspace files") {
  auto dir = std::filesystem::temp_directory_path() / "homres-ws-test";
  std::filesystem::create_directories(dir);
  auto file = dir / "w.json";
  std::ofstream(file) << minimal().dump();
  Workspace ws = load_workspace(file);
  CHECK(ws.modules.size() == 2);
  std::ofstream(file) << "{ not json";
  CHECK_THROWS_AS(load_workspace(file), Error);
  CHECK_THROWS_AS(load_workspace(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}
