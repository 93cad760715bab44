#include "homres/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "homres/error.hpp"
#include "homres/gorenstein.hpp"

namespace homres {

namespace {

std::string escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string at(const std::string& base, const std::string& key) { return base + "/" + escape(key); }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

[[noreturn]] void bad(const std::string& loc, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, what, loc);
}

// Runs f, attaching `loc` to library errors that have no location yet.
template <class F>
auto located(const std::string& loc, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.location().empty()) throw;
    throw Error(e.kind(), e.what(), loc);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what(), loc);
  }
}

const json& field(const json& obj, const std::string& key, const std::string& loc) {
  if (!obj.is_object()) bad(loc, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(at(loc, key), "missing required field '" + key + "'");
  return *it;
}

std::int64_t integer(const json& j, const std::string& loc) {
  if (!j.is_number_integer()) bad(loc, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t natural(const json& j, const std::string& loc) {
  const std::int64_t v = integer(j, loc);
  if (v < 0) bad(loc, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string text(const json& j, const std::string& loc) {
  if (!j.is_string()) bad(loc, "expected a string");
  return j.get<std::string>();
}

Matrix read_matrix(const json& j, std::size_t rows, std::size_t cols, Prime p, const std::string& loc) {
  if (!j.is_array() || j.size() != rows)
    bad(loc, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  Matrix m(rows, cols, p);
  const GF f{p};
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      bad(at(loc, r), "expected a row of length " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.reduce(integer(row[c], at(at(loc, r), c)));
  }
  return m;
}

json write_matrix(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> names(const json& j, const std::string& loc) {
  if (!j.is_array()) bad(loc, "expected a list of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], at(loc, i)));
  return out;
}

std::pair<AlgebraPtr, json> parse_algebra(const json& j, Prime p, const std::string& loc) {
  const std::string kind = text(field(j, "kind", loc), at(loc, "kind"));
  json canon = {{"kind", kind}};
  if (kind == "quiver") {
    QuiverPresentation q;
    q.vertices = natural(field(j, "vertices", loc), at(loc, "vertices"));
    const json& arrows = field(j, "arrows", loc);
    if (!arrows.is_array()) bad(at(loc, "arrows"), "expected a list of [source, target] pairs");
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      const std::string l = at(at(loc, "arrows"), a);
      if (!arrows[a].is_array() || arrows[a].size() != 2) bad(l, "expected [source, target]");
      q.arrows.emplace_back(natural(arrows[a][0], at(l, 0)), natural(arrows[a][1], at(l, 1)));
    }
    if (j.contains("relations")) {
      const json& rels = j["relations"];
      if (!rels.is_array()) bad(at(loc, "relations"), "expected a list of arrow paths");
      for (std::size_t r = 0; r < rels.size(); ++r) {
        const std::string l = at(at(loc, "relations"), r);
        if (!rels[r].is_array()) bad(l, "expected a list of arrow indices");
        std::vector<std::size_t> path;
        for (std::size_t t = 0; t < rels[r].size(); ++t) path.push_back(natural(rels[r][t], at(l, t)));
        q.relations.push_back(std::move(path));
      }
    }
    AlgebraPtr a = located(loc, [&] { return from_quiver(q, p); });
    canon["vertices"] = q.vertices;
    canon["arrows"] = json::array();
    for (auto [s, t] : q.arrows) canon["arrows"].push_back({s, t});
    if (!q.relations.empty()) canon["relations"] = q.relations;
    return {a, canon};
  }
  if (kind != "table") bad(at(loc, "kind"), "unknown algebra kind '" + kind + "'");
  AlgebraData raw;
  raw.p = p;
  raw.dim = natural(field(j, "dim", loc), at(loc, "dim"));
  const GF f{p};
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Elem> consts;
  const json& st = field(j, "structure", loc);
  if (!st.is_array()) bad(at(loc, "structure"), "expected a list of [i, j, k, c]");
  for (std::size_t t = 0; t < st.size(); ++t) {
    const std::string l = at(at(loc, "structure"), t);
    if (!st[t].is_array() || st[t].size() != 4) bad(l, "expected [i, j, k, c]");
    const std::size_t i = natural(st[t][0], at(l, 0)), jj = natural(st[t][1], at(l, 1)),
                      k = natural(st[t][2], at(l, 2));
    if (i >= raw.dim || jj >= raw.dim || k >= raw.dim) bad(l, "basis index out of range");
    Elem& c = consts[{i, jj, k}];
    c = f.add(c, f.reduce(integer(st[t][3], at(l, 3))));
  }
  json canon_st = json::array();
  for (const auto& [key, c] : consts) {
    if (!c) continue;
    const auto [i, jj, k] = key;
    raw.structure.push_back({i, jj, k, static_cast<std::int64_t>(c)});
    canon_st.push_back({i, jj, k, c});
  }
  const json& unit = field(j, "unit", loc);
  if (!unit.is_array() || unit.size() != raw.dim) bad(at(loc, "unit"), "unit needs dim entries");
  for (std::size_t i = 0; i < raw.dim; ++i) raw.unit.push_back(f.reduce(integer(unit[i], at(at(loc, "unit"), i))));
  canon["dim"] = raw.dim;
  canon["structure"] = canon_st;
  canon["unit"] = raw.unit;
  if (j.contains("radical")) {
    const json& r = j["radical"];
    if (!r.is_array()) bad(at(loc, "radical"), "expected a list of rows");
    raw.radical = read_matrix(r, r.size(), raw.dim, p, at(loc, "radical"));
    canon["radical"] = write_matrix(*raw.radical);
  }
  if (j.contains("simples")) {
    const json& s = j["simples"];
    const std::string sl = at(loc, "simples");
    if (!s.is_array()) bad(sl, "expected a list of simple modules");
    std::vector<std::vector<Matrix>> simples;
    json canon_s = json::array();
    for (std::size_t m = 0; m < s.size(); ++m) {
      const std::string l = at(sl, m);
      if (!s[m].is_array() || s[m].size() != raw.dim) bad(l, "a simple needs one matrix per basis element");
      const std::size_t d = s[m][0].size();
      std::vector<Matrix> act;
      json canon_m = json::array();
      for (std::size_t i = 0; i < raw.dim; ++i) {
        act.push_back(read_matrix(s[m][i], d, d, p, at(l, i)));
        canon_m.push_back(write_matrix(act.back()));
      }
      simples.push_back(std::move(act));
      canon_s.push_back(std::move(canon_m));
    }
    raw.simples = std::move(simples);
    canon["simples"] = std::move(canon_s);
  }
  if (j.contains("labels")) {
    raw.labels = names(j["labels"], at(loc, "labels"));
    canon["labels"] = raw.labels;
  }
  AlgebraPtr a = located(loc, [&] { return validate_algebra(std::move(raw)); });
  return {a, canon};
}

std::pair<Module, json> parse_module(const json& j, const Workspace& ws, const std::string& loc) {
  const std::string an = text(field(j, "algebra", loc), at(loc, "algebra"));
  if (!ws.algebras.count(an)) bad(at(loc, "algebra"), "unknown algebra '" + an + "'");
  const AlgebraPtr& a = ws.algebras.at(an);
  json canon = {{"algebra", an}};
  if (j.contains("builtin")) {
    const std::string kind = text(j["builtin"], at(loc, "builtin"));
    const std::size_t index = j.contains("index") ? natural(j["index"], at(loc, "index")) : 0;
    canon["builtin"] = kind;
    if (index) canon["index"] = index;
    Module m = located(loc, [&]() -> Module {
      if (kind == "regular") return Module::regular(a);
      if (kind == "free") return Module::free(a, index);
      if (kind == "dual-right-regular") return dual_right_regular(a);
      if (kind == "simple") {
        auto s = simple_modules(a);
        if (index >= s.size()) bad(at(loc, "index"), "simple index out of range");
        return s[index];
      }
      if (kind == "projective") {
        if (index >= a->quiver_vertices()) bad(at(loc, "index"), "vertex index out of range");
        return vertex_projective(a, index);
      }
      bad(at(loc, "builtin"), "unknown builtin module '" + kind + "'");
    });
    return {m, canon};
  }
  const std::size_t d = natural(field(j, "dim", loc), at(loc, "dim"));
  const json& act = field(j, "action", loc);
  if (!act.is_array() || act.size() != a->dim())
    bad(at(loc, "action"), "action needs one matrix per basis element (" + std::to_string(a->dim()) + ")");
  std::vector<Matrix> mats;
  json canon_act = json::array();
  for (std::size_t i = 0; i < a->dim(); ++i) {
    mats.push_back(read_matrix(act[i], d, d, ws.p, at(at(loc, "action"), i)));
    canon_act.push_back(write_matrix(mats.back()));
  }
  canon["dim"] = d;
  canon["action"] = std::move(canon_act);
  Module m = located(loc, [&] { return Module(a, std::move(mats)); });
  return {m, canon};
}

std::pair<Complex, json> parse_complex(const json& j, const Workspace& ws, const std::string& loc) {
  const std::string an = text(field(j, "algebra", loc), at(loc, "algebra"));
  if (!ws.algebras.count(an)) bad(at(loc, "algebra"), "unknown algebra '" + an + "'");
  const int lo = j.contains("lo") ? static_cast<int>(integer(j["lo"], at(loc, "lo"))) : 0;
  const auto tn = names(field(j, "terms", loc), at(loc, "terms"));
  std::vector<Module> terms;
  for (std::size_t k = 0; k < tn.size(); ++k) {
    if (!ws.modules.count(tn[k])) bad(at(at(loc, "terms"), k), "unknown module '" + tn[k] + "'");
    terms.push_back(ws.modules.at(tn[k]));
  }
  const json& dj = j.contains("diffs") ? j["diffs"] : json::array();
  const std::size_t want = terms.empty() ? 0 : terms.size() - 1;
  if (!dj.is_array() || dj.size() != want)
    bad(at(loc, "diffs"), "expected " + std::to_string(want) + " differentials");
  std::vector<Matrix> diffs;
  json canon_d = json::array();
  for (std::size_t k = 0; k < want; ++k) {
    diffs.push_back(read_matrix(dj[k], terms[k + 1].dim(), terms[k].dim(), ws.p, at(at(loc, "diffs"), k)));
    canon_d.push_back(write_matrix(diffs.back()));
  }
  json canon = {{"algebra", an}, {"terms", tn}};
  if (lo) canon["lo"] = lo;
  if (want) canon["diffs"] = std::move(canon_d);
  Complex c = located(loc, [&] { return Complex(ws.algebras.at(an), lo, std::move(terms), std::move(diffs)); });
  return {c, canon};
}

void check_refs(const json& obj, const Workspace& ws, const std::vector<std::string>& alg,
                const std::vector<std::string>& mod, const std::vector<std::string>& lists,
                const std::vector<std::string>& cx, const std::string& loc) {
  for (const auto& k : alg)
    if (obj.contains(k) && !ws.algebras.count(text(obj[k], at(loc, k))))
      bad(at(loc, k), "unknown algebra '" + obj[k].get<std::string>() + "'");
  for (const auto& k : mod)
    if (obj.contains(k) && !ws.modules.count(text(obj[k], at(loc, k))))
      bad(at(loc, k), "unknown module '" + obj[k].get<std::string>() + "'");
  for (const auto& k : lists) {
    if (!obj.contains(k)) continue;
    auto ns = names(obj[k], at(loc, k));
    for (std::size_t i = 0; i < ns.size(); ++i)
      if (!ws.modules.count(ns[i])) bad(at(at(loc, k), i), "unknown module '" + ns[i] + "'");
  }
  for (const auto& k : cx)
    if (obj.contains(k) && !ws.complexes.count(text(obj[k], at(loc, k))))
      bad(at(loc, k), "unknown complex '" + obj[k].get<std::string>() + "'");
}

// Drops integer fields equal to zero for keys whose default is zero.
json drop_zero_defaults(json obj) {
  for (const char* k : {"seed", "lo", "from", "index"})
    if (obj.contains(k) && obj[k].is_number_integer() && obj[k].get<std::int64_t>() == 0) obj.erase(k);
  return obj;
}

}  // namespace

const std::vector<CommandSchema>& command_schemas() {
  static const std::vector<CommandSchema> schemas = {
      {"gldim", {"algebra"}, {}, {}, {}, {}},
      {"injdim", {}, {"module"}, {}, {}, {}},
      {"ext", {}, {"source", "target"}, {}, {}, {}},
      {"resolve", {}, {"module"}, {"add"}, {}, {}},
      {"approx", {}, {"module"}, {"add"}, {}, {}},
      {"addmem", {}, {"module"}, {"add"}, {}, {}},
      {"perp", {}, {"module", "t"}, {}, {}, {}},
      {"endo", {}, {}, {"add"}, {}, {}},
      {"verify-thm2", {"algebra"}, {"t"}, {"add", "spot"}, {}, {}},
      {"gorenstein", {"algebra"}, {}, {}, {}, {}},
      {"gp", {}, {"module"}, {}, {}, {}},
      {"auslander", {"algebra"}, {}, {"gp"}, {}, {}},
      {"cotilting", {}, {"module"}, {}, {}, {}},
      {"cone", {}, {}, {}, {}, {"map"}},
      {"acyclic", {}, {}, {}, {"complex"}, {}},
      {"cacyclic", {}, {}, {"add"}, {"complex"}, {}},
      {"homdim", {}, {}, {}, {"source", "target"}, {}},
      {"cresolve", {}, {}, {"add"}, {"complex"}, {}},
      {"perfect", {}, {}, {}, {"complex"}, {}},
      {"retraction", {}, {}, {"add"}, {}, {"map"}},
  };
  return schemas;
}

const CommandSchema* find_command(const std::string& cmd) {
  for (const auto& s : command_schemas())
    if (s.cmd == cmd) return &s;
  return nullptr;
}

const AlgebraPtr& Workspace::algebra(const std::string& name) const {
  auto it = algebras.find(name);
  if (it == algebras.end()) fail(ErrorKind::InvalidInput, "unknown algebra '" + name + "'");
  return it->second;
}

const Module& Workspace::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) fail(ErrorKind::InvalidInput, "unknown module '" + name + "'");
  return it->second;
}

const Complex& Workspace::complex(const std::string& name) const {
  auto it = complexes.find(name);
  if (it == complexes.end()) fail(ErrorKind::InvalidInput, "unknown complex '" + name + "'");
  return it->second;
}

Workspace parse_workspace(const json& doc) {
  if (!doc.is_object()) bad("", "workspace must be a JSON object");
  Workspace ws;
  const std::int64_t p = integer(field(doc, "p", ""), "/p");
  if (p < 2 || p > static_cast<std::int64_t>(kMaxModulus) || !is_prime(static_cast<std::uint64_t>(p)))
    bad("/p", "p must be a prime below 2^31");
  ws.p = static_cast<Prime>(p);
  json canon = {{"p", ws.p}, {"algebras", json::object()}};

  if (doc.contains("algebras")) {
    const json& as = doc["algebras"];
    if (!as.is_object()) bad("/algebras", "expected an object of named algebras");
    for (const auto& [name, j] : as.items()) {
      auto [a, c] = parse_algebra(j, ws.p, at("/algebras", name));
      ws.algebras.emplace(name, a);
      canon["algebras"][name] = std::move(c);
    }
  }
  // Modules may refer to each other only through algebras, so order is free.
  if (doc.contains("modules")) {
    const json& ms = doc["modules"];
    if (!ms.is_object()) bad("/modules", "expected an object of named modules");
    for (const auto& [name, j] : ms.items()) {
      auto [m, c] = parse_module(j, ws, at("/modules", name));
      ws.modules.emplace(name, m);
      canon["modules"][name] = std::move(c);
    }
  }
  if (doc.contains("complexes")) {
    const json& cs = doc["complexes"];
    if (!cs.is_object()) bad("/complexes", "expected an object of named complexes");
    for (const auto& [name, j] : cs.items()) {
      auto [cx, c] = parse_complex(j, ws, at("/complexes", name));
      ws.complexes.emplace(name, cx);
      canon["complexes"][name] = std::move(c);
    }
  }
  if (doc.contains("tasks")) {
    const json& ts = doc["tasks"];
    if (!ts.is_array()) bad("/tasks", "expected a list of tasks");
    canon["tasks"] = json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string loc = at("/tasks", i);
      const std::string cmd = text(field(ts[i], "cmd", loc), at(loc, "cmd"));
      const CommandSchema* s = find_command(cmd);
      if (!s) bad(at(loc, "cmd"), "unknown command '" + cmd + "'");
      check_refs(ts[i], ws, s->algebra_refs, s->module_refs, s->module_list_refs, s->complex_refs, loc);
      for (const auto& k : s->map_refs)
        if (ts[i].contains(k))
          check_refs(ts[i][k], ws, {}, {}, {}, {"source", "target"}, at(loc, k));
      ws.tasks.push_back(ts[i]);
      canon["tasks"].push_back(drop_zero_defaults(ts[i]));
    }
  }
  if (doc.contains("suite")) {
    const json& s = doc["suite"];
    check_refs(s, ws, {"algebra"}, {"t"}, {"add", "gp", "spot"}, {}, "/suite");
    for (const char* k : {"algebra", "t", "add"}) field(s, k, "/suite");
    ws.suite = s;
    canon["suite"] = s;
  }
  ws.canonical = std::move(canon);
  return ws;
}

Workspace load_workspace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open workspace " + path.string(), "");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what(), "");
  }
  return parse_workspace(doc);
}

json store_workspace(const Workspace& ws) { return ws.canonical; }

std::string canonical_text(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace homres
