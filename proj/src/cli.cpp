#include "homres/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "homres/complex.hpp"
#include "homres/endo.hpp"
#include "homres/gorenstein.hpp"

namespace homres {

namespace {

constexpr std::size_t kDefaultBound = 10;

const char* anchor(const std::string& cmd) {
  static const std::map<std::string, const char*> anchors = {
      {"gldim", "global dimension: supremum of projective dimensions of the simples"},
      {"injdim", "injective dimension: last degree with Ext^i(S, T) nonzero for a simple S"},
      {"ext", "Ext^i(X, Y) as cohomology of Hom(P, Y) for a projective resolution P"},
      {"resolve", "projective resolution or add M-resolution by right approximations"},
      {"approx", "right add M-approximation: Hom(M, f) surjective"},
      {"addmem", "membership in add M: the approximation splits"},
      {"perp", "left perpendicular category of T: Ext^i(X, T) = 0 for i >= 1"},
      {"endo", "B = End_A(M)^op and the functor Hom_A(M, -)"},
      {"verify-thm2", "gl.dim End_A(M)^op <= r iff inj.dim T <= r when add M = perp T"},
      {"gorenstein", "Gorenstein algebra: inj.dim _AA and inj.dim A_A finite and equal"},
      {"gp", "over a Gorenstein algebra the Gorenstein-projectives are perp(_AA)"},
      {"auslander", "relative Auslander algebra of a complete list of Gorenstein-projectives"},
      {"cotilting", "cotilting: inj.dim T <= 1, Ext^1(T, T) = 0, 0 -> T_0 -> T_1 -> D(A_A) -> 0"},
      {"cone", "mapping cone Cone(f)^i = X^{i+1} + Y^i"},
      {"acyclic", "acyclicity: all cohomology vanishes"},
      {"cacyclic", "C-acyclicity: Hom(M_j, X) acyclic for every summand"},
      {"homdim", "Hom_K(X, Y[n]) = H^n Hom(X, Y)"},
      {"cresolve", "add M-resolution of a bounded complex with C-acyclic cone"},
      {"perfect", "perfect complex: quasi-isomorphic to a bounded complex of projectives"},
      {"retraction", "homotopy retraction s of a quasi-isomorphism t with s t homotopic to 1"},
  };
  auto it = anchors.find(cmd);
  return it == anchors.end() ? "" : it->second;
}

json dim_json(const BoundedDim& d) { return d.value ? json(*d.value) : json(nullptr); }

std::string text_arg(const json& t, const std::string& key) {
  if (!t.contains(key) || !t[key].is_string())
    fail(ErrorKind::InvalidInput, "task needs a string argument '" + key + "'");
  return t[key].get<std::string>();
}

std::size_t nat_arg(const json& t, const std::string& key, std::size_t def) {
  if (!t.contains(key)) return def;
  if (!t[key].is_number_integer() || t[key].get<std::int64_t>() < 0)
    fail(ErrorKind::InvalidInput, "argument '" + key + "' must be a non-negative integer");
  return t[key].get<std::size_t>();
}

int int_arg(const json& t, const std::string& key, int def) {
  if (!t.contains(key)) return def;
  if (!t[key].is_number_integer()) fail(ErrorKind::InvalidInput, "argument '" + key + "' must be an integer");
  return t[key].get<int>();
}

std::size_t bound_arg(const json& t, const RunOptions& opt, std::size_t def = kDefaultBound) {
  return opt.bound ? *opt.bound : nat_arg(t, "bound", def);
}

std::uint64_t seed_arg(const json& t, const RunOptions& opt) {
  return opt.seed ? *opt.seed : nat_arg(t, "seed", 0);
}

std::vector<Module> module_list(const Workspace& ws, const json& t, const std::string& key) {
  if (!t.contains(key) || !t[key].is_array())
    fail(ErrorKind::InvalidInput, "task needs a list argument '" + key + "'");
  std::vector<Module> out;
  for (const auto& n : t[key]) out.push_back(ws.module(n.get<std::string>()));
  return out;
}

json dims_json(const std::map<int, std::size_t>& h) {
  json o = json::object();
  for (auto [i, d] : h) o[std::to_string(i)] = d;
  return o;
}

json term_dims(const Complex& c) {
  json a = json::array();
  for (int i = c.lo(); i <= c.hi(); ++i) a.push_back(c.term(i).dim());
  return a;
}

ChainMap chain_map_arg(const Workspace& ws, const json& t, const std::string& key) {
  if (!t.contains(key) || !t[key].is_object()) fail(ErrorKind::InvalidInput, "task needs a chain map '" + key + "'");
  const json& m = t[key];
  const Complex& x = ws.complex(text_arg(m, "source"));
  const Complex& y = ws.complex(text_arg(m, "target"));
  std::map<int, Matrix> comps;
  if (m.contains("components")) {
    for (const auto& [deg, mat] : m["components"].items()) {
      const int i = std::stoi(deg);
      std::vector<std::vector<std::int64_t>> rows = mat.get<std::vector<std::vector<std::int64_t>>>();
      Matrix c = Matrix::from_rows(rows, ws.p, x.term(i).dim());
      if (c.rows() != y.term(i).dim() || c.cols() != x.term(i).dim())
        fail(ErrorKind::InvalidInput, "chain map component " + deg + " has the wrong shape");
      comps[i] = std::move(c);
    }
  }
  return ChainMap(x, y, std::move(comps));
}

json resolution_json(const Resolution& r) {
  json terms = json::array(), ranks = json::array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    terms.push_back(r.terms[i].dim());
    ranks.push_back(r.free_ranks[i] ? json(*r.free_ranks[i]) : json(nullptr));
  }
  return {{"kind", r.kind == ResolutionKind::Projective ? "projective" : "addM"},
          {"status", r.status == ResolutionStatus::Complete ? "complete" : "truncated"},
          {"length", r.length()},
          {"term_dims", terms},
          {"free_ranks", ranks},
          {"exact", check_exactness(r).empty()}};
}

json theorem2_json(const Theorem2Report& rep) {
  json spots = json::array();
  for (const auto& s : rep.spot_checks)
    spots.push_back({{"name", s.name}, {"in_perp", s.in_perp}, {"in_add", s.in_add}});
  json o = {{"r", rep.r},
            {"bound", rep.bound},
            {"dim_a", rep.dim_a},
            {"dim_b", rep.dim_b},
            {"injdim_t", dim_json(rep.injdim_t)},
            {"gldim_b", dim_json(rep.gldim_b)},
            {"generator", rep.generator},
            {"summands_in_perp", rep.summands_in_perp},
            {"spot_checks", spots},
            {"hypotheses_satisfied", rep.hypotheses_satisfied},
            {"biconditional", rep.biconditional},
            {"smooth", rep.smooth()},
            {"consistent", rep.consistent ? json(*rep.consistent) : json(nullptr)}};
  if (!rep.failure.empty()) o["failure"] = rep.failure;
  return o;
}

// Returns the result object; sets `hyp_failed` when the report records an
// unmet hypothesis without throwing.
json dispatch(const Workspace& ws, const json& t, const std::string& cmd, const RunOptions& opt, bool& hyp_failed) {
  if (cmd == "gldim") {
    const std::size_t b = bound_arg(t, opt);
    return {{"gl_dim", dim_json(gl_dim(ws.algebra(text_arg(t, "algebra")), b))}, {"bound", b}};
  }
  if (cmd == "injdim") {
    const std::size_t b = bound_arg(t, opt);
    return {{"inj_dim", dim_json(inj_dim(ws.module(text_arg(t, "module")), b))}, {"bound", b}};
  }
  if (cmd == "ext") {
    const std::size_t mx = nat_arg(t, "max", 3);
    return {{"dims", ext_dims(ws.module(text_arg(t, "source")), ws.module(text_arg(t, "target")), mx).dims}};
  }
  if (cmd == "resolve") {
    const Module& x = ws.module(text_arg(t, "module"));
    const std::size_t len = nat_arg(t, "length", 5);
    if (t.contains("add")) return resolution_json(addM_resolution(x, AddCategory(module_list(ws, t, "add")), len));
    CoverOptions co;
    const std::string s = t.value("strategy", std::string("evaluation"));
    if (s == "permuted") co.strategy = CoverStrategy::Permuted;
    else if (s == "doubled") co.strategy = CoverStrategy::Doubled;
    else if (s != "evaluation") fail(ErrorKind::InvalidInput, "unknown cover strategy '" + s + "'");
    co.seed = seed_arg(t, opt);
    return resolution_json(projective_resolution(x, len, co));
  }
  if (cmd == "approx") {
    AddCategory c(module_list(ws, t, "add"));
    Approximation ap = right_approximation(ws.module(text_arg(t, "module")), c);
    return {{"source_dim", ap.source.sum.dim()},
            {"copies", ap.summand},
            {"surjective", rank(ap.map.matrix()) == ap.map.target().dim()},
            {"right_approximation", is_right_approximation(ap.map, c)}};
  }
  if (cmd == "addmem") {
    AddCategory c(module_list(ws, t, "add"));
    return {{"member", add_membership(ws.module(text_arg(t, "module")), c).member}};
  }
  if (cmd == "perp") {
    const Module& tm = ws.module(text_arg(t, "t"));
    const std::size_t b = bound_arg(t, opt);
    BoundedDim id = inj_dim(tm, b);
    return {{"member", perp_membership(ws.module(text_arg(t, "module")), tm, id.value)},
            {"injdim_t", dim_json(id)}};
  }
  if (cmd == "endo") {
    EndoContext ctx = endomorphism_algebra(AddCategory(module_list(ws, t, "add")));
    const std::size_t b = bound_arg(t, opt);
    json simples = json::array();
    for (const auto& s : simple_modules(ctx.b)) simples.push_back(s.dim());
    return {{"dim_b", ctx.b->dim()},
            {"radical_dim", radical_basis(*ctx.b).rows()},
            {"simple_dims", simples},
            {"gl_dim_b", dim_json(gl_dim(ctx.b, b))},
            {"bound", b}};
  }
  if (cmd == "verify-thm2") {
    std::vector<NamedModule> spot;
    if (t.contains("spot"))
      for (const auto& n : t["spot"]) spot.push_back({n.get<std::string>(), ws.module(n.get<std::string>())});
    std::optional<std::size_t> b;
    if (opt.bound) b = opt.bound;
    else if (t.contains("bound")) b = nat_arg(t, "bound", 0);
    Theorem2Report rep = verify_theorem2(ws.algebra(text_arg(t, "algebra")), ws.module(text_arg(t, "t")),
                                         AddCategory(module_list(ws, t, "add")), nat_arg(t, "r", 2), spot, b);
    hyp_failed = !rep.hypotheses_satisfied;
    return theorem2_json(rep);
  }
  if (cmd == "gorenstein") {
    const std::size_t b = bound_arg(t, opt);
    GorensteinReport g = is_gorenstein(ws.algebra(text_arg(t, "algebra")), b);
    return {{"left_injdim", dim_json(g.left_injdim)},
            {"right_injdim", dim_json(g.right_injdim)},
            {"gorenstein", g.gorenstein()},
            {"bound", b}};
  }
  if (cmd == "gp") {
    return {{"member", gp_membership(ws.module(text_arg(t, "module")), bound_arg(t, opt))}};
  }
  if (cmd == "auslander") {
    const std::size_t b = bound_arg(t, opt);
    RelativeAuslanderReport r = relative_auslander(ws.algebra(text_arg(t, "algebra")), module_list(ws, t, "gp"), b);
    json und = json::array();
    for (auto [i, j] : r.undecided_pairs) und.push_back({i, j});
    return {{"dim_b", r.ctx.b->dim()},
            {"gl_dim_b", dim_json(r.gldim_b)},
            {"smooth", r.smooth()},
            {"gorenstein_dim", r.gorenstein_dim},
            {"undecided_pairs", und},
            {"projectives_relatively_injective", r.projectives_relatively_injective},
            {"bound", b}};
  }
  if (cmd == "cotilting") {
    CotiltingReport r = cotilting_check(ws.module(text_arg(t, "module")), bound_arg(t, opt));
    return {{"injdim", dim_json(r.injdim)},
            {"injdim_at_most_1", r.injdim_ok},
            {"ext1", r.ext1},
            {"approximation_surjective", r.approximation_surjective},
            {"kernel_in_add", r.kernel_in_add},
            {"t1_dim", r.t1_dim},
            {"t0_dim", r.t0_dim},
            {"cotilting", r.cotilting()}};
  }
  if (cmd == "cone") {
    Cone c = mapping_cone(chain_map_arg(ws, t, "map"));
    return {{"lo", c.cone.lo()}, {"term_dims", term_dims(c.cone)}, {"acyclic", is_acyclic(c.cone)}};
  }
  if (cmd == "acyclic") {
    const Complex& x = ws.complex(text_arg(t, "complex"));
    return {{"acyclic", is_acyclic(x)}, {"homology", dims_json(homology_dims(x))}};
  }
  if (cmd == "cacyclic") {
    const Complex& x = ws.complex(text_arg(t, "complex"));
    AddCategory c(module_list(ws, t, "add"));
    std::optional<int> from;
    if (t.contains("from")) from = int_arg(t, "from", 0);
    json h = json::object();
    for (const auto& [i, d] : c_homology(x, c)) h[std::to_string(i)] = d;
    return {{"c_acyclic", is_c_acyclic(x, c, from)}, {"homology", h}};
  }
  if (cmd == "homdim") {
    const Complex& x = ws.complex(text_arg(t, "source"));
    const Complex& y = ws.complex(text_arg(t, "target"));
    json out = json::object();
    if (t.contains("degree")) {
      out["dim"] = homotopy_hom_dim(x, y, int_arg(t, "degree", 0));
    } else {
      // Every degree where Hom^n can be nonzero.
      const int lo = (y.lo() - x.hi()) - 1, hi = (y.hi() - x.lo()) + 1;
      json d = json::object();
      for (int n = lo; n <= hi; ++n) d[std::to_string(n)] = homotopy_hom_dim(x, y, n);
      out["dims"] = d;
    }
    return out;
  }
  if (cmd == "cresolve") {
    const Complex& x = ws.complex(text_arg(t, "complex"));
    AddCategory c(module_list(ws, t, "add"));
    CResolution r = c_resolution(x, c, nat_arg(t, "depth", 3));
    return {{"lo", r.complex.lo()},
            {"term_dims", term_dims(r.complex)},
            {"safe_lo", r.safe_lo},
            {"cone_c_acyclic", is_c_acyclic(mapping_cone(r.map).cone, c, r.safe_lo)}};
  }
  if (cmd == "perfect") {
    const std::size_t b = bound_arg(t, opt);
    PerfectResult r = perfect_test(ws.complex(text_arg(t, "complex")), b);
    return {{"perfect", r.perfect},
            {"degree", r.degree ? json(*r.degree) : json(nullptr)},
            {"length", r.length ? json(*r.length) : json(nullptr)},
            {"bound", b}};
  }
  if (cmd == "retraction") {
    ChainMap tm = chain_map_arg(ws, t, "map");
    auto r = homotopy_retraction(tm, AddCategory(module_list(ws, t, "add")));
    json o = {{"found", r.has_value()}};
    if (r) o["homotopy_verified"] = is_homotopy(r->h);
    return o;
  }
  fail(ErrorKind::InvalidInput, "unknown command '" + cmd + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string cache_key(const Workspace& ws, const json& task, const RunOptions& opt) {
  json key = ws.canonical;
  key.erase("tasks");
  key.erase("suite");
  key["task"] = task;
  if (opt.bound) key["bound_override"] = *opt.bound;
  if (opt.seed) key["seed_override"] = *opt.seed;
  return hex64(fnv1a(key.dump()));
}

json error_json(const Error& e) {
  json o = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (!e.location().empty()) o["location"] = e.location();
  return o;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotFiniteDimensional:
      return kExitUsage;
    case ErrorKind::InternalError:
      return kExitInternal;
    default:
      return kExitHypothesis;
  }
}

json run_task(const Workspace& ws, const json& task, std::size_t index, const RunOptions& opt, int& code) {
  const std::string cmd = task.value("cmd", std::string());
  json rep = {{"index", index},
              {"name", task.value("name", "task" + std::to_string(index))},
              {"cmd", cmd},
              {"anchor", anchor(cmd)}};
  std::optional<std::filesystem::path> cached;
  if (opt.cache_dir) {
    cached = *opt.cache_dir / (cache_key(ws, task, opt) + ".json");
    std::ifstream in(*cached);
    if (in) {
      try {
        rep["result"] = json::parse(in);
        rep["status"] = "ok";
        code = kExitOk;
        return rep;
      } catch (const json::exception&) {
      }
    }
  }
  try {
    bool hyp_failed = false;
    rep["result"] = dispatch(ws, task, cmd, opt, hyp_failed);
    rep["status"] = hyp_failed ? "hypotheses-not-satisfied" : "ok";
    code = hyp_failed ? kExitHypothesis : kExitOk;
    if (cached && !hyp_failed) {
      std::filesystem::create_directories(cached->parent_path());
      std::ofstream(*cached) << canonical_text(rep["result"]);
    }
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    rep["status"] = code == kExitHypothesis ? "hypotheses-not-satisfied" : "error";
    rep["error"] = error_json(e);
  } catch (const json::exception& e) {
    rep["status"] = "error";
    rep["error"] = {{"kind", to_string(ErrorKind::InvalidInput)}, {"message", e.what()}};
    code = kExitUsage;
  } catch (const std::exception& e) {
    rep["status"] = "error";
    rep["error"] = {{"kind", to_string(ErrorKind::InternalError)}, {"message", e.what()}};
    code = kExitInternal;
  }
  return rep;
}

json verification_suite(const Workspace& ws, const RunOptions& opt, int& code) {
  if (!ws.suite) fail(ErrorKind::InvalidInput, "workspace has no suite entry");
  const json& s = *ws.suite;
  const AlgebraPtr& a = ws.algebra(text_arg(s, "algebra"));
  const Module& t = ws.module(text_arg(s, "t"));
  AddCategory c(module_list(ws, s, "add"));
  const std::size_t r = nat_arg(s, "r", 2);
  std::vector<NamedModule> spot;
  if (s.contains("spot"))
    for (const auto& n : s["spot"]) spot.push_back({n.get<std::string>(), ws.module(n.get<std::string>())});
  std::optional<std::size_t> b;
  if (opt.bound) b = opt.bound;
  else if (s.contains("bound")) b = nat_arg(s, "bound", 0);

  json ingredients = json::array();
  bool all = true;
  auto add = [&](const std::string& check, bool pass, json value = nullptr) {
    json e = {{"check", check}, {"pass", pass}};
    if (!value.is_null()) e["value"] = std::move(value);
    ingredients.push_back(std::move(e));
    all = all && pass;
  };

  Theorem2Report rep = verify_theorem2(a, t, c, r, spot, b);
  const std::size_t bound = rep.bound;
  add("M is a generator", rep.generator);
  add("inj.dim T is finite", rep.injdim_t.finite(), dim_json(rep.injdim_t));
  add("add M lies in perp T",
      !rep.summands_in_perp.empty() &&
          std::all_of(rep.summands_in_perp.begin(), rep.summands_in_perp.end(), [](bool v) { return v; }));
  add("spot checks in perp T lie in add M",
      std::all_of(rep.spot_checks.begin(), rep.spot_checks.end(),
                  [](const SpotCheck& sc) { return !sc.in_perp || sc.in_add; }));
  add("gl.dim B is finite", rep.smooth(), dim_json(rep.gldim_b));
  add("gl.dim B <= r iff inj.dim T <= r", rep.consistent.value_or(false));

  json dossier = {{"algebra", s["algebra"]}, {"theorem2", theorem2_json(rep)}};
  const BoundedDim gla = gl_dim(a, bound);
  dossier["gl_dim_a"] = dim_json(gla);
  dossier["already_smooth"] = gla.finite();

  GorensteinReport g = is_gorenstein(a, bound);
  json gor = {{"left_injdim", dim_json(g.left_injdim)},
              {"right_injdim", dim_json(g.right_injdim)},
              {"gorenstein", g.gorenstein()}};
  if (g.gorenstein() && s.contains("gp")) {
    RelativeAuslanderReport ra = relative_auslander(a, module_list(ws, s, "gp"), bound);
    gor["relative_auslander"] = {{"dim_b", ra.ctx.b->dim()},
                                 {"gl_dim_b", dim_json(ra.gldim_b)},
                                 {"smooth", ra.smooth()},
                                 {"projectives_relatively_injective", ra.projectives_relatively_injective}};
    add("relative Auslander algebra has finite gl.dim", ra.smooth(), dim_json(ra.gldim_b));
    add("projectives are relatively injective among Gorenstein-projectives",
        ra.projectives_relatively_injective);
  }
  dossier["gorenstein"] = gor;
  dossier["ingredients"] = ingredients;
  dossier["all_pass"] = all;
  code = all ? kExitOk : kExitHypothesis;
  return dossier;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"homres: homological algebra over finite-dimensional algebras"};
  std::string command, workspace, task_name, out_file;
  std::optional<std::size_t> bound;
  std::optional<std::uint64_t> seed;
  bool cache = false;
  app.add_option("command", command, "run | suite | canon | a task command")->required();
  app.add_option("--workspace,-w", workspace, "workspace JSON file")->required();
  app.add_option("--task", task_name, "run only the task with this name");
  app.add_option("--bound", bound, "override dimension bounds");
  app.add_option("--seed", seed, "override seeds");
  app.add_option("--out,-o", out_file, "write the report to this file");
  app.add_flag("--cache", cache, "reuse task reports cached beside the workspace");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const bool task_cmd = find_command(command) != nullptr;
  if (!task_cmd && command != "run" && command != "suite" && command != "canon") {
    err << "unknown command '" << command << "'\n";
    return kExitUsage;
  }

  auto emit = [&](const json& doc) {
    const std::string txt = canonical_text(doc);
    if (out_file.empty()) {
      out << txt;
    } else {
      std::ofstream f(out_file);
      f << txt;
    }
  };

  Workspace ws;
  try {
    ws = load_workspace(workspace);
  } catch (const Error& e) {
    emit({{"command", command}, {"error", error_json(e)}});
    return exit_code_for(e.kind());
  }

  RunOptions opt;
  opt.bound = bound;
  opt.seed = seed;
  if (cache) opt.cache_dir = std::filesystem::path(workspace + ".cache");

  if (command == "canon") {
    emit(store_workspace(ws));
    return kExitOk;
  }
  if (command == "suite") {
    int code = kExitOk;
    try {
      json d = verification_suite(ws, opt, code);
      emit({{"command", "suite"}, {"dossier", d}});
    } catch (const Error& e) {
      emit({{"command", "suite"}, {"error", error_json(e)}});
      return exit_code_for(e.kind());
    }
    return code;
  }

  json results = json::array();
  int worst = kExitOk;
  bool any = false;
  for (std::size_t i = 0; i < ws.tasks.size(); ++i) {
    const json& t = ws.tasks[i];
    const std::string cmd = t.value("cmd", std::string());
    const std::string name = t.value("name", "task" + std::to_string(i));
    if (task_cmd && cmd != command) continue;
    if (!task_name.empty() && name != task_name) continue;
    any = true;
    int code = kExitOk;
    results.push_back(run_task(ws, t, i, opt, code));
    worst = std::max(worst, code);
  }
  if (!any) {
    err << "no matching task in " << workspace << "\n";
    return kExitUsage;
  }
  emit({{"command", command}, {"results", results}});
  return worst;
}

}  // namespace homres
