// Acceptance run: one PASS/FAIL line per criterion.  Tolerances are exact
// integer equality throughout; time limits are wall-clock seconds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homres/cli.hpp"
#include "homres/complex.hpp"
#include "homres/endo.hpp"
#include "homres/gorenstein.hpp"
#include "homres/workspace.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace homres;

namespace {

const std::filesystem::path kData = HOMRES_DATA_DIR;

constexpr double kLimitTheorem2 = 10.0;  // per instance
constexpr double kLimitAuslander = 5.0;
constexpr double kLimitExt = 5.0;
constexpr double kLimitOracle = 60.0;

constexpr int kOraclePairs = 200;
constexpr std::size_t kOracleTotalDim = 6;
constexpr int kSchanuelModules = 50;
constexpr std::size_t kSchanuelMaxDim = 6;
constexpr int kBridgerPairs = 50;
constexpr int kCResolutionComplexes = 20;
constexpr int kVanishingComplexes = 20;

struct Bundled {
  Workspace kx2, kx3, a2;
};

Bundled& bundled() {
  static Bundled b{load_workspace(kData / "kx2.json"), load_workspace(kData / "kx3.json"),
                   load_workspace(kData / "a2-hereditary.json")};
  return b;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s);
  std::fflush(stdout);
}

std::string dim_text(const BoundedDim& d) { return d.value ? std::to_string(*d.value) : "inf"; }

// Criterion 1
Outcome theorem2_suite() {
  std::ostringstream msg;
  bool ok = true;
  auto run = [&](const Workspace& ws, const std::string& alg, std::vector<std::string> add) {
    const auto t0 = Clock::now();
    AlgebraPtr a = ws.algebra(alg);
    std::vector<Module> ms;
    for (const auto& n : add) ms.push_back(ws.module(n));
    auto rep = verify_theorem2(a, ws.module("A"), AddCategory(ms), 2);
    const double s = seconds_since(t0);
    const bool good = rep.injdim_t.value == 0u && rep.gldim_b.value == 2u && rep.consistent == true && s < kLimitTheorem2;
    ok = ok && good;
    msg << alg << " injdim_t=" << dim_text(rep.injdim_t) << " gldim_b=" << dim_text(rep.gldim_b)
        << " consistent=" << (rep.consistent ? (*rep.consistent ? "yes" : "no") : "n/a") << " " << s << "s; ";
  };
  run(bundled().kx2, "kx2", {"A", "k"});
  // A, A/(x), A/(x^2): the last is the inline module A_x2 of the workspace.
  run(bundled().kx3, "kx3", {"A", "k", "A_x2"});
  return {ok, msg.str()};
}

// Criterion 2
Outcome auslander_bound() {
  const auto t0 = Clock::now();
  const Workspace& ws = bundled().kx2;
  EndoContext ctx = endomorphism_algebra(AddCategory({ws.module("A"), ws.module("k")}));
  BoundedDim g = gl_dim(ctx.b, 6);
  const double s = seconds_since(t0);
  return {g.value == 2u && s < kLimitAuslander, "gl.dim End(A+k)^op = " + dim_text(g)};
}

// Criterion 3
Outcome ext_periodicity() {
  const auto t0 = Clock::now();
  const Workspace& ws = bundled().kx2;
  auto dims = ext_dims(ws.module("k"), ws.module("k"), 20).dims;
  const double s = seconds_since(t0);
  std::size_t ones = 0;
  for (auto d : dims) ones += d == 1;
  return {dims == std::vector<std::size_t>(21, 1) && s < kLimitExt,
          std::to_string(ones) + "/21 degrees equal 1"};
}

Complex random_gf2_complex(const AlgebraPtr& a, fx::Rng& rng, std::size_t budget) {
  std::vector<Module> terms;
  std::size_t total = 0;
  const std::size_t n = 1 + rng() % 3;
  for (std::size_t i = 0; i < n && total < budget; ++i) {
    const std::size_t d = std::min<std::size_t>(1 + rng() % 3, budget - total);
    terms.push_back(fx::random_truncated_module(a, 2, d, rng));
    total += d;
  }
  return fx::random_complex(a, static_cast<int>(rng() % 3) - 1, terms, rng);
}

// Criterion 4
Outcome oracle_agreement() {
  const auto t0 = Clock::now();
  fx::Rng rng(4);
  AlgebraPtr a = bundled().kx2.algebra("kx2");
  int agree = 0, checks = 0, nonzero = 0;
  for (int t = 0; t < kOraclePairs; ++t) {
    const std::size_t budget = 2 + rng() % (kOracleTotalDim - 1);
    Complex x = random_gf2_complex(a, rng, budget - 1);
    Complex y = random_gf2_complex(a, rng, budget - x.total_dim());
    bool all = true;
    for (int n = y.lo() - x.hi(); n <= y.hi() - x.lo(); ++n) {
      ++checks;
      const std::size_t d = homotopy_hom_dim(x, y, n);
      nonzero += d != 0;
      if (d != oracle::homotopy_hom_dim(x, y, n)) all = false;
    }
    agree += all;
  }
  const double s = seconds_since(t0);
  return {agree == kOraclePairs && s < kLimitOracle,
          std::to_string(agree) + "/" + std::to_string(kOraclePairs) + " pairs, " + std::to_string(checks) +
              " degrees, " + std::to_string(nonzero) + " nonzero"};
}

int kind_of(const AlgebraPtr& a) { return a->quiver_vertices() == 2 ? 2 : (a->dim() == 2 ? 0 : 1); }

// Criterion 5
Outcome schanuel() {
  fx::Rng rng(5);
  std::vector<AlgebraPtr> algs = {bundled().kx2.algebra("kx2"), bundled().kx3.algebra("kx3"),
                                  bundled().a2.algebra("a2")};
  int agree = 0;
  for (int t = 0; t < kSchanuelModules; ++t) {
    const AlgebraPtr& a = algs[t % 3];
    Module x = fx::random_module(kind_of(a), a, 1 + rng() % kSchanuelMaxDim, rng);
    Module y = fx::random_module(kind_of(a), a, 1 + rng() % 4, rng);
    auto ext = ext_dims(x, y, 3).dims;
    auto pd = proj_dim(x, 6).value;
    bool same = true;
    for (CoverStrategy s : {CoverStrategy::Permuted, CoverStrategy::Doubled}) {
      CoverOptions o{s, rng()};
      same = same && ext_dims(x, y, 3, o).dims == ext && proj_dim(x, 6, o).value == pd;
    }
    agree += same;
  }
  return {agree == kSchanuelModules, std::to_string(agree) + "/" + std::to_string(kSchanuelModules) + " modules"};
}

// Criterion 6
Outcome fully_faithful() {
  const Workspace& ws = bundled().kx2;
  AlgebraPtr a = ws.algebra("kx2");
  Module reg = ws.module("A"), k = ws.module("k");
  std::vector<Module> ak = {reg, k}, kk = {k, k};
  EndoContext ctx = endomorphism_algebra(AddCategory(ak));
  std::vector<Module> xs = {reg, k, direct_sum(a, ak).sum, direct_sum(a, kk).sum};
  int equal = 0;
  for (const auto& x : xs)
    for (const auto& y : xs) equal += HomSpace(x, y).dim() == HomSpace(hom_functor(ctx, x), hom_functor(ctx, y)).dim();
  return {equal == 16, std::to_string(equal) + "/16 pairs"};
}

// Criterion 7: resolving instances only (add A, or add of every indecomposable
// for the representation-finite kx2 and a2).
Outcome bridger() {
  fx::Rng rng(7);
  const Bundled& b = bundled();
  struct Instance {
    AlgebraPtr a;
    AddCategory c;
    bool projective;
  };
  AlgebraPtr kx2 = b.kx2.algebra("kx2"), kx3 = b.kx3.algebra("kx3"), a2 = b.a2.algebra("a2");
  std::vector<Instance> inst = {
      {kx2, AddCategory({b.kx2.module("A")}), true},
      {kx3, AddCategory({b.kx3.module("A")}), true},
      {a2, AddCategory({b.a2.module("P1"), b.a2.module("P2")}), true},
      {kx2, AddCategory({b.kx2.module("A"), b.kx2.module("k")}), false},
      {a2, AddCategory({b.a2.module("P1"), b.a2.module("P2"), b.a2.module("S1")}), false},
  };
  int agree = 0, done = 0;
  for (int t = 0; t < kBridgerPairs; ++t) {
    const Instance& in = inst[t % inst.size()];
    Module x = fx::random_module(kind_of(in.a), in.a, 1 + rng() % 5, rng);
    const std::size_t n = 1 + rng() % 3;
    Resolution first = projective_resolution(x, n + 1, {CoverStrategy::Permuted, rng()});
    Resolution second = in.projective ? projective_resolution(x, n + 1, {CoverStrategy::Doubled, 0})
                                      : addM_resolution(x, in.c, n + 1);
    if (!check_exactness(first).empty() || !check_exactness(second).empty()) continue;
    auto rep = auslander_bridger_check(first, second, in.c, n);
    ++done;
    agree += rep.agree();
  }
  return {agree == kBridgerPairs, std::to_string(agree) + "/" + std::to_string(kBridgerPairs) + " pairs (" +
                                      std::to_string(done) + " with verified preconditions)"};
}

// Criterion 8
Outcome c_resolutions() {
  fx::Rng rng(8);
  const Workspace& ws = bundled().kx2;
  AlgebraPtr a = ws.algebra("kx2");
  AddCategory c({ws.module("A"), ws.module("k")});
  int good = 0;
  for (int t = 0; t < kCResolutionComplexes; ++t) {
    Complex x = random_gf2_complex(a, rng, 8);
    CResolution r = c_resolution(x, c, 3);
    bool in_add = true;
    for (int i = r.complex.lo(); i <= r.complex.hi(); ++i) in_add = in_add && add_membership(r.complex.term(i), c).member;
    good += in_add && is_c_acyclic(mapping_cone(r.map).cone, c, r.safe_lo);
  }
  return {good == kCResolutionComplexes,
          std::to_string(good) + "/" + std::to_string(kCResolutionComplexes) + " cones C-acyclic"};
}

// Criterion 9
Outcome perfect() {
  const Workspace& kx2 = bundled().kx2;
  auto pk = perfect_test(Complex::stalk(kx2.module("k"), 0), 10);
  const Workspace& ws = bundled().a2;
  AlgebraPtr a = ws.algebra("a2");
  std::vector<Module> ms = {ws.module("P1"), ws.module("P2"), ws.module("S1"), ws.module("S2"), ws.module("DA"),
                            ws.module("A")};
  fx::Rng rng(9);
  for (int t = 0; t < 20; ++t) ms.push_back(fx::random_a2_module(a, 1 + rng() % 5, rng));
  std::size_t ok = 0;
  for (const auto& m : ms) {
    auto r = perfect_test(Complex::stalk(m, 0), 10);
    ok += r.perfect && r.length && *r.length <= 1;
  }
  return {!pk.perfect && ok == ms.size(), std::string("k over kx2 ") + (pk.perfect ? "perfect" : "not perfect within 10") +
                                              "; " + std::to_string(ok) + "/" + std::to_string(ms.size()) +
                                              " a2 modules perfect with length <= 1"};
}

// Criterion 10
Outcome gorenstein() {
  struct Case {
    AlgebraPtr a;
    const char* name;
    std::size_t expect;
  };
  std::vector<Case> cases = {{bundled().kx2.algebra("kx2"), "kx2", 0},
                             {bundled().kx3.algebra("kx3"), "kx3", 0},
                             {bundled().a2.algebra("a2"), "a2", 1}};
  bool ok = true;
  std::string msg;
  for (const auto& c : cases) {
    auto r = is_gorenstein(c.a, 10);
    ok = ok && r.left_injdim.value == c.expect && r.right_injdim.value == c.expect;
    msg += std::string(c.name) + " " + dim_text(r.left_injdim) + "/" + dim_text(r.right_injdim) + "; ";
  }
  return {ok, msg};
}

// Exact complexes with terms in add(A + k) over the dual numbers.
Complex acyclic_add_complex(const Workspace& ws, fx::Rng& rng) {
  AlgebraPtr a = ws.algebra("kx2");
  Module reg = ws.module("A"), k = ws.module("k");
  const Matrix x = reg.action(1);
  const Matrix incl = Matrix::from_rows({{0}, {1}}, 2), proj = Matrix::from_rows({{1, 0}}, 2);
  const int lo = static_cast<int>(rng() % 5) - 2;
  switch (rng() % 3) {
    case 0: {
      // k -> A -> A -> ... -> A -> k
      const std::size_t mid = 1 + rng() % 3;
      std::vector<Module> terms = {k};
      std::vector<Matrix> diffs = {incl};
      for (std::size_t i = 0; i < mid; ++i) terms.push_back(reg);
      for (std::size_t i = 1; i < mid; ++i) diffs.push_back(x);
      terms.push_back(k);
      diffs.push_back(proj);
      return Complex(a, lo, terms, diffs);
    }
    case 1: {
      std::vector<Module> terms;
      const std::size_t n = 1 + rng() % 2;
      for (std::size_t i = 0; i < n; ++i) terms.push_back(rng() % 2 ? reg : k);
      Complex y = fx::random_complex(a, lo, terms, rng);
      return mapping_cone(ChainMap::identity(y)).cone;
    }
    default: {
      Complex s(a, lo, {k, reg, k}, {incl, proj});
      Complex t = mapping_cone(ChainMap::identity(Complex::stalk(rng() % 2 ? reg : k, lo + 1))).cone;
      return mapping_cone(ChainMap::zero(t, s)).cone;
    }
  }
}

// Criterion 11
Outcome vanishing() {
  fx::Rng rng(11);
  const Workspace& ws = bundled().kx2;
  AddCategory c({ws.module("A"), ws.module("k")});
  std::vector<Module> as = {ws.module("A"), ws.module("A")};
  Module a2 = direct_sum(ws.algebra("kx2"), as).sum;
  int good = 0;
  std::size_t checks = 0;
  for (int t = 0; t < kVanishingComplexes; ++t) {
    Complex g = acyclic_add_complex(ws, rng);
    bool in_add = is_acyclic(g);
    for (int i = g.lo(); i <= g.hi(); ++i) in_add = in_add && add_membership(g.term(i), c).member;
    Complex inj = Complex::stalk(rng() % 2 ? ws.module("A") : a2, static_cast<int>(rng() % 3) - 1);
    bool zero = true;
    for (int n = inj.lo() - g.hi(); n <= inj.hi() - g.lo(); ++n) {
      ++checks;
      zero = zero && homotopy_hom_dim(g, inj, n) == 0;
    }
    good += in_add && zero;
  }
  return {good == kVanishingComplexes, std::to_string(good) + "/" + std::to_string(kVanishingComplexes) +
                                           " complexes, " + std::to_string(checks) + " degrees"};
}

std::string cli_output(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"homres"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

// Criterion 12
Outcome determinism() {
  std::string first, second;
  for (int pass = 0; pass < 2; ++pass) {
    std::string& acc = pass == 0 ? first : second;
    for (const char* name : {"kx2.json", "kx3.json", "a2-hereditary.json"}) {
      const std::string w = (kData / name).string();
      acc += cli_output({"run", "-w", w});
      acc += cli_output({"suite", "-w", w});
    }
  }
  return {first == second, std::to_string(first.size()) + " bytes, " + (first == second ? "identical" : "different")};
}

}  // namespace

int main() {
  report(1, "gl.dim B <= 2 iff inj.dim T <= 2", theorem2_suite);
  report(2, "Auslander algebra gl.dim", auslander_bound);
  report(3, "Ext(k,k) periodicity", ext_periodicity);
  report(4, "homotopy Hom oracle", oracle_agreement);
  report(5, "Schanuel independence", schanuel);
  report(6, "Hom functor full and faithful", fully_faithful);
  report(7, "resolution kernel membership", bridger);
  report(8, "C-resolution cones", c_resolutions);
  report(9, "perfect test", perfect);
  report(10, "Gorenstein dimensions", gorenstein);
  report(11, "acyclic add M against injectives", vanishing);
  report(12, "determinism", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
