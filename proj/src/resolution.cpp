#include "homres/resolution.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "homres/error.hpp"

namespace homres {

namespace {

bool radical_known(const Algebra& a) { return a.supplied_radical() || a.modulus() > a.dim(); }

}  // namespace

Matrix module_generators(const Module& x, CoverOptions opt) {
  const std::size_t d = x.dim();
  const std::size_t n = x.algebra()->dim();
  const Prime p = x.modulus();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  if (opt.strategy == CoverStrategy::Permuted) {
    std::mt19937_64 rng(opt.seed);
    for (std::size_t i = d; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }
  EchelonSpan span(d, p);
  std::vector<std::size_t> chosen;
  std::vector<Elem> e(d, 0);
  const Algebra& alg = *x.algebra();
  // With a known radical, lift a basis of x / rad x; otherwise add whole
  // cyclic submodules greedily.
  const bool top = radical_known(alg);
  if (top) {
    const Matrix rad = radical_basis(alg);
    for (std::size_t r = 0; r < rad.rows(); ++r) {
      Matrix act = x.act(rad.row(r));
      for (std::size_t c = 0; c < d; ++c) span.add(act.column_vector(c));
    }
  }
  for (auto v : order) {
    if (span.dim() == d) break;
    std::fill(e.begin(), e.end(), 0);
    e[v] = 1;
    if (span.contains(e)) continue;
    chosen.push_back(v);
    if (top)
      span.add(e);
    else
      for (std::size_t j = 0; j < n; ++j) span.add(x.action(j).column_vector(v));
  }
  const std::size_t copies = opt.strategy == CoverStrategy::Doubled ? 2 : 1;
  Matrix gens(d, chosen.size() * copies, p);
  for (std::size_t c = 0; c < chosen.size(); ++c)
    for (std::size_t k = 0; k < copies; ++k) gens(chosen[c], c * copies + k) = 1;
  return gens;
}

FreeCover evaluation_map(const Module& x, const Matrix& gens) {
  const AlgebraPtr& a = x.algebra();
  const std::size_t n = a->dim(), g = gens.cols();
  Module free = Module::free(a, g);
  Matrix ev(x.dim(), n * g, x.modulus());
  for (std::size_t l = 0; l < g; ++l) {
    auto v = gens.column_vector(l);
    for (std::size_t j = 0; j < n; ++j) {
      auto w = x.action(j).apply(v);
      for (std::size_t r = 0; r < x.dim(); ++r) ev(r, l * n + j) = w[r];
    }
  }
  return {free, g, ModuleMap::trusted(free, x, std::move(ev))};
}

FreeCover free_cover(const Module& x, CoverOptions opt) {
  return evaluation_map(x, module_generators(x, opt));
}

bool is_projective(const Module& x) {
  if (x.dim() == 0) return true;
  FreeCover cover = free_cover(x);
  Kernel k = map_kernel(cover.map);
  const std::size_t dk = k.module.dim();
  if (dk == 0) return true;
  const Prime p = x.modulus();
  if (radical_known(*x.algebra())) {
    // Ext^1(x, S) = 0 for every simple S: each map K -> S extends to A^g.
    for (const auto& s : simple_modules(x.algebra())) {
      HomSpace hk(k.module, s);
      if (hk.dim() == 0) continue;
      HomSpace hf = HomSpace::from_free(cover.free, cover.rank, s);
      EchelonSpan restricted(hk.dim(), p);
      for (const auto& b : hf.basis()) {
        restricted.add(hk.coordinates(b * k.inclusion.matrix()));
        if (restricted.dim() == hk.dim()) break;
      }
      if (restricted.dim() < hk.dim()) return false;
    }
    return true;
  }
  const AlgebraPtr& a = x.algebra();
  const std::size_t n = a->dim(), g = cover.rank;
  // Unknowns: r(1_m) in K for each m.  Equations: r(iota(kappa_t)) = kappa_t.
  Matrix sys(dk * dk, g * dk, p);
  Matrix rhs(dk * dk, 1, p);
  const Matrix& incl = k.inclusion.matrix();
  std::vector<Elem> alpha(n);
  for (std::size_t t = 0; t < dk; ++t) {
    rhs(t * dk + t, 0) = 1;
    for (std::size_t m = 0; m < g; ++m) {
      for (std::size_t j = 0; j < n; ++j) alpha[j] = incl(m * n + j, t);
      if (std::all_of(alpha.begin(), alpha.end(), [](Elem v) { return v == 0; })) continue;
      Matrix rho = k.module.act(alpha);
      for (std::size_t s = 0; s < dk; ++s)
        for (std::size_t u = 0; u < dk; ++u) sys(t * dk + s, m * dk + u) = rho(s, u);
    }
  }
  return solve_linear(sys, rhs).has_value();
}

Resolution projective_resolution(const Module& x, std::size_t length, CoverOptions opt) {
  Resolution r;
  r.target = x;
  r.kind = ResolutionKind::Projective;
  Module syz = x;
  std::optional<ModuleMap> incl;  // syz -> previous term
  for (std::size_t deg = 0; deg <= length; ++deg) {
    if (is_projective(syz)) {
      r.terms.push_back(syz);
      r.maps.push_back(incl ? *incl : ModuleMap::identity(x));
      r.free_ranks.push_back(std::nullopt);
      r.status = ResolutionStatus::Complete;
      return r;
    }
    FreeCover cover = free_cover(syz, opt);
    r.terms.push_back(cover.free);
    r.maps.push_back(incl ? compose(*incl, cover.map) : cover.map);
    r.free_ranks.push_back(cover.rank);
    Kernel k = map_kernel(cover.map);
    if (k.module.dim() == 0) {
      r.status = ResolutionStatus::Complete;
      return r;
    }
    syz = k.module;
    incl = k.inclusion;
  }
  r.status = ResolutionStatus::Truncated;
  return r;
}

std::string check_exactness(const Resolution& r) {
  if (r.terms.size() != r.maps.size()) return "term and map counts differ";
  for (std::size_t i = 0; i < r.maps.size(); ++i) {
    const Module& tgt = i == 0 ? r.target : r.terms[i - 1];
    const ModuleMap& f = r.maps[i];
    if (!(f.source() == r.terms[i]) || f.target().dim() != tgt.dim())
      return "map " + std::to_string(i) + " has the wrong endpoints";
    if (!is_intertwiner(r.terms[i], tgt, f.matrix()))
      return "map " + std::to_string(i) + " is not a module map";
  }
  if (r.maps.empty()) return r.target.dim() == 0 ? "" : "empty resolution of a nonzero module";
  if (rank(r.maps[0].matrix()) != r.target.dim()) return "augmentation is not surjective";
  for (std::size_t i = 1; i < r.maps.size(); ++i) {
    const Matrix& prev = r.maps[i - 1].matrix();
    const Matrix& cur = r.maps[i].matrix();
    if (!(prev * cur).is_zero()) return "composite of maps " + std::to_string(i) + " is nonzero";
    if (rank(cur) != prev.cols() - rank(prev))
      return "not exact at degree " + std::to_string(i - 1);
  }
  if (r.status == ResolutionStatus::Complete && rank(r.maps.back().matrix()) != r.terms.back().dim())
    return "complete resolution does not end injectively";
  return "";
}

namespace {

HomSpace hom_from_term(const Resolution& r, std::size_t i, const Module& y) {
  if (r.free_ranks.size() > i && r.free_ranks[i]) return HomSpace::from_free(r.terms[i], *r.free_ranks[i], y);
  return HomSpace(r.terms[i], y);
}

}  // namespace

std::vector<std::size_t> ext_from_resolution(const Resolution& r, const Module& y,
                                             std::size_t max_i) {
  require_same_algebra(r.target, y);
  const std::size_t nterms = r.terms.size();
  const bool complete = r.status == ResolutionStatus::Complete;
  if (!complete && nterms < max_i + 2)
    fail(ErrorKind::InternalError, "resolution too short for the requested Ext degrees");
  std::vector<HomSpace> spaces;
  for (std::size_t i = 0; i < std::min(nterms, max_i + 2); ++i)
    spaces.push_back(hom_from_term(r, i, y));
  // ranks[i] = rank of Hom(P_i, y) -> Hom(P_{i+1}, y)
  std::vector<std::size_t> ranks(spaces.size(), 0);
  for (std::size_t i = 0; i + 1 < spaces.size(); ++i) {
    const Matrix& d = r.maps[i + 1].matrix();
    Matrix delta(spaces[i + 1].dim(), spaces[i].dim(), y.modulus());
    for (std::size_t l = 0; l < spaces[i].dim(); ++l) {
      auto c = spaces[i + 1].coordinates(spaces[i].basis()[l] * d);
      for (std::size_t k = 0; k < c.size(); ++k) delta(k, l) = c[k];
    }
    ranks[i] = rank(delta);
  }
  std::vector<std::size_t> dims(max_i + 1, 0);
  for (std::size_t i = 0; i <= max_i && i < spaces.size(); ++i) {
    std::size_t v = spaces[i].dim() - ranks[i];
    if (i > 0) v -= ranks[i - 1];
    dims[i] = v;
  }
  return dims;
}

ExtTable ext_dims(const Module& x, const Module& y, std::size_t max_i, CoverOptions opt) {
  require_same_algebra(x, y);
  Resolution r = projective_resolution(x, max_i + 1, opt);
  return {x, y, ext_from_resolution(r, y, max_i), max_i};
}

BoundedDim proj_dim(const Module& x, std::size_t bound, CoverOptions opt) {
  Module syz = x;
  for (std::size_t k = 0; k <= bound; ++k) {
    if (is_projective(syz)) return {k, bound};
    syz = map_kernel(free_cover(syz, opt).map).module;
  }
  return {std::nullopt, bound};
}

BoundedDim inj_dim(const Module& t, std::size_t bound) {
  if (t.dim() == 0) return {0, bound};
  return proj_dim(dual_module(t, opposite(t.algebra())), bound);
}

BoundedDim gl_dim(const AlgebraPtr& a, std::size_t bound) {
  std::size_t best = 0;
  for (const auto& s : simple_modules(a)) {
    BoundedDim d = proj_dim(s, bound);
    if (!d.finite()) return {std::nullopt, bound};
    best = std::max(best, *d.value);
  }
  return {best, bound};
}

}  // namespace homres
