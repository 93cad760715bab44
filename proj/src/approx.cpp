#include "homres/approx.hpp"

#include <algorithm>

#include "homres/error.hpp"

namespace homres {

AddCategory::AddCategory(std::vector<Module> summands, bool require_generator)
    : summands_(std::move(summands)) {
  if (summands_.empty()) fail(ErrorKind::InvalidInput, "add M needs at least one summand");
  for (std::size_t j = 0; j < summands_.size(); ++j) {
    if (summands_[j].dim() == 0)
      fail(ErrorKind::InvalidInput, "summand " + std::to_string(j) + " is zero");
    require_same_algebra(summands_[j], summands_.front());
  }
  sum_ = direct_sum(algebra(), summands_);
  const Module reg = Module::regular(algebra());
  regular_ = summands_.size() == 1 && summands_.front() == reg;
  generator_ = regular_ || add_membership(reg, *this).member;
  if (require_generator && !generator_)
    fail(ErrorKind::HypothesesNotSatisfied, "the regular module is not in add M");
}

Approximation right_approximation(const Module& x, const AddCategory& c) {
  require_same_algebra(x, c.summands().front());
  Approximation ap;
  std::vector<Module> copies;
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < c.summands().size(); ++j) {
    HomSpace h(c.summands()[j], x);
    for (std::size_t l = 0; l < h.dim(); ++l) {
      copies.push_back(c.summands()[j]);
      ap.summand.push_back(j);
      ap.components.push_back(h.map(l));
      blocks.push_back(h.basis()[l]);
    }
  }
  ap.source = direct_sum(x.algebra(), copies);
  Matrix f(x.dim(), ap.source.sum.dim(), x.modulus());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    f.set_block(0, off, b);
    off += b.cols();
  }
  ap.map = ModuleMap::trusted(ap.source.sum, x, std::move(f));
  return ap;
}

bool is_right_approximation(const ModuleMap& f, const AddCategory& c) {
  for (const auto& mj : c.summands()) {
    HomSpace target(mj, f.target());
    HomSpace source(mj, f.source());
    Matrix img(target.dim(), source.dim(), f.target().modulus());
    for (std::size_t l = 0; l < source.dim(); ++l) {
      auto co = target.coordinates(f.matrix() * source.basis()[l]);
      for (std::size_t k = 0; k < co.size(); ++k) img(k, l) = co[k];
    }
    if (rank(img) != target.dim()) return false;
  }
  return true;
}

Membership add_membership(const Module& x, const AddCategory& c) {
  require_same_algebra(x, c.summands().front());
  Membership out;
  Approximation ap = right_approximation(x, c);
  const Prime p = x.modulus();
  const std::size_t dx = x.dim();
  if (dx == 0) {
    out.member = true;
    out.section = ModuleMap::zero(x, ap.source.sum);
    out.approximation = std::move(ap);
    return out;
  }
  std::vector<HomSpace> back;
  for (const auto& mj : c.summands()) back.emplace_back(x, mj);
  // Unknown coefficients: for each copy, a combination of Hom(x, M_j).
  std::vector<std::size_t> offset;
  std::size_t nvar = 0;
  for (auto j : ap.summand) {
    offset.push_back(nvar);
    nvar += back[j].dim();
  }
  // f s = id is an equation between module maps, so it suffices to check it
  // on module generators of x.
  std::vector<std::size_t> gens;
  const Matrix g = module_generators(x);
  for (std::size_t col = 0; col < g.cols(); ++col)
    for (std::size_t r = 0; r < dx; ++r)
      if (g(r, col)) gens.push_back(r);
  const std::size_t ng = gens.size();
  Matrix sys(ng * dx, nvar, p);
  for (std::size_t cp = 0; cp < ap.summand.size(); ++cp) {
    const HomSpace& h = back[ap.summand[cp]];
    const Matrix& comp = ap.components[cp].matrix();
    for (std::size_t l = 0; l < h.dim(); ++l) {
      Matrix cols = comp * h.basis()[l].select_cols(gens);
      for (std::size_t gi = 0; gi < ng; ++gi)
        for (std::size_t r = 0; r < dx; ++r) sys(gi * dx + r, offset[cp] + l) = cols(r, gi);
    }
  }
  Matrix rhs(ng * dx, 1, p);
  for (std::size_t gi = 0; gi < ng; ++gi) rhs(gi * dx + gens[gi], 0) = 1;
  auto sol = solve_linear(sys, rhs);
  if (sol) {
    Matrix s(ap.source.sum.dim(), dx, p);
    std::size_t row = 0;
    for (std::size_t cp = 0; cp < ap.summand.size(); ++cp) {
      const HomSpace& h = back[ap.summand[cp]];
      std::vector<Elem> coef(h.dim());
      for (std::size_t l = 0; l < h.dim(); ++l) coef[l] = (*sol)(offset[cp] + l, 0);
      Matrix block = h.combine(coef);
      s.set_block(row, 0, block);
      row += block.rows();
    }
    out.member = true;
    out.section = ModuleMap::trusted(x, ap.source.sum, std::move(s));
  }
  out.approximation = std::move(ap);
  return out;
}

Resolution addM_resolution(const Module& x, const AddCategory& c, std::size_t length) {
  Resolution r;
  r.target = x;
  r.kind = ResolutionKind::AddM;
  Module syz = x;
  std::optional<ModuleMap> incl;
  for (std::size_t deg = 0; deg <= length; ++deg) {
    Membership mem = add_membership(syz, c);
    if (mem.member) {
      r.terms.push_back(syz);
      r.maps.push_back(incl ? *incl : ModuleMap::identity(x));
      r.free_ranks.push_back(std::nullopt);
      r.status = ResolutionStatus::Complete;
      return r;
    }
    const Approximation& ap = *mem.approximation;
    if (rank(ap.map.matrix()) != syz.dim())
      fail(ErrorKind::NotAGenerator,
           "right add M-approximation is not surjective at degree " + std::to_string(deg));
    r.terms.push_back(ap.source.sum);
    r.maps.push_back(incl ? compose(*incl, ap.map) : ap.map);
    r.free_ranks.push_back(std::nullopt);
    Kernel k = map_kernel(ap.map);
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

bool perp_membership(const Module& x, const Module& t, std::optional<std::size_t> t_injdim) {
  if (!t_injdim)
    fail(ErrorKind::NeedsFiniteInjdim, "perp membership needs a finite injective dimension for T");
  require_same_algebra(x, t);
  if (*t_injdim == 0) return true;
  auto dims = ext_dims(x, t, *t_injdim).dims;
  return std::all_of(dims.begin() + 1, dims.end(), [](std::size_t d) { return d == 0; });
}

Module resolution_kernel(const Resolution& r, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidInput, "kernel index starts at 1");
  if (n - 1 < r.maps.size()) return map_kernel(r.maps[n - 1]).module;
  if (r.status == ResolutionStatus::Complete) return Module::zero(r.target.algebra());
  fail(ErrorKind::InvalidInput, "resolution is too short for kernel " + std::to_string(n));
}

AuslanderBridgerReport auslander_bridger_check(const Resolution& first, const Resolution& second,
                                               const AddCategory& c, std::size_t n) {
  if (!(first.target == second.target))
    fail(ErrorKind::InvalidInput, "resolutions have different targets");
  if (n == 0) fail(ErrorKind::InvalidInput, "n must be at least 1");
  if (!c.is_generator())
    fail(ErrorKind::HypothesesNotSatisfied, "add M does not contain the projectives");
  auto check_terms = [&](const Resolution& r, const char* which) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= r.terms.size()) {
        if (r.status == ResolutionStatus::Complete) break;
        fail(ErrorKind::InvalidInput, std::string(which) + " resolution is too short");
      }
      if (!add_membership(r.terms[i], c).member)
        fail(ErrorKind::HypothesesNotSatisfied,
             std::string(which) + " resolution has term " + std::to_string(i) + " outside add M");
    }
  };
  check_terms(first, "first");
  check_terms(second, "second");
  AuslanderBridgerReport rep;
  rep.n = n;
  rep.first_kernel = resolution_kernel(first, n);
  rep.second_kernel = resolution_kernel(second, n);
  rep.first_member = add_membership(rep.first_kernel, c).member;
  rep.second_member = add_membership(rep.second_kernel, c).member;
  return rep;
}

}  // namespace homres
