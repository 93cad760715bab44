#include "homres/endo.hpp"

#include <algorithm>

#include "homres/error.hpp"

namespace homres {

namespace {

AlgebraData endo_table(const EndoContext& ctx) {
  const HomSpace& end = *ctx.end_space;
  const std::size_t k = end.dim();
  const Prime p = ctx.m.modulus();
  AlgebraData raw;
  raw.p = p;
  raw.dim = k;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto c = end.coordinates(end.basis()[j] * end.basis()[i]);
      for (std::size_t l = 0; l < k; ++l)
        if (c[l]) raw.structure.push_back({i, j, l, static_cast<std::int64_t>(c[l])});
    }
  for (auto v : end.coordinates(Matrix::identity(ctx.m.dim(), p))) raw.unit.push_back(v);
  return raw;
}

EndoContext base_context(const Module& m) {
  if (m.dim() == 0) fail(ErrorKind::InvalidInput, "endomorphism algebra of the zero module");
  EndoContext ctx;
  ctx.m = m;
  ctx.end_space = std::make_shared<const HomSpace>(m, m);
  for (std::size_t i = 0; i < ctx.end_space->dim(); ++i)
    ctx.basis_maps.push_back(ctx.end_space->map(i));
  return ctx;
}

}  // namespace

EndoContext endomorphism_algebra(const Module& m) {
  EndoContext ctx = base_context(m);
  ctx.b = validate_algebra(endo_table(ctx));
  return ctx;
}

EndoContext endomorphism_algebra(const AddCategory& c) {
  const auto& summands = c.summands();
  for (std::size_t i = 0; i < summands.size(); ++i)
    for (std::size_t j = i + 1; j < summands.size(); ++j)
      if (is_isomorphic(summands[i], summands[j]) == Decision::Yes)
        fail(ErrorKind::HypothesesNotSatisfied,
             "summands " + std::to_string(i) + " and " + std::to_string(j) + " are isomorphic");
  EndoContext ctx = base_context(c.sum().sum);
  ctx.summands = summands;
  const Prime p = ctx.m.modulus();
  const std::size_t k = ctx.end_space->dim();
  const std::size_t s = summands.size();

  // Residue characters: f_jj^q = lambda * I for q = p^m >= dim M_j.
  Matrix chars(s, k, p);
  for (std::size_t j = 0; j < s; ++j) {
    const Matrix& inj = c.sum().injections[j].matrix();
    const Matrix& proj = c.sum().projections[j].matrix();
    const std::size_t d = summands[j].dim();
    std::uint64_t q = 1;
    while (q < d) q *= p;
    for (std::size_t i = 0; i < k; ++i) {
      Matrix g = power(proj * ctx.end_space->basis()[i] * inj, q);
      const Elem lambda = g(0, 0);
      if (!(g == Matrix::identity(d, p).scaled(lambda)))
        fail(ErrorKind::HypothesesNotSatisfied,
             "End of summand " + std::to_string(j) + " is not local with residue field GF(p)");
      chars(j, i) = lambda;
    }
  }
  AlgebraData raw = endo_table(ctx);
  AlgebraPtr plain = validate_algebra(raw);
  Matrix rad = row_space(kernel_basis(chars));
  if (rank(chars) != s || !is_two_sided_ideal(*plain, rad) || !is_nilpotent_ideal(*plain, rad))
    fail(ErrorKind::HypothesesNotSatisfied,
         "summand decomposition does not give the radical of End(M)");
  std::vector<std::vector<Matrix>> simples;
  const GF f{p};
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        auto prod = plain->product(a, b);
        Elem v = 0;
        for (std::size_t l = 0; l < k; ++l) v = f.add(v, f.mul(prod[l], chars(j, l)));
        if (v != f.mul(chars(j, a), chars(j, b)))
          fail(ErrorKind::HypothesesNotSatisfied,
               "residue map of summand " + std::to_string(j) + " is not multiplicative");
      }
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < k; ++i) {
      Matrix one(1, 1, p);
      one(0, 0) = chars(j, i);
      act.push_back(std::move(one));
    }
    simples.push_back(std::move(act));
  }
  raw.radical = std::move(rad);
  raw.simples = std::move(simples);
  ctx.b = validate_algebra(std::move(raw));
  return ctx;
}

Module hom_functor(const EndoContext& ctx, const Module& x) {
  require_same_algebra(ctx.m, x);
  HomSpace h(ctx.m, x);
  const std::size_t d = h.dim();
  const Prime p = x.modulus();
  std::vector<Matrix> act;
  for (const auto& fi : ctx.end_space->basis()) {
    Matrix rho(d, d, p);
    for (std::size_t l = 0; l < d; ++l) {
      auto c = h.coordinates(h.basis()[l] * fi);
      for (std::size_t r = 0; r < d; ++r) rho(r, l) = c[r];
    }
    act.push_back(std::move(rho));
  }
  return Module::trusted(ctx.b, d, std::move(act));
}

ModuleMap hom_functor_map(const EndoContext& ctx, const ModuleMap& f) {
  require_same_algebra(ctx.m, f.source());
  HomSpace hx(ctx.m, f.source()), hy(ctx.m, f.target());
  Matrix m(hy.dim(), hx.dim(), f.source().modulus());
  for (std::size_t l = 0; l < hx.dim(); ++l) {
    auto c = hy.coordinates(f.matrix() * hx.basis()[l]);
    for (std::size_t r = 0; r < c.size(); ++r) m(r, l) = c[r];
  }
  return ModuleMap::trusted(hom_functor(ctx, f.source()), hom_functor(ctx, f.target()),
                            std::move(m));
}

Theorem2Report verify_theorem2(const AlgebraPtr& a, const Module& t, const AddCategory& c,
                               std::size_t r, std::span<const NamedModule> spot_checks,
                               std::optional<std::size_t> bound) {
  if (!same_algebra(a, t.algebra()) || !same_algebra(a, c.algebra()))
    fail(ErrorKind::InvalidInput, "T and M must be modules over the given algebra");
  Theorem2Report rep;
  rep.r = r;
  rep.biconditional = r >= 2;
  rep.dim_a = a->dim();
  EndoContext ctx = endomorphism_algebra(c);
  rep.dim_b = ctx.b->dim();
  rep.bound = bound ? *bound : std::max(2 * r, rep.dim_a + rep.dim_b);
  rep.generator = c.is_generator();
  rep.injdim_t = inj_dim(t, rep.bound);
  rep.gldim_b = gl_dim(ctx.b, rep.bound);

  rep.hypotheses_satisfied = true;
  auto reject = [&](const std::string& why) {
    if (rep.hypotheses_satisfied) rep.failure = why;
    rep.hypotheses_satisfied = false;
  };
  if (!rep.injdim_t.finite()) {
    reject("inj.dim T exceeds the bound " + std::to_string(rep.bound));
  } else {
    for (std::size_t j = 0; j < c.summands().size(); ++j) {
      bool in = perp_membership(c.summands()[j], t, rep.injdim_t.value);
      rep.summands_in_perp.push_back(in);
      if (!in) reject("summand " + std::to_string(j) + " of M is not in perp(T)");
    }
    for (const auto& sc : spot_checks) {
      SpotCheck out{sc.name, perp_membership(sc.module, t, rep.injdim_t.value),
                    add_membership(sc.module, c).member};
      if (out.in_perp && !out.in_add) reject("spot check " + sc.name + " is in perp(T) but not in add M");
      rep.spot_checks.push_back(std::move(out));
    }
  }
  if (!rep.generator) reject("M is not a generator, but perp(T) contains A");
  if (rep.hypotheses_satisfied) {
    const bool inj_ok = rep.injdim_t.at_most(r);
    const bool gl_ok = rep.gldim_b.at_most(r);
    rep.consistent = rep.biconditional ? inj_ok == gl_ok : (!gl_ok || inj_ok);
  }
  return rep;
}

}  // namespace homres
