#include "homres/gorenstein.hpp"

#include "homres/approx.hpp"
#include "homres/error.hpp"

namespace homres {

GorensteinReport is_gorenstein(const AlgebraPtr& a, std::size_t bound) {
  GorensteinReport rep;
  rep.left_injdim = inj_dim(Module::regular(a), bound);
  rep.right_injdim = inj_dim(Module::regular(opposite(a)), bound);
  if (rep.gorenstein() && *rep.left_injdim.value != *rep.right_injdim.value)
    fail(ErrorKind::InternalError, "left and right self-injective dimensions differ: " +
                                       std::to_string(*rep.left_injdim.value) + " vs " +
                                       std::to_string(*rep.right_injdim.value));
  return rep;
}

bool gp_membership(const Module& x, std::size_t bound) {
  const AlgebraPtr& a = x.algebra();
  GorensteinReport g = is_gorenstein(a, bound);
  if (!g.gorenstein())
    fail(ErrorKind::Unsupported, "Gorenstein-projective test needs a Gorenstein algebra; inj.dim A exceeds " +
                                     std::to_string(bound) + " on some side");
  return perp_membership(x, Module::regular(a), g.dimension());
}

RelativeAuslanderReport relative_auslander(const AlgebraPtr& a, const std::vector<Module>& gp_list,
                                           std::size_t bound) {
  if (gp_list.empty()) fail(ErrorKind::InvalidInput, "empty Gorenstein-projective list");
  for (const auto& x : gp_list)
    if (!same_algebra(a, x.algebra())) fail(ErrorKind::InvalidInput, "list entry over a different algebra");
  GorensteinReport g = is_gorenstein(a, bound);
  if (!g.gorenstein())
    fail(ErrorKind::HypothesesNotSatisfied, "algebra is not Gorenstein within bound " + std::to_string(bound));
  RelativeAuslanderReport rep;
  rep.gorenstein_dim = *g.dimension();
  const Module reg = Module::regular(a);
  for (std::size_t j = 0; j < gp_list.size(); ++j)
    if (!perp_membership(gp_list[j], reg, rep.gorenstein_dim))
      fail(ErrorKind::HypothesesNotSatisfied, "entry " + std::to_string(j) + " is not Gorenstein-projective");
  for (std::size_t i = 0; i < gp_list.size(); ++i)
    for (std::size_t j = i + 1; j < gp_list.size(); ++j) {
      Decision d = is_isomorphic(gp_list[i], gp_list[j]);
      if (d == Decision::Yes)
        fail(ErrorKind::HypothesesNotSatisfied,
             "entries " + std::to_string(i) + " and " + std::to_string(j) + " are isomorphic");
      if (d == Decision::Undecided) rep.undecided_pairs.emplace_back(i, j);
    }
  AddCategory c(gp_list);
  if (!c.is_generator())
    fail(ErrorKind::HypothesesNotSatisfied, "the projectives are not in add of the list");
  rep.ctx = endomorphism_algebra(c);
  rep.gldim_b = gl_dim(rep.ctx.b, bound);
  rep.projectives_relatively_injective = true;
  for (const auto& p : gp_list) {
    if (!is_projective(p)) continue;
    for (const auto& x : gp_list)
      if (ext_dims(x, p, 1).dims[1] != 0) rep.projectives_relatively_injective = false;
  }
  return rep;
}

Module dual_right_regular(const AlgebraPtr& a) {
  return dual_module(Module::regular(opposite(a)), a);
}

CotiltingReport cotilting_check(const Module& t, std::size_t bound) {
  if (t.dim() == 0) fail(ErrorKind::InvalidInput, "cotilting check of the zero module");
  CotiltingReport rep;
  rep.injdim = inj_dim(t, bound);
  rep.injdim_ok = rep.injdim.at_most(1);
  rep.ext1 = ext_dims(t, t, 1).dims[1];
  const Module d = dual_right_regular(t.algebra());
  AddCategory c({t});
  if (add_membership(d, c).member) {
    rep.t1_dim = d.dim();
    rep.approximation_surjective = rep.kernel_in_add = true;
    return rep;
  }
  Approximation ap = right_approximation(d, c);
  rep.t1_dim = ap.source.sum.dim();
  rep.approximation_surjective = rank(ap.map.matrix()) == d.dim();
  if (rep.approximation_surjective) {
    Kernel k = map_kernel(ap.map);
    rep.t0_dim = k.module.dim();
    rep.kernel_in_add = add_membership(k.module, c).member;
  }
  return rep;
}

}  // namespace homres
