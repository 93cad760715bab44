#ifndef HOMRES_ENDO_HPP
#define HOMRES_ENDO_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homres/approx.hpp"
#include "homres/module.hpp"
#include "homres/resolution.hpp"

namespace homres {

/// B = End_A(M)^op on the Hom basis f_0..f_{k-1} of End(M):
/// b_i * b_j = f_j o f_i.
struct EndoContext {
  Module m;
  AlgebraPtr b;
  std::vector<ModuleMap> basis_maps;
  std::shared_ptr<const HomSpace> end_space;
  /// Declared summands when built from an AddCategory.
  std::vector<Module> summands;
};

EndoContext endomorphism_algebra(const Module& m);

/// Same algebra, plus its radical and simples read off the summand
/// decomposition: each End(M_j) must be local with residue field GF(p) and
/// the summands pairwise non-isomorphic, else HypothesesNotSatisfied.
EndoContext endomorphism_algebra(const AddCategory& c);

/// Hom_A(M, x) as a B-module (B acts by precomposition).
Module hom_functor(const EndoContext& ctx, const Module& x);
/// Postcomposition with f, in the Hom bases used by hom_functor.
ModuleMap hom_functor_map(const EndoContext& ctx, const ModuleMap& f);

struct NamedModule {
  std::string name;
  Module module;
};

struct SpotCheck {
  std::string name;
  bool in_perp = false;
  bool in_add = false;
};

struct Theorem2Report {
  std::size_t r = 0;
  std::size_t bound = 0;
  std::size_t dim_a = 0, dim_b = 0;
  BoundedDim injdim_t, gldim_b;
  bool generator = false;
  std::vector<bool> summands_in_perp;
  std::vector<SpotCheck> spot_checks;
  bool hypotheses_satisfied = false;
  std::string failure;
  /// False for r <= 1, where only gl.dim B <= r  =>  inj.dim T <= r is claimed.
  bool biconditional = true;
  std::optional<bool> consistent;
  bool smooth() const { return gldim_b.finite(); }
};

/// Checks gl.dim B <= r  <=>  inj.dim T <= r for B = End(M)^op, after
/// verifying add M inside perp(T) exactly and the reverse inclusion on the
/// spot-check list.  Default bound: max(2r, dim A + dim B).
Theorem2Report verify_theorem2(const AlgebraPtr& a, const Module& t, const AddCategory& c,
                               std::size_t r, std::span<const NamedModule> spot_checks = {},
                               std::optional<std::size_t> bound = std::nullopt);

}  // namespace homres

#endif  // HOMRES_ENDO_HPP
