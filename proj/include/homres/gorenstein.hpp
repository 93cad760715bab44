#ifndef HOMRES_GORENSTEIN_HPP
#define HOMRES_GORENSTEIN_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homres/endo.hpp"
#include "homres/resolution.hpp"

namespace homres {

struct GorensteinReport {
  BoundedDim left_injdim;   // inj.dim _AA
  BoundedDim right_injdim;  // inj.dim A_A, computed over the opposite algebra
  bool gorenstein() const { return left_injdim.finite() && right_injdim.finite(); }
  std::optional<std::size_t> dimension() const {
    return gorenstein() ? left_injdim.value : std::nullopt;
  }
};

/// Throws InternalError if both sides are finite but differ.
GorensteinReport is_gorenstein(const AlgebraPtr& a, std::size_t bound);

/// x in perp(_AA), valid over Gorenstein algebras.  Throws Unsupported when
/// the algebra is not Gorenstein within the bound.
bool gp_membership(const Module& x, std::size_t bound);

struct RelativeAuslanderReport {
  EndoContext ctx;
  std::size_t gorenstein_dim = 0;
  BoundedDim gldim_b;
  /// Pairs whose isomorphism test was inconclusive.
  std::vector<std::pair<std::size_t, std::size_t>> undecided_pairs;
  /// Ext^1(X, P) = 0 for every entry X and projective entry P.
  bool projectives_relatively_injective = false;
  bool smooth() const { return gldim_b.finite(); }
};

/// B = End(M)^op for M the sum of a claimed complete list of indecomposable
/// Gorenstein-projectives.  Throws HypothesesNotSatisfied when an entry is
/// not GP, two entries are isomorphic, or _AA is not in add M.
RelativeAuslanderReport relative_auslander(const AlgebraPtr& a, const std::vector<Module>& gp_list,
                                           std::size_t bound);

struct CotiltingReport {
  BoundedDim injdim;
  bool injdim_ok = false;  // inj.dim T <= 1
  std::size_t ext1 = 0;    // dim Ext^1(T, T)
  bool approximation_surjective = false;
  bool kernel_in_add = false;  // 0 -> T_0 -> T_1 -> D(A_A) -> 0 with T_0 in add T
  std::size_t t1_dim = 0, t0_dim = 0;
  bool sequence_ok() const { return approximation_surjective && kernel_in_add; }
  bool cotilting() const { return injdim_ok && ext1 == 0 && sequence_ok(); }
};

/// D(A_A) as a left A-module.
Module dual_right_regular(const AlgebraPtr& a);

CotiltingReport cotilting_check(const Module& t, std::size_t bound);

}  // namespace homres

#endif  // HOMRES_GORENSTEIN_HPP
