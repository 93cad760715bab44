#ifndef HOMRES_APPROX_HPP
#define HOMRES_APPROX_HPP

#include <optional>
#include <string>
#include <vector>

#include "homres/module.hpp"
#include "homres/resolution.hpp"

namespace homres {

/// add M for M the direct sum of the declared summands.
class AddCategory {
 public:
  /// Summands must be nonzero and share an algebra.  With
  /// `require_generator`, throws HypothesesNotSatisfied unless _AA is in add M.
  explicit AddCategory(std::vector<Module> summands, bool require_generator = false);

  const std::vector<Module>& summands() const { return summands_; }
  const AlgebraPtr& algebra() const { return summands_.front().algebra(); }
  /// _AA lies in add M.
  bool is_generator() const { return generator_; }
  /// The only summand is the regular module.
  bool is_regular() const { return regular_; }
  const DirectSum& sum() const { return sum_; }

 private:
  std::vector<Module> summands_;
  DirectSum sum_;
  bool generator_ = false;
  bool regular_ = false;
};

struct Approximation {
  ModuleMap map;                      // M_0 -> x
  std::vector<std::size_t> summand;   // summand index of each copy in M_0
  std::vector<ModuleMap> components;  // the Hom basis element for each copy
  DirectSum source;                   // M_0 with its injections
};

/// M_0 = sum_j M_j^{dim Hom(M_j, x)} evaluated on Hom bases.
Approximation right_approximation(const Module& x, const AddCategory& c);
/// Checks that Hom(M_j, f) is onto Hom(M_j, x) for every summand.
bool is_right_approximation(const ModuleMap& f, const AddCategory& c);

struct Membership {
  bool member = false;
  std::optional<ModuleMap> section;  // x -> M_0 with f * s = id
  std::optional<Approximation> approximation;
};
Membership add_membership(const Module& x, const AddCategory& c);

Resolution addM_resolution(const Module& x, const AddCategory& c, std::size_t length);

/// Ext^i(x, t) = 0 for 1 <= i <= t_injdim.  Throws NeedsFiniteInjdim when
/// the witness is missing.
bool perp_membership(const Module& x, const Module& t, std::optional<std::size_t> t_injdim);

struct AuslanderBridgerReport {
  std::size_t n = 0;
  Module first_kernel, second_kernel;
  bool first_member = false;
  bool second_member = false;
  bool agree() const { return first_member == second_member; }
};

/// Compares add M membership of the n-th kernels of two resolutions of the
/// same module.  Preconditions (generator, terms 0..n-1 in add M) are
/// checked and reported as HypothesesNotSatisfied.
AuslanderBridgerReport auslander_bridger_check(const Resolution& first, const Resolution& second,
                                               const AddCategory& c, std::size_t n);
/// The n-th kernel X_n: ker(X_{n-1} -> X_{n-2}), or of the augmentation for n = 1.
Module resolution_kernel(const Resolution& r, std::size_t n);

}  // namespace homres

#endif  // HOMRES_APPROX_HPP
