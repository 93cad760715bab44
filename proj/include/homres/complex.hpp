#ifndef HOMRES_COMPLEX_HPP
#define HOMRES_COMPLEX_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homres/approx.hpp"
#include "homres/module.hpp"

namespace homres {

/// Bounded cochain complex: terms[k] sits in degree lo + k and
/// d^i : X^i -> X^{i+1}.  Degrees outside the window hold the zero module.
class Complex {
 public:
  Complex() = default;
  /// Validates shapes, intertwiner laws and d^{i+1} d^i = 0.
  Complex(AlgebraPtr a, int lo, std::vector<Module> terms, std::vector<Matrix> diffs);
  static Complex trusted(AlgebraPtr a, int lo, std::vector<Module> terms, std::vector<Matrix> diffs);
  static Complex zero(const AlgebraPtr& a);
  static Complex stalk(const Module& m, int degree);

  const AlgebraPtr& algebra() const { return a_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  std::size_t size() const { return terms_.size(); }
  const Module& term(int i) const;
  /// d^i; a correctly shaped zero matrix outside the window.
  Matrix diff(int i) const;
  ModuleMap diff_map(int i) const { return ModuleMap::trusted(term(i), term(i + 1), diff(i)); }
  std::size_t total_dim() const;
  /// Lowest and highest degrees with nonzero terms.
  std::optional<std::pair<int, int>> support() const;

  /// X[n]^i = X^{i+n}, d = (-1)^n d_X.
  Complex shift(int n) const;
  /// Brutal truncation keeping degrees >= a.
  Complex brutal_above(int a) const;

 private:
  AlgebraPtr a_;
  int lo_ = 0;
  std::vector<Module> terms_;
  std::vector<Matrix> diffs_;
  Module zero_;
};

class ChainMap {
 public:
  ChainMap() = default;
  /// Validates intertwiner laws and commutation; absent degrees are zero.
  ChainMap(Complex source, Complex target, std::map<int, Matrix> components);
  static ChainMap trusted(Complex source, Complex target, std::map<int, Matrix> components);
  static ChainMap identity(const Complex& x);
  static ChainMap zero(const Complex& x, const Complex& y);

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  Matrix component(int i) const;
  const std::map<int, Matrix>& components() const { return components_; }

 private:
  Complex source_, target_;
  std::map<int, Matrix> components_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);

/// s^i : X^i -> Y^{i-1} with f - g = d_Y s + s d_X.
struct Homotopy {
  ChainMap f, g;
  std::map<int, Matrix> components;
  Matrix component(int i) const;
};
bool is_homotopy(const Homotopy& h);

/// Cone^i = X^{i+1} + Y^i with d = [[-d_X, 0], [f, d_Y]].
struct Cone {
  Complex cone;
  ChainMap inclusion;   // Y -> Cone
  ChainMap projection;  // Cone -> X[1]
};
Cone mapping_cone(const ChainMap& f);

std::map<int, std::size_t> homology_dims(const Complex& x);
bool is_acyclic(const Complex& x);

/// Homology of Hom(M_j, x) per summand, keyed by degree.
std::map<int, std::vector<std::size_t>> c_homology(const Complex& x, const AddCategory& c);
/// Hom(M_j, x) acyclic for every summand, at degrees >= from when given.
bool is_c_acyclic(const Complex& x, const AddCategory& c, std::optional<int> from = std::nullopt);

/// dim H^n Hom(x, y) = dim Hom_K(x, y[n]).
std::size_t homotopy_hom_dim(const Complex& x, const Complex& y, int n);

struct CResolution {
  Complex complex;
  ChainMap map;  // complex -> x
  /// The cone of `map` is C-acyclic in degrees >= safe_lo.
  int safe_lo = 0;
};
/// Terms in add M, resolved down to degree lo(x) - depth.
CResolution c_resolution(const Complex& x, const AddCategory& c, std::size_t depth);

struct PerfectResult {
  bool perfect = false;
  std::size_t bound = 0;
  /// n with Im d^n_Q projective, so x is quasi-isomorphic to the brutal
  /// truncation of Q above n with Im d^n in degree n.
  std::optional<int> degree;
  /// Width of that bounded projective complex (proj.dim for stalks).
  std::optional<std::size_t> length;
};
PerfectResult perfect_test(const Complex& x, std::size_t bound);

struct Retraction {
  ChainMap s;
  Homotopy h;  // between s o t and the identity
};
/// For a quasi-isomorphism t : I -> C whose terms satisfy Ext^1(M_j, I^i) = 0,
/// solves s o t - id = d h + h d.  Throws HypothesesNotSatisfied when the
/// preconditions fail; nullopt when no solution exists.
std::optional<Retraction> homotopy_retraction(const ChainMap& t, const AddCategory& injectives_ok);

struct SplitDegree {
  int degree = 0;
  std::size_t image_dim = 0;
  bool image_in_add = false;
  bool splits = false;
};
struct TruncationSplitReport {
  bool hypotheses_satisfied = false;
  std::string failure;
  std::vector<SplitDegree> degrees;
  bool all_split() const;
};
TruncationSplitReport acyclic_truncation_split(const Complex& x, const AddCategory& c);

}  // namespace homres

#endif  // HOMRES_COMPLEX_HPP
