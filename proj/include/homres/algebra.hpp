#ifndef HOMRES_ALGEBRA_HPP
#define HOMRES_ALGEBRA_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homres/linalg.hpp"

namespace homres {

/// b_i * b_j contributes c * b_k.
struct StructureConstant {
  std::size_t i = 0, j = 0, k = 0;
  std::int64_t c = 0;
};

/// Raw, unvalidated description of a finite-dimensional algebra.
struct AlgebraData {
  Prime p = 2;
  std::size_t dim = 0;
  std::vector<StructureConstant> structure;
  std::vector<std::int64_t> unit;
  /// Rows spanning the Jacobson radical, when known.
  std::optional<Matrix> radical;
  /// Action matrices (one per basis element) of each simple module, when known.
  std::optional<std::vector<std::vector<Matrix>>> simples;
  std::vector<std::string> labels;
};

/// Path algebra of a quiver modulo monomial relations.  Paths are arrow
/// sequences written in traversal order; in a product q*q' the path q' is
/// traversed first, so the left projective at vertex v is A*e_v, spanned by
/// the paths starting at v.
struct QuiverPresentation {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (source, target)
  std::vector<std::vector<std::size_t>> relations;          // arrow indices
};

enum class RadicalSource { None, Supplied, Quiver };

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
 public:
  Prime modulus() const { return p_; }
  GF field() const { return GF{p_}; }
  std::size_t dim() const { return n_; }

  /// Coordinates of b_i * b_j.
  std::span<const Elem> product(std::size_t i, std::size_t j) const {
    return {table_.data() + (i * n_ + j) * n_, n_};
  }
  std::vector<Elem> multiply(std::span<const Elem> a, std::span<const Elem> b) const;
  const std::vector<Elem>& unit() const { return unit_; }
  std::vector<Elem> basis_vector(std::size_t i) const;

  /// Left regular action of b_i: column j holds b_i * b_j.
  const Matrix& left_regular(std::size_t i) const { return left_[i]; }

  /// Basis indices generating the algebra (together with the unit).
  const std::vector<std::size_t>& generators() const { return generators_; }

  RadicalSource radical_source() const { return radical_source_; }
  const std::optional<Matrix>& supplied_radical() const { return radical_; }
  const std::optional<std::vector<std::vector<Matrix>>>& supplied_simples() const {
    return simples_;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Number of quiver vertices; vertex v is basis element v.  Zero for
  /// algebras not built from a quiver.
  std::size_t quiver_vertices() const { return quiver_vertices_; }

  std::vector<StructureConstant> structure_constants() const;
  bool same_as(const Algebra& other) const;

 private:
  friend AlgebraPtr validate_algebra(AlgebraData raw);
  friend AlgebraPtr from_quiver(const QuiverPresentation& q, Prime p);
  friend AlgebraPtr opposite(const AlgebraPtr& a);
  friend Matrix radical_basis(const Algebra& a);
  friend std::vector<std::vector<Matrix>> simple_actions(const Algebra& a);

  Algebra() = default;
  static std::shared_ptr<Algebra> make(AlgebraData raw);
  void finish();

  Prime p_ = 2;
  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> unit_;
  std::vector<Matrix> left_;
  std::vector<std::size_t> generators_;
  RadicalSource radical_source_ = RadicalSource::None;
  std::optional<Matrix> radical_;
  std::optional<std::vector<std::vector<Matrix>>> simples_;
  std::vector<std::string> labels_;
  std::size_t quiver_vertices_ = 0;
  mutable std::optional<Matrix> radical_cache_;
  mutable std::optional<std::vector<std::vector<Matrix>>> simples_cache_;
};

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

/// Checks associativity and unit laws (and any supplied radical/simples);
/// throws InvalidInput naming the offending triple or index.
AlgebraPtr validate_algebra(AlgebraData raw);

/// Throws NotFiniteDimensional when the relations leave infinitely many
/// nonzero paths.
AlgebraPtr from_quiver(const QuiverPresentation& q, Prime p);

AlgebraPtr opposite(const AlgebraPtr& a);

/// Rows spanning rad A.  Uses the supplied radical, then the quiver arrow
/// ideal, then the kernel of the trace form (only valid when p > dim A).
/// Throws UnsupportedField otherwise.
Matrix radical_basis(const Algebra& a);

/// Action matrices of a complete irredundant list of simple modules.  Uses
/// the supplied list when present; otherwise splits A/rad A into blocks and
/// finds a minimal left ideal in each.
std::vector<std::vector<Matrix>> simple_actions(const Algebra& a);

/// Span of all products x*y with x in `left`, y in `right` (row bases).
Matrix ideal_product(const Algebra& a, const Matrix& left, const Matrix& right);
bool is_two_sided_ideal(const Algebra& a, const Matrix& rows);
bool is_nilpotent_ideal(const Algebra& a, const Matrix& rows);

}  // namespace homres

#endif  // HOMRES_ALGEBRA_HPP
