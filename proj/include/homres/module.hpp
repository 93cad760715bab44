#ifndef HOMRES_MODULE_HPP
#define HOMRES_MODULE_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "homres/algebra.hpp"
#include "homres/linalg.hpp"

namespace homres {

/// Finite-dimensional left module: one action matrix per basis element of the
/// algebra, acting on column vectors.  Cheap to copy (shared immutable data).
class Module {
 public:
  Module() = default;
  /// Validates shapes, rho(1) = I and the module law on algebra generators.
  Module(AlgebraPtr algebra, std::vector<Matrix> action);

  static Module zero(const AlgebraPtr& a);
  static Module regular(const AlgebraPtr& a);
  static Module free(const AlgebraPtr& a, std::size_t rank);
  /// Skips validation; for constructions that preserve the module law.
  static Module trusted(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action);

  const AlgebraPtr& algebra() const { return d_->algebra; }
  std::size_t dim() const { return d_->dim; }
  Prime modulus() const { return d_->algebra->modulus(); }
  const Matrix& action(std::size_t i) const { return d_->action[i]; }
  const std::vector<Matrix>& actions() const { return d_->action; }
  /// Action of an arbitrary algebra element.
  Matrix act(std::span<const Elem> a) const;
  bool valid() const { return static_cast<bool>(d_); }

  /// Same algebra and identical action matrices.
  bool operator==(const Module& other) const;

 private:
  struct Data {
    AlgebraPtr algebra;
    std::size_t dim = 0;
    std::vector<Matrix> action;
  };
  std::shared_ptr<const Data> d_;
};

/// Checks the module law on the algebra generators only: rho(g) rho(b_j) =
/// rho(g b_j) for generators g and all j, plus rho(1) = I.
void validate_module(const AlgebraPtr& a, std::size_t dim, const std::vector<Matrix>& action);

class ModuleMap {
 public:
  ModuleMap() = default;
  /// Validates shape and the intertwiner law.
  ModuleMap(Module source, Module target, Matrix matrix);
  static ModuleMap trusted(Module source, Module target, Matrix matrix);
  static ModuleMap identity(const Module& m);
  static ModuleMap zero(const Module& source, const Module& target);

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  Module source_, target_;
  Matrix matrix_;
};

/// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
bool is_intertwiner(const Module& x, const Module& y, const Matrix& f);
void require_same_algebra(const Module& x, const Module& y);

/// Basis of Hom_A(x, y) with coordinate extraction.
class HomSpace {
 public:
  HomSpace(const Module& x, const Module& y);
  /// Hom(A^rank, y) for a free source with its standard basis: the map
  /// sending 1_m to e_v is basis element m*dim(y)+v.
  static HomSpace from_free(const Module& free_source, std::size_t rank, const Module& y);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const Module& source() const { return x_; }
  const Module& target() const { return y_; }
  ModuleMap map(std::size_t i) const { return ModuleMap::trusted(x_, y_, basis_[i]); }
  /// Coordinates of f, which must lie in the space.
  std::vector<Elem> coordinates(const Matrix& f) const;
  Matrix combine(std::span<const Elem> coeffs) const;

 private:
  HomSpace() = default;
  Module x_, y_;
  std::vector<Matrix> basis_;
  // Positions in the row-major flattening of f read off as coordinates, or
  // the free rank when the source is free.
  std::vector<std::size_t> positions_;
  std::size_t free_rank_ = 0;
  bool free_ = false;
};

std::vector<ModuleMap> hom_basis(const Module& x, const Module& y);

enum class Decision { No, Yes, Undecided };
const char* to_string(Decision d);

Decision is_isomorphic(const Module& x, const Module& y, std::uint64_t seed = 0);

struct DirectSum {
  Module sum;
  std::vector<ModuleMap> injections, projections;
};
DirectSum direct_sum(const AlgebraPtr& a, std::span<const Module> xs);

struct Kernel {
  Module module;
  ModuleMap inclusion;
};
Kernel map_kernel(const ModuleMap& f);

struct Cokernel {
  Module module;
  ModuleMap projection;
};
Cokernel map_cokernel(const ModuleMap& f);

struct Image {
  Module module;
  ModuleMap inclusion;   // image -> target
  ModuleMap corestriction;  // source -> image
};
Image map_image(const ModuleMap& f);

/// Submodule spanned by invariant columns (any spanning set), with inclusion.
Kernel invariant_subspace(const Module& x, const Matrix& columns);
/// Submodule generated by the given vectors (columns).
Kernel generated_submodule(const Module& x, const Matrix& generators);

/// Transposed actions over opposite(algebra).  When `op` is given it must be
/// structurally equal to the opposite and is used as the module's algebra.
Module dual_module(const Module& x, const AlgebraPtr& op = nullptr);
/// Same actions, viewed over a structurally equal algebra.
Module rebase(const Module& x, const AlgebraPtr& a);

/// Simple modules of the algebra (see simple_actions).
std::vector<Module> simple_modules(const AlgebraPtr& a);

/// Left projective A*e_v at a quiver vertex.
Module vertex_projective(const AlgebraPtr& a, std::size_t vertex);

}  // namespace homres

#endif  // HOMRES_MODULE_HPP
