#ifndef HOMRES_RESOLUTION_HPP
#define HOMRES_RESOLUTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homres/module.hpp"

namespace homres {

enum class ResolutionKind { Projective, AddM };
enum class ResolutionStatus { Complete, Truncated };

/// terms[0] -> target is maps[0]; terms[i] -> terms[i-1] is maps[i].
struct Resolution {
  Module target;
  std::vector<Module> terms;
  std::vector<ModuleMap> maps;
  ResolutionKind kind = ResolutionKind::Projective;
  ResolutionStatus status = ResolutionStatus::Truncated;
  /// Rank g when terms[i] is A^g with its standard basis, otherwise nullopt
  /// (a projective syzygy closing the resolution).
  std::vector<std::optional<std::size_t>> free_ranks;

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

/// Verifies exactness at every computed degree and that each map is an
/// intertwiner; returns an empty string on success, else a description.
std::string check_exactness(const Resolution& r);

struct BoundedDim {
  std::optional<std::size_t> value;  // nullopt: exceeds the bound
  std::size_t bound = 0;
  bool finite() const { return value.has_value(); }
  bool at_most(std::size_t r) const { return value && *value <= r; }
};

struct ExtTable {
  Module source, target;
  std::vector<std::size_t> dims;
  std::size_t bound = 0;
};

/// How free covers pick their generators.  Evaluation scans standard basis
/// vectors greedily; Permuted scans them in a seeded random order; Doubled
/// uses every Evaluation generator twice.
enum class CoverStrategy { Evaluation, Permuted, Doubled };
struct CoverOptions {
  CoverStrategy strategy = CoverStrategy::Evaluation;
  std::uint64_t seed = 0;
};

struct FreeCover {
  Module free;
  std::size_t rank = 0;
  ModuleMap map;  // A^rank -> x, 1_l -> generator l
};

/// Columns are module generators of x.
Matrix module_generators(const Module& x, CoverOptions opt = {});
/// A^g -> x with 1_l mapped to column l of `gens`.
FreeCover evaluation_map(const Module& x, const Matrix& gens);
FreeCover free_cover(const Module& x, CoverOptions opt = {});

/// With a known radical: Ext^1(x, S) = 0 for every simple S.  Otherwise the
/// free cover must split (its kernel inclusion admits a retraction).
bool is_projective(const Module& x);

Resolution projective_resolution(const Module& x, std::size_t length, CoverOptions opt = {});

/// dims[i] = dim Ext^i(x, y) for 0 <= i <= max_i.
ExtTable ext_dims(const Module& x, const Module& y, std::size_t max_i, CoverOptions opt = {});
/// Same numbers from a resolution of length >= max_i + 1 (or complete).
std::vector<std::size_t> ext_from_resolution(const Resolution& r, const Module& y,
                                             std::size_t max_i);

BoundedDim proj_dim(const Module& x, std::size_t bound, CoverOptions opt = {});

/// inj.dim_A t, computed as proj.dim of D t over the opposite algebra.
BoundedDim inj_dim(const Module& t, std::size_t bound);
BoundedDim gl_dim(const AlgebraPtr& a, std::size_t bound);

}  // namespace homres

#endif  // HOMRES_RESOLUTION_HPP
