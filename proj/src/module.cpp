#include "homres/module.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "homres/error.hpp"

namespace homres {

void validate_module(const AlgebraPtr& a, std::size_t dim, const std::vector<Matrix>& action) {
  if (!a) fail(ErrorKind::InvalidInput, "module without an algebra");
  const std::size_t n = a->dim();
  const Prime p = a->modulus();
  if (action.size() != n)
    fail(ErrorKind::InvalidInput, "module needs " + std::to_string(n) + " action matrices, got " +
                                      std::to_string(action.size()));
  for (std::size_t i = 0; i < n; ++i)
    if (action[i].rows() != dim || action[i].cols() != dim || action[i].modulus() != p)
      fail(ErrorKind::InvalidInput, "action matrix " + std::to_string(i) + " has the wrong shape");
  Matrix one(dim, dim, p);
  for (std::size_t l = 0; l < n; ++l) one.add_scaled(action[l], a->unit()[l]);
  if (!one.is_identity()) fail(ErrorKind::InvalidInput, "unit does not act as the identity");
  for (auto g : a->generators())
    for (std::size_t j = 0; j < n; ++j) {
      Matrix rhs(dim, dim, p);
      auto row = a->product(g, j);
      for (std::size_t l = 0; l < n; ++l) rhs.add_scaled(action[l], row[l]);
      if (!(action[g] * action[j] == rhs))
        fail(ErrorKind::InvalidInput, "module law fails for rho(b_" + std::to_string(g) +
                                          ") rho(b_" + std::to_string(j) + ")");
    }
}

Module::Module(AlgebraPtr algebra, std::vector<Matrix> action) {
  std::size_t dim = action.empty() ? 0 : action.front().rows();
  validate_module(algebra, dim, action);
  d_ = std::make_shared<const Data>(Data{std::move(algebra), dim, std::move(action)});
}

Module Module::trusted(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action) {
  Module m;
  m.d_ = std::make_shared<const Data>(Data{std::move(algebra), dim, std::move(action)});
  return m;
}

Module Module::zero(const AlgebraPtr& a) {
  return trusted(a, 0, std::vector<Matrix>(a->dim(), Matrix(0, 0, a->modulus())));
}

Module Module::regular(const AlgebraPtr& a) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(a->left_regular(i));
  return trusted(a, a->dim(), std::move(act));
}

Module Module::free(const AlgebraPtr& a, std::size_t rank) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    std::vector<Matrix> blocks(rank, a->left_regular(i));
    act.push_back(Matrix::block_diagonal(blocks, a->modulus()));
  }
  return trusted(a, a->dim() * rank, std::move(act));
}

Matrix Module::act(std::span<const Elem> a) const {
  Matrix out(dim(), dim(), modulus());
  for (std::size_t l = 0; l < a.size(); ++l) out.add_scaled(action(l), a[l]);
  return out;
}

bool Module::operator==(const Module& other) const {
  if (d_ == other.d_) return true;
  if (!d_ || !other.d_) return false;
  return same_algebra(algebra(), other.algebra()) && dim() == other.dim() &&
         actions() == other.actions();
}

void require_same_algebra(const Module& x, const Module& y) {
  if (!same_algebra(x.algebra(), y.algebra()))
    fail(ErrorKind::InvalidInput, "modules live over different algebras");
}

bool is_intertwiner(const Module& x, const Module& y, const Matrix& f) {
  if (f.rows() != y.dim() || f.cols() != x.dim()) return false;
  for (auto g : x.algebra()->generators())
    if (!(f * x.action(g) == y.action(g) * f)) return false;
  return true;
}

ModuleMap::ModuleMap(Module source, Module target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  require_same_algebra(source_, target_);
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
    fail(ErrorKind::InvalidInput, "map matrix has the wrong shape");
  if (!is_intertwiner(source_, target_, matrix_))
    fail(ErrorKind::InvalidInput, "matrix does not intertwine the module actions");
}

ModuleMap ModuleMap::trusted(Module source, Module target, Matrix matrix) {
  ModuleMap f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.matrix_ = std::move(matrix);
  return f;
}

ModuleMap ModuleMap::identity(const Module& m) {
  return trusted(m, m, Matrix::identity(m.dim(), m.modulus()));
}

ModuleMap ModuleMap::zero(const Module& source, const Module& target) {
  return trusted(source, target, Matrix(target.dim(), source.dim(), source.modulus()));
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.target().dim() != g.source().dim())
    fail(ErrorKind::InvalidInput, "cannot compose maps with mismatched modules");
  return ModuleMap::trusted(f.source(), g.target(), g.matrix() * f.matrix());
}

// ---------------------------------------------------------------------------
// Hom spaces

HomSpace::HomSpace(const Module& x, const Module& y) : x_(x), y_(y) {
  require_same_algebra(x, y);
  const std::size_t dx = x.dim(), dy = y.dim(), nvar = dx * dy;
  const Prime p = x.modulus();
  if (nvar == 0) return;
  // Current solution space: rows of `span` (in flattened coordinates r*dx+c)
  // with coordinates read at `positions_`.
  Matrix span = Matrix::identity(nvar, p);
  positions_.resize(nvar);
  for (std::size_t i = 0; i < nvar; ++i) positions_[i] = i;
  for (auto g : x.algebra()->generators()) {
    if (span.rows() == 0) break;
    const Matrix& xg = x.action(g);
    const Matrix& yg = y.action(g);
    Matrix residue(nvar, span.rows(), p);
    for (std::size_t b = 0; b < span.rows(); ++b) {
      Matrix f(dy, dx, p);
      for (std::size_t k = 0; k < nvar; ++k) f(k / dx, k % dx) = span(b, k);
      Matrix d = f * xg - yg * f;
      for (std::size_t k = 0; k < nvar; ++k) residue(k, b) = d.data()[k];
    }
    NullSpace ns = null_space(residue);
    span = ns.basis * span;
    std::vector<std::size_t> next;
    for (auto c : ns.free_columns) next.push_back(positions_[c]);
    positions_ = std::move(next);
  }
  for (std::size_t b = 0; b < span.rows(); ++b) {
    Matrix f(dy, dx, p);
    for (std::size_t k = 0; k < nvar; ++k) f(k / dx, k % dx) = span(b, k);
    basis_.push_back(std::move(f));
  }
}

HomSpace HomSpace::from_free(const Module& free_source, std::size_t rank, const Module& y) {
  require_same_algebra(free_source, y);
  const AlgebraPtr& a = y.algebra();
  const std::size_t n = a->dim(), dy = y.dim();
  if (free_source.dim() != n * rank)
    fail(ErrorKind::InvalidInput, "free source has the wrong dimension");
  HomSpace h;
  h.x_ = free_source;
  h.y_ = y;
  h.free_ = true;
  h.free_rank_ = rank;
  const Prime p = a->modulus();
  for (std::size_t m = 0; m < rank; ++m)
    for (std::size_t v = 0; v < dy; ++v) {
      // 1_m -> e_v, so b_j 1_m -> rho(b_j) e_v.
      Matrix f(dy, n * rank, p);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < dy; ++r) f(r, m * n + j) = y.action(j)(r, v);
      h.basis_.push_back(std::move(f));
    }
  return h;
}

std::vector<Elem> HomSpace::coordinates(const Matrix& f) const {
  if (f.rows() != y_.dim() || f.cols() != x_.dim())
    fail(ErrorKind::InvalidInput, "map has the wrong shape for this Hom space");
  std::vector<Elem> out;
  out.reserve(dim());
  if (free_) {
    const AlgebraPtr& a = y_.algebra();
    const std::size_t n = a->dim();
    // The unit of block m is sum_l u_l b_l.
    const GF fld{a->modulus()};
    for (std::size_t m = 0; m < free_rank_; ++m)
      for (std::size_t v = 0; v < y_.dim(); ++v) {
        Elem acc = 0;
        for (std::size_t l = 0; l < n; ++l)
          if (a->unit()[l]) acc = fld.add(acc, fld.mul(a->unit()[l], f(v, m * n + l)));
        out.push_back(acc);
      }
    return out;
  }
  for (auto pos : positions_) out.push_back(f.data()[pos]);
  return out;
}

Matrix HomSpace::combine(std::span<const Elem> coeffs) const {
  Matrix out(y_.dim(), x_.dim(), x_.modulus());
  for (std::size_t i = 0; i < basis_.size(); ++i) out.add_scaled(basis_[i], coeffs[i]);
  return out;
}

std::vector<ModuleMap> hom_basis(const Module& x, const Module& y) {
  HomSpace h(x, y);
  std::vector<ModuleMap> out;
  for (std::size_t i = 0; i < h.dim(); ++i) out.push_back(h.map(i));
  return out;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::No: return "false";
    case Decision::Yes: return "true";
    case Decision::Undecided: return "undecided";
  }
  return "undecided";
}

Decision is_isomorphic(const Module& x, const Module& y, std::uint64_t seed) {
  require_same_algebra(x, y);
  if (x.dim() != y.dim()) return Decision::No;
  if (x.dim() == 0) return Decision::Yes;
  if (x == y) return Decision::Yes;
  HomSpace h(x, y);
  if (h.dim() == 0) return Decision::No;
  if (HomSpace(x, x).dim() != h.dim() || HomSpace(y, y).dim() != h.dim()) return Decision::No;
  const Prime p = x.modulus();
  std::mt19937_64 rng(seed);
  std::vector<Elem> c(h.dim());
  for (int trial = 0; trial < 32; ++trial) {
    for (auto& v : c) v = static_cast<Elem>(rng() % p);
    if (is_invertible(h.combine(c))) return Decision::Yes;
  }
  // Exhaustive fallback over the whole Hom space.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    total *= p;
    if (total > (1u << 16)) return Decision::Undecided;
  }
  std::fill(c.begin(), c.end(), 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t v = t;
    for (auto& ci : c) {
      ci = static_cast<Elem>(v % p);
      v /= p;
    }
    if (is_invertible(h.combine(c))) return Decision::Yes;
  }
  return Decision::No;
}

// ---------------------------------------------------------------------------
// Sums, kernels, cokernels

DirectSum direct_sum(const AlgebraPtr& a, std::span<const Module> xs) {
  const Prime p = a->modulus();
  DirectSum out;
  std::size_t total = 0;
  for (const auto& x : xs) {
    if (!same_algebra(x.algebra(), a)) fail(ErrorKind::InvalidInput, "summands over different algebras");
    total += x.dim();
  }
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    std::vector<Matrix> blocks;
    for (const auto& x : xs) blocks.push_back(x.action(i));
    act.push_back(Matrix::block_diagonal(blocks, p));
  }
  out.sum = xs.size() == 1 ? xs.front() : Module::trusted(a, total, std::move(act));
  std::size_t off = 0;
  for (const auto& x : xs) {
    Matrix inj(total, x.dim(), p), proj(x.dim(), total, p);
    for (std::size_t k = 0; k < x.dim(); ++k) inj(off + k, k) = proj(k, off + k) = 1;
    out.injections.push_back(ModuleMap::trusted(x, out.sum, std::move(inj)));
    out.projections.push_back(ModuleMap::trusted(out.sum, x, std::move(proj)));
    off += x.dim();
  }
  return out;
}

namespace {

// Restriction to an invariant subspace with basis columns `basis` whose
// coordinates are the entries at `rows` (basis.select_rows(rows) = I).
Module restrict_action(const Module& x, const Matrix& basis, std::span<const std::size_t> rows) {
  const std::size_t k = basis.cols();
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < x.algebra()->dim(); ++i)
    act.push_back((x.action(i) * basis).select_rows(rows));
  return Module::trusted(x.algebra(), k, std::move(act));
}

}  // namespace

Kernel invariant_subspace(const Module& x, const Matrix& columns) {
  // Canonical basis: rref of the transposed spanning set.
  RowEchelon e = rref(columns.transpose());
  Matrix basis = e.reduced.block(0, 0, e.rank(), x.dim()).transpose();
  Module sub = restrict_action(x, basis, e.pivots);
  // Sanity: invariance means the action really lands in the span.
  for (std::size_t i = 0; i < x.algebra()->dim(); ++i)
    if (!(x.action(i) * basis == basis * sub.action(i)))
      fail(ErrorKind::InvalidInput, "subspace is not a submodule");
  return {sub, ModuleMap::trusted(sub, x, std::move(basis))};
}

Kernel generated_submodule(const Module& x, const Matrix& generators) {
  const Prime p = x.modulus();
  EchelonSpan span(x.dim(), p);
  std::vector<std::vector<Elem>> vecs;
  for (std::size_t c = 0; c < generators.cols(); ++c) {
    auto g = generators.column_vector(c);
    for (std::size_t j = 0; j < x.algebra()->dim(); ++j) {
      auto w = x.action(j).apply(g);
      if (span.add(w)) vecs.push_back(std::move(w));
    }
  }
  Matrix cols(x.dim(), vecs.size(), p);
  for (std::size_t c = 0; c < vecs.size(); ++c)
    for (std::size_t r = 0; r < x.dim(); ++r) cols(r, c) = vecs[c][r];
  return invariant_subspace(x, cols);
}

Kernel map_kernel(const ModuleMap& f) {
  const Module& x = f.source();
  NullSpace ns = null_space(f.matrix());
  Matrix basis = ns.basis.transpose();
  Module k = restrict_action(x, basis, ns.free_columns);
  return {k, ModuleMap::trusted(k, x, std::move(basis))};
}

Cokernel map_cokernel(const ModuleMap& f) {
  const Module& y = f.target();
  const Prime p = y.modulus();
  const GF fld{p};
  RowEchelon im = rref(f.matrix().transpose());
  std::vector<bool> piv(y.dim(), false);
  for (auto c : im.pivots) piv[c] = true;
  std::vector<std::size_t> comp;
  for (std::size_t c = 0; c < y.dim(); ++c)
    if (!piv[c]) comp.push_back(c);
  // pi(v) = v[comp] - sum_r v[pivot_r] * R_r[comp]
  Matrix proj(comp.size(), y.dim(), p);
  for (std::size_t i = 0; i < comp.size(); ++i) proj(i, comp[i]) = 1;
  for (std::size_t r = 0; r < im.rank(); ++r)
    for (std::size_t i = 0; i < comp.size(); ++i)
      proj(i, im.pivots[r]) = fld.neg(im.reduced(r, comp[i]));
  Matrix incl(y.dim(), comp.size(), p);
  for (std::size_t i = 0; i < comp.size(); ++i) incl(comp[i], i) = 1;
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < y.algebra()->dim(); ++i) act.push_back(proj * y.action(i) * incl);
  Module q = Module::trusted(y.algebra(), comp.size(), std::move(act));
  return {q, ModuleMap::trusted(y, q, std::move(proj))};
}

Image map_image(const ModuleMap& f) {
  const Module& y = f.target();
  RowEchelon e = rref(f.matrix().transpose());
  Matrix basis = e.reduced.block(0, 0, e.rank(), y.dim()).transpose();
  Module im = restrict_action(y, basis, e.pivots);
  Matrix core = f.matrix().select_rows(e.pivots);
  return {im, ModuleMap::trusted(im, y, std::move(basis)),
          ModuleMap::trusted(f.source(), im, std::move(core))};
}

Module dual_module(const Module& x, const AlgebraPtr& op) {
  AlgebraPtr target = op;
  if (target) {
    if (!same_algebra(target, opposite(x.algebra())))
      fail(ErrorKind::InvalidInput, "algebra is not the opposite of the module's algebra");
  } else {
    target = opposite(x.algebra());
  }
  std::vector<Matrix> act;
  for (const auto& m : x.actions()) act.push_back(m.transpose());
  return Module::trusted(target, x.dim(), std::move(act));
}

Module rebase(const Module& x, const AlgebraPtr& a) {
  if (!same_algebra(x.algebra(), a))
    fail(ErrorKind::InvalidInput, "cannot rebase a module onto a different algebra");
  return Module::trusted(a, x.dim(), x.actions());
}

std::vector<Module> simple_modules(const AlgebraPtr& a) {
  std::vector<Module> out;
  for (auto& act : simple_actions(*a)) {
    const std::size_t d = act.front().rows();
    out.push_back(Module::trusted(a, d, std::move(act)));
  }
  return out;
}

Module vertex_projective(const AlgebraPtr& a, std::size_t vertex) {
  if (vertex >= a->quiver_vertices())
    fail(ErrorKind::InvalidInput, "vertex " + std::to_string(vertex) + " out of range");
  Module reg = Module::regular(a);
  Matrix gen(a->dim(), 1, a->modulus());
  gen(vertex, 0) = 1;
  return generated_submodule(reg, gen).module;
}

}  // namespace homres
