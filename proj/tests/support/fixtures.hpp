#ifndef HOMRES_TESTS_FIXTURES_HPP
#define HOMRES_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "homres/complex.hpp"
#include "homres/module.hpp"

namespace fx {

using namespace homres;
using Rng = std::mt19937_64;

/// GF(p)[x]/(x^n) as a one-loop quiver algebra; basis 1, x, ..., x^{n-1}.
inline AlgebraPtr truncated_poly(std::size_t n, Prime p = 2) {
  QuiverPresentation q;
  q.vertices = 1;
  q.arrows = {{0, 0}};
  q.relations = {std::vector<std::size_t>(n, 0)};
  return from_quiver(q, p);
}

/// Path algebra of 1 -> 2; basis e1, e2, a.
inline AlgebraPtr a2(Prime p = 2) {
  QuiverPresentation q;
  q.vertices = 2;
  q.arrows = {{0, 1}};
  return from_quiver(q, p);
}

/// GF(p) itself.
inline AlgebraPtr ground_field(Prime p) {
  AlgebraData d;
  d.p = p;
  d.dim = 1;
  d.structure = {{0, 0, 0, 1}};
  d.unit = {1};
  return validate_algebra(d);
}

/// k[x,y]/(x,y)^2: local, not self-injective, infinite self-injective dimension.
inline AlgebraPtr square_zero_two_loops(Prime p = 2) {
  QuiverPresentation q;
  q.vertices = 1;
  q.arrows = {{0, 0}, {0, 0}};
  q.relations = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  return from_quiver(q, p);
}

/// A / A b for a basis element b (right multiplication is A-linear).
inline Module quotient_by(const AlgebraPtr& a, std::size_t b) {
  Module reg = Module::regular(a);
  Matrix m(a->dim(), a->dim(), a->modulus());
  for (std::size_t j = 0; j < a->dim(); ++j) {
    auto pr = a->product(j, b);
    for (std::size_t r = 0; r < a->dim(); ++r) m(r, j) = pr[r];
  }
  return map_cokernel(ModuleMap(reg, reg, m)).module;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, Prime p, Rng& rng) {
  Matrix m(r, c, p);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng() % p);
  return m;
}

inline Matrix random_invertible(std::size_t n, Prime p, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(n, n, p, rng);
    if (rank(m) == n) return m;
  }
}

/// Conjugate of x by a random base change.
inline Module twist(const Module& x, Rng& rng) {
  const Prime p = x.modulus();
  Matrix g = random_invertible(x.dim(), p, rng);
  Matrix gi = *inverse(g);
  std::vector<Matrix> act;
  for (const auto& m : x.actions()) act.push_back(g * m * gi);
  return Module(x.algebra(), std::move(act));
}

/// Module over GF(p)[x]/(x^n) from a random nilpotent of index <= n.
inline Module random_truncated_module(const AlgebraPtr& a, std::size_t n, std::size_t dim, Rng& rng) {
  const Prime p = a->modulus();
  Matrix j(dim, dim, p);
  std::size_t pos = 0;
  while (pos < dim) {
    const std::size_t len = std::min<std::size_t>(1 + rng() % n, dim - pos);
    for (std::size_t t = 1; t < len; ++t) j(pos + t, pos + t - 1) = 1;
    pos += len;
  }
  Matrix g = random_invertible(dim, p, rng);
  Matrix nil = g * j * *inverse(g);
  std::vector<Matrix> act;
  Matrix pw = Matrix::identity(dim, p);
  for (std::size_t k = 0; k < n; ++k) {
    act.push_back(pw);
    pw = pw * nil;
  }
  return Module(a, std::move(act));
}

/// Representation V1 --f--> V2 of 1 -> 2.
inline Module a2_module(const AlgebraPtr& a, std::size_t d1, std::size_t d2, const Matrix& f) {
  const Prime p = a->modulus();
  const std::size_t d = d1 + d2;
  Matrix e1(d, d, p), e2(d, d, p), arrow(d, d, p);
  for (std::size_t i = 0; i < d1; ++i) e1(i, i) = 1;
  for (std::size_t i = d1; i < d; ++i) e2(i, i) = 1;
  arrow.set_block(d1, 0, f);
  return Module(a, {e1, e2, arrow});
}

inline Module random_a2_module(const AlgebraPtr& a, std::size_t dim, Rng& rng) {
  const std::size_t d1 = rng() % (dim + 1);
  return a2_module(a, d1, dim - d1, random_matrix(dim - d1, d1, a->modulus(), rng));
}

/// Random module of dimension `dim` over one of the bundled algebras
/// (kind 0: x^2 = 0, 1: x^3 = 0, 2: path algebra 1 -> 2).
inline Module random_module(int kind, const AlgebraPtr& a, std::size_t dim, Rng& rng) {
  if (kind == 2) return random_a2_module(a, dim, rng);
  return random_truncated_module(a, kind == 0 ? 2 : 3, dim, rng);
}

/// Random element of Hom(x, y).
inline Matrix random_hom(const Module& x, const Module& y, Rng& rng) {
  HomSpace h(x, y);
  std::vector<Elem> c(h.dim());
  for (auto& v : c) v = static_cast<Elem>(rng() % x.modulus());
  return h.combine(c);
}

/// Bounded complex with the given terms starting at `lo`; each differential
/// is a random map killing the previous image.
inline Complex random_complex(const AlgebraPtr& a, int lo, const std::vector<Module>& terms, Rng& rng) {
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    Matrix d(terms[k + 1].dim(), terms[k].dim(), a->modulus());
    for (int attempt = 0; attempt < 40; ++attempt) {
      Matrix cand = random_hom(terms[k], terms[k + 1], rng);
      if (diffs.empty() || (cand * diffs.back()).is_zero()) {
        d = cand;
        break;
      }
    }
    diffs.push_back(d);
  }
  return Complex(a, lo, terms, diffs);
}

}  // namespace fx

#endif  // HOMRES_TESTS_FIXTURES_HPP
