#include "homres/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "homres/error.hpp"

namespace homres {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

bool is_zero_vec(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

// Structure constants on an arbitrary basis; used for A/rad A and its
// subalgebras during the search for simples.
struct Table {
  Prime p = 2;
  std::size_t m = 0;
  std::vector<Elem> c;  // (i*m + j)*m + k

  std::vector<Elem> mul(std::span<const Elem> a, std::span<const Elem> b) const {
    std::vector<std::uint64_t> acc(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!b[j]) continue;
        const std::uint64_t ab = static_cast<std::uint64_t>(a[i]) * b[j] % p;
        const Elem* row = c.data() + (i * m + j) * m;
        for (std::size_t k = 0; k < m; ++k)
          if (row[k]) acc[k] = (acc[k] + ab * row[k]) % p;
      }
    }
    return {acc.begin(), acc.end()};
  }

  // e >= 1
  std::vector<Elem> pow(std::vector<Elem> a, std::uint64_t e) const {
    std::vector<Elem> result;
    bool have = false;
    while (e) {
      if (e & 1) {
        result = have ? mul(result, a) : a;
        have = true;
      }
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return result;
  }

  std::vector<Elem> combine(const Matrix& rows, std::span<const Elem> coeffs) const {
    GF f{p};
    std::vector<Elem> out(m, 0);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      if (!coeffs[r]) continue;
      for (std::size_t k = 0; k < m; ++k) out[k] = f.add(out[k], f.mul(coeffs[r], rows(r, k)));
    }
    return out;
  }

  // Dimension of the left ideal S*x.
  std::size_t left_ideal_dim(std::span<const Elem> x) const {
    EchelonSpan span(m, p);
    std::vector<Elem> e(m, 0);
    for (std::size_t b = 0; b < m; ++b) {
      std::fill(e.begin(), e.end(), 0);
      e[b] = 1;
      span.add(mul(e, x));
    }
    return span.dim();
  }
};

Matrix rows_of(const std::vector<std::vector<Elem>>& vs, std::size_t m, Prime p) {
  Matrix out(vs.size(), m, p);
  for (std::size_t r = 0; r < vs.size(); ++r)
    for (std::size_t k = 0; k < m; ++k) out(r, k) = vs[r][k];
  return out;
}

// Primitive idempotents of the Frobenius-fixed part {y : y^p = y} of the
// commutative subalgebra spanned by the rows of `w` (which must contain
// `one`, its identity).  The fixed part is split semisimple, so repeated
// splitting by support and quadratic character reaches all of them.
std::vector<std::vector<Elem>> split_idempotents(const Table& s, const Matrix& w,
                                                 const std::vector<Elem>& one,
                                                 std::mt19937_64& rng) {
  const Prime p = s.p;
  const GF f{p};
  const std::size_t k = w.rows();
  const Matrix wt = w.transpose();
  Matrix frob(k, k, p);
  for (std::size_t r = 0; r < k; ++r) {
    auto img = s.pow(std::vector<Elem>(w.row(r).begin(), w.row(r).end()), p);
    auto coords = solve_linear(wt, Matrix::column(img, p));
    if (!coords) fail(ErrorKind::InternalError, "subalgebra not closed under Frobenius");
    for (std::size_t c = 0; c < k; ++c) frob(c, r) = (*coords)(c, 0);
  }
  Matrix fixed_coords = kernel_basis(frob - Matrix::identity(k, p));
  std::vector<std::vector<Elem>> fixed;
  for (std::size_t r = 0; r < fixed_coords.rows(); ++r)
    fixed.push_back(s.combine(w, fixed_coords.row(r)));
  const std::size_t t = fixed.size();

  std::vector<std::vector<Elem>> idems{one};
  auto try_split = [&](const std::vector<Elem>& cand) {
    std::vector<std::vector<Elem>> next;
    bool changed = false;
    for (const auto& eps : idems) {
      auto x = s.mul(eps, cand);
      std::vector<std::vector<Elem>> splitters;
      if (p == 2) {
        splitters.push_back(x);
      } else if (!is_zero_vec(x)) {
        auto g = s.pow(x, p - 1);
        auto h = s.pow(x, (p - 1) / 2);
        std::vector<Elem> q(s.m);
        const Elem half = f.inv(2);
        for (std::size_t i = 0; i < s.m; ++i) q[i] = f.mul(f.add(g[i], h[i]), half);
        splitters.push_back(std::move(g));
        splitters.push_back(std::move(q));
      }
      bool done = false;
      for (const auto& g : splitters) {
        auto part = s.mul(eps, g);
        std::vector<Elem> rest(s.m);
        for (std::size_t i = 0; i < s.m; ++i) rest[i] = f.sub(eps[i], part[i]);
        if (!is_zero_vec(part) && !is_zero_vec(rest)) {
          next.push_back(std::move(part));
          next.push_back(std::move(rest));
          done = changed = true;
          break;
        }
      }
      if (!done) next.push_back(eps);
    }
    idems = std::move(next);
    return changed;
  };
  for (const auto& b : fixed) {
    if (idems.size() == t) break;
    try_split(b);
  }
  for (int attempt = 0; idems.size() < t; ++attempt) {
    if (attempt > 2000) fail(ErrorKind::InternalError, "idempotent splitting did not converge");
    std::vector<Elem> cand(s.m, 0);
    for (const auto& b : fixed) {
      const Elem c = static_cast<Elem>(rng() % p);
      for (std::size_t i = 0; i < s.m; ++i) cand[i] = f.add(cand[i], f.mul(c, b[i]));
    }
    try_split(cand);
  }
  return idems;
}

// Reduction modulo rad A: coordinates on the complement of the pivot columns.
struct Quotient {
  RowEchelon rad;
  std::vector<std::size_t> comp;

  std::vector<Elem> project(std::span<const Elem> v, Prime p) const {
    const GF f{p};
    std::vector<Elem> w(v.begin(), v.end());
    for (std::size_t r = 0; r < rad.rank(); ++r) {
      const Elem c = v[rad.pivots[r]];
      if (!c) continue;
      const Elem neg = f.neg(c);
      for (std::size_t k = 0; k < w.size(); ++k)
        if (rad.reduced(r, k)) w[k] = f.add(w[k], f.mul(neg, rad.reduced(r, k)));
    }
    std::vector<Elem> out(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) out[i] = w[comp[i]];
    return out;
  }
};

std::size_t isqrt(std::size_t v) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::vector<Elem> Algebra::multiply(std::span<const Elem> a, std::span<const Elem> b) const {
  std::vector<std::uint64_t> acc(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!b[j]) continue;
      const std::uint64_t ab = static_cast<std::uint64_t>(a[i]) * b[j] % p_;
      auto row = product(i, j);
      for (std::size_t k = 0; k < n_; ++k)
        if (row[k]) acc[k] = (acc[k] + ab * row[k]) % p_;
    }
  }
  return {acc.begin(), acc.end()};
}

std::vector<Elem> Algebra::basis_vector(std::size_t i) const {
  std::vector<Elem> v(n_, 0);
  v[i] = 1;
  return v;
}

std::vector<StructureConstant> Algebra::structure_constants() const {
  std::vector<StructureConstant> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      auto row = product(i, j);
      for (std::size_t k = 0; k < n_; ++k)
        if (row[k]) out.push_back({i, j, k, static_cast<std::int64_t>(row[k])});
    }
  return out;
}

bool Algebra::same_as(const Algebra& other) const {
  return p_ == other.p_ && n_ == other.n_ && table_ == other.table_ && unit_ == other.unit_;
}

void Algebra::finish() {
  left_.assign(n_, Matrix(n_, n_, p_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      auto row = product(i, j);
      for (std::size_t k = 0; k < n_; ++k) left_[i](k, j) = row[k];
    }
  // Greedy generating set: keep b_i when it escapes the subalgebra generated
  // by the unit and the earlier choices.
  generators_.clear();
  auto closure = [&]() {
    EchelonSpan span(n_, p_);
    std::vector<std::vector<Elem>> queue{unit_};
    span.add(unit_);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (auto g : generators_) {
        auto w = left_[g].apply(queue[q]);
        if (span.add(w)) queue.push_back(std::move(w));
      }
    }
    return span;
  };
  EchelonSpan current = closure();
  for (std::size_t i = 0; i < n_ && current.dim() < n_; ++i) {
    if (current.contains(basis_vector(i))) continue;
    generators_.push_back(i);
    current = closure();
  }
}

std::shared_ptr<Algebra> Algebra::make(AlgebraData raw) {
  require_prime(raw.p);
  const std::size_t n = raw.dim;
  if (n == 0) fail(ErrorKind::InvalidInput, "algebra dimension must be positive");
  if (raw.unit.size() != n)
    fail(ErrorKind::InvalidInput, "unit vector has length " + std::to_string(raw.unit.size()) +
                                      ", expected " + std::to_string(n));
  if (!raw.labels.empty() && raw.labels.size() != n)
    fail(ErrorKind::InvalidInput, "label count does not match dimension");
  std::shared_ptr<Algebra> a(new Algebra());
  a->p_ = raw.p;
  a->n_ = n;
  const GF f{raw.p};
  a->table_.assign(n * n * n, 0);
  for (const auto& sc : raw.structure) {
    if (sc.i >= n || sc.j >= n || sc.k >= n)
      fail(ErrorKind::InvalidInput, "structure constant index out of range at " +
                                        triple(sc.i, sc.j, sc.k));
    Elem& slot = a->table_[(sc.i * n + sc.j) * n + sc.k];
    slot = f.add(slot, f.reduce(sc.c));
  }
  a->unit_.resize(n);
  for (std::size_t i = 0; i < n; ++i) a->unit_[i] = f.reduce(raw.unit[i]);
  a->labels_ = std::move(raw.labels);
  a->finish();

  // Unit laws.
  Matrix lu(n, n, raw.p);
  for (std::size_t l = 0; l < n; ++l) lu.add_scaled(a->left_[l], a->unit_[l]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k)
      if (lu(k, i) != (k == i ? 1u : 0u))
        fail(ErrorKind::InvalidInput, "unit law u*b_i = b_i fails at index " + std::to_string(i));
    auto bu = a->left_[i].apply(a->unit_);
    for (std::size_t k = 0; k < n; ++k)
      if (bu[k] != (k == i ? 1u : 0u))
        fail(ErrorKind::InvalidInput, "unit law b_i*u = b_i fails at index " + std::to_string(i));
  }
  // Associativity: L_i L_j = L_{b_i b_j}.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix lhs = a->left_[i] * a->left_[j];
      Matrix rhs(n, n, raw.p);
      auto row = a->product(i, j);
      for (std::size_t l = 0; l < n; ++l) rhs.add_scaled(a->left_[l], row[l]);
      if (lhs == rhs) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r)
          if (lhs(r, k) != rhs(r, k))
            fail(ErrorKind::InvalidInput,
                 "associativity fails at (b_i b_j) b_k with (i,j,k) = " + triple(i, j, k));
    }

  if (raw.radical) {
    if (raw.radical->cols() != n || raw.radical->modulus() != raw.p)
      fail(ErrorKind::InvalidInput, "radical rows have the wrong length");
    Matrix rad = row_space(*raw.radical);
    if (!is_two_sided_ideal(*a, rad))
      fail(ErrorKind::InvalidInput, "supplied radical is not a two-sided ideal");
    if (!is_nilpotent_ideal(*a, rad))
      fail(ErrorKind::InvalidInput, "supplied radical is not nilpotent");
    a->radical_ = std::move(rad);
    a->radical_source_ = RadicalSource::Supplied;
  }
  if (raw.simples) {
    for (std::size_t s = 0; s < raw.simples->size(); ++s) {
      const auto& act = (*raw.simples)[s];
      const std::string where = "simple " + std::to_string(s);
      if (act.size() != n) fail(ErrorKind::InvalidInput, where + ": wrong number of matrices");
      const std::size_t d = act.front().rows();
      if (d == 0) fail(ErrorKind::InvalidInput, where + ": simple modules are nonzero");
      Matrix one(d, d, raw.p);
      for (std::size_t l = 0; l < n; ++l) {
        if (act[l].rows() != d || act[l].cols() != d)
          fail(ErrorKind::InvalidInput, where + ": action matrices must be square of equal size");
        one.add_scaled(act[l], a->unit_[l]);
      }
      if (!one.is_identity()) fail(ErrorKind::InvalidInput, where + ": unit does not act as 1");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Matrix rhs(d, d, raw.p);
          auto row = a->product(i, j);
          for (std::size_t l = 0; l < n; ++l) rhs.add_scaled(act[l], row[l]);
          if (!(act[i] * act[j] == rhs))
            fail(ErrorKind::InvalidInput, where + ": module law fails at " + triple(i, j, 0));
        }
    }
    a->simples_ = std::move(raw.simples);
  }
  return a;
}

AlgebraPtr validate_algebra(AlgebraData raw) { return Algebra::make(std::move(raw)); }

AlgebraPtr from_quiver(const QuiverPresentation& q, Prime p) {
  require_prime(p);
  const std::size_t nv = q.vertices;
  const std::size_t na = q.arrows.size();
  if (nv == 0) fail(ErrorKind::InvalidInput, "quiver needs at least one vertex");
  for (std::size_t a = 0; a < na; ++a)
    if (q.arrows[a].first >= nv || q.arrows[a].second >= nv)
      fail(ErrorKind::InvalidInput, "arrow " + std::to_string(a) + " has an endpoint out of range");
  std::size_t max_rel = 1;
  for (std::size_t r = 0; r < q.relations.size(); ++r) {
    const auto& rel = q.relations[r];
    const std::string where = "relation " + std::to_string(r);
    if (rel.size() < 2) fail(ErrorKind::InvalidInput, where + " has length < 2");
    for (std::size_t t = 0; t < rel.size(); ++t) {
      if (rel[t] >= na) fail(ErrorKind::InvalidInput, where + " uses an unknown arrow");
      if (t > 0 && q.arrows[rel[t - 1]].second != q.arrows[rel[t]].first)
        fail(ErrorKind::InvalidInput, where + " is not a composable path");
    }
    max_rel = std::max(max_rel, rel.size());
  }

  // A nonzero path is determined, for the purpose of extension, by its end
  // vertex and its last max_rel-1 arrows.  A nonzero path at least as long as
  // the number of such states repeats a state and can be pumped forever.
  constexpr std::size_t kMaxBasis = 4096;
  std::size_t states = 0;
  {
    std::size_t term = 1;
    for (std::size_t k = 0; k < max_rel; ++k) {
      states = std::min<std::size_t>(states + nv * term, kMaxBasis * 16);
      term = std::min<std::size_t>(term * std::max<std::size_t>(na, 1), kMaxBasis * 16);
    }
  }

  struct Path {
    std::size_t src, tgt;
    std::vector<std::size_t> arrows;
  };
  std::vector<Path> paths;
  for (std::size_t v = 0; v < nv; ++v) paths.push_back({v, v, {}});
  auto ends_with_relation = [&](const std::vector<std::size_t>& w) {
    for (const auto& rel : q.relations)
      if (rel.size() <= w.size() && std::equal(rel.begin(), rel.end(), w.end() - rel.size()))
        return true;
    return false;
  };
  std::vector<std::size_t> level;
  for (std::size_t a = 0; a < na; ++a) {
    paths.push_back({q.arrows[a].first, q.arrows[a].second, {a}});
    level.push_back(paths.size() - 1);
  }
  for (std::size_t len = 1; !level.empty(); ++len) {
    if (len >= states)
      fail(ErrorKind::NotFiniteDimensional,
           "relations leave arbitrarily long nonzero paths (a cycle is not cut)");
    std::vector<std::size_t> next;
    for (auto idx : level) {
      for (std::size_t a = 0; a < na; ++a) {
        if (q.arrows[a].first != paths[idx].tgt) continue;
        auto w = paths[idx].arrows;
        w.push_back(a);
        if (ends_with_relation(w)) continue;
        paths.push_back({paths[idx].src, q.arrows[a].second, std::move(w)});
        next.push_back(paths.size() - 1);
        if (paths.size() > kMaxBasis)
          fail(ErrorKind::InvalidInput, "path algebra exceeds " + std::to_string(kMaxBasis) +
                                            " basis elements");
      }
    }
    level = std::move(next);
  }

  const std::size_t n = paths.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = nv; i < n; ++i) index[paths[i].arrows] = i;

  AlgebraData raw;
  raw.p = p;
  raw.dim = n;
  raw.unit.assign(n, 0);
  for (std::size_t v = 0; v < nv; ++v) raw.unit[v] = 1;
  // b_i * b_j: b_j is traversed first.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Path& later = paths[i];
      const Path& first = paths[j];
      if (first.tgt != later.src) continue;
      std::size_t k;
      if (i < nv) {
        k = j;
      } else if (j < nv) {
        k = i;
      } else {
        auto w = first.arrows;
        w.insert(w.end(), later.arrows.begin(), later.arrows.end());
        auto it = index.find(w);
        if (it == index.end()) continue;
        k = it->second;
      }
      raw.structure.push_back({i, j, k, 1});
    }
  Matrix rad(n - nv, n, p);
  for (std::size_t i = nv; i < n; ++i) rad(i - nv, i) = 1;
  raw.radical = std::move(rad);
  std::vector<std::vector<Matrix>> simples;
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<Matrix> act(n, Matrix(1, 1, p));
    act[v](0, 0) = 1;
    simples.push_back(std::move(act));
  }
  raw.simples = std::move(simples);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < nv) {
      raw.labels.push_back("e" + std::to_string(i));
      continue;
    }
    std::string label;
    for (auto a : paths[i].arrows) label += (label.empty() ? "a" : ".a") + std::to_string(a);
    raw.labels.push_back(label);
  }
  auto a = Algebra::make(std::move(raw));
  a->radical_source_ = RadicalSource::Quiver;
  a->quiver_vertices_ = nv;
  return a;
}

AlgebraPtr opposite(const AlgebraPtr& src) {
  const Algebra& a = *src;
  const std::size_t n = a.dim();
  std::shared_ptr<Algebra> op(new Algebra());
  op->p_ = a.p_;
  op->n_ = n;
  op->table_.assign(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto row = a.product(j, i);
      std::copy(row.begin(), row.end(), op->table_.begin() + (i * n + j) * n);
    }
  op->unit_ = a.unit_;
  op->labels_ = a.labels_;
  op->finish();
  op->radical_ = a.radical_;
  op->radical_source_ = a.radical_source_;
  op->quiver_vertices_ = a.quiver_vertices_;
  if (a.simples_) {
    std::vector<std::vector<Matrix>> dual;
    for (const auto& act : *a.simples_) {
      std::vector<Matrix> t;
      for (const auto& m : act) t.push_back(m.transpose());
      dual.push_back(std::move(t));
    }
    op->simples_ = std::move(dual);
  }
  return op;
}

Matrix ideal_product(const Algebra& a, const Matrix& left, const Matrix& right) {
  const std::size_t n = a.dim();
  EchelonSpan span(n, a.modulus());
  std::vector<std::vector<Elem>> rows;
  for (std::size_t r = 0; r < left.rows(); ++r)
    for (std::size_t s = 0; s < right.rows(); ++s) {
      auto w = a.multiply(left.row(r), right.row(s));
      if (span.add(w)) rows.push_back(std::move(w));
    }
  return row_space(rows_of(rows, n, a.modulus()));
}

bool is_two_sided_ideal(const Algebra& a, const Matrix& rows) {
  const std::size_t n = a.dim();
  EchelonSpan span(n, a.modulus());
  for (std::size_t r = 0; r < rows.rows(); ++r) span.add(rows.row(r));
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t i = 0; i < n; ++i) {
      auto b = a.basis_vector(i);
      if (!span.contains(a.multiply(b, rows.row(r)))) return false;
      if (!span.contains(a.multiply(rows.row(r), b))) return false;
    }
  return true;
}

bool is_nilpotent_ideal(const Algebra& a, const Matrix& rows) {
  Matrix power = row_space(rows);
  for (std::size_t k = 0; k <= a.dim() + 1; ++k) {
    if (power.rows() == 0) return true;
    power = ideal_product(a, power, rows);
  }
  return power.rows() == 0;
}

Matrix radical_basis(const Algebra& a) {
  if (a.supplied_radical()) return *a.supplied_radical();
  if (a.radical_cache_) return *a.radical_cache_;
  const std::size_t n = a.dim();
  const Prime p = a.modulus();
  if (p <= n)
    fail(ErrorKind::UnsupportedField,
         "no radical supplied and p = " + std::to_string(p) + " does not exceed dim A = " +
             std::to_string(n) + "; the trace-form method needs p > dim A");
  // Trace form Tr(L_i L_j); its kernel is rad A when p > dim A.
  Matrix gram(n, n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Matrix& li = a.left_regular(i);
      const Matrix& lj = a.left_regular(j);
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) acc = (acc + std::uint64_t{li(k, l)} * lj(l, k)) % p;
      gram(i, j) = gram(j, i) = static_cast<Elem>(acc);
    }
  Matrix rad = row_space(kernel_basis(gram));
  if (!is_two_sided_ideal(a, rad) || !is_nilpotent_ideal(a, rad))
    fail(ErrorKind::InternalError, "trace-form kernel is not a nilpotent ideal");
  a.radical_cache_ = rad;
  return rad;
}

namespace {

std::vector<std::vector<Matrix>> split_simples(const Algebra& a) {
  const std::size_t n = a.dim();
  const Prime p = a.modulus();
  const GF f{p};
  Matrix rad = radical_basis(a);

  Quotient quo;
  quo.rad = rref(rad);
  {
    std::vector<bool> piv(n, false);
    for (auto c : quo.rad.pivots) piv[c] = true;
    for (std::size_t c = 0; c < n; ++c)
      if (!piv[c]) quo.comp.push_back(c);
  }
  const std::size_t m = quo.comp.size();
  Table s;
  s.p = p;
  s.m = m;
  s.c.assign(m * m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto prod = quo.project(a.product(quo.comp[i], quo.comp[j]), p);
      std::copy(prod.begin(), prod.end(), s.c.begin() + (i * m + j) * m);
    }
  const std::vector<Elem> one = quo.project(a.unit(), p);
  std::vector<std::vector<Elem>> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = quo.project(a.basis_vector(i), p);

  // Semisimplicity of the quotient: its own trace form is nondegenerate.
  if (p > m) {
    Matrix gram(m, m, p);
    std::vector<Matrix> left(m, Matrix(m, m, p));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) left[i](k, j) = s.c[(i * m + j) * m + k];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Matrix prod = left[i] * left[j];
        Elem tr = 0;
        for (std::size_t k = 0; k < m; ++k) tr = f.add(tr, prod(k, k));
        gram(i, j) = tr;
      }
    if (rank(gram) != m) fail(ErrorKind::InvalidInput, "A / rad A is not semisimple");
  }

  // Centre of the quotient.
  Matrix central(m * m, m, p);
  {
    std::vector<Elem> ea(m, 0), eb(m, 0);
    for (std::size_t x = 0; x < m; ++x) {
      std::fill(ea.begin(), ea.end(), 0);
      ea[x] = 1;
      for (std::size_t b = 0; b < m; ++b) {
        std::fill(eb.begin(), eb.end(), 0);
        eb[b] = 1;
        auto l = s.mul(ea, eb);
        auto r = s.mul(eb, ea);
        for (std::size_t k = 0; k < m; ++k) central(b * m + k, x) = f.sub(l[k], r[k]);
      }
    }
  }
  Matrix centre = kernel_basis(central);

  std::mt19937_64 rng(0x5eedf00dULL);
  auto blocks = split_idempotents(s, centre, one, rng);

  std::vector<std::vector<Matrix>> out;
  std::size_t wedderburn = 0;
  for (const auto& eps : blocks) {
    const std::size_t block_dim = s.left_ideal_dim(eps);
    EchelonSpan zspan(m, p);
    for (std::size_t r = 0; r < centre.rows(); ++r)
      zspan.add(s.mul(std::vector<Elem>(centre.row(r).begin(), centre.row(r).end()), eps));
    const std::size_t centre_dim = zspan.dim();
    const std::size_t d = isqrt(block_dim * centre_dim);
    if (d * d != block_dim * centre_dim || centre_dim == 0)
      fail(ErrorKind::InternalError, "block of A / rad A is not a matrix algebra");
    wedderburn += block_dim;

    // Shrink a left ideal S*g, g idempotent in the block, until it is minimal.
    std::vector<Elem> g = eps;
    std::size_t cur = block_dim;
    for (int attempt = 0; cur > d; ++attempt) {
      if (attempt > 4000) fail(ErrorKind::InternalError, "minimal left ideal search failed");
      std::vector<Elem> c(m);
      for (auto& x : c) x = static_cast<Elem>(rng() % p);
      auto x = s.mul(g, s.mul(c, g));
      EchelonSpan span(m, p);
      std::vector<std::vector<Elem>> basis;
      span.add(g);
      basis.push_back(g);
      auto pw = x;
      while (span.add(pw)) {
        basis.push_back(pw);
        pw = s.mul(pw, x);
      }
      if (basis.size() < 2) continue;
      auto parts = split_idempotents(s, rows_of(basis, m, p), g, rng);
      if (parts.size() < 2) continue;
      std::size_t best = cur;
      for (const auto& part : parts) {
        const std::size_t dim = s.left_ideal_dim(part);
        if (dim < best) {
          best = dim;
          g = part;
        }
      }
      cur = best;
    }

    // The simple module S*g with A acting through the quotient.
    std::vector<std::vector<Elem>> gens;
    {
      std::vector<Elem> e(m, 0);
      for (std::size_t b = 0; b < m; ++b) {
        std::fill(e.begin(), e.end(), 0);
        e[b] = 1;
        gens.push_back(s.mul(e, g));
      }
    }
    RowEchelon ideal = rref(rows_of(gens, m, p));
    const std::size_t k = ideal.rank();
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < n; ++i) {
      Matrix rho(k, k, p);
      for (std::size_t col = 0; col < k; ++col) {
        auto v = s.mul(images[i], ideal.reduced.row(col));
        for (std::size_t r = 0; r < k; ++r) rho(r, col) = v[ideal.pivots[r]];
      }
      act.push_back(std::move(rho));
    }
    out.push_back(std::move(act));
  }
  if (wedderburn != m) fail(ErrorKind::InternalError, "blocks do not exhaust A / rad A");
  return out;
}

}  // namespace

std::vector<std::vector<Matrix>> simple_actions(const Algebra& a) {
  if (a.supplied_simples()) return *a.supplied_simples();
  if (!a.simples_cache_) a.simples_cache_ = split_simples(a);
  return *a.simples_cache_;
}

}  // namespace homres
