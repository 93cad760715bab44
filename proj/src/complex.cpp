#include "homres/complex.hpp"

#include <algorithm>
#include <functional>

#include "homres/error.hpp"
#include "homres/resolution.hpp"

namespace homres {

namespace {

// Linear system whose unknowns range over Hom spaces and whose equations are
// matrix valued: sum of L_k(unknown_k) = rhs.
class BlockSystem {
 public:
  explicit BlockSystem(Prime p) : p_(p) {}

  std::size_t unknown(const Module& x, const Module& y) {
    spaces_.emplace_back(x, y);
    offsets_.push_back(nvar_);
    nvar_ += spaces_.back().dim();
    return spaces_.size() - 1;
  }

  std::size_t equation(std::size_t rows, std::size_t cols) {
    eq_offset_.push_back(nrow_);
    eq_cols_.push_back(cols);
    rhs_.emplace_back(rows, cols, p_);
    nrow_ += rows * cols;
    return eq_offset_.size() - 1;
  }

  void term(std::size_t eq, std::size_t u, const std::function<Matrix(const Matrix&)>& op) {
    const HomSpace& h = spaces_[u];
    for (std::size_t l = 0; l < h.dim(); ++l) {
      Matrix m = op(h.basis()[l]);
      for (std::size_t k = 0; k < m.data().size(); ++k)
        if (m.data()[k]) entries_.push_back({eq_offset_[eq] + k, offsets_[u] + l, m.data()[k]});
    }
  }

  void rhs(std::size_t eq, const Matrix& m) { rhs_[eq] += m; }

  std::optional<std::vector<Matrix>> solve() const {
    const GF f{p_};
    Matrix b(nrow_, 1, p_);
    for (std::size_t e = 0; e < rhs_.size(); ++e)
      for (std::size_t k = 0; k < rhs_[e].data().size(); ++k) b(eq_offset_[e] + k, 0) = rhs_[e].data()[k];
    Matrix sol(nvar_, 1, p_);
    if (nvar_ == 0) {
      if (!b.is_zero()) return std::nullopt;
    } else if (nrow_ > 0) {
      Matrix a(nrow_, nvar_, p_);
      for (const auto& [r, c, v] : entries_) a(r, c) = f.add(a(r, c), v);
      auto s = solve_linear(a, b);
      if (!s) return std::nullopt;
      sol = std::move(*s);
    }
    std::vector<Matrix> out;
    for (std::size_t u = 0; u < spaces_.size(); ++u) {
      std::vector<Elem> coef(spaces_[u].dim());
      for (std::size_t l = 0; l < coef.size(); ++l) coef[l] = sol(offsets_[u] + l, 0);
      out.push_back(spaces_[u].combine(coef));
    }
    return out;
  }

 private:
  struct Entry {
    std::size_t row, col;
    Elem value;
  };
  Prime p_;
  std::vector<HomSpace> spaces_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> eq_offset_, eq_cols_;
  std::vector<Matrix> rhs_;
  std::vector<Entry> entries_;
  std::size_t nvar_ = 0, nrow_ = 0;
};

Matrix zero_matrix(std::size_t r, std::size_t c, Prime p) { return Matrix(r, c, p); }

int window_lo(const Complex& x, const Complex& y) {
  if (x.size() == 0) return y.lo();
  if (y.size() == 0) return x.lo();
  return std::min(x.lo(), y.lo());
}

int window_hi(const Complex& x, const Complex& y) {
  if (x.size() == 0) return y.hi();
  if (y.size() == 0) return x.hi();
  return std::max(x.hi(), y.hi());
}

void require_same_algebra(const Complex& x, const Complex& y) {
  if (!same_algebra(x.algebra(), y.algebra()))
    fail(ErrorKind::InvalidInput, "complexes live over different algebras");
}

ModuleMap approximate(const Module& k, const AddCategory& c) {
  if (c.is_regular()) return free_cover(k).map;
  return right_approximation(k, c).map;
}

struct Res {
  Complex c;
  std::map<int, Matrix> phi;  // c -> x
};

// Approximation sequence of a stalk module down to `target`.
Res resolve_stalk(const Module& x, int j, const AddCategory& cat, int target) {
  const AlgebraPtr& a = x.algebra();
  const Prime p = x.modulus();
  if (add_membership(x, cat).member)
    return {Complex::stalk(x, j), {{j, Matrix::identity(x.dim(), p)}}};
  ModuleMap top = approximate(x, cat);
  std::vector<Module> terms{top.source()};
  std::vector<Matrix> diffs;
  Kernel k = map_kernel(top);
  int deg = j - 1;
  for (; deg >= target && k.module.dim() > 0; --deg) {
    if (add_membership(k.module, cat).member) {
      terms.push_back(k.module);
      diffs.push_back(k.inclusion.matrix());
      --deg;
      break;
    }
    ModuleMap f = approximate(k.module, cat);
    terms.push_back(f.source());
    diffs.push_back(k.inclusion.matrix() * f.matrix());
    k = map_kernel(f);
  }
  std::reverse(terms.begin(), terms.end());
  std::reverse(diffs.begin(), diffs.end());
  const int lo = j - static_cast<int>(terms.size()) + 1;
  return {Complex::trusted(a, lo, std::move(terms), std::move(diffs)), {{j, top.matrix()}}};
}

Res resolve(const Complex& x, const AddCategory& cat, int target) {
  auto sup = x.support();
  if (!sup) return {Complex::zero(x.algebra()), {}};
  const auto [j, h] = *sup;
  if (j == h) return resolve_stalk(x.term(j), j, cat, target);

  // x = Cone(u : X1 -> X2) with X1 the stalk X^j in degree j+1 and u = d^j.
  const Complex x1 = Complex::stalk(x.term(j), j + 1);
  const Complex x2 = x.brutal_above(j + 1);
  Res r1 = resolve(x1, cat, target);
  Res r2 = resolve(x2, cat, target);
  const Complex& c1 = r1.c;
  const Complex& c2 = r2.c;
  auto phi1 = [&](int i) {
    auto it = r1.phi.find(i);
    return it != r1.phi.end() ? it->second : zero_matrix(x1.term(i).dim(), c1.term(i).dim(), x.algebra()->modulus());
  };
  auto phi2 = [&](int i) {
    auto it = r2.phi.find(i);
    return it != r2.phi.end() ? it->second : zero_matrix(x2.term(i).dim(), c2.term(i).dim(), x.algebra()->modulus());
  };

  // Unknowns f : C1 -> C2 (chain map) and sigma^i : C1^i -> X2^{i-1} with
  // phi2 f - d sigma - sigma d = u phi1.
  const Prime p = x.algebra()->modulus();
  BlockSystem sys(p);
  std::map<int, std::size_t> fu, su;
  for (int i = c1.lo(); i <= c1.hi(); ++i) {
    if (c1.term(i).dim() == 0) continue;
    if (c2.term(i).dim() > 0) fu[i] = sys.unknown(c1.term(i), c2.term(i));
    if (x2.term(i - 1).dim() > 0) su[i] = sys.unknown(c1.term(i), x2.term(i - 1));
  }
  for (int i = c1.lo(); i <= c1.hi(); ++i) {
    if (c1.term(i).dim() == 0) continue;
    const Matrix d1 = c1.diff(i);
    if (c2.term(i + 1).dim() > 0) {
      auto e = sys.equation(c2.term(i + 1).dim(), c1.term(i).dim());
      if (fu.count(i)) {
        const Matrix d2 = c2.diff(i);
        sys.term(e, fu[i], [&](const Matrix& m) { return d2 * m; });
      }
      if (fu.count(i + 1)) sys.term(e, fu[i + 1], [&](const Matrix& m) { return -(m * d1); });
    }
    if (x2.term(i).dim() > 0) {
      auto e = sys.equation(x2.term(i).dim(), c1.term(i).dim());
      if (fu.count(i)) {
        const Matrix p2 = phi2(i);
        sys.term(e, fu[i], [&](const Matrix& m) { return p2 * m; });
      }
      if (su.count(i)) {
        const Matrix dx = x2.diff(i - 1);
        sys.term(e, su[i], [&](const Matrix& m) { return -(dx * m); });
      }
      if (su.count(i + 1)) sys.term(e, su[i + 1], [&](const Matrix& m) { return -(m * d1); });
      if (i == j + 1) sys.rhs(e, x.diff(j) * phi1(i));
    }
  }
  auto sol = sys.solve();
  if (!sol) fail(ErrorKind::InternalError, "no lift between approximation complexes");

  std::map<int, Matrix> fcomp, sigma;
  for (auto [i, u] : fu) fcomp[i] = (*sol)[u];
  for (auto [i, u] : su) sigma[i] = (*sol)[u];
  ChainMap f = ChainMap::trusted(c1, c2, fcomp);
  Complex cone = mapping_cone(f).cone;
  std::map<int, Matrix> phi;
  for (int i = cone.lo(); i <= cone.hi(); ++i) {
    const std::size_t w1 = c1.term(i + 1).dim();
    Matrix m(x.term(i).dim(), cone.term(i).dim(), p);
    if (m.rows() == 0 || m.cols() == 0) continue;
    if (i == j) {
      m.set_block(0, 0, phi1(j + 1));
    } else if (i > j) {
      if (sigma.count(i + 1)) m.set_block(0, 0, sigma[i + 1]);
      m.set_block(0, w1, phi2(i));
    }
    phi[i] = std::move(m);
  }
  return {std::move(cone), std::move(phi)};
}

// Hom^m(x, y) = prod_i Hom(X^i, Y^{i+m}) as a list of blocks.
struct HomBlocks {
  std::vector<int> degree;
  std::vector<HomSpace> space;
  std::vector<std::size_t> offset;
  std::size_t dim = 0;
  std::optional<std::size_t> find(int i) const {
    for (std::size_t k = 0; k < degree.size(); ++k)
      if (degree[k] == i) return k;
    return std::nullopt;
  }
};

HomBlocks hom_blocks(const Complex& x, const Complex& y, int m) {
  HomBlocks b;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    if (x.term(i).dim() == 0 || y.term(i + m).dim() == 0) continue;
    b.degree.push_back(i);
    b.space.emplace_back(x.term(i), y.term(i + m));
    b.offset.push_back(b.dim);
    b.dim += b.space.back().dim();
  }
  return b;
}

// Matrix of D : Hom^m -> Hom^{m+1}, D phi = d_Y phi - (-1)^m phi d_X.
Matrix hom_differential(const Complex& x, const Complex& y, int m, const HomBlocks& src,
                        const HomBlocks& dst) {
  const Prime p = x.algebra()->modulus();
  const GF f{p};
  Matrix d(dst.dim, src.dim, p);
  const Elem sign = (m % 2 == 0) ? f.neg(1) : 1;
  for (std::size_t k = 0; k < src.degree.size(); ++k) {
    const int i = src.degree[k];
    const HomSpace& h = src.space[k];
    for (std::size_t l = 0; l < h.dim(); ++l) {
      const std::size_t col = src.offset[k] + l;
      if (auto t = dst.find(i)) {
        auto c = dst.space[*t].coordinates(y.diff(i + m) * h.basis()[l]);
        for (std::size_t r = 0; r < c.size(); ++r) d(dst.offset[*t] + r, col) = f.add(d(dst.offset[*t] + r, col), c[r]);
      }
      if (auto t = dst.find(i - 1)) {
        auto c = dst.space[*t].coordinates((h.basis()[l] * x.diff(i - 1)).scaled(sign));
        for (std::size_t r = 0; r < c.size(); ++r) d(dst.offset[*t] + r, col) = f.add(d(dst.offset[*t] + r, col), c[r]);
      }
    }
  }
  return d;
}

}  // namespace

Complex::Complex(AlgebraPtr a, int lo, std::vector<Module> terms, std::vector<Matrix> diffs) {
  if (!a) fail(ErrorKind::InvalidInput, "complex needs an algebra");
  const std::size_t want = terms.empty() ? 0 : terms.size() - 1;
  if (diffs.size() != want)
    fail(ErrorKind::InvalidInput, "complex with " + std::to_string(terms.size()) + " terms needs " +
                                      std::to_string(want) + " differentials");
  for (std::size_t k = 0; k < terms.size(); ++k)
    if (!same_algebra(a, terms[k].algebra()))
      fail(ErrorKind::InvalidInput, "term in degree " + std::to_string(lo + static_cast<int>(k)) +
                                        " is over a different algebra");
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    const int deg = lo + static_cast<int>(k);
    if (diffs[k].rows() != terms[k + 1].dim() || diffs[k].cols() != terms[k].dim() ||
        diffs[k].modulus() != a->modulus())
      fail(ErrorKind::InvalidInput, "d^" + std::to_string(deg) + " has the wrong shape");
    if (!is_intertwiner(terms[k], terms[k + 1], diffs[k]))
      fail(ErrorKind::InvalidInput, "d^" + std::to_string(deg) + " is not A-linear");
    if (k + 1 < diffs.size() && !(diffs[k + 1] * diffs[k]).is_zero())
      fail(ErrorKind::InvalidInput, "d^" + std::to_string(deg + 1) + " d^" + std::to_string(deg) + " != 0");
  }
  *this = trusted(std::move(a), lo, std::move(terms), std::move(diffs));
}

Complex Complex::trusted(AlgebraPtr a, int lo, std::vector<Module> terms, std::vector<Matrix> diffs) {
  Complex c;
  c.zero_ = Module::zero(a);
  c.a_ = std::move(a);
  c.lo_ = lo;
  c.terms_ = std::move(terms);
  c.diffs_ = std::move(diffs);
  return c;
}

Complex Complex::zero(const AlgebraPtr& a) { return trusted(a, 0, {}, {}); }

Complex Complex::stalk(const Module& m, int degree) { return trusted(m.algebra(), degree, {m}, {}); }

const Module& Complex::term(int i) const {
  if (i < lo_ || i > hi()) return zero_;
  return terms_[static_cast<std::size_t>(i - lo_)];
}

Matrix Complex::diff(int i) const {
  if (i >= lo_ && i < hi()) return diffs_[static_cast<std::size_t>(i - lo_)];
  return Matrix(term(i + 1).dim(), term(i).dim(), a_->modulus());
}

std::size_t Complex::total_dim() const {
  std::size_t s = 0;
  for (const auto& t : terms_) s += t.dim();
  return s;
}

std::optional<std::pair<int, int>> Complex::support() const {
  std::optional<std::pair<int, int>> out;
  for (int i = lo_; i <= hi(); ++i) {
    if (term(i).dim() == 0) continue;
    if (!out) out = {i, i};
    out->second = i;
  }
  return out;
}

Complex Complex::shift(int n) const {
  std::vector<Matrix> d = diffs_;
  if (n % 2 != 0)
    for (auto& m : d) m = -m;
  return trusted(a_, lo_ - n, terms_, std::move(d));
}

Complex Complex::brutal_above(int a) const {
  if (a <= lo_) return *this;
  if (a > hi()) return trusted(a_, a, {}, {});
  const auto k = static_cast<std::size_t>(a - lo_);
  return trusted(a_, a, std::vector<Module>(terms_.begin() + k, terms_.end()),
                 std::vector<Matrix>(diffs_.begin() + k, diffs_.end()));
}

ChainMap::ChainMap(Complex source, Complex target, std::map<int, Matrix> components) {
  require_same_algebra(source, target);
  for (const auto& [i, m] : components) {
    if (m.rows() != target.term(i).dim() || m.cols() != source.term(i).dim())
      fail(ErrorKind::InvalidInput, "chain map component " + std::to_string(i) + " has the wrong shape");
    if (!is_intertwiner(source.term(i), target.term(i), m))
      fail(ErrorKind::InvalidInput, "chain map component " + std::to_string(i) + " is not A-linear");
  }
  *this = trusted(std::move(source), std::move(target), std::move(components));
  const int lo = window_lo(source_, target_) - 1;
  const int hi = window_hi(source_, target_);
  for (int i = lo; i <= hi; ++i)
    if (!(component(i + 1) * source_.diff(i) == target_.diff(i) * component(i)))
      fail(ErrorKind::InvalidInput, "chain map does not commute with d^" + std::to_string(i));
}

ChainMap ChainMap::trusted(Complex source, Complex target, std::map<int, Matrix> components) {
  ChainMap f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.components_ = std::move(components);
  return f;
}

ChainMap ChainMap::identity(const Complex& x) {
  std::map<int, Matrix> c;
  for (int i = x.lo(); i <= x.hi(); ++i) c[i] = Matrix::identity(x.term(i).dim(), x.algebra()->modulus());
  return trusted(x, x, std::move(c));
}

ChainMap ChainMap::zero(const Complex& x, const Complex& y) {
  require_same_algebra(x, y);
  return trusted(x, y, {});
}

Matrix ChainMap::component(int i) const {
  auto it = components_.find(i);
  if (it != components_.end()) return it->second;
  return Matrix(target_.term(i).dim(), source_.term(i).dim(), source_.algebra()->modulus());
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  const int lo = window_lo(f.source(), g.target());
  const int hi = window_hi(f.source(), g.target());
  for (int i = lo; i <= hi; ++i)
    if (f.target().term(i).dim() != g.source().term(i).dim())
      fail(ErrorKind::InvalidInput, "chain maps are not composable in degree " + std::to_string(i));
  std::map<int, Matrix> c;
  for (int i = lo; i <= hi; ++i) c[i] = g.component(i) * f.component(i);
  return ChainMap::trusted(f.source(), g.target(), std::move(c));
}

Matrix Homotopy::component(int i) const {
  auto it = components.find(i);
  if (it != components.end()) return it->second;
  return Matrix(f.target().term(i - 1).dim(), f.source().term(i).dim(),
                f.source().algebra()->modulus());
}

bool is_homotopy(const Homotopy& h) {
  const Complex& x = h.f.source();
  const Complex& y = h.f.target();
  for (const auto& [i, m] : h.components)
    if (m.rows() != y.term(i - 1).dim() || m.cols() != x.term(i).dim() ||
        !is_intertwiner(x.term(i), y.term(i - 1), m))
      return false;
  const int lo = window_lo(x, y);
  const int hi = window_hi(x, y);
  for (int i = lo; i <= hi; ++i) {
    Matrix lhs = h.f.component(i) - h.g.component(i);
    Matrix rhs = y.diff(i - 1) * h.component(i) + h.component(i + 1) * x.diff(i);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

Cone mapping_cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const AlgebraPtr& a = x.algebra();
  const Prime p = a->modulus();
  const Complex x1 = x.shift(1);
  if (x.size() == 0 && y.size() == 0) {
    Complex z = Complex::zero(a);
    return {z, ChainMap::trusted(y, z, {}), ChainMap::trusted(z, x1, {})};
  }
  const int lo = window_lo(x1, y);
  const int hi = window_hi(x1, y);
  std::vector<Module> terms;
  std::vector<Matrix> diffs;
  std::map<int, Matrix> inc, proj;
  for (int i = lo; i <= hi; ++i) {
    const Module xs[] = {x.term(i + 1), y.term(i)};
    terms.push_back(direct_sum(a, xs).sum);
    const std::size_t dx = x.term(i + 1).dim(), dy = y.term(i).dim();
    Matrix in(dx + dy, dy, p);
    in.set_block(dx, 0, Matrix::identity(dy, p));
    inc[i] = std::move(in);
    Matrix pr(dx, dx + dy, p);
    pr.set_block(0, 0, Matrix::identity(dx, p));
    proj[i] = std::move(pr);
    if (i == hi) break;
    const std::size_t ex = x.term(i + 2).dim(), ey = y.term(i + 1).dim();
    Matrix d(ex + ey, dx + dy, p);
    d.set_block(0, 0, -x.diff(i + 1));
    d.set_block(ex, 0, f.component(i + 1));
    d.set_block(ex, dx, y.diff(i));
    diffs.push_back(std::move(d));
  }
  Complex c = Complex::trusted(a, lo, std::move(terms), std::move(diffs));
  return {c, ChainMap::trusted(y, c, std::move(inc)), ChainMap::trusted(c, x1, std::move(proj))};
}

std::map<int, std::size_t> homology_dims(const Complex& x) {
  std::map<int, std::size_t> h;
  for (int i = x.lo(); i <= x.hi(); ++i)
    h[i] = x.term(i).dim() - rank(x.diff(i)) - rank(x.diff(i - 1));
  return h;
}

bool is_acyclic(const Complex& x) {
  for (auto [i, d] : homology_dims(x))
    if (d) return false;
  return true;
}

std::map<int, std::vector<std::size_t>> c_homology(const Complex& x, const AddCategory& c) {
  if (!same_algebra(x.algebra(), c.algebra()))
    fail(ErrorKind::InvalidInput, "complex and add M live over different algebras");
  std::map<int, std::vector<std::size_t>> out;
  for (const auto& mj : c.summands()) {
    const Complex s = Complex::stalk(mj, 0);
    std::map<int, std::size_t> ranks;
    std::map<int, HomBlocks> blocks;
    for (int i = x.lo() - 1; i <= x.hi() + 1; ++i) blocks.emplace(i, hom_blocks(s, x, i));
    for (int i = x.lo() - 1; i <= x.hi(); ++i)
      ranks[i] = rank(hom_differential(s, x, i, blocks.at(i), blocks.at(i + 1)));
    for (int i = x.lo(); i <= x.hi(); ++i)
      out[i].push_back(blocks.at(i).dim - ranks[i] - ranks[i - 1]);
  }
  return out;
}

bool is_c_acyclic(const Complex& x, const AddCategory& c, std::optional<int> from) {
  for (const auto& [i, dims] : c_homology(x, c)) {
    if (from && i < *from) continue;
    for (auto d : dims)
      if (d) return false;
  }
  return true;
}

std::size_t homotopy_hom_dim(const Complex& x, const Complex& y, int n) {
  require_same_algebra(x, y);
  HomBlocks prev = hom_blocks(x, y, n - 1);
  HomBlocks cur = hom_blocks(x, y, n);
  HomBlocks next = hom_blocks(x, y, n + 1);
  const std::size_t out_rank = rank(hom_differential(x, y, n, cur, next));
  const std::size_t in_rank = rank(hom_differential(x, y, n - 1, prev, cur));
  return cur.dim - out_rank - in_rank;
}

CResolution c_resolution(const Complex& x, const AddCategory& c, std::size_t depth) {
  if (!same_algebra(x.algebra(), c.algebra()))
    fail(ErrorKind::InvalidInput, "complex and add M live over different algebras");
  const int target = x.lo() - static_cast<int>(depth);
  Res r = resolve(x, c, target);
  ChainMap phi(r.c, x, std::move(r.phi));
  return {std::move(r.c), std::move(phi), target};
}

PerfectResult perfect_test(const Complex& x, std::size_t bound) {
  PerfectResult out;
  out.bound = bound;
  std::optional<int> low;
  for (auto [i, d] : homology_dims(x))
    if (d && !low) low = i;
  if (!low) {
    out.perfect = true;
    out.degree = x.hi();
    out.length = 0;
    return out;
  }
  const AddCategory proj({Module::regular(x.algebra())});
  const int top_n = *low - 1;
  const int last_n = top_n - static_cast<int>(bound);
  Res q = resolve(x, proj, last_n - 1);
  const int top = q.c.support()->second;
  for (int n = top_n; n >= last_n; --n) {
    Image im = map_image(q.c.diff_map(n));
    if (!is_projective(im.module)) continue;
    int bottom = n;
    if (im.module.dim() == 0) {
      bottom = n + 1;
      while (bottom < top && q.c.term(bottom).dim() == 0) ++bottom;
    }
    out.perfect = true;
    out.degree = n;
    out.length = static_cast<std::size_t>(top - bottom);
    return out;
  }
  return out;
}

std::optional<Retraction> homotopy_retraction(const ChainMap& t, const AddCategory& injectives_ok) {
  const Complex& in = t.source();
  const Complex& c = t.target();
  for (int i = in.lo(); i <= in.hi(); ++i) {
    if (in.term(i).dim() == 0) continue;
    for (std::size_t j = 0; j < injectives_ok.summands().size(); ++j)
      if (ext_dims(injectives_ok.summands()[j], in.term(i), 1).dims[1] != 0)
        fail(ErrorKind::HypothesesNotSatisfied,
             "Ext^1(M_" + std::to_string(j) + ", I^" + std::to_string(i) + ") is nonzero");
  }
  if (!is_acyclic(mapping_cone(t).cone))
    fail(ErrorKind::HypothesesNotSatisfied, "t is not a quasi-isomorphism");

  const Prime p = in.algebra()->modulus();
  const int lo = window_lo(in, c);
  const int hi = window_hi(in, c);
  BlockSystem sys(p);
  std::map<int, std::size_t> su, hu;
  for (int i = lo; i <= hi; ++i) {
    if (c.term(i).dim() && in.term(i).dim()) su[i] = sys.unknown(c.term(i), in.term(i));
    if (in.term(i).dim() && in.term(i - 1).dim()) hu[i] = sys.unknown(in.term(i), in.term(i - 1));
  }
  for (int i = lo; i <= hi; ++i) {
    if (c.term(i).dim() && in.term(i + 1).dim()) {
      auto e = sys.equation(in.term(i + 1).dim(), c.term(i).dim());
      const Matrix di = in.diff(i), dc = c.diff(i);
      if (su.count(i)) sys.term(e, su[i], [&](const Matrix& m) { return di * m; });
      if (su.count(i + 1)) sys.term(e, su[i + 1], [&](const Matrix& m) { return -(m * dc); });
    }
    if (in.term(i).dim()) {
      auto e = sys.equation(in.term(i).dim(), in.term(i).dim());
      const Matrix ti = t.component(i), dprev = in.diff(i - 1), di = in.diff(i);
      if (su.count(i)) sys.term(e, su[i], [&](const Matrix& m) { return m * ti; });
      if (hu.count(i)) sys.term(e, hu[i], [&](const Matrix& m) { return -(dprev * m); });
      if (hu.count(i + 1)) sys.term(e, hu[i + 1], [&](const Matrix& m) { return -(m * di); });
      sys.rhs(e, Matrix::identity(in.term(i).dim(), p));
    }
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  std::map<int, Matrix> sc, hc;
  for (auto [i, u] : su) sc[i] = (*sol)[u];
  for (auto [i, u] : hu) hc[i] = (*sol)[u];
  ChainMap s = ChainMap::trusted(c, in, std::move(sc));
  Homotopy h{compose(s, t), ChainMap::identity(in), std::move(hc)};
  return Retraction{std::move(s), std::move(h)};
}

bool TruncationSplitReport::all_split() const {
  return hypotheses_satisfied && std::all_of(degrees.begin(), degrees.end(), [](const SplitDegree& d) {
           return d.splits && d.image_in_add;
         });
}

TruncationSplitReport acyclic_truncation_split(const Complex& x, const AddCategory& c) {
  TruncationSplitReport rep;
  for (int i = x.lo(); i <= x.hi(); ++i)
    if (!add_membership(x.term(i), c).member) {
      rep.failure = "term in degree " + std::to_string(i) + " is not in add M";
      return rep;
    }
  if (!is_acyclic(x)) {
    rep.failure = "complex is not acyclic";
    return rep;
  }
  if (!is_c_acyclic(x, c)) {
    rep.failure = "complex is not C-acyclic";
    return rep;
  }
  rep.hypotheses_satisfied = true;
  const Prime p = x.algebra()->modulus();
  for (int n = x.lo(); n < x.hi(); ++n) {
    Image im = map_image(x.diff_map(n));
    SplitDegree sd;
    sd.degree = n;
    sd.image_dim = im.module.dim();
    sd.image_in_add = add_membership(im.module, c).member;
    if (sd.image_dim == 0) {
      sd.splits = true;
    } else {
      BlockSystem sys(p);
      auto u = sys.unknown(im.module, x.term(n));
      auto e = sys.equation(sd.image_dim, sd.image_dim);
      const Matrix core = im.corestriction.matrix();
      sys.term(e, u, [&](const Matrix& m) { return core * m; });
      sys.rhs(e, Matrix::identity(sd.image_dim, p));
      sd.splits = sys.solve().has_value();
    }
    rep.degrees.push_back(sd);
  }
  return rep;
}

}  // namespace homres
