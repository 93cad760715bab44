#include "homres/linalg.hpp"

#include <algorithm>
#include <string>

#include "homres/error.hpp"

namespace homres {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NotFiniteDimensional: return "not-finite-dimensional";
    case ErrorKind::UnsupportedField: return "unsupported-field";
    case ErrorKind::NotAGenerator: return "not-a-generator";
    case ErrorKind::NeedsFiniteInjdim: return "needs-finite-injdim";
    case ErrorKind::HypothesesNotSatisfied: return "hypotheses-not-satisfied";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InternalError: return "internal-error";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

void require_prime(Prime p) {
  // Most calls repeat the same modulus.
  thread_local Prime last_ok = 0;
  if (p == last_ok) return;
  if (p > kMaxModulus || !is_prime(p))
    fail(ErrorKind::InvalidInput, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  last_ok = p;
}

Elem GF::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::InternalError, "inverse of zero in GF(p)");
  // extended Euclid
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<Elem>(t);
}

Elem GF::pow(Elem a, std::uint64_t e) const {
  Elem result = 1 % p;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Elem GF::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Prime p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (p < 2) fail(ErrorKind::InvalidInput, "modulus must be at least 2");
}

Matrix Matrix::identity(std::size_t n, Prime p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, Prime p,
                         std::size_t cols) {
  std::size_t c = rows.empty() ? cols : rows.front().size();
  Matrix m(rows.size(), c, p);
  GF f{p};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != c) fail(ErrorKind::InvalidInput, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(r, j) = f.reduce(rows[r][j]);
  }
  return m;
}

Matrix Matrix::column(std::span<const Elem> v, Prime p) {
  Matrix m(v.size(), 1, p);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::row_vector(std::span<const Elem> v, Prime p) {
  Matrix m(1, v.size(), p);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::int64_t v) {
  (*this)(r, c) = GF{p_}.reduce(v);
}

std::vector<Elem> Matrix::column_vector(std::size_t c) const {
  std::vector<Elem> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_)
    fail(ErrorKind::InvalidInput, "matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_, p_);
  // Accumulate in 64 bits and reduce lazily: each term is < p^2 < 2^62.
  const std::uint64_t p = p_;
  const std::uint64_t limit = ~std::uint64_t{0} - p * p;
  std::vector<std::uint64_t> acc(rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = (*this)(r, k);
      if (a == 0) continue;
      const Elem* brow = rhs.data_.data() + k * rhs.cols_;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        acc[c] += a * brow[c];
        if (acc[c] >= limit) acc[c] %= p;
      }
    }
    for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) = static_cast<Elem>(acc[c] % p);
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  out += rhs;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
    fail(ErrorKind::InvalidInput, "matrix sum shape mismatch");
  GF f{p_};
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = f.add(data_[i], rhs.data_[i]);
  return *this;
}

void Matrix::add_scaled(const Matrix& rhs, Elem s) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
    fail(ErrorKind::InvalidInput, "matrix sum shape mismatch");
  if (s == 0) return;
  GF f{p_};
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] = f.add(data_[i], f.mul(s, rhs.data_[i]));
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  Matrix out = *this;
  out.add_scaled(rhs, GF{p_}.neg(1));
  return out;
}

Matrix Matrix::operator-() const { return scaled(GF{p_}.neg(1)); }

Matrix Matrix::scaled(Elem s) const {
  Matrix out = *this;
  GF f{p_};
  for (auto& x : out.data_) x = f.mul(x, s);
  return out;
}

std::vector<Elem> Matrix::apply(std::span<const Elem> v) const {
  if (v.size() != cols_) fail(ErrorKind::InvalidInput, "matrix-vector shape mismatch");
  std::vector<Elem> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>((*this)(r, c)) * v[c];
      if (acc >= (std::uint64_t{1} << 62)) acc %= p_;
    }
    out[r] = static_cast<Elem>(acc % p_);
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorKind::InvalidInput, "block out of range");
  Matrix out(nr, nc, p_);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    fail(ErrorKind::InvalidInput, "block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_, p_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    std::copy_n(data_.begin() + idx[i] * cols_, cols_, out.data_.begin() + i * cols_);
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size(), p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) out(r, i) = (*this)(r, idx[i]);
  return out;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) fail(ErrorKind::InvalidInput, "hstack row mismatch");
  Matrix out(a.rows_, a.cols_ + b.cols_, a.p_);
  out.set_block(0, 0, a);
  out.set_block(0, a.cols_, b);
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) fail(ErrorKind::InvalidInput, "vstack column mismatch");
  Matrix out(a.rows_ + b.rows_, a.cols_, a.p_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, 0, b);
  return out;
}

Matrix Matrix::block_diagonal(std::span<const Matrix> blocks, Prime p) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix out(r, c, p);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

std::vector<std::vector<std::int64_t>> Matrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

namespace {

// In-place Gauss-Jordan on the first `ncols` columns.  Returns pivot columns.
std::vector<std::size_t> eliminate(Matrix& m, std::size_t ncols) {
  require_prime(m.modulus());
  const GF f = m.field();
  const std::uint64_t p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < ncols && prow < m.rows(); ++c) {
    std::size_t sel = prow;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != prow) {
      auto a = m.row(sel);
      auto b = m.row(prow);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow_span = m.row(prow);
    const Elem inv = f.inv(prow_span[c]);
    if (inv != 1)
      for (std::size_t k = c; k < cols; ++k) prow_span[k] = f.mul(prow_span[k], inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == prow) continue;
      auto row = m.row(r);
      const Elem factor = row[c];
      if (factor == 0) continue;
      const std::uint64_t neg = p - factor;
      for (std::size_t k = c; k < cols; ++k) {
        if (prow_span[k] == 0) continue;
        row[k] = static_cast<Elem>((row[k] + neg * prow_span[k]) % p);
      }
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

RowEchelon rref(const Matrix& m) {
  RowEchelon out{m, {}};
  out.pivots = eliminate(out.reduced, m.cols());
  return out;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) {
    require_prime(m.modulus());
    return 0;
  }
  Matrix work = m;
  return eliminate(work, m.cols()).size();
}

NullSpace null_space(const Matrix& m) {
  RowEchelon e = rref(m);
  const GF f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  NullSpace out;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.free_columns.push_back(c);
  out.basis = Matrix(out.free_columns.size(), m.cols(), m.modulus());
  for (std::size_t i = 0; i < out.free_columns.size(); ++i) {
    const std::size_t fc = out.free_columns[i];
    out.basis(i, fc) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      out.basis(i, e.pivots[r]) = f.neg(e.reduced(r, fc));
  }
  return out;
}

Matrix kernel_basis(const Matrix& m) { return null_space(m).basis; }

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.modulus() != b.modulus())
    fail(ErrorKind::InvalidInput, "solve_linear: dimension mismatch");
  Matrix aug = Matrix::hstack(a, b);
  auto pivots = eliminate(aug, a.cols());
  const std::size_t r = pivots.size();
  for (std::size_t row = r; row < aug.rows(); ++row)
    for (std::size_t c = a.cols(); c < aug.cols(); ++c)
      if (aug(row, c) != 0) return std::nullopt;
  Matrix x(a.cols(), b.cols(), a.modulus());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(pivots[i], c) = aug(i, a.cols() + c);
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  Matrix aug = Matrix::hstack(m, Matrix::identity(m.rows(), m.modulus()));
  auto pivots = eliminate(aug, m.cols());
  if (pivots.size() != m.rows()) return std::nullopt;
  return aug.block(0, m.cols(), m.rows(), m.cols());
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix power(const Matrix& m, std::uint64_t e) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "power of non-square matrix");
  Matrix result = Matrix::identity(m.rows(), m.modulus());
  Matrix base = m;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Matrix row_space(const Matrix& m) {
  RowEchelon e = rref(m);
  return e.reduced.block(0, 0, e.rank(), m.cols());
}

Matrix column_space(const Matrix& m) {
  RowEchelon e = rref(m);
  return m.select_cols(e.pivots);
}

std::vector<Elem> EchelonSpan::reduce(std::span<const Elem> v) const {
  if (v.size() != n_) fail(ErrorKind::InvalidInput, "vector length does not match span");
  std::vector<Elem> w(v.begin(), v.end());
  const GF f{p_};
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Elem c = w[pivots_[r]];
    if (c == 0) continue;
    const Elem neg = f.neg(c);
    for (std::size_t k = 0; k < n_; ++k)
      if (rows_[r][k]) w[k] = f.add(w[k], f.mul(neg, rows_[r][k]));
  }
  return w;
}

bool EchelonSpan::contains(std::span<const Elem> v) const {
  auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; });
}

bool EchelonSpan::add(std::span<const Elem> v) {
  auto w = reduce(v);
  std::size_t piv = 0;
  while (piv < n_ && w[piv] == 0) ++piv;
  if (piv == n_) return false;
  const GF f{p_};
  const Elem inv = f.inv(w[piv]);
  for (auto& x : w) x = f.mul(x, inv);
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  return true;
}

}  // namespace homres
