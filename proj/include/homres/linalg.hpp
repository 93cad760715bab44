#ifndef HOMRES_LINALG_HPP
#define HOMRES_LINALG_HPP

// Dense exact linear algebra over a prime field GF(p).
//
// Entries are stored reduced in [0, p).  Products are formed in 64-bit
// arithmetic, so the modulus must stay below 2^31.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace homres {

using Elem = std::uint32_t;
using Prime = std::uint32_t;

inline constexpr Prime kMaxModulus = (1u << 31) - 1;

bool is_prime(std::uint64_t n);

/// Throws InvalidInput unless p is a prime below 2^31.
void require_prime(Prime p);

struct GF {
  Prime p;

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p);
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem reduce(std::int64_t v) const;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Prime p);

  static Matrix identity(std::size_t n, Prime p);
  /// Entries are reduced mod p; negative values allowed.  `cols` is only
  /// consulted when `rows` is empty.
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                          Prime p, std::size_t cols = 0);
  static Matrix column(std::span<const Elem> v, Prime p);
  static Matrix row_vector(std::span<const Elem> v, Prime p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Prime modulus() const { return p_; }
  GF field() const { return GF{p_}; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v);

  std::span<const Elem> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::vector<Elem> column_vector(std::size_t c) const;
  const std::vector<Elem>& data() const { return data_; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(Elem s) const;
  Matrix& operator+=(const Matrix& rhs);
  /// this += s * rhs
  void add_scaled(const Matrix& rhs, Elem s);
  std::vector<Elem> apply(std::span<const Elem> v) const;

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& rhs) const = default;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix block_diagonal(std::span<const Matrix> blocks, Prime p);

  std::vector<std::vector<std::int64_t>> to_rows() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Prime p_ = 2;
  std::vector<Elem> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Right null space; rows of the result form a basis.  Each basis row has a
/// 1 in exactly one free column and 0 in the other free columns.
Matrix kernel_basis(const Matrix& m);

/// Null space together with its free columns: the coordinates of a vector
/// in the span with respect to the returned basis are its entries at
/// `free_columns`.
struct NullSpace {
  Matrix basis;
  std::vector<std::size_t> free_columns;
};
NullSpace null_space(const Matrix& m);

/// Solution of a*x = b with all free variables set to zero, or nullopt when
/// the system is inconsistent.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);
bool is_invertible(const Matrix& m);
Matrix power(const Matrix& m, std::uint64_t e);

/// Nonzero rows of rref(m): a canonical basis of the row space.
Matrix row_space(const Matrix& m);
/// Basis of the column space, as columns, picked from the pivot columns of m.
Matrix column_space(const Matrix& m);

/// Row-echelon span built one vector at a time.
class EchelonSpan {
 public:
  EchelonSpan(std::size_t ambient, Prime p) : n_(ambient), p_(p) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  bool contains(std::span<const Elem> v) const;
  /// Returns true when v was not already in the span.
  bool add(std::span<const Elem> v);

 private:
  std::vector<Elem> reduce(std::span<const Elem> v) const;

  std::size_t n_;
  Prime p_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace homres

#endif  // HOMRES_LINALG_HPP
