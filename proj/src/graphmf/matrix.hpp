#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace graphmf {

using Int = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Int>;

Vector make_vector(std::initializer_list<long> values);
Vector zero_vector(std::size_t n);
bool is_zero(const Vector& v);
Int dot(const Vector& a, const Vector& b);
/// gcd of all entries (0 for the zero vector).
Int content(const Vector& v);
std::string to_string(const Vector& v);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  std::vector<Vector> columns() const;

  IntMatrix transpose() const;
  /// Rows [r0, r0+nr) x cols [c0, c0+nc).
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);

  bool is_identity() const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend Vector operator*(const IntMatrix& a, const Vector& v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Exact determinant (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);
/// Inverse of a unimodular matrix; throws InputError otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);
IntMatrix power(const IntMatrix& m, unsigned long exponent);

}  // namespace graphmf
