#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reflexa/field.hpp"

namespace reflexa {

// Dense exact matrix over a prime field or Q, row-major.
//
// Prime-field entries are stored as residues, rational entries as reduced
// GMP fractions; only the storage matching `field()` is populated.
class Matrix {
 public:
  Matrix() : field_(Field::prime(2)) {}
  Matrix(Field k, std::size_t rows, std::size_t cols);

  static Matrix identity(Field k, std::size_t n);
  static Matrix from_ints(Field k, const std::vector<std::vector<long>>& rows);
  static Matrix from_scalars(Field k, const std::vector<std::vector<Scalar>>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& s);
  bool is_zero_at(std::size_t r, std::size_t c) const;
  // Prime fields only: raw residue access, used by hot enumeration loops.
  std::uint32_t residue(std::size_t r, std::size_t c) const { return fp_[r * cols_ + c]; }
  void set_residue(std::size_t r, std::size_t c, std::uint32_t v) { fp_[r * cols_ + c] = v; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& s) const;
  Matrix& operator+=(const Matrix& o);
  bool operator==(const Matrix& o) const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix row(std::size_t r) const { return block(r, 0, 1, cols_); }
  Matrix col(std::size_t c) const { return block(0, c, rows_, 1); }
  // Rows / columns selected by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

  // Same entries read in row-major order into a new shape.
  Matrix reshaped(std::size_t rows, std::size_t cols) const;

  bool is_zero() const;
  bool is_identity() const;
  std::size_t rank() const;

  // Byte-exact fingerprint of shape and entries; equal iff matrices equal.
  std::string key() const;
  std::string to_string() const;

 private:
  template <class Ops>
  friend struct Access;

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> fp_;
  std::vector<mpq_class> q_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
// Kronecker product; vec(A X B) = kron(A, B^T) vec(X) for row-major vec.
Matrix kron(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

RrefResult rref(const Matrix& m);

// Rows form the canonical (RREF-derived) basis of {v : m * v^T = 0}.
Matrix kernel_basis(const Matrix& m);

// Canonical particular solution of a * x = b (free variables zero), or
// nullopt when inconsistent. Throws DimensionMismatch if a.rows != b.rows.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

// Columns form the canonical basis of the column space of m.
Matrix column_space(const Matrix& m);
// Columns form a basis of {v : m * v = 0}.
Matrix null_space_columns(const Matrix& m);
// Rows y with y * m = 0, canonical.
Matrix left_kernel(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace reflexa
