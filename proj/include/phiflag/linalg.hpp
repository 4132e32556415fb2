// Exact dense linear algebra over the rationals.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phiflag {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed text or q = 0.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t k);
bool is_zero(const Vector& v);

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void append_row(const Vector& v);
  Matrix transpose() const;
  bool is_zero() const;

  /// Entries in row-major order; used to treat n x n matrices as vectors of length n^2.
  const std::vector<Rational>& flat() const { return a_; }
  static Matrix from_flat(std::size_t rows, std::size_t cols, const Vector& v);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
Vector operator*(const Matrix& a, const Vector& v);

struct RrefResult {
  Matrix form;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);

/// Subspace of Q^ambient stored as a canonical RREF basis (one row per basis vector),
/// so equal subspaces have identical representations.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0);
  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Vector> vectors() const;

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Basis of the linear functionals vanishing on this subspace.
  std::vector<Vector> annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_;
  Matrix basis_;
};

Subspace kernel(const Matrix& m);
/// One solution of m x = b (free variables set to zero), or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// Image of the subspace under x -> m x.
Subspace image(const Matrix& m, const Subspace& s);
Subspace column_space(const Matrix& m);

}  // namespace phiflag
