#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nilq/scalar.hpp"

namespace nilq {

/// Dense row-major rational matrix.
using Matrix = std::vector<Vector>;

Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix identity_matrix(std::size_t n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& m, const Vector& x);

/// In-place reduced row-echelon form; returns pivot columns. Zero rows are dropped.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of {x : m x = 0}, one vector per free column, in free-column order.
std::vector<Vector> nullspace(const Matrix& m, std::size_t cols);

/// Some solution of m x = b, free variables set to zero.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Inverse of a square matrix; throws InputError when singular.
Matrix inverse(const Matrix& m);

/// Sparse incremental Gaussian elimination for coefficient-matching systems
/// with many unknowns. Rows are added one at a time; the system tracks
/// consistency and produces the solution with free unknowns set to zero.
class SparseSystem {
 public:
  using Row = std::map<std::size_t, Scalar>;

  explicit SparseSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds the equation sum(row[c] * x_c) = rhs. Returns false if it makes the system inconsistent.
  bool add(Row row, Scalar rhs);

  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t unknowns() const { return unknowns_; }

  std::optional<std::vector<Scalar>> solution() const;

 private:
  struct PivotRow {
    Row row;
    Scalar rhs;
  };
  std::size_t unknowns_;
  bool consistent_ = true;
  std::map<std::size_t, PivotRow> pivots_;
};

}  // namespace nilq
