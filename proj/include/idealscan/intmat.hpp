#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "idealscan/numeric.hpp"

namespace idealscan {

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t j);
  /// Row operation R_i <- R_i + c * R_j.
  void add_row_multiple(std::size_t i, std::size_t j, const BigInt& c);

  IntMatrix without_column(std::size_t col) const;

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Exact determinant by Bareiss fraction-free elimination. Throws
/// std::invalid_argument on a non-square input. det of the 0x0 matrix is 1.
BigInt det(const IntMatrix& m);

/// For a k x (k+1) matrix, the vector of signed maximal minors:
/// component nu (0-based) is (-1)^nu * det(matrix with column nu removed).
/// For k = 0 (a 0 x 1 matrix) this is the single entry 1.
/// Throws std::invalid_argument unless cols == rows + 1.
std::vector<BigInt> maximal_minor_vector(const IntMatrix& m);

/// Rank over the rationals, computed by fraction-free (Bareiss) row
/// elimination with column pivoting; all arithmetic stays integral.
std::size_t rank(const IntMatrix& m);

/// Integer row echelon form spanning the same row lattice (gcd row
/// reduction, no division). Zero rows are dropped; pivot_cols[i] is the
/// column of the leading entry of row i.
struct RowBasis {
  IntMatrix basis;
  std::vector<std::size_t> pivot_cols;
};
RowBasis row_basis(const IntMatrix& m);

/// Result of triangularizing a square system A * x = t where each target
/// t_i is a sign (+1 or -1) and row operations act multiplicatively on the
/// targets: R_i <- R_i + c * R_j sends t_i <- t_i * t_j^c, and a row swap
/// swaps targets.
struct TriangularSystem {
  IntMatrix matrix;       // upper triangular, nonzero diagonal
  std::vector<int> targets;
};

/// gcd-style integer triangularization of a square matrix with sign-target
/// bookkeeping. Throws std::domain_error if the matrix is singular (a zero
/// pivot column cannot be repaired), std::invalid_argument on shape or on a
/// target that is not +1/-1.
TriangularSystem triangularize(IntMatrix m, std::vector<int> targets);

}  // namespace idealscan
