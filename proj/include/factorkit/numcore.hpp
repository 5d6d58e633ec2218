#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "factorkit/errors.hpp"
#include "factorkit/scalar.hpp"

namespace factorkit {

// Dense row-major matrix of finite Scalars.
//
// Documentation and error messages use the mathematical 1-based indexing
// a_ij, 1 <= i <= rows, 1 <= j <= cols. The C++ accessors are 0-based:
// a_ij is `m(i - 1, j - 1)`, stored at entries()[(i - 1) * cols + (j - 1)].
//
// A DenseMatrix is immutable once constructed. Construction rejects NaN and
// infinite components with NonFinite, and stores a -0 imaginary part as +0 so
// that a matrix is real exactly when every imaginary part is +0.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static DenseMatrix zeros(std::size_t rows, std::size_t cols);
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix column(std::vector<Scalar> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const Scalar> entries() const { return entries_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  // Copy of column j (0-based) as an rows x 1 matrix.
  DenseMatrix col(std::size_t j) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_real() const;
  bool is_upper_triangular() const;
  bool is_lower_triangular() const;

  // max_ij |a_ij|; 0 for the zero matrix.
  double max_abs() const;

  struct SymmetryDeviation {
    double value = 0.0;  // max_ij |a_ij - a_ji|
    std::size_t row = 0;  // 1-based location of the maximum (0 when value == 0)
    std::size_t col = 0;
  };
  // Complex symmetric deviation (no conjugation). Requires a square matrix.
  SymmetryDeviation symmetry_deviation() const;

  // max_ij |a_ij - a_ji| <= tol * max(1, max_ij |a_ij|). False when not square.
  bool is_symmetric(double tol = kDefaultSymmetryTolerance) const;

  static constexpr double kDefaultSymmetryTolerance = 1e-12;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

// Column vectors are DenseMatrix values with one column.
using Vector = DenseMatrix;

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& a);
// max_ij |a_ij|, the entrywise infinity norm used for vectors.
double inf_norm(const DenseMatrix& a);
// ||approx - exact||_F / ||exact||_F, or the absolute error when exact is zero.
double relative_frobenius_error(const DenseMatrix& approx, const DenseMatrix& exact);

// ||A x - b||_inf / max(1, ||b||_inf). x and b may carry several columns; the
// norm is then taken over all entries.
double residual_norm(const DenseMatrix& a, const DenseMatrix& x, const DenseMatrix& b);

}  // namespace factorkit
