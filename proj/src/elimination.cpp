#include "factorkit/elimination.hpp"

#include <algorithm>
#include <limits>

namespace factorkit {

EliminationRecord::EliminationRecord(DenseMatrix u, DenseMatrix multipliers,
                                     std::optional<DenseMatrix> transformed_rhs, std::uint64_t flops)
    : u_(std::move(u)),
      multipliers_(std::move(multipliers)),
      transformed_rhs_(std::move(transformed_rhs)),
      flops_(flops) {}

std::vector<Scalar> EliminationRecord::pivots() const {
  std::vector<Scalar> p(n());
  for (std::size_t i = 0; i < n(); ++i) p[i] = u_(i, i);
  return p;
}

DenseMatrix EliminationRecord::unit_lower() const {
  const std::size_t size = n();
  std::vector<Scalar> l(multipliers_.entries().begin(), multipliers_.entries().end());
  for (std::size_t i = 0; i < size; ++i) l[i * size + i] = 1.0;
  return DenseMatrix(size, size, std::move(l));
}

Scalar EliminationRecord::determinant() const {
  Scalar det = 1.0;
  for (std::size_t i = 0; i < n(); ++i) det *= u_(i, i);
  return det;
}

double zero_pivot_threshold(std::size_t n, double scale) {
  return static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
}

EliminationRecord gauss_eliminate(const DenseMatrix& a, const std::optional<DenseMatrix>& b,
                                  const EliminationObserver& observer) {
  if (!a.is_square()) throw NonSquare(a.rows(), a.cols());
  const std::size_t n = a.rows();
  if (b && b->rows() != n) {
    throw ShapeMismatch("right-hand side has " + std::to_string(b->rows()) + " rows, matrix has " +
                        std::to_string(n));
  }
  const std::size_t k = b ? b->cols() : 0;
  const std::size_t width = n + k;
  const double threshold = zero_pivot_threshold(n, a.max_abs());

  // Augmented working array [A | B], row-major.
  std::vector<Scalar> w(n * width);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(a.entries().begin() + static_cast<std::ptrdiff_t>(i * n), n, w.begin() + static_cast<std::ptrdiff_t>(i * width));
    for (std::size_t j = 0; j < k; ++j) w[i * width + n + j] = (*b)(i, j);
  }
  std::vector<Scalar> mult(n * n);
  std::uint64_t flops = 0;

  for (std::size_t l = 0; l < n; ++l) {
    const Scalar pivot = w[l * width + l];
    if (std::abs(pivot) <= threshold) throw ZeroPivot(ZeroPivot::Site::Column, l + 1, pivot, threshold);
    if (l + 1 == n) break;
    for (std::size_t i = l + 1; i < n; ++i) {
      const Scalar m = w[i * width + l] / pivot;
      mult[i * n + l] = m;
      w[i * width + l] = 0.0;
      for (std::size_t j = l + 1; j < width; ++j) w[i * width + j] -= m * w[l * width + j];
      flops += 1 + 2 * (width - l - 1);
    }
    if (observer) {
      std::vector<Scalar> snapshot(n * n);
      for (std::size_t i = 0; i < n; ++i)
        std::copy_n(w.begin() + static_cast<std::ptrdiff_t>(i * width), n, snapshot.begin() + static_cast<std::ptrdiff_t>(i * n));
      observer(l + 1, DenseMatrix(n, n, std::move(snapshot)));
    }
  }

  std::vector<Scalar> u(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u[i * n + j] = w[i * width + j];
  std::optional<DenseMatrix> rhs;
  if (b) {
    std::vector<Scalar> r(n * k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) r[i * k + j] = w[i * width + n + j];
    rhs.emplace(n, k, std::move(r));
  }
  return EliminationRecord(DenseMatrix(n, n, std::move(u)), DenseMatrix(n, n, std::move(mult)), std::move(rhs),
                           flops);
}

namespace {

void check_triangular_system(const DenseMatrix& t, const DenseMatrix& c, bool upper) {
  if (!t.is_square()) throw NonSquare(t.rows(), t.cols());
  if (upper ? !t.is_upper_triangular() : !t.is_lower_triangular()) {
    throw ShapeMismatch(upper ? "back substitution needs an upper triangular matrix"
                              : "forward substitution needs a lower triangular matrix");
  }
  if (c.rows() != t.rows()) {
    throw ShapeMismatch("right-hand side has " + std::to_string(c.rows()) + " rows, matrix has " +
                        std::to_string(t.rows()));
  }
}

}  // namespace

SubstitutionResult back_substitute_counted(const DenseMatrix& u, const DenseMatrix& c) {
  check_triangular_system(u, c, true);
  const std::size_t n = u.rows();
  const std::size_t k = c.cols();
  const double threshold = zero_pivot_threshold(n, u.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(u(i, i)) <= threshold) throw ZeroPivot(ZeroPivot::Site::Row, i + 1, u(i, i), threshold);

  std::vector<Scalar> x(c.entries().begin(), c.entries().end());
  std::uint64_t flops = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t col = 0; col < k; ++col) {
      Scalar s = x[i * k + col];
      for (std::size_t j = i + 1; j < n; ++j) s -= u(i, j) * x[j * k + col];
      x[i * k + col] = s / u(i, i);
    }
    flops += k * (2 * (n - i - 1) + 1);
  }
  return {DenseMatrix(n, k, std::move(x)), flops};
}

SubstitutionResult forward_substitute_counted(const DenseMatrix& l, const DenseMatrix& c, Diagonal diagonal) {
  check_triangular_system(l, c, false);
  const std::size_t n = l.rows();
  const std::size_t k = c.cols();
  const bool unit = diagonal == Diagonal::Unit;
  if (!unit) {
    const double threshold = zero_pivot_threshold(n, l.max_abs());
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(l(i, i)) <= threshold) throw ZeroPivot(ZeroPivot::Site::Row, i + 1, l(i, i), threshold);
  }

  std::vector<Scalar> y(c.entries().begin(), c.entries().end());
  std::uint64_t flops = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t col = 0; col < k; ++col) {
      Scalar s = y[i * k + col];
      for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * y[j * k + col];
      y[i * k + col] = unit ? s : s / l(i, i);
    }
    flops += k * (2 * i + (unit ? 0 : 1));
  }
  return {DenseMatrix(n, k, std::move(y)), flops};
}

}  // namespace factorkit
