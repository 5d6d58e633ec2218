#include "factorkit/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace factorkit {

namespace {

std::string format_scalar(Scalar z) {
  std::ostringstream os;
  os.precision(17);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  }
  return os.str();
}

}  // namespace

NonSquare::NonSquare(std::size_t rows, std::size_t cols)
    : Error("matrix is not square: " + std::to_string(rows) + "x" + std::to_string(cols)),
      rows_(rows),
      cols_(cols) {}

NonFinite::NonFinite(std::size_t row, std::size_t col)
    : Error("non-finite entry at (" + std::to_string(row) + "," + std::to_string(col) + ")"),
      row_(row),
      col_(col) {}

ZeroPivot::ZeroPivot(Site site, std::size_t index, Scalar pivot, double threshold)
    : Error(std::string("zero pivot in ") + (site == Site::Column ? "column " : "row ") +
            std::to_string(index) + ": |" + format_scalar(pivot) + "| <= " + format_scalar(threshold)),
      site_(site),
      index_(index),
      pivot_(pivot),
      threshold_(threshold) {}

NotSymmetric::NotSymmetric(double deviation, std::size_t row, std::size_t col, double tolerance)
    : Error("matrix is not symmetric: |a(i,j) - a(j,i)| = " + format_scalar(deviation) + " at (" +
            std::to_string(row) + "," + std::to_string(col) + ") exceeds tolerance " + format_scalar(tolerance)),
      deviation_(deviation),
      row_(row),
      col_(col) {}

ResidualExceeded::ResidualExceeded(std::size_t column, double residual, double tolerance)
    : Error("residual of right-hand side " + std::to_string(column) + " is " + format_scalar(residual) +
            ", above tolerance " + format_scalar(tolerance)),
      column_(column),
      residual_(residual) {}

NoSolvesYet::NoSolvesYet() : Error("no solve has been performed on this session") {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
    : ParseError(line, "column " + std::to_string(column) + ": expected " + expected),
      column_(column),
      expected_(expected) {}

DimensionMismatch::DimensionMismatch(std::size_t line, const std::string& what) : ParseError(line, what) {}

HashMismatch::HashMismatch(std::uint64_t stored, std::uint64_t actual)
    : Error([&] {
        std::ostringstream os;
        os << std::hex << "factorization was computed for matrix hash " << stored
           << " but the supplied matrix hashes to " << actual;
        return os.str();
      }()) {}

Scalar principal_sqrt(Scalar z) {
  // std::sqrt already picks Re(w) >= 0; a signed-zero imaginary part on the
  // negative real axis would give Im(w) < 0, so fold that onto Im(w) >= 0.
  Scalar w = std::sqrt(z);
  if (w.real() == 0.0 && w.imag() < 0.0) w = -w;
  if (w.real() == 0.0) w = Scalar(0.0, w.imag());
  return w;
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw ShapeMismatch("matrix dimensions must be positive");
  if (entries_.size() != rows_ * cols_) {
    throw ShapeMismatch("expected " + std::to_string(rows_ * cols_) + " entries, got " +
                        std::to_string(entries_.size()));
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!std::isfinite(entries_[k].real()) || !std::isfinite(entries_[k].imag())) {
      throw NonFinite(k / cols_ + 1, k % cols_ + 1);
    }
    if (entries_[k].imag() == 0.0) entries_[k].imag(0.0);
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : DenseMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(), [&] {
        std::vector<Scalar> e;
        const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
        for (const auto& r : rows) {
          if (r.size() != width) throw ShapeMismatch("ragged initializer rows");
          e.insert(e.end(), r.begin(), r.end());
        }
        return e;
      }()) {}

DenseMatrix DenseMatrix::zeros(std::size_t rows, std::size_t cols) {
  return DenseMatrix(rows, cols, std::vector<Scalar>(rows * cols));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  std::vector<Scalar> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return DenseMatrix(n, n, std::move(e));
}

DenseMatrix DenseMatrix::column(std::vector<Scalar> values) {
  const std::size_t n = values.size();
  return DenseMatrix(n, 1, std::move(values));
}

DenseMatrix DenseMatrix::col(std::size_t j) const {
  if (j >= cols_) throw ShapeMismatch("column index out of range");
  std::vector<Scalar> e(rows_);
  for (std::size_t i = 0; i < rows_; ++i) e[i] = (*this)(i, j);
  return DenseMatrix(rows_, 1, std::move(e));
}

bool DenseMatrix::is_real() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& z) { return z.imag() == 0.0; });
}

bool DenseMatrix::is_upper_triangular() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < std::min(i, cols_); ++j)
      if ((*this)(i, j) != Scalar(0.0)) return false;
  return true;
}

bool DenseMatrix::is_lower_triangular() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != Scalar(0.0)) return false;
  return true;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

DenseMatrix::SymmetryDeviation DenseMatrix::symmetry_deviation() const {
  if (!is_square()) throw NonSquare(rows_, cols_);
  SymmetryDeviation dev;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double d = std::abs((*this)(i, j) - (*this)(j, i));
      if (d > dev.value) dev = {d, i + 1, j + 1};
    }
  }
  return dev;
}

bool DenseMatrix::is_symmetric(double tol) const {
  if (!is_square()) return false;
  return symmetry_deviation().value <= tol * std::max(1.0, max_abs());
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeMismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  std::vector<Scalar> c(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      if (aik == Scalar(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c[i * b.cols() + j] += aik * b(k, j);
    }
  }
  return DenseMatrix(a.rows(), b.cols(), std::move(c));
}

DenseMatrix transpose(const DenseMatrix& a) {
  std::vector<Scalar> t(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t[j * a.rows() + i] = a(i, j);
  return DenseMatrix(a.cols(), a.rows(), std::move(t));
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("difference of unequal shapes");
  std::vector<Scalar> d(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] -= b.entries()[k];
  return DenseMatrix(a.rows(), a.cols(), std::move(d));
}

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double inf_norm(const DenseMatrix& a) { return a.max_abs(); }

double relative_frobenius_error(const DenseMatrix& approx, const DenseMatrix& exact) {
  const double diff = frobenius_norm(approx - exact);
  const double scale = frobenius_norm(exact);
  return scale == 0.0 ? diff : diff / scale;
}

double residual_norm(const DenseMatrix& a, const DenseMatrix& x, const DenseMatrix& b) {
  if (a.cols() != x.rows() || a.rows() != b.rows() || x.cols() != b.cols()) {
    throw ShapeMismatch("residual_norm: shapes do not conform");
  }
  return inf_norm(matmul(a, x) - b) / std::max(1.0, inf_norm(b));
}

}  // namespace factorkit
