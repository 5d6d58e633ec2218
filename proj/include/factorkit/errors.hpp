#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "factorkit/scalar.hpp"

namespace factorkit {

// Base class for every error raised by the library. Indices carried by the
// error types (and printed in their messages) are 1-based.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonSquare : public Error {
 public:
  NonSquare(std::size_t rows, std::size_t cols);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
};

class NonFinite : public Error {
 public:
  NonFinite(std::size_t row, std::size_t col);
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

// Raised when no-pivot elimination or a triangular substitution meets a
// diagonal entry at or below the zero-pivot threshold.
class ZeroPivot : public Error {
 public:
  enum class Site { Column, Row };

  ZeroPivot(Site site, std::size_t index, Scalar pivot, double threshold);

  Site site() const { return site_; }
  // 1-based column (elimination) or row (substitution).
  std::size_t index() const { return index_; }
  Scalar pivot() const { return pivot_; }
  double threshold() const { return threshold_; }

 private:
  Site site_;
  std::size_t index_;
  Scalar pivot_;
  double threshold_;
};

class NotSymmetric : public Error {
 public:
  NotSymmetric(double deviation, std::size_t row, std::size_t col, double tolerance);
  double deviation() const { return deviation_; }
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  double deviation_;
  std::size_t row_;
  std::size_t col_;
};

class ResidualExceeded : public Error {
 public:
  ResidualExceeded(std::size_t column, double residual, double tolerance);
  std::size_t column() const { return column_; }
  double residual() const { return residual_; }

 private:
  std::size_t column_;
  double residual_;
};

class NoSolvesYet : public Error {
 public:
  NoSolvesYet();
};

// Input-format errors. `line` is 1-based and always present.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& expected);
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t column_;
  std::string expected_;
};

class DimensionMismatch : public ParseError {
 public:
  DimensionMismatch(std::size_t line, const std::string& what);
};

class HashMismatch : public Error {
 public:
  HashMismatch(std::uint64_t stored, std::uint64_t actual);
};

}  // namespace factorkit
