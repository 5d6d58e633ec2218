#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "factorkit/factorization.hpp"
#include "factorkit/numcore.hpp"

namespace factorkit {

// Matrix text format:
//
//   # comment lines start with '#', blank lines are ignored
//   matrix <rows> <cols> <real|complex>
//   <cols entries>        (one line per row)
//
// Real entries are decimal literals; complex entries are `re,im` with no
// spaces inside the pair. Entries are separated by whitespace.
//
// Throws SyntaxError or DimensionMismatch, both carrying the 1-based line.
DenseMatrix parse_matrix(std::string_view text);

// Shortest decimal that round-trips each double; the field is `real` when
// every imaginary part is zero. parse_matrix(render_matrix(m)) == m.
std::string render_matrix(const DenseMatrix& m);

// FNV-1a 64 over render_matrix(m).
std::uint64_t matrix_hash(const DenseMatrix& m);

// Factor file:
//
//   factor <lu|gauss-cholesky> <n> <real|complex>
//   <n rows of L, then n rows of U>   or   <n rows of G>
//   provenance
//   hash <16 hex digits>
//   pivots <n entries>
//   flops <count>
//   symmetry_tolerance <value>        (gauss-cholesky only)
//   complex_from_real <0|1>           (gauss-cholesky only)
//   end
std::string save_factorization(const Factorization& f);

// Reproduces the saved factors bit for bit. When `matrix` is given and its
// hash differs from the stored one, throws HashMismatch unless `force`.
Factorization load_factorization(std::string_view text, const DenseMatrix* matrix = nullptr, bool force = false);

// Shortest round-trip rendering of one Scalar (`re` or `re,im`).
std::string render_scalar(Scalar z);

// Human-facing rendering with `digits` significant digits (%.{digits}g);
// -0 prints as 0.
std::string format_scalar(Scalar z, int digits = 15);

}  // namespace factorkit
