#pragma once

// The symmetric 4x4 worked example: one matrix, two right-hand sides.
// All intermediate quantities are small dyadic rationals, so they are exact
// in double precision.

#include "factorkit/numcore.hpp"

namespace factorkit::example {

inline DenseMatrix a() { return {{1, -1, 0, 1}, {-1, 5, 2, -3}, {0, 2, 5, 1}, {1, -3, 1, 4}}; }

// Gauss matrix U(A).
inline DenseMatrix u() { return {{1, -1, 0, 1}, {0, 4, 2, -2}, {0, 0, 4, 2}, {0, 0, 0, 1}}; }

inline DenseMatrix l() { return {{1, 0, 0, 0}, {-1, 1, 0, 0}, {0, 0.5, 1, 0}, {1, -0.5, 0.5, 1}}; }

// A = G^T G.
inline DenseMatrix g() { return {{1, -1, 0, 1}, {0, 2, 1, -1}, {0, 0, 2, 1}, {0, 0, 0, 1}}; }

inline DenseMatrix rhs_first() { return DenseMatrix::column({3, -5, -7, 2}); }
inline DenseMatrix transformed_rhs_first() { return DenseMatrix::column({3, -2, -6, 1}); }
inline DenseMatrix x_first() { return DenseMatrix::column({3, 1, -2, 1}); }

inline DenseMatrix rhs_second() { return DenseMatrix::column({3, 1, 2, 2}); }
inline DenseMatrix y_second() { return DenseMatrix::column({3, 2, 0, 1}); }
inline DenseMatrix x_second() { return DenseMatrix::column({15.0 / 4, 7.0 / 4, -0.5, 1}); }

}  // namespace factorkit::example
