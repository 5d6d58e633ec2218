#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "factorkit/numcore.hpp"

namespace factorkit {

// Outcome of Gauss elimination without pivoting on a square A (optionally
// augmented by right-hand sides B).
//
// Writing a_ij^(k) for the working entries after k elimination steps:
//   u_ij = a_ij^(i-1) for j >= i, exact zeros below the diagonal;
//   m_il = a_il^(l-1) / a_ll^(l-1) for i > l, so L = I + multipliers and A = L U;
//   transformed_rhs = B' = G_{n-1} ... G_1 B.
// The elimination matrices G_l are represented only through the multipliers.
class EliminationRecord {
 public:
  EliminationRecord(DenseMatrix u, DenseMatrix multipliers, std::optional<DenseMatrix> transformed_rhs,
                    std::uint64_t flops);

  std::size_t n() const { return u_.rows(); }
  const DenseMatrix& u() const { return u_; }
  // Strictly lower triangular; the diagonal and upper part are exactly zero.
  const DenseMatrix& multipliers() const { return multipliers_; }
  const std::optional<DenseMatrix>& transformed_rhs() const { return transformed_rhs_; }
  std::vector<Scalar> pivots() const;
  // Unit lower triangular I + multipliers.
  DenseMatrix unit_lower() const;
  // det(A) as the product of the pivots.
  Scalar determinant() const;
  std::uint64_t flops() const { return flops_; }

 private:
  DenseMatrix u_;
  DenseMatrix multipliers_;
  std::optional<DenseMatrix> transformed_rhs_;
  std::uint64_t flops_;
};

// |pivot| <= n * eps * scale counts as zero. `scale` is max_ij |a_ij| of the
// matrix being eliminated or substituted.
double zero_pivot_threshold(std::size_t n, double scale);

// Called after each elimination step k (1-based, 1 <= k <= n - 1) with the
// full working matrix A_k = G_k ... G_1 A.
using EliminationObserver = std::function<void(std::size_t step, const DenseMatrix& working)>;

// Flop convention shared by all solvers: each Scalar add, subtract, multiply,
// divide or square root counts as one flop.
//
// Throws NonSquare, ShapeMismatch (b has the wrong number of rows) and
// ZeroPivot{column l} when |a_ll^(l-1)| falls at or below the threshold.
// Never exchanges rows.
EliminationRecord gauss_eliminate(const DenseMatrix& a, const std::optional<DenseMatrix>& b = std::nullopt,
                                  const EliminationObserver& observer = {});

enum class Diagonal { General, Unit };

struct SubstitutionResult {
  DenseMatrix x;
  std::uint64_t flops = 0;
};

// Solves U x = c from the last row upward. c may hold several columns.
// Throws ZeroPivot{row i} on a (near-)zero diagonal entry and ShapeMismatch
// when u is not square upper triangular or c does not conform.
SubstitutionResult back_substitute_counted(const DenseMatrix& u, const DenseMatrix& c);

// Solves L y = c from the first row downward. With Diagonal::Unit the diagonal
// of l is taken as 1 and never divided by.
SubstitutionResult forward_substitute_counted(const DenseMatrix& l, const DenseMatrix& c,
                                              Diagonal diagonal = Diagonal::General);

inline DenseMatrix back_substitute(const DenseMatrix& u, const DenseMatrix& c) {
  return back_substitute_counted(u, c).x;
}

inline DenseMatrix forward_substitute(const DenseMatrix& l, const DenseMatrix& c,
                                      Diagonal diagonal = Diagonal::General) {
  return forward_substitute_counted(l, c, diagonal).x;
}

}  // namespace factorkit
