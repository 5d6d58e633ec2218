#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "factorkit/elimination.hpp"
#include "factorkit/numcore.hpp"

namespace factorkit {

enum class Method { Lu, GaussCholesky };

std::string_view method_name(Method m);  // "lu" / "gauss-cholesky"

struct Provenance {
  std::uint64_t matrix_hash = 0;
  std::vector<Scalar> pivots;
  std::uint64_t flops = 0;  // elimination plus factor assembly
  // Set for Gauss-Cholesky factors; the tolerance the symmetry check used.
  std::optional<double> symmetry_tolerance;
  // A real input whose Gauss-Cholesky factor has complex entries (some pivot
  // was negative).
  bool complex_factor_from_real_input = false;
};

struct LuFactors {
  DenseMatrix l;  // unit lower triangular
  DenseMatrix u;  // upper triangular
};

// A = G^T G with G upper triangular. G^T is never stored.
struct GaussCholeskyFactors {
  DenseMatrix g;
};

struct SolveReport {
  DenseMatrix solutions;          // one column per right-hand side
  std::vector<double> residuals;  // per column
  std::uint64_t flops = 0;  // all flops spent by this call
  std::uint64_t elimination_flops = 0;  // the part spent eliminating (0 on reuse)
  Method method = Method::Lu;
};

class Factorization {
 public:
  // Validating constructors for factors obtained elsewhere (e.g. loaded from
  // disk): shapes, triangularity, unit diagonal of L, and nonzero diagonals.
  static Factorization from_lu(DenseMatrix l, DenseMatrix u, Provenance provenance);
  static Factorization from_gauss_cholesky(DenseMatrix g, Provenance provenance);

  Method kind() const;
  std::size_t n() const;
  const Provenance& provenance() const { return provenance_; }

  // Precondition: kind() matches; throws std::bad_variant_access otherwise.
  const LuFactors& lu() const { return std::get<LuFactors>(factors_); }
  const GaussCholeskyFactors& gauss_cholesky() const { return std::get<GaussCholeskyFactors>(factors_); }

  // L U or G^T G.
  DenseMatrix rebuild() const;

  // Flops spent by solve() on `rhs_count` right-hand sides; data independent.
  std::uint64_t solve_flops(std::size_t rhs_count) const;

 private:
  using Factors = std::variant<LuFactors, GaussCholeskyFactors>;
  Factorization(Factors factors, Provenance provenance);

  Factors factors_;
  Provenance provenance_;
};

Factorization lu_from_record(const EliminationRecord& record, std::uint64_t matrix_hash = 0);

// G = D U(A) with D = diag(1 / sqrt(u_ii)); so g_ii = sqrt(u_ii) and
// g_ij = u_ij / sqrt(u_ii). The record must come from a symmetric matrix.
Factorization gauss_cholesky_from_record(const EliminationRecord& record, double symmetry_tolerance,
                                         std::uint64_t matrix_hash = 0);

// Checks complex symmetry (a_ij = a_ji, no conjugation), eliminates, scales.
// Throws NotSymmetric or propagates ZeroPivot / NonSquare.
Factorization gauss_cholesky(const DenseMatrix& a,
                             double symmetry_tolerance = DenseMatrix::kDefaultSymmetryTolerance);

// Factor A by the given method (elimination plus assembly).
Factorization factorize(const DenseMatrix& a, Method method,
                        double symmetry_tolerance = DenseMatrix::kDefaultSymmetryTolerance);

// Forward then back substitution per column: L Y = B, U X = Y, or
// G^T Y = B, G X = Y. Residuals are measured against rebuild().
SolveReport solve(const Factorization& f, const DenseMatrix& b);

// ||rebuild(f) - a||_F / ||a||_F.
double verify(const Factorization& f, const DenseMatrix& a);

// Throws NotSymmetric with the location of the largest deviation when a is
// not symmetric within `tol` (relative to max(1, max |a_ij|)).
void require_symmetric(const DenseMatrix& a, double tol);

}  // namespace factorkit
