#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "factorkit/factorization.hpp"

namespace factorkit {

enum class MethodChoice { Lu, GaussCholesky, Auto };

struct SessionOptions {
  double symmetry_tolerance = DenseMatrix::kDefaultSymmetryTolerance;
  double residual_tolerance = 1e-8;
};

struct CostReport {
  std::uint64_t first_flops = 0;          // the first solve: elimination, substitution, factor assembly
  std::uint64_t reuse_flops_per_rhs = 0;  // substitutions only
  // Smallest k for which k reuses cost less than k first-solve passes; empty
  // when a reuse is no cheaper (n = 1).
  std::optional<std::size_t> k_break_even;
  std::uint64_t elimination_flops = 0;  // accrued once per session
  std::uint64_t total_flops = 0;
  std::size_t solves = 0;
};

struct SolveLogEntry {
  std::uint64_t rhs_hash = 0;
  double residual = 0.0;
  std::uint64_t flops = 0;
  bool eliminated = false;
};

// Many systems sharing one matrix. The first solve runs Gauss elimination
// with its right-hand side carried along as B' and caches the factorization;
// every later solve only substitutes.
//
// The first solve must not race with any other call. Once factored(), solves
// from several threads are safe.
class SolveSession {
 public:
  // Auto picks GaussCholesky when A is symmetric within the tolerance, else
  // Lu. Throws NonSquare, or NotSymmetric when GaussCholesky is forced.
  static SolveSession open(DenseMatrix a, MethodChoice choice, SessionOptions options = {});

  SolveSession(const SolveSession&) = delete;
  SolveSession& operator=(const SolveSession&) = delete;

  Method method() const { return method_; }
  const DenseMatrix& matrix() const { return a_; }
  std::uint64_t matrix_hash() const { return hash_; }
  const SessionOptions& options() const { return options_; }

  // Residuals are measured against the original matrix. Throws ShapeMismatch,
  // ZeroPivot, or ResidualExceeded (the solution is then not logged).
  SolveReport solve(const DenseMatrix& b);

  bool factored() const;
  // Throws NoSolvesYet before the first solve.
  const Factorization& factorization() const;
  CostReport cost_report() const;
  std::vector<SolveLogEntry> log() const;

 private:
  SolveSession(DenseMatrix a, Method method, SessionOptions options);

  SolveReport first_solve(const DenseMatrix& b);
  void check_and_log(const SolveReport& report, const DenseMatrix& b, bool eliminated);

  DenseMatrix a_;
  Method method_;
  SessionOptions options_;
  std::uint64_t hash_;

  mutable std::mutex mutex_;
  std::optional<Factorization> factorization_;
  std::uint64_t first_flops_ = 0;
  std::uint64_t elimination_flops_ = 0;
  std::uint64_t reuse_flops_ = 0;
  std::size_t reuse_columns_ = 0;
  std::vector<SolveLogEntry> log_;
};

// K systems sharing one random SPD matrix, solved two ways: K independent
// eliminations (each with back substitution), versus one Gauss-Cholesky
// factorization followed by K reuses.
struct BenchResult {
  std::size_t n = 0;
  std::size_t rhs_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t independent_flops = 0;
  std::uint64_t factor_flops = 0;
  std::uint64_t reuse_flops = 0;  // all K substitution pairs
  double max_residual_independent = 0.0;
  double max_residual_reuse = 0.0;

  std::uint64_t reused_total() const { return factor_flops + reuse_flops; }
  double ratio() const { return static_cast<double>(reused_total()) / static_cast<double>(independent_flops); }
};

BenchResult bench_reuse(std::size_t n, std::size_t rhs_count, std::uint64_t seed);

}  // namespace factorkit
