#include "factorkit/workflow.hpp"

#include <algorithm>

#include "factorkit/matrix_io.hpp"
#include "factorkit/random.hpp"

namespace factorkit {

SolveSession::SolveSession(DenseMatrix a, Method method, SessionOptions options)
    : a_(std::move(a)), method_(method), options_(options), hash_(factorkit::matrix_hash(a_)) {}

SolveSession SolveSession::open(DenseMatrix a, MethodChoice choice, SessionOptions options) {
  if (!a.is_square()) throw NonSquare(a.rows(), a.cols());
  Method method = Method::Lu;
  switch (choice) {
    case MethodChoice::Lu:
      break;
    case MethodChoice::GaussCholesky:
      require_symmetric(a, options.symmetry_tolerance);
      method = Method::GaussCholesky;
      break;
    case MethodChoice::Auto:
      if (a.is_symmetric(options.symmetry_tolerance)) method = Method::GaussCholesky;
      break;
  }
  return SolveSession(std::move(a), method, options);
}

bool SolveSession::factored() const {
  std::lock_guard lock(mutex_);
  return factorization_.has_value();
}

const Factorization& SolveSession::factorization() const {
  std::lock_guard lock(mutex_);
  if (!factorization_) throw NoSolvesYet();
  return *factorization_;
}

SolveReport SolveSession::first_solve(const DenseMatrix& b) {
  // The first system is solved by the elimination itself: U x = B'.
  const EliminationRecord record = gauss_eliminate(a_, b);
  const SubstitutionResult x = back_substitute_counted(record.u(), *record.transformed_rhs());
  Factorization f = method_ == Method::Lu ? lu_from_record(record, hash_)
                                          : gauss_cholesky_from_record(record, options_.symmetry_tolerance, hash_);
  // Provenance flops already include the elimination; add the assembly and substitution.
  const std::uint64_t flops = f.provenance().flops + x.flops;

  std::vector<double> residuals(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) residuals[j] = residual_norm(a_, x.x.col(j), b.col(j));

  factorization_.emplace(std::move(f));
  first_flops_ = flops;
  elimination_flops_ = record.flops();
  return SolveReport{.solutions = x.x,
                     .residuals = std::move(residuals),
                     .flops = flops,
                     .elimination_flops = record.flops(),
                     .method = method_};
}

SolveReport SolveSession::solve(const DenseMatrix& b) {
  if (b.rows() != a_.rows()) {
    throw ShapeMismatch("right-hand side has " + std::to_string(b.rows()) + " rows, matrix has " +
                        std::to_string(a_.rows()));
  }
  const Factorization* cached = nullptr;
  {
    std::lock_guard lock(mutex_);
    if (!factorization_) {
      SolveReport report = first_solve(b);
      check_and_log(report, b, true);
      return report;
    }
    cached = &*factorization_;
  }

  SolveReport report = factorkit::solve(*cached, b);
  for (std::size_t j = 0; j < b.cols(); ++j) report.residuals[j] = residual_norm(a_, report.solutions.col(j), b.col(j));

  std::lock_guard lock(mutex_);
  reuse_flops_ += report.flops;
  reuse_columns_ += b.cols();
  check_and_log(report, b, false);
  return report;
}

// Caller holds mutex_.
void SolveSession::check_and_log(const SolveReport& report, const DenseMatrix& b, bool eliminated) {
  for (std::size_t j = 0; j < report.residuals.size(); ++j) {
    if (!(report.residuals[j] <= options_.residual_tolerance)) {
      throw ResidualExceeded(j + 1, report.residuals[j], options_.residual_tolerance);
    }
  }
  const std::uint64_t per_column = report.flops / b.cols();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    log_.push_back({factorkit::matrix_hash(b.col(j)), report.residuals[j], per_column, eliminated});
  }
}

CostReport SolveSession::cost_report() const {
  std::lock_guard lock(mutex_);
  if (!factorization_) throw NoSolvesYet();
  CostReport c;
  c.first_flops = first_flops_;
  c.reuse_flops_per_rhs = reuse_columns_ > 0 ? reuse_flops_ / reuse_columns_ : factorization_->solve_flops(1);
  if (c.reuse_flops_per_rhs < c.first_flops) c.k_break_even = 1;
  c.elimination_flops = elimination_flops_;
  c.total_flops = first_flops_ + reuse_flops_;
  c.solves = log_.size();
  return c;
}

std::vector<SolveLogEntry> SolveSession::log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

BenchResult bench_reuse(std::size_t n, std::size_t rhs_count, std::uint64_t seed) {
  MatrixGenerator gen(seed);
  const DenseMatrix a = gen.real_spd(n);
  BenchResult r;
  r.n = n;
  r.rhs_count = rhs_count;
  r.seed = seed;

  const Factorization f = gauss_cholesky(a);
  r.factor_flops = f.provenance().flops;
  for (std::size_t k = 0; k < rhs_count; ++k) {
    const DenseMatrix b = gen.real_matrix(n, 1);

    const EliminationRecord record = gauss_eliminate(a, b);
    const SubstitutionResult x = back_substitute_counted(record.u(), *record.transformed_rhs());
    r.independent_flops += record.flops() + x.flops;
    r.max_residual_independent = std::max(r.max_residual_independent, residual_norm(a, x.x, b));

    const SolveReport reuse = solve(f, b);
    r.reuse_flops += reuse.flops;
    r.max_residual_reuse = std::max(r.max_residual_reuse, residual_norm(a, reuse.solutions, b));
  }
  return r;
}

}  // namespace factorkit
