#include "factorkit/factorization.hpp"

#include <algorithm>

#include "factorkit/matrix_io.hpp"

namespace factorkit {

std::string_view method_name(Method m) { return m == Method::Lu ? "lu" : "gauss-cholesky"; }

namespace {

void require_nonzero_diagonal(const DenseMatrix& t) {
  const double threshold = zero_pivot_threshold(t.rows(), t.max_abs());
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (std::abs(t(i, i)) <= threshold) throw ZeroPivot(ZeroPivot::Site::Row, i + 1, t(i, i), threshold);
}

}  // namespace

Factorization::Factorization(Factors factors, Provenance provenance)
    : factors_(std::move(factors)), provenance_(std::move(provenance)) {}

Factorization Factorization::from_lu(DenseMatrix l, DenseMatrix u, Provenance provenance) {
  if (!l.is_square() || !u.is_square() || l.rows() != u.rows()) throw ShapeMismatch("L and U must be n x n");
  if (!l.is_lower_triangular()) throw ShapeMismatch("L is not lower triangular");
  if (!u.is_upper_triangular()) throw ShapeMismatch("U is not upper triangular");
  for (std::size_t i = 0; i < l.rows(); ++i)
    if (l(i, i) != Scalar(1.0)) throw ShapeMismatch("L must have a unit diagonal");
  require_nonzero_diagonal(u);
  return Factorization(LuFactors{std::move(l), std::move(u)}, std::move(provenance));
}

Factorization Factorization::from_gauss_cholesky(DenseMatrix g, Provenance provenance) {
  if (!g.is_square()) throw NonSquare(g.rows(), g.cols());
  if (!g.is_upper_triangular()) throw ShapeMismatch("G is not upper triangular");
  require_nonzero_diagonal(g);
  return Factorization(GaussCholeskyFactors{std::move(g)}, std::move(provenance));
}

Method Factorization::kind() const {
  return std::holds_alternative<LuFactors>(factors_) ? Method::Lu : Method::GaussCholesky;
}

std::size_t Factorization::n() const {
  return kind() == Method::Lu ? lu().u.rows() : gauss_cholesky().g.rows();
}

DenseMatrix Factorization::rebuild() const {
  if (kind() == Method::Lu) return matmul(lu().l, lu().u);
  const auto& g = gauss_cholesky().g;
  return matmul(transpose(g), g);
}

std::uint64_t Factorization::solve_flops(std::size_t rhs_count) const {
  const std::uint64_t size = n();
  const std::uint64_t k = rhs_count;
  // Back substitution: n^2 per column. Forward: n^2, or n^2 - n with a unit diagonal.
  const std::uint64_t forward = kind() == Method::Lu ? size * size - size : size * size;
  return k * (forward + size * size);
}

void require_symmetric(const DenseMatrix& a, double tol) {
  if (!a.is_square()) throw NonSquare(a.rows(), a.cols());
  const auto dev = a.symmetry_deviation();
  if (dev.value > tol * std::max(1.0, a.max_abs())) throw NotSymmetric(dev.value, dev.row, dev.col, tol);
}

Factorization lu_from_record(const EliminationRecord& record, std::uint64_t matrix_hash) {
  Provenance p;
  p.matrix_hash = matrix_hash;
  p.pivots = record.pivots();
  p.flops = record.flops();
  return Factorization::from_lu(record.unit_lower(), record.u(), std::move(p));
}

Factorization gauss_cholesky_from_record(const EliminationRecord& record, double symmetry_tolerance,
                                         std::uint64_t matrix_hash) {
  const std::size_t n = record.n();
  const DenseMatrix& u = record.u();
  std::vector<Scalar> g(n * n);
  std::uint64_t flops = record.flops();
  // Row scaling by D = diag(1 / sqrt(u_ii)); D itself is not kept.
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar root = principal_sqrt(u(i, i));
    g[i * n + i] = root;
    for (std::size_t j = i + 1; j < n; ++j) g[i * n + j] = u(i, j) / root;
    flops += 1 + (n - i - 1);
  }
  DenseMatrix factor(n, n, std::move(g));
  Provenance p;
  p.matrix_hash = matrix_hash;
  p.pivots = record.pivots();
  p.flops = flops;
  p.symmetry_tolerance = symmetry_tolerance;
  p.complex_factor_from_real_input = u.is_real() && !factor.is_real();
  return Factorization::from_gauss_cholesky(std::move(factor), std::move(p));
}

Factorization gauss_cholesky(const DenseMatrix& a, double symmetry_tolerance) {
  require_symmetric(a, symmetry_tolerance);
  return gauss_cholesky_from_record(gauss_eliminate(a), symmetry_tolerance, matrix_hash(a));
}

Factorization factorize(const DenseMatrix& a, Method method, double symmetry_tolerance) {
  if (method == Method::GaussCholesky) return gauss_cholesky(a, symmetry_tolerance);
  return lu_from_record(gauss_eliminate(a), matrix_hash(a));
}

SolveReport solve(const Factorization& f, const DenseMatrix& b) {
  if (b.rows() != f.n()) {
    throw ShapeMismatch("right-hand side has " + std::to_string(b.rows()) + " rows, factorization is " +
                        std::to_string(f.n()) + "x" + std::to_string(f.n()));
  }
  const bool lu = f.kind() == Method::Lu;
  const SubstitutionResult y = lu ? forward_substitute_counted(f.lu().l, b, Diagonal::Unit)
                                  : forward_substitute_counted(transpose(f.gauss_cholesky().g), b);
  SubstitutionResult x = back_substitute_counted(lu ? f.lu().u : f.gauss_cholesky().g, y.x);

  const DenseMatrix rebuilt = f.rebuild();
  std::vector<double> residuals(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) residuals[j] = residual_norm(rebuilt, x.x.col(j), b.col(j));
  return SolveReport{.solutions = std::move(x.x),
                     .residuals = std::move(residuals),
                     .flops = y.flops + x.flops,
                     .elimination_flops = 0,
                     .method = f.kind()};
}

double verify(const Factorization& f, const DenseMatrix& a) {
  if (a.rows() != f.n() || a.cols() != f.n()) throw ShapeMismatch("verify: matrix and factorization differ in size");
  return relative_frobenius_error(f.rebuild(), a);
}

}  // namespace factorkit
