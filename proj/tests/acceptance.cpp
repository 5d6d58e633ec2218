// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "factorkit/cli.hpp"
#include "factorkit/elimination.hpp"
#include "factorkit/factorization.hpp"
#include "factorkit/matrix_io.hpp"
#include "factorkit/random.hpp"
#include "factorkit/workflow.hpp"
#include "oracles.hpp"
#include "worked_example.hpp"

namespace fk = factorkit;
using fk::DenseMatrix;
using fk::Scalar;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_entry_error(const DenseMatrix& a, const DenseMatrix& b) { return fk::inf_norm(a - b); }

// D = diag(1 / sqrt(u_ii)), so G = D U; inverse gives D^-1 = diag(sqrt(u_ii)).
DenseMatrix root_diagonal(const fk::EliminationRecord& r, bool inverse) {
  std::vector<Scalar> d(r.n() * r.n());
  for (std::size_t i = 0; i < r.n(); ++i) {
    const Scalar root = fk::principal_sqrt(r.u()(i, i));
    d[i * r.n() + i] = inverse ? root : 1.0 / root;
  }
  return DenseMatrix(r.n(), r.n(), std::move(d));
}

// 1. Golden elimination.
Outcome golden_elimination() {
  const DenseMatrix a = fk::example::a();
  const DenseMatrix b = fk::example::rhs_first();
  const auto start = Clock::now();
  const fk::EliminationRecord r = fk::gauss_eliminate(a, b);
  const double elapsed = seconds_since(start);
  const bool exact = r.u() == fk::example::u() && *r.transformed_rhs() == fk::example::transformed_rhs_first();
  const double err = std::max(max_entry_error(r.u(), fk::example::u()),
                              max_entry_error(*r.transformed_rhs(), fk::example::transformed_rhs_first()));
  return {exact && err <= 1e-14 && elapsed < 1e-3,
          "exact=" + std::string(exact ? "yes" : "no") + " max err " + fmt("%.1e", err) + ", " +
              fmt("%.1f us", elapsed * 1e6)};
}

// 2. Golden solutions, including the intermediate Y.
Outcome golden_solutions() {
  const DenseMatrix a = fk::example::a();
  const fk::EliminationRecord r = fk::gauss_eliminate(a, fk::example::rhs_first());
  const DenseMatrix x1 = fk::back_substitute(r.u(), *r.transformed_rhs());

  const fk::Factorization f = fk::gauss_cholesky(a);
  const DenseMatrix g = f.gauss_cholesky().g;
  const DenseMatrix y = fk::forward_substitute(fk::transpose(g), fk::example::rhs_second());
  const DenseMatrix x2 = fk::back_substitute(g, y);
  const DenseMatrix x2_solve = fk::solve(f, fk::example::rhs_second()).solutions;

  const double err = std::max({max_entry_error(x1, fk::example::x_first()), max_entry_error(y, fk::example::y_second()),
                               max_entry_error(x2, fk::example::x_second()),
                               max_entry_error(x2_solve, fk::example::x_second())});
  return {err <= 1e-13, "max entry error " + fmt("%.1e", err)};
}

// 3. A = G^T G over complex symmetric matrices.
Outcome complex_reconstruction() {
  fk::MatrixGenerator gen(3003);
  const auto start = Clock::now();
  double worst = 0.0;
  int retries = 0;
  for (int done = 0; done < 500;) {
    const std::size_t n = gen.uniform_index(2, 30);
    const DenseMatrix a = gen.complex_symmetric(n);
    try {
      const fk::Factorization f = fk::gauss_cholesky(a);
      const DenseMatrix g = f.gauss_cholesky().g;
      worst = std::max(worst, fk::relative_frobenius_error(fk::matmul(fk::transpose(g), g), a));
      ++done;
    } catch (const fk::ZeroPivot&) {
      ++retries;
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-9 && elapsed < 5.0, "worst " + fmt("%.2e", worst) + ", " + std::to_string(retries) +
                                               " retries, " + fmt("%.2f s", elapsed)};
}

// 4. Agreement with textbook Cholesky on real SPD input.
Outcome spd_agreement() {
  fk::MatrixGenerator gen(4004);
  double worst = 0.0;
  bool real_positive = true;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.uniform_index(1, 50);
    const DenseMatrix a = gen.real_spd(n);
    const DenseMatrix g = fk::gauss_cholesky(a).gauss_cholesky().g;
    real_positive = real_positive && g.is_real();
    for (std::size_t i = 0; i < n; ++i) real_positive = real_positive && g(i, i).real() > 0.0;
    worst = std::max(worst, fk::relative_frobenius_error(g, fk::oracle::classical_cholesky_upper(a)));
  }
  return {worst <= 1e-9 && real_positive,
          "worst " + fmt("%.2e", worst) + ", real positive diagonal " + (real_positive ? "yes" : "no")};
}

// 5. (I + multipliers) U = A.
Outcome lu_identity() {
  fk::MatrixGenerator gen(5005);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.uniform_index(1, 50);
    const DenseMatrix a = gen.real_matrix(n, n);
    const fk::EliminationRecord r = fk::gauss_eliminate(a);
    const DenseMatrix l = fk::DenseMatrix::identity(n);
    std::vector<Scalar> sum(l.entries().begin(), l.entries().end());
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += r.multipliers().entries()[k];
    worst = std::max(worst, fk::relative_frobenius_error(fk::matmul(DenseMatrix(n, n, std::move(sum)), r.u()), a));
  }
  return {worst <= 1e-11, "worst " + fmt("%.2e", worst)};
}

// 6. Symmetric, nonsingular, yet no factorization without pivoting.
Outcome hypothesis_gap() {
  try {
    (void)fk::gauss_cholesky(DenseMatrix{{0, 1}, {1, 0}});
  } catch (const fk::ZeroPivot& e) {
    const bool names_column = e.index() == 1 && std::string(e.what()).find("column 1") != std::string::npos;
    return {names_column, e.what()};
  } catch (const std::exception& e) {
    return {false, std::string("wrong error: ") + e.what()};
  }
  return {false, "no error raised"};
}

// 7. LU, Gauss-Cholesky and adjugate solutions agree; pivot product = determinant.
Outcome oracle_equivalence() {
  fk::MatrixGenerator gen(7007);
  double worst_solve = 0.0;
  double worst_det = 0.0;
  int instances = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = gen.uniform_index(2, 5);
    const DenseMatrix a = trial % 2 ? gen.real_symmetric(n) : gen.complex_symmetric(n);
    const DenseMatrix b = gen.real_matrix(n, 1);
    std::optional<fk::EliminationRecord> r;
    try {
      r = fk::gauss_eliminate(a);
    } catch (const fk::ZeroPivot&) {
      continue;
    }
    ++instances;
    const DenseMatrix x_lu = fk::solve(fk::lu_from_record(*r), b).solutions;
    const DenseMatrix x_gc = fk::solve(fk::gauss_cholesky(a), b).solutions;
    const DenseMatrix x_adj = fk::oracle::adjugate_solve(a, b);
    worst_solve = std::max({worst_solve, fk::relative_frobenius_error(x_lu, x_adj),
                            fk::relative_frobenius_error(x_gc, x_adj), fk::relative_frobenius_error(x_lu, x_gc)});
    const Scalar det = fk::oracle::cofactor_determinant(a);
    worst_det = std::max(worst_det, std::abs(r->determinant() - det) / std::abs(det));
  }
  return {worst_solve <= 1e-9 && worst_det <= 1e-10,
          std::to_string(instances) + " instances, solve " + fmt("%.2e", worst_solve) + ", det " + fmt("%.2e", worst_det)};
}

// 8. Flop ledger: one factorization + 10 reuses vs 10 eliminations.
Outcome reuse_economics() {
  const fk::BenchResult r = fk::bench_reuse(50, 10, 8008);
  const fk::BenchResult again = fk::bench_reuse(50, 10, 8008);
  const bool deterministic =
      r.independent_flops == again.independent_flops && r.reused_total() == again.reused_total();
  return {r.ratio() < 0.35 && deterministic, std::to_string(r.reused_total()) + " vs " +
                                                 std::to_string(r.independent_flops) + " flops, ratio " +
                                                 fmt("%.4f", r.ratio())};
}

// 9. L(A) D^{-1} = (D U(A))^T for symmetric A.
Outcome proof_identity() {
  fk::MatrixGenerator gen(9009);
  double worst = 0.0;
  for (int done = 0; done < 100;) {
    const std::size_t n = gen.uniform_index(1, 20);
    const DenseMatrix a = done % 2 ? gen.real_symmetric(n) : gen.complex_symmetric(n);
    std::optional<fk::EliminationRecord> r;
    try {
      r = fk::gauss_eliminate(a);
    } catch (const fk::ZeroPivot&) {
      continue;
    }
    const DenseMatrix lhs = fk::matmul(r->unit_lower(), root_diagonal(*r, true));
    const DenseMatrix rhs = fk::transpose(fk::matmul(root_diagonal(*r, false), r->u()));
    worst = std::max(worst, fk::relative_frobenius_error(lhs, rhs));
    ++done;
  }
  return {worst <= 1e-11, "worst " + fmt("%.2e", worst)};
}

// 10. Text round-trip, CLI output on the fixtures, malformed-input fuzz.
Outcome cli_round_trip() {
  fk::MatrixGenerator gen(1010);
  int round_trip_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = gen.uniform_index(1, 10), cols = gen.uniform_index(1, 10);
    const DenseMatrix m = trial % 2 ? gen.complex_matrix(rows, cols) : gen.real_matrix(rows, cols);
    const DenseMatrix back = fk::parse_matrix(fk::render_matrix(m));
    if (std::memcmp(back.entries().data(), m.entries().data(), m.entries().size_bytes()) != 0) ++round_trip_failures;
  }

  const std::string fixtures = FACTORKIT_FIXTURE_DIR;
  const std::vector<std::string> args{"solve", "--matrix", fixtures + "/example_a.mat", "--rhs",
                                      fixtures + "/rhs_second.mat", "--method", "gauss-cholesky"};
  std::ostringstream out1, err1, out2, err2;
  const int code = fk::cli_main(args, out1, err1);
  (void)fk::cli_main(args, out2, err2);
  const bool printed = code == fk::kExitOk && out1.str().find("3.75 1.75 -0.5 1\n") != std::string::npos;
  const bool deterministic = out1.str() == out2.str();

  const std::string seed_text = fk::render_matrix(fk::example::a());
  const std::string factor_text = fk::save_factorization(fk::gauss_cholesky(fk::example::a()));
  const std::string alphabet = "0123456789 ,.-+eE#\nmatrixfactorprovenance";
  int unnamed_rejections = 0;
  int crashes = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text = trial % 2 ? seed_text : factor_text;
    const std::size_t edits = gen.uniform_index(1, 5);
    for (std::size_t k = 0; k < edits; ++k) {
      const std::size_t pos = gen.uniform_index(0, text.size() - 1);
      const char c = alphabet[gen.uniform_index(0, alphabet.size() - 1)];
      switch (gen.uniform_index(0, 2)) {
        case 0:
          text[pos] = c;
          break;
        case 1:
          text.insert(text.begin() + static_cast<std::ptrdiff_t>(pos), c);
          break;
        default:
          text.erase(pos, 1);
      }
    }
    try {
      if (trial % 2) {
        (void)fk::parse_matrix(text);
      } else {
        (void)fk::load_factorization(text);
      }
    } catch (const fk::ParseError& e) {
      if (std::string(e.what()).find("line ") == std::string::npos) ++unnamed_rejections;
    } catch (...) {
      ++crashes;
    }
  }
  const bool pass = round_trip_failures == 0 && printed && deterministic && unnamed_rejections == 0 && crashes == 0;
  return {pass, "round-trip failures " + std::to_string(round_trip_failures) + ", cli output " +
                    (printed ? "ok" : "missing") + ", deterministic " + (deterministic ? "yes" : "no") +
                    ", fuzz escapes " + std::to_string(crashes + unnamed_rejections)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1  golden elimination U, B'", golden_elimination},
      {"2  golden solutions and Y", golden_solutions},
      {"3  complex symmetric G^T G = A", complex_reconstruction},
      {"4  SPD agreement with classical Cholesky", spd_agreement},
      {"5  LU identity (I + multipliers) U = A", lu_identity},
      {"6  zero pivot on [[0,1],[1,0]]", hypothesis_gap},
      {"7  LU / Gauss-Cholesky / adjugate agreement", oracle_equivalence},
      {"8  reuse flops below 35% of eliminations", reuse_economics},
      {"9  L D^-1 = (D U)^T", proof_identity},
      {"10 file round-trip, CLI output, fuzz", cli_round_trip},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %-45s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
