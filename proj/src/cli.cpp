#include "factorkit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "factorkit/elimination.hpp"
#include "factorkit/factorization.hpp"
#include "factorkit/matrix_io.hpp"
#include "factorkit/workflow.hpp"

namespace factorkit {

namespace {

// Input problems that are not numerical failures.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DenseMatrix load_matrix(const std::string& path) {
  try {
    return parse_matrix(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

double env_tolerance() {
  const char* raw = std::getenv("FACTORKIT_TOL");
  if (raw == nullptr || *raw == '\0') return DenseMatrix::kDefaultSymmetryTolerance;
  const std::string_view text(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v) || v < 0.0) {
    throw UsageError("FACTORKIT_TOL must be a non-negative number, got '" + std::string(text) + "'");
  }
  return v;
}

MethodChoice parse_method(const std::string& name) {
  if (name == "lu") return MethodChoice::Lu;
  if (name == "gauss-cholesky") return MethodChoice::GaussCholesky;
  return MethodChoice::Auto;
}

Method resolve_method(MethodChoice choice, const DenseMatrix& a, double tol) {
  switch (choice) {
    case MethodChoice::Lu:
      return Method::Lu;
    case MethodChoice::GaussCholesky:
      return Method::GaussCholesky;
    case MethodChoice::Auto:
      break;
  }
  return a.is_symmetric(tol) ? Method::GaussCholesky : Method::Lu;
}

std::string join(const DenseMatrix& column, int digits) {
  std::string s;
  for (std::size_t i = 0; i < column.rows(); ++i) {
    if (i > 0) s += ' ';
    s += format_scalar(column(i, 0), digits);
  }
  return s;
}

std::string join(const std::vector<Scalar>& values, int digits) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ' ';
    s += format_scalar(values[i], digits);
  }
  return s;
}

void print_solutions(std::ostream& out, const DenseMatrix& x, const std::vector<double>* residuals, int digits,
                     std::size_t first_column = 1) {
  for (std::size_t j = 0; j < x.cols(); ++j) {
    out << "x" << first_column + j << ": " << join(x.col(j), digits) << "\n";
    if (residuals != nullptr) out << "residual" << first_column + j << ": " << format_scalar((*residuals)[j], 3) << "\n";
  }
}

struct Options {
  std::string input;
  std::string output;
  std::string method = "auto";
  std::string factor;
  std::string rhs;
  std::string matrix;
  bool force = false;
  int digits = 15;
  std::size_t n = 50;
  std::size_t rhs_count = 10;
  std::uint64_t seed = 1;
};

int run_factor(const Options& o, std::ostream& out) {
  const double tol = env_tolerance();
  const DenseMatrix a = load_matrix(o.input);
  const Method method = resolve_method(parse_method(o.method), a, tol);
  const Factorization f = factorize(a, method, tol);
  const std::string text = save_factorization(f);

  std::ostringstream report;
  report << "# method: " << method_name(method) << "\n";
  report << "# pivots: " << join(f.provenance().pivots, o.digits) << "\n";
  report << "# reconstruction error: " << format_scalar(verify(f, a), 3) << "\n";
  if (f.provenance().complex_factor_from_real_input) report << "# note: real input produced a complex factor\n";
  if (o.output.empty()) {
    out << report.str() << text;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) throw UsageError("cannot write '" + o.output + "'");
    out << report.str() << "# written: " << o.output << "\n";
  }
  return kExitOk;
}

int run_solve_with_factor(const Options& o, std::ostream& out) {
  std::optional<DenseMatrix> a;
  if (!o.matrix.empty()) a = load_matrix(o.matrix);
  const std::string factor_text = read_file(o.factor);
  std::optional<Factorization> f;
  try {
    f = load_factorization(factor_text, a ? &*a : nullptr, o.force);
  } catch (const ParseError& e) {
    throw UsageError(o.factor + ": " + e.what());
  } catch (const HashMismatch& e) {
    throw UsageError(o.factor + ": " + e.what() + " (use --force to override)");
  }
  const DenseMatrix b = load_matrix(o.rhs);
  if (b.rows() != f->n()) {
    throw UsageError("right-hand side has " + std::to_string(b.rows()) + " rows, factorization is " +
                     std::to_string(f->n()) + "x" + std::to_string(f->n()));
  }
  const SolveReport r = solve(*f, b);
  out << "method: " << method_name(f->kind()) << "\n";
  if (a) {
    if (a->rows() != f->n() || a->cols() != f->n()) throw UsageError("--matrix does not match the factorization size");
    std::vector<double> residuals(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) residuals[j] = residual_norm(*a, r.solutions.col(j), b.col(j));
    print_solutions(out, r.solutions, &residuals, o.digits);
  } else {
    print_solutions(out, r.solutions, nullptr, o.digits);
  }
  out << "flops: " << r.flops << "\n";
  return kExitOk;
}

int run_solve_session(const Options& o, std::ostream& out) {
  SessionOptions opts;
  opts.symmetry_tolerance = env_tolerance();
  DenseMatrix a = load_matrix(o.matrix);
  const DenseMatrix b = load_matrix(o.rhs);
  if (b.rows() != a.rows()) {
    throw UsageError("right-hand side has " + std::to_string(b.rows()) + " rows, matrix has " +
                     std::to_string(a.rows()));
  }
  SolveSession session = SolveSession::open(std::move(a), parse_method(o.method), opts);
  out << "method: " << method_name(session.method()) << "\n";
  // One column at a time: the first is solved by elimination, the rest by reuse.
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const SolveReport r = session.solve(b.col(j));
    print_solutions(out, r.solutions, &r.residuals, o.digits, j + 1);
  }
  const CostReport c = session.cost_report();
  out << "flops first: " << c.first_flops << " (elimination " << c.elimination_flops << ")\n";
  out << "flops reuse per rhs: " << c.reuse_flops_per_rhs << "\n";
  out << "flops total: " << c.total_flops << " over " << c.solves << " rhs\n";
  out << "break-even k: " << (c.k_break_even ? std::to_string(*c.k_break_even) : std::string("none")) << "\n";
  return kExitOk;
}

int run_check(const Options& o, std::ostream& out, std::ostream& err) {
  const double tol = env_tolerance();
  const DenseMatrix a = load_matrix(o.input);
  out << "size: " << a.rows() << "x" << a.cols() << "\n";
  if (!a.is_square()) {
    out << "square: no\n";
    err << "error: " << NonSquare(a.rows(), a.cols()).what() << "\n";
    return kExitNumerical;
  }
  out << "square: yes\n";
  const auto dev = a.symmetry_deviation();
  const bool symmetric = a.is_symmetric(tol);
  out << "symmetry deviation: " << format_scalar(dev.value, 3);
  if (dev.value > 0.0) out << " at (" << dev.row << "," << dev.col << ")";
  out << " (tolerance " << format_scalar(tol, 3) << ", " << (symmetric ? "symmetric" : "not symmetric") << ")\n";
  try {
    const EliminationRecord r = gauss_eliminate(a);
    out << "pivots: " << join(r.pivots(), o.digits) << "\n";
    out << "determinant: " << format_scalar(r.determinant(), o.digits) << "\n";
    out << "methods: lu" << (symmetric ? " gauss-cholesky" : "") << "\n";
  } catch (const ZeroPivot& e) {
    out << "pivots: elimination fails at column " << e.index() << "\n";
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int run_bench(const Options& o, std::ostream& out) {
  const BenchResult r = bench_reuse(o.n, o.rhs_count, o.seed);
  out << "bench: n=" << r.n << " rhs=" << r.rhs_count << " seed=" << r.seed << "\n";
  out << std::left << std::setw(34) << "strategy" << std::right << std::setw(14) << "flops" << std::setw(14)
      << "max residual" << "\n";
  auto row = [&out](const std::string& name, std::uint64_t flops, double residual) {
    out << std::left << std::setw(34) << name << std::right << std::setw(14) << flops << std::setw(14)
        << format_scalar(residual, 3) << "\n";
  };
  row(std::to_string(r.rhs_count) + " independent eliminations", r.independent_flops, r.max_residual_independent);
  row("1 factorization + " + std::to_string(r.rhs_count) + " reuses", r.reused_total(), r.max_residual_reuse);
  out << "  factorization: " << r.factor_flops << "\n";
  out << "  reuses: " << r.reuse_flops << "\n";
  std::ostringstream ratio;
  ratio << std::fixed << std::setprecision(4) << r.ratio();
  out << "ratio: " << ratio.str() << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense direct solver: Gauss elimination without pivoting, LU and Gauss-Cholesky (A = G^T G)",
               "factorkit"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> methods{"lu", "gauss-cholesky", "auto"};

  auto* factor = app.add_subcommand("factor", "Factor a matrix and persist the factorization");
  factor->add_option("--input", o.input, "Matrix file")->required();
  factor->add_option("--method", o.method, "lu, gauss-cholesky or auto")->check(CLI::IsMember(methods));
  factor->add_option("--output", o.output, "Factor file to write (stdout when omitted)");
  factor->add_option("--digits", o.digits, "Significant digits for printed values")->check(CLI::Range(1, 17));

  auto* solve_cmd = app.add_subcommand("solve", "Solve with a stored factorization or a fresh session");
  auto* factor_opt = solve_cmd->add_option("--factor", o.factor, "Factor file");
  solve_cmd->add_option("--rhs", o.rhs, "Right-hand side matrix file (one column per system)")->required();
  auto* matrix_opt = solve_cmd->add_option("--matrix", o.matrix, "Matrix file");
  solve_cmd->add_option("--method", o.method, "lu, gauss-cholesky or auto (session mode)")
      ->check(CLI::IsMember(methods));
  solve_cmd->add_flag("--force", o.force, "Accept a factorization whose matrix hash differs");
  solve_cmd->add_option("--digits", o.digits, "Significant digits for printed values")->check(CLI::Range(1, 17));

  auto* check = app.add_subcommand("check", "Report squareness, symmetry and the pivot sequence");
  check->add_option("--input", o.input, "Matrix file")->required();
  check->add_option("--digits", o.digits, "Significant digits for printed values")->check(CLI::Range(1, 17));

  auto* bench = app.add_subcommand("bench", "Compare K eliminations with one factorization and K reuses");
  bench->add_option("--n", o.n, "Matrix size")->check(CLI::Range(std::size_t{1}, std::size_t{2000}));
  bench->add_option("--rhs-count", o.rhs_count, "Number of right-hand sides")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  bench->add_option("--seed", o.seed, "Random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (solve_cmd->parsed() && factor_opt->count() == 0 && matrix_opt->count() == 0) {
      throw CLI::ValidationError("solve", "needs --factor or --matrix");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (factor->parsed()) return run_factor(o, out);
    if (solve_cmd->parsed()) return o.factor.empty() ? run_solve_session(o, out) : run_solve_with_factor(o, out);
    if (check->parsed()) return run_check(o, out, err);
    return run_bench(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ZeroPivot& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NotSymmetric& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonSquare& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ResidualExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace factorkit
