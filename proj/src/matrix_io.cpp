#include "factorkit/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace factorkit {

namespace {

constexpr std::size_t kMaxDimension = 1u << 20;

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

// Splits text into non-blank, non-comment lines.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      ++number;
      last_line_ = number;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      auto tokens = split_tokens(raw);
      if (!tokens.empty() && tokens.front().text.front() != '#') lines_.push_back({number, std::move(tokens)});
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  bool done() const { return next_ == lines_.size(); }
  const Line& next(std::string_view expected) {
    if (done()) throw DimensionMismatch(last_line_, "unexpected end of input, expected " + std::string(expected));
    return lines_[next_++];
  }
  std::size_t last_line() const { return last_line_; }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::size_t last_line_ = 0;
};

double parse_double(std::string_view s, std::size_t line, std::size_t column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw SyntaxError(line, column, "finite decimal literal, got '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_dimension(const Token& t, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v == 0 || v > kMaxDimension) {
    throw SyntaxError(line, t.column, "positive dimension, got '" + std::string(t.text) + "'");
  }
  return v;
}

std::uint64_t parse_count(const Token& t, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw SyntaxError(line, t.column, "unsigned integer, got '" + std::string(t.text) + "'");
  }
  return v;
}

enum class Field { Real, Complex, Either };

Field parse_field(const Token& t, std::size_t line) {
  if (t.text == "real") return Field::Real;
  if (t.text == "complex") return Field::Complex;
  throw SyntaxError(line, t.column, "field 'real' or 'complex', got '" + std::string(t.text) + "'");
}

Scalar parse_entry(const Token& t, std::size_t line, Field field) {
  const std::size_t comma = t.text.find(',');
  if (comma == std::string_view::npos) {
    if (field == Field::Complex) throw SyntaxError(line, t.column, "complex entry 're,im'");
    return {parse_double(t.text, line, t.column), 0.0};
  }
  if (field == Field::Real) throw SyntaxError(line, t.column + comma, "real entry without ','");
  const double re = parse_double(t.text.substr(0, comma), line, t.column);
  const double im = parse_double(t.text.substr(comma + 1), line, t.column + comma + 1);
  return {re, im};
}

void expect_count(const Line& line, std::size_t count, std::string_view what) {
  if (line.tokens.size() != count) {
    throw DimensionMismatch(line.number, "expected " + std::to_string(count) + " " + std::string(what) + ", found " +
                                             std::to_string(line.tokens.size()));
  }
}

void expect_keyword(const Line& line, std::string_view keyword) {
  if (line.tokens.front().text != keyword) {
    throw SyntaxError(line.number, line.tokens.front().column, "'" + std::string(keyword) + "'");
  }
}

DenseMatrix read_body(LineReader& reader, std::size_t rows, std::size_t cols, Field field) {
  std::vector<Scalar> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const Line& line = reader.next("row " + std::to_string(i + 1));
    expect_count(line, cols, "entries");
    for (const Token& t : line.tokens) entries.push_back(parse_entry(t, line.number, field));
  }
  return DenseMatrix(rows, cols, std::move(entries));
}

std::string render_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void render_body(std::string& out, const DenseMatrix& m, bool complex) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      const Scalar z = m(i, j);
      out += complex ? render_double(z.real()) + "," + render_double(z.imag()) : render_double(z.real());
    }
    out += '\n';
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

DenseMatrix parse_matrix(std::string_view text) {
  LineReader reader(text);
  const Line& header = reader.next("header 'matrix <rows> <cols> <field>'");
  expect_keyword(header, "matrix");
  expect_count(header, 4, "header fields");
  const std::size_t rows = parse_dimension(header.tokens[1], header.number);
  const std::size_t cols = parse_dimension(header.tokens[2], header.number);
  if (rows * cols > kMaxDimension * 16) throw DimensionMismatch(header.number, "matrix too large");
  const Field field = parse_field(header.tokens[3], header.number);
  DenseMatrix m = read_body(reader, rows, cols, field);
  if (!reader.done()) {
    const Line& extra = reader.next("");
    throw DimensionMismatch(extra.number, "more than " + std::to_string(rows) + " rows");
  }
  return m;
}

std::string render_scalar(Scalar z) {
  if (z.imag() == 0.0) return render_double(z.real());
  return render_double(z.real()) + "," + render_double(z.imag());
}

std::string render_matrix(const DenseMatrix& m) {
  const bool complex = !m.is_real();
  std::string out = "matrix " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) +
                    (complex ? " complex\n" : " real\n");
  render_body(out, m, complex);
  return out;
}

std::uint64_t matrix_hash(const DenseMatrix& m) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : render_matrix(m)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string save_factorization(const Factorization& f) {
  const bool lu = f.kind() == Method::Lu;
  const bool complex = lu ? !(f.lu().l.is_real() && f.lu().u.is_real()) : !f.gauss_cholesky().g.is_real();
  std::string out = "factor " + std::string(method_name(f.kind())) + " " + std::to_string(f.n()) +
                    (complex ? " complex\n" : " real\n");
  if (lu) {
    render_body(out, f.lu().l, complex);
    render_body(out, f.lu().u, complex);
  } else {
    render_body(out, f.gauss_cholesky().g, complex);
  }
  const Provenance& p = f.provenance();
  out += "provenance\n";
  out += "hash " + hex64(p.matrix_hash) + "\n";
  out += "pivots";
  for (const auto& z : p.pivots) out += " " + render_scalar(z);
  out += "\nflops " + std::to_string(p.flops) + "\n";
  if (p.symmetry_tolerance) out += "symmetry_tolerance " + render_double(*p.symmetry_tolerance) + "\n";
  if (!lu) out += std::string("complex_from_real ") + (p.complex_factor_from_real_input ? "1" : "0") + "\n";
  out += "end\n";
  return out;
}

Factorization load_factorization(std::string_view text, const DenseMatrix* matrix, bool force) {
  LineReader reader(text);
  const Line& header = reader.next("header 'factor <kind> <n> <field>'");
  expect_keyword(header, "factor");
  expect_count(header, 4, "header fields");
  const Token& kind_token = header.tokens[1];
  Method kind;
  if (kind_token.text == "lu") {
    kind = Method::Lu;
  } else if (kind_token.text == "gauss-cholesky") {
    kind = Method::GaussCholesky;
  } else {
    throw SyntaxError(header.number, kind_token.column, "kind 'lu' or 'gauss-cholesky'");
  }
  const std::size_t n = parse_dimension(header.tokens[2], header.number);
  if (n > 1u << 14) throw DimensionMismatch(header.number, "factor too large");
  const Field field = parse_field(header.tokens[3], header.number);

  std::optional<DenseMatrix> first = read_body(reader, n, n, field);
  std::optional<DenseMatrix> second;
  if (kind == Method::Lu) second = read_body(reader, n, n, field);

  const Line& prov_line = reader.next("'provenance'");
  expect_keyword(prov_line, "provenance");
  expect_count(prov_line, 1, "tokens");

  Provenance p;
  bool have_hash = false;
  bool have_pivots = false;
  bool have_flops = false;
  std::size_t end_line = 0;
  while (true) {
    const Line& line = reader.next("'end'");
    const Token& key = line.tokens.front();
    if (key.text == "end") {
      expect_count(line, 1, "tokens");
      end_line = line.number;
      break;
    }
    if (key.text == "hash") {
      expect_count(line, 2, "tokens");
      const Token& t = line.tokens[1];
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v, 16);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        throw SyntaxError(line.number, t.column, "hexadecimal hash");
      }
      p.matrix_hash = v;
      have_hash = true;
    } else if (key.text == "pivots") {
      expect_count(line, n + 1, "tokens");
      for (std::size_t k = 1; k < line.tokens.size(); ++k)
        p.pivots.push_back(parse_entry(line.tokens[k], line.number, Field::Either));
      have_pivots = true;
    } else if (key.text == "flops") {
      expect_count(line, 2, "tokens");
      p.flops = parse_count(line.tokens[1], line.number);
      have_flops = true;
    } else if (key.text == "symmetry_tolerance") {
      expect_count(line, 2, "tokens");
      p.symmetry_tolerance = parse_double(line.tokens[1].text, line.number, line.tokens[1].column);
    } else if (key.text == "complex_from_real") {
      expect_count(line, 2, "tokens");
      const Token& t = line.tokens[1];
      if (t.text != "0" && t.text != "1") throw SyntaxError(line.number, t.column, "0 or 1");
      p.complex_factor_from_real_input = t.text == "1";
    } else {
      throw SyntaxError(line.number, key.column, "provenance key");
    }
  }
  if (!have_hash || !have_pivots || !have_flops) {
    throw DimensionMismatch(end_line, "provenance block needs hash, pivots and flops");
  }
  if (!reader.done()) {
    const Line& extra = reader.next("");
    throw SyntaxError(extra.number, extra.tokens.front().column, "end of input after 'end'");
  }

  if (matrix != nullptr && !force) {
    const std::uint64_t actual = matrix_hash(*matrix);
    if (actual != p.matrix_hash) throw HashMismatch(p.matrix_hash, actual);
  }

  // Structural problems in the stored factors are reported against the header line.
  try {
    if (kind == Method::Lu) return Factorization::from_lu(std::move(*first), std::move(*second), std::move(p));
    return Factorization::from_gauss_cholesky(std::move(*first), std::move(p));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(header.number, std::string("invalid factor: ") + e.what());
  }
}

std::string format_scalar(Scalar z, int digits) {
  auto one = [digits](double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::string(buf);
  };
  if (z.imag() == 0.0) return one(z.real());
  return one(z.real()) + "," + one(z.imag());
}

}  // namespace factorkit
