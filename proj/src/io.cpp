#include "toeprank/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace toeprank::io {

namespace {

[[noreturn]] void parse_fail(const char* what, long line, long field) {
  std::ostringstream os;
  os << "csv: " << what << " at line " << line << ", field " << field;
  throw std::invalid_argument(os.str());
}

// split one line on commas; empty input yields one empty token, which the
// callers reject with a position diagnostic
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

double parse_double_at(const std::string& token, long line, long field) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec == std::errc::result_out_of_range) {
    parse_fail("number out of range", line, field);
  }
  if (res.ec != std::errc() || res.ptr != last || token.empty()) {
    parse_fail("malformed number", line, field);
  }
  return v;
}

mpq_class parse_rational_at(const std::string& token, long line, long field) {
  if (token.empty()) parse_fail("empty rational", line, field);
  size_t slash = token.find('/');
  auto digits_ok = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  std::string num = token.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : token.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den)) {
    parse_fail("malformed rational", line, field);
  }
  mpq_class v{mpz_class(num), mpz_class(den)};
  if (v.get_den() == 0) parse_fail("zero denominator", line, field);
  v.canonicalize();
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  return parse_double_at(token, 1, 1);
}

std::string emit_matrix_csv(const Matrix& m) {
  std::string out;
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_double(m(r, c).real());
      out += ',';
      out += format_double(m(r, c).imag());
    }
    out += '\n';
  }
  return out;
}

Matrix parse_matrix_csv(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) return Matrix(0, 0);
  long cols = -1;
  std::vector<std::vector<Cplx>> rows;
  for (size_t li = 0; li < lines.size(); ++li) {
    auto fields = split_fields(lines[li]);
    if (fields.size() % 2 != 0) {
      parse_fail("odd field count (columns interleave re,im)",
                 static_cast<long>(li + 1), static_cast<long>(fields.size()));
    }
    long c = static_cast<long>(fields.size()) / 2;
    if (cols < 0) {
      cols = c;
    } else if (c != cols) {
      parse_fail("ragged row", static_cast<long>(li + 1), 1);
    }
    std::vector<Cplx> row(c);
    for (long k = 0; k < c; ++k) {
      double re = parse_double_at(fields[2 * k], static_cast<long>(li + 1), 2 * k + 1);
      double im =
          parse_double_at(fields[2 * k + 1], static_cast<long>(li + 1), 2 * k + 2);
      row[k] = Cplx(re, im);
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<long>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (long c = 0; c < cols; ++c) m(static_cast<long>(r), c) = rows[r][c];
  }
  return m;
}

std::string emit_exact_csv(const ExactMatrix& m) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += m.at(r, c).re.get_str();
      out += ',';
      out += m.at(r, c).im.get_str();
    }
    out += '\n';
  }
  return out;
}

ExactMatrix parse_exact_csv(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) return ExactMatrix(0, 0);
  long cols = -1;
  std::vector<std::vector<ExactScalar>> rows;
  for (size_t li = 0; li < lines.size(); ++li) {
    auto fields = split_fields(lines[li]);
    if (fields.size() % 2 != 0) {
      parse_fail("odd field count (columns interleave re,im)",
                 static_cast<long>(li + 1), static_cast<long>(fields.size()));
    }
    long c = static_cast<long>(fields.size()) / 2;
    if (cols < 0) {
      cols = c;
    } else if (c != cols) {
      parse_fail("ragged row", static_cast<long>(li + 1), 1);
    }
    std::vector<ExactScalar> row;
    for (long k = 0; k < c; ++k) {
      mpq_class re =
          parse_rational_at(fields[2 * k], static_cast<long>(li + 1), 2 * k + 1);
      mpq_class im =
          parse_rational_at(fields[2 * k + 1], static_cast<long>(li + 1), 2 * k + 2);
      row.emplace_back(re, im);
    }
    rows.push_back(std::move(row));
  }
  ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (size_t r = 0; r < rows.size(); ++r) {
    for (long c = 0; c < cols; ++c) {
      m.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    }
  }
  return m;
}

std::string emit_values_csv(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::vector<double> parse_values_csv(const std::string& text) {
  auto lines = split_lines(text);
  std::vector<double> out;
  out.reserve(lines.size());
  for (size_t li = 0; li < lines.size(); ++li) {
    out.push_back(parse_double_at(lines[li], static_cast<long>(li + 1), 1));
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("io: cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("io: write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("io: cannot open for reading: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace toeprank::io
