#include "toeprank/exact.hpp"

#include <stdexcept>
#include <utility>

namespace toeprank {

ExactScalar ExactScalar::rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("ExactScalar: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return ExactScalar(q);
}

ExactScalar ExactScalar::parse(const std::string& text) {
  auto parse_q = [](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("ExactScalar: empty component");
    mpq_class q;
    if (q.set_str(part, 10) != 0)
      throw std::invalid_argument("ExactScalar: malformed rational '" + part + "'");
    if (q.get_den() == 0)
      throw std::invalid_argument("ExactScalar: zero denominator in '" + part + "'");
    q.canonicalize();
    return q;
  };
  auto comma = text.find(',');
  if (comma == std::string::npos) return ExactScalar(parse_q(text));
  return ExactScalar(parse_q(text.substr(0, comma)), parse_q(text.substr(comma + 1)));
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("ExactScalar: inverse of zero");
  mpq_class n2 = norm2();
  return ExactScalar(re / n2, -im / n2);
}

std::string ExactScalar::str() const {
  if (im == 0) return re.get_str();
  return re.get_str() + "," + im.get_str();
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  return *this *= o.inverse();
}

ExactScalar exact_pow(const ExactScalar& base, int e) {
  if (e < 0) return exact_pow(base.inverse(), -e);
  ExactScalar acc(1);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("ExactMatrix: negative shape");
  data_.resize(static_cast<size_t>(rows) * cols);
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ExactScalar& ExactMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("ExactMatrix: index out of range");
  return data_[static_cast<size_t>(r) * cols_ + c];
}

const ExactScalar& ExactMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("ExactMatrix: index out of range");
  return data_[static_cast<size_t>(r) * cols_ + c];
}

ExactMatrix ExactMatrix::submatrix(const std::vector<int>& keep_rows,
                                   const std::vector<int>& keep_cols) const {
  ExactMatrix out(static_cast<int>(keep_rows.size()),
                  static_cast<int>(keep_cols.size()));
  for (size_t i = 0; i < keep_rows.size(); ++i)
    for (size_t j = 0; j < keep_cols.size(); ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) =
          at(keep_rows[i], keep_cols[j]);
  return out;
}

int exact_rank(ExactMatrix m) {
  int rank = 0;
  int pivot_row = 0;
  for (int col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = pivot_row; r < m.rows(); ++r) {
      if (!m.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != pivot_row)
      for (int c = col; c < m.cols(); ++c)
        std::swap(m.at(pivot, c), m.at(pivot_row, c));
    ExactScalar inv = m.at(pivot_row, col).inverse();
    for (int r = pivot_row + 1; r < m.rows(); ++r) {
      if (m.at(r, col).is_zero()) continue;
      ExactScalar factor = m.at(r, col) * inv;
      for (int c = col; c < m.cols(); ++c)
        m.at(r, c) -= factor * m.at(pivot_row, c);
    }
    ++rank;
    ++pivot_row;
  }
  return rank;
}

}  // namespace toeprank
