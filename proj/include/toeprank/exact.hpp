#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace toeprank {

// Complex number with exact rational real and imaginary parts.
struct ExactScalar {
  mpq_class re{0};
  mpq_class im{0};

  ExactScalar() = default;
  ExactScalar(long v) : re(v) {}  // NOLINT: implicit from integers is intended
  ExactScalar(mpq_class r, mpq_class i = mpq_class(0))
      : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  // Throws std::invalid_argument on zero denominator.
  static ExactScalar rational(long num, long den);
  // Accepts "p", "p/q", or "p/q,r/s" (real,imag). Throws on malformed input.
  static ExactScalar parse(const std::string& text);

  bool is_zero() const { return re == 0 && im == 0; }
  ExactScalar conj() const { return ExactScalar(re, -im); }
  mpq_class norm2() const { return re * re + im * im; }
  // Throws std::domain_error when zero.
  ExactScalar inverse() const;

  std::complex<double> to_complex() const {
    return {re.get_d(), im.get_d()};
  }
  std::string str() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend ExactScalar operator-(const ExactScalar& a) { return ExactScalar(-a.re, -a.im); }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
};

ExactScalar exact_pow(const ExactScalar& base, int e);

// Dense rectangular matrix of ExactScalar, row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols);
  static ExactMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  ExactScalar& at(int r, int c);
  const ExactScalar& at(int r, int c) const;

  ExactMatrix submatrix(const std::vector<int>& keep_rows,
                        const std::vector<int>& keep_cols) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<ExactScalar> data_;
};

// True linear-algebraic rank over the Gaussian rationals: Gaussian
// elimination with exact division. No tolerance enters anywhere.
int exact_rank(ExactMatrix m);

}  // namespace toeprank
