#pragma once

#include <string>
#include <vector>

#include "toeprank/exact.hpp"
#include "toeprank/linalg.hpp"

namespace toeprank::io {

// Shortest decimal that parses back to the identical double; "inf"/"nan"
// pass through.
std::string format_double(double v);

// Whole-token parse. Throws std::invalid_argument on empty input, trailing
// characters, or range overflow.
double parse_double(const std::string& token);

// Complex matrices as comma-separated rows with interleaved real/imag
// columns: re00,im00,re01,im01,... One matrix row per line, no header.
// parse(emit(m)) reproduces every entry bit for bit.
std::string emit_matrix_csv(const Matrix& m);
Matrix parse_matrix_csv(const std::string& text);

// Exact matrices with rational cells ("p" or "p/q"), same interleaving.
// parse(emit(m)) reproduces every entry exactly.
std::string emit_exact_csv(const ExactMatrix& m);
ExactMatrix parse_exact_csv(const std::string& text);

// One value per line; used for spectra and singular value lists.
std::string emit_values_csv(const std::vector<double>& values);
std::vector<double> parse_values_csv(const std::string& text);

// Throws std::runtime_error on I/O failure, naming the path.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace toeprank::io
