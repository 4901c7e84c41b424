#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toeprank/bases.hpp"
#include "toeprank/physics.hpp"
#include "toeprank/weights.hpp"

namespace toeprank::config {

// Index-set restriction settings for the sparse experiment.
struct SparseKeys {
  std::string set = "multiples";  // multiples | squares
  int parameter = 5;              // m for multiples
  int order = 4;                  // N in the density bound 1/N
  long horizon = 10000;
  std::vector<int> direction = {1};
};

struct BornKeys {
  std::string sampling = "fibonacci";  // circle | fibonacci | icosahedral
  int count = 12;                      // direction count (refinements for icosahedral)
};

// One experiment, parsed from a JSON object. Unknown keys are rejected so
// typos surface as diagnostics instead of silently applied defaults.
struct ExperimentConfig {
  std::string kind;  // assemble|rank|recover|vandermonde|sparse|landau|helmholtz|born|suite
  std::optional<weights::WeightSpec> weight;
  bases::BasisSpec rows;
  bases::BasisSpec cols;
  double tol = 1e-10;
  bool exact = false;
  int threads = 1;
  unsigned long seed = 1;
  std::string out_dir;  // empty: current directory

  physics::LandauConfig landau{2.0, 0, 8, {256, 9.0}, false, true};
  int recover_max_points = 5;
  int vandermonde_rank = 2;
  int vandermonde_degree = 5;
  SparseKeys sparse;
  BornKeys born;
  int harmonic_degree = 2;

  std::optional<int> expect_rank;        // gate: numerical/exact rank must match
  std::optional<double> expect_residual; // gate: recovery residual bound
};

// Throws std::invalid_argument naming the offending key, or carrying the
// line/column of a syntax error.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace toeprank::config
