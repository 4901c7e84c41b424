#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "toeprank/config.hpp"
#include "toeprank/io.hpp"

using namespace toeprank;

namespace {

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

TEST_CASE("doubles round trip through the shortest decimal form") {
  const double values[] = {0.0,
                           -0.0,
                           1.0,
                           -2.5,
                           1.0 / 3.0,
                           std::acos(-1.0),
                           6.02214076e23,
                           -1.602176634e-19,
                           std::numeric_limits<double>::max(),
                           std::numeric_limits<double>::min(),
                           std::numeric_limits<double>::denorm_min(),
                           std::nextafter(1.0, 2.0)};
  for (double v : values) {
    CHECK(same_bits(io::parse_double(io::format_double(v)), v));
  }
  CHECK(io::format_double(0.25) == "0.25");
  CHECK(io::format_double(-0.0)[0] == '-');
}

TEST_CASE("malformed numbers are rejected with their position") {
  CHECK_THROWS_AS(io::parse_double(""), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_double("1.0x"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_double("1e999"), std::invalid_argument);
  try {
    io::parse_matrix_csv("1,0,2,0\n3,oops,4,0\n");
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("field 2") != std::string::npos);
  }
}

TEST_CASE("complex matrices round trip bit for bit") {
  Matrix m(2, 3);
  m << Cplx(1.0 / 3.0, -0.0), Cplx(0.0, 2.5), Cplx(-1e-17, 3.0),
      Cplx(6.02e23, -7.1), Cplx(0.125, 0.0), Cplx(-2.0, 1.0 / 7.0);
  Matrix back = io::parse_matrix_csv(io::emit_matrix_csv(m));
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      CHECK(same_bits(back(r, c).real(), m(r, c).real()));
      CHECK(same_bits(back(r, c).imag(), m(r, c).imag()));
    }
  }
  CHECK(io::emit_matrix_csv(Matrix(0, 0)).empty());
  CHECK(io::parse_matrix_csv("").rows() == 0);
}

TEST_CASE("ragged and odd width rows are rejected") {
  CHECK_THROWS_AS(io::parse_matrix_csv("1,0\n1,0,2,0\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_matrix_csv("1,0,2\n"), std::invalid_argument);
}

TEST_CASE("exact matrices round trip exactly") {
  ExactMatrix m(2, 2);
  m.at(0, 0) = ExactScalar::rational(1, 3);
  m.at(0, 1) = ExactScalar::rational(-7, 2);
  m.at(1, 0) = ExactScalar(mpq_class(0), mpq_class("22/7"));
  m.at(1, 1) = ExactScalar::rational(10, 5);  // canonicalizes to 2
  ExactMatrix back = io::parse_exact_csv(io::emit_exact_csv(m));
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) CHECK(back.at(r, c) == m.at(r, c));
  }
  CHECK(back.at(1, 1).re == 2);
  CHECK_THROWS_AS(io::parse_exact_csv("1/0,0\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_exact_csv("x,0\n"), std::invalid_argument);
}

TEST_CASE("value lists round trip") {
  std::vector<double> v = {3.25, -1.0 / 3.0, 0.0, 1e-300};
  auto back = io::parse_values_csv(io::emit_values_csv(v));
  REQUIRE(back.size() == v.size());
  for (size_t i = 0; i < v.size(); ++i) CHECK(same_bits(back[i], v[i]));
}

TEST_CASE("a rank experiment config parses completely") {
  const char* text = R"({
    "kind": "rank",
    "tol": 1e-9,
    "seed": 7,
    "out": "results",
    "weight": {"kind": "point", "dim": 1, "atoms": [
      {"location": [0.3, -0.2], "coeff": [1.0, 0.0]},
      {"location": [-0.5, 0.1], "coeff": [0.0, 2.0], "holo": [1]}
    ]},
    "basis": {"kind": "disk", "truncation": 12},
    "expect_rank": 2
  })";
  auto cfg = config::parse_config(text);
  CHECK(cfg.kind == "rank");
  CHECK(cfg.tol == 1e-9);
  CHECK(cfg.seed == 7);
  CHECK(cfg.out_dir == "results");
  REQUIRE(cfg.weight.has_value());
  const auto& w = std::get<weights::PointDistribution>(*cfg.weight);
  REQUIRE(w.atoms.size() == 2);
  CHECK(w.atoms[0].location[0] == Cplx(0.3, -0.2));
  CHECK(w.atoms[1].terms[0].coeff == Cplx(0.0, 2.0));
  CHECK(w.atoms[1].terms[0].holo_order[0] == 1);
  CHECK(cfg.rows.kind == bases::BasisKind::DiskMonomial);
  CHECK(cfg.rows.truncation == 12);
  CHECK(cfg.cols.truncation == 12);
  REQUIRE(cfg.expect_rank.has_value());
  CHECK(*cfg.expect_rank == 2);
}

TEST_CASE("weight variants parse to their library forms") {
  auto radial = config::parse_config(R"({
    "kind": "assemble",
    "weight": {"kind": "radial", "coeffs": [1.0, 0.0, -3.0], "radius": 0.5,
               "alpha": 1, "beta": 2}
  })");
  const auto& r = std::get<weights::RadialDensity>(*radial.weight);
  CHECK(r.radius == 0.5);
  CHECK(r.alpha == 1);
  CHECK(r.beta == 2);
  CHECK(r.poly_coeffs == std::vector<double>{1.0, 0.0, -3.0});

  auto poly = config::parse_config(R"({
    "kind": "assemble", "exact": true,
    "weight": {"kind": "polynomial", "radius": "3/4", "terms": [
      {"p": 0, "q": 0, "coeff": "1"},
      {"p": 1, "q": 0, "coeff": "1/2"}
    ]}
  })");
  CHECK(poly.exact);
  const auto& p = std::get<weights::PolynomialDensity>(*poly.weight);
  CHECK(p.radius == ExactScalar::rational(3, 4));
  REQUIRE(p.terms.size() == 2);
  CHECK(p.terms[1].coeff == ExactScalar::rational(1, 2));

  auto grid = config::parse_config(R"({
    "kind": "assemble",
    "weight": {"kind": "grid", "dim": 2, "origin": [-1.0, -1.0],
               "step": [1.0, 1.0], "shape": [2, 1],
               "samples": [1.0, 0.0, 0.5, -0.5]}
  })");
  const auto& g = std::get<weights::GridDensity>(*grid.weight);
  CHECK(g.shape == std::vector<int>{2, 1});
  CHECK(g.samples[1] == Cplx(0.5, -0.5));
}

TEST_CASE("landau and born keys parse with defaults") {
  auto cfg = config::parse_config(R"({
    "kind": "landau",
    "weight": {"kind": "radial", "coeffs": [1.0]},
    "landau": {"field": 3.0, "level": 1, "truncation": 6, "grid_nodes": 128,
               "half_width": 8.0}
  })");
  CHECK(cfg.landau.field == 3.0);
  CHECK(cfg.landau.level == 1);
  CHECK(cfg.landau.truncation == 6);
  CHECK(cfg.landau.grid.n == 128);
  CHECK(cfg.landau.grid.half_width == 8.0);
  CHECK(cfg.landau.spectral);

  auto born = config::parse_config(R"({
    "kind": "born",
    "weight": {"kind": "radial", "coeffs": [1.0], "radius": 0.8},
    "born": {"sampling": "fibonacci", "count": 24}
  })");
  CHECK(born.born.sampling == "fibonacci");
  CHECK(born.born.count == 24);

  auto plain = config::parse_config(R"({"kind": "suite"})");
  CHECK(plain.landau.grid.n == 256);
  CHECK(plain.tol == 1e-10);
  CHECK_FALSE(plain.weight.has_value());
}

TEST_CASE("config diagnostics name the offending key") {
  auto message_of = [](const char* text) {
    try {
      config::parse_config(text);
      return std::string("no error");
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
  };
  CHECK(message_of(R"({"weight": {"kind": "point", "atoms": []}})")
            .find("kind") != std::string::npos);
  CHECK(message_of(R"({"kind": "rank", "weigth": {}})").find("weigth") !=
        std::string::npos);
  CHECK(message_of(R"({"kind": "warp"})").find("kind") != std::string::npos);
  CHECK(message_of(R"({"kind": "rank", "tol": 1.5})").find("tol") !=
        std::string::npos);
  CHECK(message_of(R"({"kind": "rank", "threads": 0})").find("threads") !=
        std::string::npos);
  CHECK(message_of(R"({"kind": "rank", "basis": {"kind": "disk", "trunc": 3}})")
            .find("trunc") != std::string::npos);
  std::string syntax = message_of("{\n  \"kind\": \"rank\",\n  oops\n}");
  CHECK(syntax.find("line 3") != std::string::npos);
  CHECK(message_of(R"({"kind": "rank", "weight": {"kind": "point",
    "atoms": [{"location": [0.1], "coeff": [1, 0]}]}})")
            .find("location") != std::string::npos);
}
