#include "toeprank/config.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "toeprank/io.hpp"

namespace toeprank::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument("config: " + path + ": " + msg);
}

const json& get(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing key");
  return *it;
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(join(path, it.key().c_str()), "unknown key");
  }
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
  const json& v = get(obj, path, key);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

long get_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<double> get_number_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> get_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of integers");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(
        static_cast<int>(get_integer(j[i], path + "[" + std::to_string(i) + "]")));
  }
  return out;
}

ExactScalar get_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return ExactScalar(j.get<long>());
  if (!j.is_string()) fail(path, "expected an integer or a \"p/q\" string");
  try {
    return ExactScalar::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

weights::PointDistribution parse_point(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "dim", "atoms"});
  weights::PointDistribution w;
  if (j.contains("dim")) {
    w.dim = static_cast<int>(get_integer(j["dim"], join(path, "dim")));
  }
  const json& atoms = get(j, path, "atoms");
  if (!atoms.is_array()) fail(join(path, "atoms"), "expected a list");
  for (size_t a = 0; a < atoms.size(); ++a) {
    std::string apath = join(path, "atoms") + "[" + std::to_string(a) + "]";
    check_keys(atoms[a], apath, {"location", "coeff", "holo", "anti"});
    auto loc = get_number_list(get(atoms[a], apath, "location"), apath + ".location");
    if (static_cast<int>(loc.size()) != 2 * w.dim) {
      fail(apath + ".location", "expected 2*dim numbers (re,im per slot)");
    }
    weights::PointAtom atom;
    for (int s = 0; s < w.dim; ++s) {
      atom.location.emplace_back(loc[2 * s], loc[2 * s + 1]);
    }
    auto co = get_number_list(get(atoms[a], apath, "coeff"), apath + ".coeff");
    if (co.size() != 2) fail(apath + ".coeff", "expected [re, im]");
    weights::DerivativeTerm term;
    term.coeff = Cplx(co[0], co[1]);
    term.holo_order = MultiIndex::zero(w.dim);
    term.anti_order = MultiIndex::zero(w.dim);
    if (atoms[a].contains("holo")) {
      term.holo_order =
          MultiIndex(get_int_list(atoms[a]["holo"], apath + ".holo"));
    }
    if (atoms[a].contains("anti")) {
      term.anti_order =
          MultiIndex(get_int_list(atoms[a]["anti"], apath + ".anti"));
    }
    atom.terms.push_back(term);
    w.atoms.push_back(std::move(atom));
  }
  return w;
}

weights::RadialDensity parse_radial(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "coeffs", "radius", "alpha", "beta"});
  auto coeffs = get_number_list(get(j, path, "coeffs"), join(path, "coeffs"));
  double radius = j.contains("radius")
                      ? get_number(j["radius"], join(path, "radius"))
                      : 1.0;
  int alpha = j.contains("alpha")
                  ? static_cast<int>(get_integer(j["alpha"], join(path, "alpha")))
                  : 0;
  int beta = j.contains("beta")
                 ? static_cast<int>(get_integer(j["beta"], join(path, "beta")))
                 : 0;
  return weights::radial_polynomial(coeffs, radius, alpha, beta);
}

weights::PolynomialDensity parse_polynomial(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "radius", "terms"});
  weights::PolynomialDensity w;
  if (j.contains("radius")) {
    w.radius = get_rational(j["radius"], join(path, "radius"));
  }
  const json& terms = get(j, path, "terms");
  if (!terms.is_array()) fail(join(path, "terms"), "expected a list");
  for (size_t t = 0; t < terms.size(); ++t) {
    std::string tpath = join(path, "terms") + "[" + std::to_string(t) + "]";
    check_keys(terms[t], tpath, {"p", "q", "coeff"});
    weights::PolynomialDensity::Term term;
    term.p = static_cast<int>(get_integer(get(terms[t], tpath, "p"), tpath + ".p"));
    term.q = static_cast<int>(get_integer(get(terms[t], tpath, "q"), tpath + ".q"));
    term.coeff = get_rational(get(terms[t], tpath, "coeff"), tpath + ".coeff");
    w.terms.push_back(std::move(term));
  }
  return w;
}

weights::GridDensity parse_grid(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "dim", "origin", "step", "shape", "samples"});
  weights::GridDensity w;
  if (j.contains("dim")) {
    w.dim = static_cast<int>(get_integer(j["dim"], join(path, "dim")));
  }
  w.origin = get_number_list(get(j, path, "origin"), join(path, "origin"));
  w.step = get_number_list(get(j, path, "step"), join(path, "step"));
  w.shape = get_int_list(get(j, path, "shape"), join(path, "shape"));
  auto flat = get_number_list(get(j, path, "samples"), join(path, "samples"));
  if (flat.size() % 2 != 0) {
    fail(join(path, "samples"), "expected interleaved re,im values");
  }
  long cells = 1;
  for (int s : w.shape) cells *= s;
  if (static_cast<long>(flat.size()) != 2 * cells) {
    fail(join(path, "samples"), "sample count does not match the shape");
  }
  for (size_t i = 0; i + 1 < flat.size(); i += 2) {
    w.samples.emplace_back(flat[i], flat[i + 1]);
  }
  return w;
}

weights::WeightSpec parse_weight(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  std::string kind = get_string(j, path, "kind");
  if (kind == "point") return parse_point(j, path);
  if (kind == "radial") return parse_radial(j, path);
  if (kind == "polynomial") return parse_polynomial(j, path);
  if (kind == "grid") return parse_grid(j, path);
  fail(join(path, "kind"),
       "unknown weight kind (point | radial | polynomial | grid)");
}

bases::BasisSpec parse_basis(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"kind", "dim", "truncation", "degree"});
  bases::BasisSpec spec;
  std::string kind = get_string(j, path, "kind");
  if (kind == "disk") {
    spec.kind = bases::BasisKind::DiskMonomial;
  } else if (kind == "polydisk") {
    spec.kind = bases::BasisKind::PolydiskMonomial;
  } else if (kind == "fock") {
    spec.kind = bases::BasisKind::FockMonomial;
  } else if (kind == "harmonic2d") {
    spec.kind = bases::BasisKind::Harmonic2D;
  } else if (kind == "harmonic3d") {
    spec.kind = bases::BasisKind::Harmonic3D;
  } else {
    fail(join(path, "kind"),
         "unknown basis kind (disk | polydisk | fock | harmonic2d | harmonic3d)");
  }
  if (j.contains("dim")) {
    spec.dim = static_cast<int>(get_integer(j["dim"], join(path, "dim")));
  }
  if (j.contains("truncation")) {
    spec.truncation =
        static_cast<int>(get_integer(j["truncation"], join(path, "truncation")));
  }
  if (j.contains("degree")) {
    spec.degree = static_cast<int>(get_integer(j["degree"], join(path, "degree")));
  }
  return spec;
}

physics::LandauConfig parse_landau(const json& j, const std::string& path) {
  check_keys(j, path,
             {"field", "level", "truncation", "grid_nodes", "half_width",
              "conjugate", "spectral"});
  physics::LandauConfig cfg{2.0, 0, 8, {256, 9.0}, false, true};
  if (j.contains("field")) cfg.field = get_number(j["field"], join(path, "field"));
  if (j.contains("level")) {
    cfg.level = static_cast<int>(get_integer(j["level"], join(path, "level")));
  }
  if (j.contains("truncation")) {
    cfg.truncation =
        static_cast<int>(get_integer(j["truncation"], join(path, "truncation")));
  }
  if (j.contains("grid_nodes")) {
    cfg.grid.n =
        static_cast<int>(get_integer(j["grid_nodes"], join(path, "grid_nodes")));
  }
  if (j.contains("half_width")) {
    cfg.grid.half_width = get_number(j["half_width"], join(path, "half_width"));
  }
  if (j.contains("conjugate")) {
    if (!j["conjugate"].is_boolean()) fail(join(path, "conjugate"), "expected a bool");
    cfg.conjugate_convention = j["conjugate"].get<bool>();
  }
  if (j.contains("spectral")) {
    if (!j["spectral"].is_boolean()) fail(join(path, "spectral"), "expected a bool");
    cfg.spectral = j["spectral"].get<bool>();
  }
  return cfg;
}

SparseKeys parse_sparse(const json& j, const std::string& path) {
  check_keys(j, path, {"set", "parameter", "order", "horizon", "direction"});
  SparseKeys k;
  if (j.contains("set")) k.set = get_string(j, path, "set");
  if (k.set != "multiples" && k.set != "squares") {
    fail(join(path, "set"), "unknown index set (multiples | squares)");
  }
  if (j.contains("parameter")) {
    k.parameter =
        static_cast<int>(get_integer(j["parameter"], join(path, "parameter")));
  }
  if (j.contains("order")) {
    k.order = static_cast<int>(get_integer(j["order"], join(path, "order")));
  }
  if (j.contains("horizon")) {
    k.horizon = get_integer(j["horizon"], join(path, "horizon"));
  }
  if (j.contains("direction")) {
    k.direction = get_int_list(j["direction"], join(path, "direction"));
  }
  return k;
}

BornKeys parse_born(const json& j, const std::string& path) {
  check_keys(j, path, {"sampling", "count"});
  BornKeys k;
  if (j.contains("sampling")) k.sampling = get_string(j, path, "sampling");
  if (k.sampling != "circle" && k.sampling != "fibonacci" &&
      k.sampling != "icosahedral") {
    fail(join(path, "sampling"),
         "unknown sampling (circle | fibonacci | icosahedral)");
  }
  if (j.contains("count")) {
    k.count = static_cast<int>(get_integer(j["count"], join(path, "count")));
  }
  return k;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    long line = 1, col = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "config: syntax error at line " << line << ", column " << col;
    throw std::invalid_argument(os.str());
  }

  check_keys(j, "",
             {"kind", "weight", "basis", "row_basis", "col_basis", "tol", "exact",
              "threads", "seed", "out", "landau", "recover", "vandermonde",
              "sparse", "born", "helmholtz", "expect_rank", "expect_residual"});

  ExperimentConfig cfg;
  cfg.kind = get_string(j, "", "kind");
  static const std::set<std::string> kinds = {
      "assemble", "rank",      "recover", "vandermonde", "sparse",
      "landau",   "helmholtz", "born",    "suite"};
  if (!kinds.count(cfg.kind)) fail("kind", "unknown experiment kind");

  if (j.contains("weight")) cfg.weight = parse_weight(j["weight"], "weight");
  if (j.contains("basis")) {
    cfg.rows = parse_basis(j["basis"], "basis");
    cfg.cols = cfg.rows;
  }
  if (j.contains("row_basis")) cfg.rows = parse_basis(j["row_basis"], "row_basis");
  if (j.contains("col_basis")) cfg.cols = parse_basis(j["col_basis"], "col_basis");
  if (j.contains("tol")) {
    cfg.tol = get_number(j["tol"], "tol");
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) fail("tol", "must lie in (0, 1)");
  }
  if (j.contains("exact")) {
    if (!j["exact"].is_boolean()) fail("exact", "expected a bool");
    cfg.exact = j["exact"].get<bool>();
  }
  if (j.contains("threads")) {
    cfg.threads = static_cast<int>(get_integer(j["threads"], "threads"));
    if (cfg.threads < 1) fail("threads", "must be >= 1");
  }
  if (j.contains("seed")) {
    long s = get_integer(j["seed"], "seed");
    if (s < 0) fail("seed", "must be nonnegative");
    cfg.seed = static_cast<unsigned long>(s);
  }
  if (j.contains("out")) cfg.out_dir = get_string(j, "", "out");
  if (j.contains("landau")) cfg.landau = parse_landau(j["landau"], "landau");
  if (j.contains("recover")) {
    check_keys(j["recover"], "recover", {"max_points"});
    if (j["recover"].contains("max_points")) {
      cfg.recover_max_points = static_cast<int>(
          get_integer(j["recover"]["max_points"], "recover.max_points"));
    }
  }
  if (j.contains("vandermonde")) {
    check_keys(j["vandermonde"], "vandermonde", {"rank", "degree_bound"});
    if (j["vandermonde"].contains("rank")) {
      cfg.vandermonde_rank = static_cast<int>(
          get_integer(j["vandermonde"]["rank"], "vandermonde.rank"));
    }
    if (j["vandermonde"].contains("degree_bound")) {
      cfg.vandermonde_degree = static_cast<int>(
          get_integer(j["vandermonde"]["degree_bound"], "vandermonde.degree_bound"));
    }
  }
  if (j.contains("sparse")) cfg.sparse = parse_sparse(j["sparse"], "sparse");
  if (j.contains("born")) cfg.born = parse_born(j["born"], "born");
  if (j.contains("helmholtz")) {
    check_keys(j["helmholtz"], "helmholtz", {"degree"});
    if (j["helmholtz"].contains("degree")) {
      cfg.harmonic_degree =
          static_cast<int>(get_integer(j["helmholtz"]["degree"], "helmholtz.degree"));
    }
  }
  if (j.contains("expect_rank")) {
    cfg.expect_rank = static_cast<int>(get_integer(j["expect_rank"], "expect_rank"));
  }
  if (j.contains("expect_residual")) {
    cfg.expect_residual = get_number(j["expect_residual"], "expect_residual");
    if (!(*cfg.expect_residual > 0.0)) fail("expect_residual", "must be positive");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config(io::read_file(path));
}

}  // namespace toeprank::config
