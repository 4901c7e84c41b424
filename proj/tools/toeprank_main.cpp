// Config-driven front end. Every experiment reads one JSON config, writes its
// CSV artifacts and a text report into the output directory, and exits 0 on
// success, 2 when a declared property fails, 1 on usage or config errors.
// Reports hold no timing data, so a fixed config byte-reproduces every
// artifact.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "toeprank/acceptance.hpp"
#include "toeprank/assembly.hpp"
#include "toeprank/bases.hpp"
#include "toeprank/config.hpp"
#include "toeprank/io.hpp"
#include "toeprank/linalg.hpp"
#include "toeprank/physics.hpp"
#include "toeprank/ranklab.hpp"
#include "toeprank/sparse.hpp"
#include "toeprank/weights.hpp"

namespace {

using toeprank::Matrix;
using toeprank::exact_rank;
using toeprank::numerical_rank;
using toeprank::singular_values;
namespace assembly = toeprank::assembly;
namespace bases = toeprank::bases;
namespace config = toeprank::config;
namespace io = toeprank::io;
namespace physics = toeprank::physics;
namespace ranklab = toeprank::ranklab;
namespace sparse = toeprank::sparse;
namespace weights = toeprank::weights;

struct Flags {
  std::string config_path;
  std::string out;
  double tol = 0.0;
  bool exact = false;
  int threads = 0;
  bool out_set = false, tol_set = false, threads_set = false;
};

// Loads the config and applies flag overrides. The config's kind must match
// the chosen subcommand so a file never silently runs a different experiment.
config::ExperimentConfig load(const Flags& flags, const std::string& kind) {
  config::ExperimentConfig cfg;
  if (flags.config_path.empty()) {
    cfg.kind = kind;
  } else {
    cfg = config::load_config(flags.config_path);
    if (cfg.kind != kind)
      throw std::invalid_argument("config: kind '" + cfg.kind +
                                  "' does not match the '" + kind + "' subcommand");
  }
  if (flags.out_set) cfg.out_dir = flags.out;
  if (flags.tol_set) {
    if (!(flags.tol > 0.0 && flags.tol < 1.0))
      throw std::invalid_argument("--tol must lie in (0, 1)");
    cfg.tol = flags.tol;
  }
  if (flags.exact) cfg.exact = true;
  if (flags.threads_set) {
    if (flags.threads < 1) throw std::invalid_argument("--threads must be >= 1");
    cfg.threads = flags.threads;
  }
  return cfg;
}

std::string out_path(const config::ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

const weights::WeightSpec& need_weight(const config::ExperimentConfig& cfg) {
  if (!cfg.weight)
    throw std::invalid_argument("config: this experiment requires a weight");
  return *cfg.weight;
}

void emit_report(const config::ExperimentConfig& cfg, const std::string& text) {
  io::write_file(out_path(cfg, "report.txt"), text);
  std::cout << text;
}

Matrix column(const std::vector<toeprank::Cplx>& v) {
  Matrix m(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

int run_assemble(const config::ExperimentConfig& cfg) {
  auto M = assembly::assemble(need_weight(cfg), cfg.rows, cfg.cols,
                              {cfg.exact, cfg.threads});
  io::write_file(out_path(cfg, "matrix.csv"), io::emit_matrix_csv(M.entries));
  if (M.exact_entries)
    io::write_file(out_path(cfg, "exact_matrix.csv"),
                   io::emit_exact_csv(*M.exact_entries));
  int nrank = numerical_rank(M.entries, cfg.tol);
  std::optional<int> xrank;
  if (M.exact_entries) xrank = exact_rank(*M.exact_entries);
  std::ostringstream rep;
  rep << "experiment: assemble\n"
      << "rows: " << M.rows() << "\ncols: " << M.cols() << "\n"
      << "numerical rank at tol " << io::format_double(cfg.tol) << ": " << nrank
      << "\n";
  if (xrank) rep << "exact rank: " << *xrank << "\n";
  bool ok = true;
  if (cfg.expect_rank) {
    int got = xrank ? *xrank : nrank;
    ok = got == *cfg.expect_rank;
    rep << "expected rank " << *cfg.expect_rank << ": " << (ok ? "pass" : "FAIL")
        << "\n";
  }
  emit_report(cfg, rep.str());
  return ok ? 0 : 2;
}

int run_rank(const config::ExperimentConfig& cfg) {
  auto M = assembly::assemble(need_weight(cfg), cfg.rows, cfg.cols,
                              {cfg.exact, cfg.threads});
  io::write_file(out_path(cfg, "matrix.csv"), io::emit_matrix_csv(M.entries));
  auto sv = singular_values(M.entries);
  io::write_file(out_path(cfg, "singular_values.csv"), io::emit_values_csv(sv));
  int rank = cfg.exact && M.exact_entries ? exact_rank(*M.exact_entries)
                                          : numerical_rank(M.entries, cfg.tol);
  std::ostringstream rep;
  rep << "experiment: rank\n"
      << "rank=" << rank << "\n"
      << (cfg.exact && M.exact_entries ? "mode: exact elimination\n"
                                       : "mode: singular values at tol " +
                                             io::format_double(cfg.tol) + "\n")
      << "sigma_max: " << io::format_double(sv.front()) << "\n"
      << "sigma_min: " << io::format_double(sv.back()) << "\n";
  bool ok = true;
  if (cfg.expect_rank) {
    ok = rank == *cfg.expect_rank;
    rep << "expected rank " << *cfg.expect_rank << ": " << (ok ? "pass" : "FAIL")
        << "\n";
  }
  emit_report(cfg, rep.str());
  return ok ? 0 : 2;
}

int run_recover(const config::ExperimentConfig& cfg) {
  auto M = assembly::assemble(need_weight(cfg), cfg.rows, cfg.cols,
                              {false, cfg.threads});
  auto rec = ranklab::recover_point_masses(M, cfg.recover_max_points);
  io::write_file(out_path(cfg, "points.csv"), io::emit_matrix_csv(column(rec.points)));
  io::write_file(out_path(cfg, "coefficients.csv"),
                 io::emit_matrix_csv(column(rec.coefficients)));
  std::ostringstream rep;
  rep << "experiment: recover\n" << ranklab::recovery_report(rec);
  bool ok = true;
  if (cfg.expect_residual) {
    ok = rec.residual <= *cfg.expect_residual;
    rep << "expected residual <= " << io::format_double(*cfg.expect_residual) << ": "
        << (ok ? "pass" : "FAIL") << "\n";
  }
  emit_report(cfg, rep.str());
  return ok ? 0 : 2;
}

int run_vandermonde(const config::ExperimentConfig& cfg) {
  const auto* pd = std::get_if<weights::PointDistribution>(&need_weight(cfg));
  if (!pd)
    throw std::invalid_argument("vandermonde: point-mass weight required");
  auto phi = ranklab::FiniteFunctional::from(*pd);
  auto rep = ranklab::check_lemma_equivalence(phi, cfg.vandermonde_rank,
                                              cfg.vandermonde_degree);
  std::ostringstream os;
  os << "experiment: vandermonde\n" << rep.text;
  if (os.str().back() != '\n') os << "\n";
  emit_report(cfg, os.str());
  return rep.biconditional ? 0 : 2;
}

int run_sparse(const config::ExperimentConfig& cfg) {
  sparse::IndexSet J = cfg.sparse.set == "squares"
                           ? sparse::IndexSet::squares()
                           : sparse::IndexSet::multiples(cfg.sparse.parameter);
  sparse::Direction gamma(cfg.sparse.direction);
  auto rep = sparse::is_N_sparse(J, gamma, cfg.sparse.order, cfg.sparse.horizon);
  std::ostringstream os;
  os << "experiment: sparse\nset: " << J.desc() << "\norder N: " << cfg.sparse.order
     << "\nhorizon: " << cfg.sparse.horizon
     << "\nmax line density: " << io::format_double(rep.max_density)
     << "\nthreshold: " << io::format_double(rep.threshold)
     << "\nsparse: " << (rep.sparse ? "yes" : "no") << "\n";
  bool ok = true;
  if (cfg.weight) {
    auto M = assembly::assemble(*cfg.weight, cfg.rows, cfg.cols, {false, cfg.threads});
    auto R = assembly::reduced_matrix(M, J);
    io::write_file(out_path(cfg, "reduced.csv"), io::emit_matrix_csv(R.entries));
    int full = numerical_rank(M.entries, cfg.tol);
    int red = numerical_rank(R.entries, cfg.tol);
    os << "full rank: " << full << "\nreduced rank: " << red << "\n";
    if (cfg.expect_rank) {
      ok = red == *cfg.expect_rank;
      os << "expected reduced rank " << *cfg.expect_rank << ": "
         << (ok ? "pass" : "FAIL") << "\n";
    }
  }
  emit_report(cfg, os.str());
  return ok ? 0 : 2;
}

int run_landau(const config::ExperimentConfig& cfg) {
  auto op = physics::landau_toeplitz(need_weight(cfg), cfg.landau);
  io::write_file(out_path(cfg, "matrix.csv"), io::emit_matrix_csv(op.entries));
  io::write_file(out_path(cfg, "spectrum.csv"),
                 io::emit_values_csv(op.spectrum.eigenvalues));
  std::ostringstream rep;
  rep << "experiment: landau\n" << op.spectrum.text;
  if (rep.str().back() != '\n') rep << "\n";
  bool ok = true;
  if (cfg.expect_rank) {
    int rank = numerical_rank(op.entries, cfg.tol);
    ok = rank == *cfg.expect_rank;
    rep << "numerical rank at tol " << io::format_double(cfg.tol) << ": " << rank
        << "\nexpected rank " << *cfg.expect_rank << ": " << (ok ? "pass" : "FAIL")
        << "\n";
  }
  emit_report(cfg, rep.str());
  return ok ? 0 : 2;
}

int run_helmholtz(const config::ExperimentConfig& cfg) {
  bases::BasisSpec harm;
  harm.kind = bases::BasisKind::Harmonic2D;
  harm.dim = 2;
  harm.degree = cfg.harmonic_degree;
  const auto& F = need_weight(cfg);
  Matrix direct = physics::helmholtz_matrix(F, harm, physics::HelmholtzPath::Direct);
  Matrix transform =
      physics::helmholtz_matrix(F, harm, physics::HelmholtzPath::Transform);
  double gap = (direct - transform).cwiseAbs().maxCoeff();
  io::write_file(out_path(cfg, "direct.csv"), io::emit_matrix_csv(direct));
  io::write_file(out_path(cfg, "transform.csv"), io::emit_matrix_csv(transform));
  bool ok = gap < cfg.tol;
  std::ostringstream rep;
  rep << "experiment: helmholtz\nharmonic degree: " << cfg.harmonic_degree
      << "\nfamily size: " << direct.rows()
      << "\ntwo-path max entry gap: " << io::format_double(gap)
      << "\nwithin tol " << io::format_double(cfg.tol) << ": "
      << (ok ? "pass" : "FAIL") << "\n";
  emit_report(cfg, rep.str());
  return ok ? 0 : 2;
}

int run_born(const config::ExperimentConfig& cfg) {
  physics::SphereSampling sampling =
      cfg.born.sampling == "circle"
          ? physics::SphereSampling::circle(cfg.born.count)
          : cfg.born.sampling == "icosahedral"
                ? physics::SphereSampling::icosahedral(cfg.born.count)
                : physics::SphereSampling::fibonacci(cfg.born.count);
  auto bm = physics::born_matrix(need_weight(cfg), sampling);
  io::write_file(out_path(cfg, "matrix.csv"), io::emit_matrix_csv(bm.entries));
  io::write_file(out_path(cfg, "singular_values.csv"),
                 io::emit_values_csv(bm.singular_values));
  std::ostringstream rep;
  rep << "experiment: born\n" << bm.text;
  if (rep.str().back() != '\n') rep << "\n";
  bool ok = true;
  if (cfg.expect_rank) {
    ok = bm.numerical_rank == *cfg.expect_rank;
    rep << "expected rank " << *cfg.expect_rank << ": " << (ok ? "pass" : "FAIL")
        << "\n";
  }
  emit_report(cfg, rep.str());
  return ok ? 0 : 2;
}

// Strict gate: a documented limit still counts as a failure here; only the
// dedicated acceptance binary downgrades those to expected.
int run_suite(const config::ExperimentConfig& cfg) {
  auto results = toeprank::acceptance::run_all(&std::cout);
  std::string table = toeprank::acceptance::summary_table(results);
  std::cout << "\n" << table;
  io::write_file(out_path(cfg, "report.txt"), table);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moment-matrix experiments for finite-rank Toeplitz operators"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"assemble", "assemble the moment matrix of a weight"},
      {"rank", "numerical or exact rank of the assembled matrix"},
      {"recover", "recover point masses from the assembled matrix"},
      {"vandermonde", "rank bound versus vanishing determinant conditions"},
      {"sparse", "index-set sparsity and reduced-matrix rank"},
      {"landau", "level-family compression and its spectrum"},
      {"helmholtz", "two routes to the oscillation-weighted harmonic matrix"},
      {"born", "scattering kernel matrix over sphere directions"},
      {"suite", "run every acceptance criterion"}};
  for (const auto& [name, desc] : kinds) {
    auto* sub = app.add_subcommand(name, desc);
    auto* opt = sub->add_option("--config", flags.config_path,
                                "experiment config (JSON)");
    if (name != "suite") opt->required();
    sub->add_option("--out", flags.out, "output directory (overrides the config)");
    sub->add_option("--tol", flags.tol,
                    "rank/agreement tolerance in (0,1) (overrides the config)");
    sub->add_flag("--exact", flags.exact, "also fill exact rational entries");
    sub->add_option("--threads", flags.threads,
                    "parallel entry fill (default 1, deterministic)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  auto* sub = app.get_subcommands().front();
  const std::string kind = sub->get_name();
  flags.out_set = sub->count("--out") > 0;
  flags.tol_set = sub->count("--tol") > 0;
  flags.threads_set = sub->count("--threads") > 0;
  try {
    auto cfg = load(flags, kind);
    if (kind == "assemble") return run_assemble(cfg);
    if (kind == "rank") return run_rank(cfg);
    if (kind == "recover") return run_recover(cfg);
    if (kind == "vandermonde") return run_vandermonde(cfg);
    if (kind == "sparse") return run_sparse(cfg);
    if (kind == "landau") return run_landau(cfg);
    if (kind == "helmholtz") return run_helmholtz(cfg);
    if (kind == "born") return run_born(cfg);
    return run_suite(cfg);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
