// Command-line harness around the solver: synthetic matrix generation,
// single solves, condition-trace experiments and the QR cross-check.
//
// Exit codes: 0 success, 2 bound-dominance or cross-mode equivalence
// violation, 3 parse error, 4 non-convergence.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chebsi/chebsi.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitParse = 3;
constexpr int kExitNoConverge = 4;

struct MatrixOptions {
  std::string mm_file;
  std::size_t n = 500;
  std::string spectrum = "uniform";
  double lo = 1.0;
  double hi = 500.0;
  double frac = 0.1;
  std::string scalar = "real";
};

struct SolverOptions {
  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::size_t nev = 20;
  std::size_t nex = 10;
  int deg_base = 20;
  int deg_max = 36;
  bool no_opt = false;
  std::string qr = "dynamic";
  std::string eta = "one";
  int max_iters = 50;
  int lanczos_steps = 25;
  std::string out = "out";
};

void add_matrix_flags(CLI::App* cmd, MatrixOptions& m, bool allow_file) {
  if (allow_file)
    cmd->add_option("--mm", m.mm_file, "Matrix Market input file");
  cmd->add_option("--n", m.n, "synthetic matrix order");
  cmd->add_option("--spectrum", m.spectrum, "uniform|clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}));
  cmd->add_option("--lo", m.lo, "spectrum lower end");
  cmd->add_option("--hi", m.hi, "spectrum upper end");
  cmd->add_option("--frac", m.frac, "clustered: fraction inside the cluster");
  cmd->add_option("--scalar", m.scalar, "real|complex")
      ->check(CLI::IsMember({"real", "complex"}));
}

void add_solver_flags(CLI::App* cmd, SolverOptions& s) {
  cmd->add_option("--seed", s.seed, "random seed");
  cmd->add_option("--tol", s.tol, "residual tolerance");
  cmd->add_option("--nev", s.nev, "number of wanted eigenpairs");
  cmd->add_option("--nex", s.nex, "extra search directions");
  cmd->add_option("--deg-base", s.deg_base, "base polynomial degree");
  cmd->add_option("--deg-max", s.deg_max, "maximum polynomial degree");
  cmd->add_flag("--no-opt", s.no_opt, "disable per-column degree selection");
  cmd->add_option("--qr", s.qr, "dynamic|hh|cholqr1|cholqr2|shifted")
      ->check(CLI::IsMember({"dynamic", "hh", "cholqr1", "cholqr2",
                             "shifted"}));
  cmd->add_option("--eta", s.eta, "one|formula")
      ->check(CLI::IsMember({"one", "formula"}));
  cmd->add_option("--max-iters", s.max_iters, "iteration cap");
  cmd->add_option("--lanczos-steps", s.lanczos_steps,
                  "steps for the bound estimator");
  cmd->add_option("--out", s.out, "output directory")->required();
}

chebsi::MatrixSpec to_spec(const MatrixOptions& m, std::uint64_t seed) {
  chebsi::MatrixSpec spec;
  spec.n = m.n;
  spec.kind = m.spectrum == "clustered" ? chebsi::SpectrumKind::clustered_dft
                                        : chebsi::SpectrumKind::uniform;
  spec.lo = m.lo;
  spec.hi = m.hi;
  spec.cluster_frac = m.frac;
  spec.seed = seed;
  return spec;
}

chebsi::SolverConfig to_config(const SolverOptions& s) {
  chebsi::SolverConfig cfg;
  cfg.nev = s.nev;
  cfg.nex = s.nex;
  cfg.tol = s.tol;
  cfg.base_degree = s.deg_base;
  cfg.max_degree = s.deg_max;
  cfg.degree_opt = !s.no_opt;
  cfg.eta_mode =
      s.eta == "formula" ? chebsi::EtaMode::formula : chebsi::EtaMode::one;
  cfg.max_iterations = s.max_iters;
  cfg.lanczos_steps = s.lanczos_steps;
  cfg.seed = s.seed;
  if (s.qr == "dynamic") {
    cfg.qr_mode = chebsi::QrMode::dynamic;
  } else if (s.qr == "hh") {
    cfg.qr_mode = chebsi::QrMode::householder_only;
  } else {
    cfg.qr_mode = chebsi::QrMode::forced;
    cfg.forced_variant = s.qr == "cholqr1"   ? chebsi::QrVariant::cholqr1
                         : s.qr == "cholqr2" ? chebsi::QrVariant::cholqr2
                                             : chebsi::QrVariant::shifted_cholqr2;
  }
  return cfg;
}

json config_json(const SolverOptions& s, const MatrixOptions& m) {
  json j;
  j["seed"] = s.seed;
  j["tol"] = s.tol;
  j["nev"] = s.nev;
  j["nex"] = s.nex;
  j["deg_base"] = s.deg_base;
  j["deg_max"] = s.deg_max;
  j["degree_opt"] = !s.no_opt;
  j["qr"] = s.qr;
  j["eta"] = s.eta;
  j["max_iters"] = s.max_iters;
  j["lanczos_steps"] = s.lanczos_steps;
  if (!m.mm_file.empty()) {
    j["matrix"] = m.mm_file;
  } else {
    j["matrix"] = {{"n", m.n},      {"spectrum", m.spectrum}, {"lo", m.lo},
                   {"hi", m.hi},    {"frac", m.frac},         {"scalar",
                   m.scalar}};
  }
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  os << text;
}

template <chebsi::Scalar T>
json result_json(const chebsi::SolveResult<T>& r) {
  json j;
  j["iterations"] = r.iterations;
  j["matvecs"] = r.matvecs;
  j["converged"] = r.converged;
  j["converged_all"] = r.converged_all;
  j["wall_s"] = r.wall_seconds;
  j["qr_s"] = r.qr_seconds;
  j["eigenvalues_hash"] = chebsi::eigenvalues_hash(r.eigenvalues);
  j["locked_stability_max"] = r.locked_stability_max;
  j["bounds"] = {{"lower_est", r.bounds.lower_est},
                 {"inner_edge", r.bounds.inner_edge},
                 {"upper_bound", r.bounds.upper_bound}};
  return j;
}

template <chebsi::Scalar T>
std::string eigenvalues_csv(const chebsi::SolveResult<T>& r) {
  std::string s = "index,value,residual\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    s += std::to_string(i) + ',' + chebsi::fmt_g17(r.eigenvalues[i]) + ',' +
         chebsi::fmt_g17(r.final_residuals[i]) + '\n';
  }
  return s;
}

template <chebsi::Scalar T>
chebsi::DenseMatrix<T> load_or_generate(const MatrixOptions& m,
                                        std::uint64_t seed) {
  if (!m.mm_file.empty())
    return chebsi::read_matrix_market_file<T>(m.mm_file);
  return chebsi::gen_matrix<T>(to_spec(m, seed));
}

bool wants_complex(const MatrixOptions& m) {
  if (!m.mm_file.empty()) return chebsi::matrix_market_is_complex(m.mm_file);
  return m.scalar == "complex";
}

// ---- subcommand drivers --------------------------------------------------

template <chebsi::Scalar T>
int do_gen(const MatrixOptions& m, const SolverOptions& s) {
  fs::create_directories(s.out);
  const chebsi::MatrixSpec spec = to_spec(m, s.seed);
  const std::vector<double> lam = chebsi::make_spectrum(spec);
  const chebsi::DenseMatrix<T> A = chebsi::gen_matrix<T>(spec);
  chebsi::write_matrix_market_file(
      (fs::path(s.out) / "matrix.mtx").string(), A,
      chebsi::MmSymmetry::hermitian);
  std::string csv = "index,value\n";
  for (std::size_t i = 0; i < lam.size(); ++i)
    csv += std::to_string(i) + ',' + chebsi::fmt_g17(lam[i]) + '\n';
  write_text(fs::path(s.out) / "spectrum.csv", csv);
  std::cout << "wrote " << (fs::path(s.out) / "matrix.mtx").string() << " ("
            << A.rows() << "x" << A.cols() << ")\n";
  return kExitOk;
}

template <chebsi::Scalar T>
int do_solve(const MatrixOptions& m, const SolverOptions& s) {
  fs::create_directories(s.out);
  chebsi::DenseHermitianOperator<T> op(load_or_generate<T>(m, s.seed));
  const chebsi::SolverConfig cfg = to_config(s);
  const chebsi::SolveResult<T> r = chebsi::solve(op, cfg);
  write_text(fs::path(s.out) / "trace.csv", chebsi::to_csv(r.trace));
  write_text(fs::path(s.out) / "eigenvalues.csv", eigenvalues_csv(r));
  json j;
  j["config"] = config_json(s, m);
  j["result"] = result_json(r);
  write_text(fs::path(s.out) / "summary.json", j.dump(2) + "\n");
  std::cout << (r.converged_all ? "converged" : "DID NOT CONVERGE") << " in "
            << r.iterations << " iterations, " << r.matvecs << " matvecs\n";
  return r.converged_all ? kExitOk : kExitNoConverge;
}

template <chebsi::Scalar T>
int do_cond_trace(const MatrixOptions& m, const SolverOptions& s, bool exact,
                  bool both) {
  fs::create_directories(s.out);
  chebsi::DenseHermitianOperator<T> op(load_or_generate<T>(m, s.seed));
  json j;
  j["config"] = config_json(s, m);
  int violations = 0;
  bool all_converged = true;

  auto one_run = [&](bool degree_opt, const std::string& name) {
    SolverOptions so = s;
    so.no_opt = !degree_opt;
    chebsi::SolverConfig cfg = to_config(so);
    chebsi::SolveResult<T> r =
        exact ? chebsi::solve_with_exact_cond(op, cfg) : chebsi::solve(op, cfg);
    write_text(fs::path(s.out) / ("trace_" + name + ".csv"),
               chebsi::to_csv(r.trace));
    const chebsi::DominanceOutcome dom = chebsi::check_dominance(r.trace);
    violations += dom.violations;
    all_converged = all_converged && r.converged_all;
    json rj = result_json(r);
    rj["dominance_rows"] = dom.rows_checked;
    rj["dominance_violations"] = dom.violations;
    j["runs"][name] = rj;
  };

  if (both) {
    one_run(true, "opt");
    one_run(false, "noopt");
  } else {
    one_run(!s.no_opt, s.no_opt ? "noopt" : "opt");
  }
  j["dominance_violations"] = violations;
  write_text(fs::path(s.out) / "summary.json", j.dump(2) + "\n");
  if (!all_converged) {
    std::cout << "DID NOT CONVERGE\n";
    return kExitNoConverge;
  }
  std::cout << (violations == 0 ? "bound dominance holds"
                                : "BOUND DOMINANCE VIOLATED")
            << "\n";
  return violations == 0 ? kExitOk : kExitViolation;
}

template <chebsi::Scalar T>
int do_compare_qr(const MatrixOptions& m, const SolverOptions& s) {
  fs::create_directories(s.out);
  chebsi::DenseHermitianOperator<T> op(load_or_generate<T>(m, s.seed));
  const chebsi::SolverConfig cfg = to_config(s);
  const chebsi::CompareQrReport<T> rep = chebsi::run_compare_qr(op, cfg);
  write_text(fs::path(s.out) / "trace_dynamic.csv",
             chebsi::to_csv(rep.dynamic_run.trace));
  write_text(fs::path(s.out) / "trace_householder.csv",
             chebsi::to_csv(rep.householder_run.trace));
  json j;
  j["config"] = config_json(s, m);
  j["per_mode"]["dynamic"] = result_json(rep.dynamic_run);
  j["per_mode"]["householder"] = result_json(rep.householder_run);
  j["comparison"] = {{"max_eig_diff", rep.max_eig_diff},
                     {"norm_scale", rep.norm_scale},
                     {"iteration_diff", rep.iteration_diff},
                     {"matvec_rel_diff", rep.matvec_rel_diff},
                     {"equivalent", rep.equivalent}};
  write_text(fs::path(s.out) / "report.json", j.dump(2) + "\n");
  if (!rep.dynamic_run.converged_all || !rep.householder_run.converged_all) {
    std::cout << "DID NOT CONVERGE\n";
    return kExitNoConverge;
  }
  std::cout << (rep.equivalent ? "qr modes equivalent"
                               : "QR MODE DISAGREEMENT")
            << "\n";
  return rep.equivalent ? kExitOk : kExitViolation;
}

template <typename Fn>
int dispatch_scalar(const MatrixOptions& m, Fn&& fn) {
  if (wants_complex(m)) return fn(std::complex<double>{});
  return fn(double{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev-filtered subspace eigensolver harness"};
  app.require_subcommand(1);

  MatrixOptions mat;
  SolverOptions sol;

  CLI::App* gen = app.add_subcommand("gen", "write a synthetic matrix");
  add_matrix_flags(gen, mat, false);
  gen->add_option("--seed", sol.seed, "random seed");
  gen->add_option("--out", sol.out, "output directory")->required();

  CLI::App* solve = app.add_subcommand("solve", "run the eigensolver");
  add_matrix_flags(solve, mat, true);
  add_solver_flags(solve, sol);

  bool exact = false, both = false;
  CLI::App* cond = app.add_subcommand(
      "cond-trace", "solve and log condition estimates per iteration");
  add_matrix_flags(cond, mat, true);
  add_solver_flags(cond, sol);
  cond->add_flag("--exact", exact,
                 "measure the exact condition number per iteration");
  cond->add_flag("--both", both, "run optimized and uniform degrees");

  CLI::App* cmp = app.add_subcommand(
      "compare-qr", "cross-check dynamic QR against Householder-only");
  add_matrix_flags(cmp, mat, true);
  add_solver_flags(cmp, sol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    if (gen->parsed())
      return dispatch_scalar(mat, [&](auto tag) {
        return do_gen<decltype(tag)>(mat, sol);
      });
    if (solve->parsed())
      return dispatch_scalar(mat, [&](auto tag) {
        return do_solve<decltype(tag)>(mat, sol);
      });
    if (cond->parsed())
      return dispatch_scalar(mat, [&](auto tag) {
        return do_cond_trace<decltype(tag)>(mat, sol, exact, both);
      });
    if (cmp->parsed())
      return dispatch_scalar(mat, [&](auto tag) {
        return do_compare_qr<decltype(tag)>(mat, sol);
      });
  } catch (const chebsi::MmParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
