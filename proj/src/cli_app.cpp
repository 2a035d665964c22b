#include "certnorm/cli_app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "certnorm/certificate.hpp"
#include "certnorm/fourier.hpp"
#include "certnorm/gronorm.hpp"
#include "certnorm/matrix_io.hpp"
#include "certnorm/ncmaps.hpp"
#include "certnorm/norms.hpp"
#include "certnorm/rng.hpp"
#include "certnorm/suites.hpp"

namespace certnorm::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitSolver = 4;

Json provenance(double tol_sdp) {
  Json p = Json::object();
  p.set("version", kVersion);
  p.set("tol_sdp", tol_sdp);
  p.set("tol_match", kTolMatch);
  p.set("tol_psd", kTolPsd);
  return p;
}

Json make_report(const std::string& command, Json inputs, Json results, double tol_sdp) {
  Json r = Json::object();
  r.set("command", command);
  r.set("inputs", std::move(inputs));
  r.set("results", std::move(results));
  r.set("provenance", provenance(tol_sdp));
  return r;
}

struct CommonFlags {
  bool json = false;
  bool witness = false;
  double tol = kTolSdp;

  sdp::SolveOptions solve_options() const {
    sdp::SolveOptions o;
    o.tol = std::max(tol, kTolSdpFloor);
    return o;
  }
};

void emit(std::ostream& out, const Json& report, bool json_only,
          const std::string& human_line) {
  if (json_only) {
    out << report.dump(2) << '\n';
  } else {
    out << human_line << '\n';
  }
}

int cmd_norm(const std::string& name, const std::string& file, const CommonFlags& flags,
             std::ostream& out) {
  MatrixFile mf = read_matrix_file(file);
  const DenseMatrix& a = mf.matrix;
  const sdp::SolveOptions opts = flags.solve_options();

  std::optional<NormCertificate> cert;
  double value = 0.0;
  if (name == "gamma2") {
    cert = gamma2(a, opts);
  } else if (name == "gamma2star") {
    cert = gamma2_star(a, opts);
  } else if (name == "corrC") {
    cert = corr_norm_C(a, opts);
  } else if (name == "corrCprime") {
    cert = corr_norm_Cprime(a, opts);
  } else if (name == "corrproblem") {
    cert = corr_problem(a, opts);
  } else if (name == "schatten1") {
    value = schatten_norm(a, Pexp::One);
  } else if (name == "schatten2") {
    value = schatten_norm(a, Pexp::Two);
  } else if (name == "schattenInf") {
    value = schatten_norm(a, Pexp::Inf);
  } else if (name == "onetoinf") {
    value = pq_norm(a, Pexp::One, Pexp::Inf);
  } else if (name == "infty1") {
    TwoSidedSignOptimum opt = infty_one_norm_witness(a);
    NormCertificate c{"infty1", opt.value, SignPair{opt.eps, opt.eta}, SolverMeta{}};
    cert = std::move(c);
  } else if (name == "cs1") {
    const int nn = a.rows();
    const int n = mf.choi_dim ? *mf.choi_dim : static_cast<int>(std::lround(std::sqrt(nn)));
    if (n * n != nn || a.cols() != nn) {
      throw std::invalid_argument("cs1: file must hold an n^2 x n^2 Choi matrix");
    }
    cert = nc::cs1_norm(nc::MatrixMap(n, a));
  } else {
    throw CLI::ValidationError("unknown norm name: " + name);
  }
  if (cert) value = cert->value;

  Json inputs = Json::object();
  inputs.set("file", file);
  inputs.set("norm", name);
  Json results = Json::object();
  results.set("value", value);
  bool verified = true;
  if (cert) {
    results.set("solver_gap", cert->meta.gap);
    results.set("iterations", cert->meta.iterations);
    if (flags.witness) {
      results.set("certificate", certificate_to_json(*cert));
      VerifyReport vr = verify_certificate(a, *cert);
      verified = vr.pass;
      Json checks = Json::array();
      for (const VerifyItem& it : vr.items) {
        Json c = Json::object();
        c.set("name", it.name);
        c.set("slack", it.slack);
        c.set("pass", it.pass);
        checks.push(std::move(c));
      }
      results.set("witness_checks", std::move(checks));
      results.set("witness_verified", verified);
    }
  }
  Json report = make_report("norm", std::move(inputs), std::move(results), opts.tol);
  emit(out, report, flags.json, name + "(" + file + ") = " + format_double(value));
  if (flags.json && !verified) return kExitPropertyFailure;
  if (!verified) {
    out << "witness verification FAILED\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, int n, int trials, std::uint64_t seed,
               const CommonFlags& flags, std::ostream& out) {
  const sdp::SolveOptions opts = flags.solve_options();
  suites::SuiteReport rep = suites::run_suite(suite, n, trials, seed, opts);
  Json inputs = Json::object();
  inputs.set("suite", suite);
  inputs.set("n", n);
  inputs.set("trials", trials);
  inputs.set("seed", seed);
  Json report = make_report("verify", std::move(inputs), suites::suite_report_to_json(rep),
                            opts.tol);
  if (flags.json) {
    out << report.dump(2) << '\n';
  } else {
    for (const suites::PropertyResult& p : rep.properties) {
      out << (p.fail == 0 ? "ok   " : "FAIL ") << suite << "." << p.name << "  pass=" << p.pass
          << " fail=" << p.fail << " worst_slack=" << format_double(p.worst_slack) << '\n';
    }
    out << (rep.all_pass ? "all properties passed\n" : "PROPERTY FAILURES PRESENT\n");
  }
  return rep.all_pass ? kExitOk : kExitPropertyFailure;
}

int cmd_experiment(const std::string& file, int k, int trials, std::uint64_t seed,
                   bool full_enum, const CommonFlags& flags, std::ostream& out) {
  MatrixFile mf = read_matrix_file(file);
  const sdp::SolveOptions opts = flags.solve_options();
  fourier::SamplingReport rep =
      fourier::sampling_experiment(mf.matrix, k, trials, seed, full_enum, opts);
  Json inputs = Json::object();
  inputs.set("file", file);
  inputs.set("K", k);
  inputs.set("trials", rep.trials);
  inputs.set("seed", seed);
  inputs.set("full_enumeration", full_enum);
  Json results = Json::object();
  results.set("n", rep.n);
  results.set("denominator_infty1", rep.denominator);
  results.set("degenerate_denominator", rep.degenerate);
  results.set("gamma2_values", Json::from_vector(rep.gamma2_values));
  if (!rep.degenerate) {
    results.set("ratios", Json::from_vector(rep.ratios));
    results.set("min_ratio", rep.min_ratio);
    results.set("median_ratio", rep.median_ratio);
    results.set("max_ratio", rep.max_ratio);
  }
  Json report = make_report("experiment", std::move(inputs), std::move(results), opts.tol);
  std::string human = rep.degenerate
                          ? std::string("degenerate denominator (matrix has zero infty->1 norm)")
                          : "ratio min/median/max = " + format_double(rep.min_ratio) + " / " +
                                format_double(rep.median_ratio) + " / " +
                                format_double(rep.max_ratio);
  emit(out, report, flags.json, human);
  return kExitOk;
}

nc::MatrixMap map_from_file(const MatrixFile& mf, const std::string& kind) {
  const DenseMatrix& a = mf.matrix;
  if (kind == "schur") return nc::schur_map(a);
  if (kind == "diag") return nc::diag_channel(a);
  if (kind == "choi") {
    const int nn = a.rows();
    const int n = mf.choi_dim ? *mf.choi_dim : static_cast<int>(std::lround(std::sqrt(nn)));
    if (n * n != nn || a.cols() != nn) {
      throw std::invalid_argument("choi map: file must hold an n^2 x n^2 matrix");
    }
    return nc::MatrixMap(n, a);
  }
  throw std::invalid_argument("unknown map kind: " + kind);
}

int cmd_nc(const std::string& sub, const std::string& file, const std::string& map_kind,
           int m, int trials, std::uint64_t seed, const CommonFlags& flags, std::ostream& out) {
  const sdp::SolveOptions opts = flags.solve_options();
  Json inputs = Json::object();
  inputs.set("subcommand", sub);
  if (!file.empty()) inputs.set("file", file);

  if (sub == "cliffordcheck") {
    inputs.set("m", m);
    inputs.set("trials", trials);
    inputs.set("seed", seed);
    nc::CliffordSystem sys = nc::clifford_system(m);
    double anti = 0.0, pairing = 0.0, norm_dev = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        DenseMatrix ac = sys.generators[i] * sys.generators[j] +
                         sys.generators[j] * sys.generators[i];
        if (i == j) {
          for (int r = 0; r < sys.dim; ++r) ac(r, r) -= 2.0;
        }
        anti = std::max(anti, ac.max_abs());
        double tr = 0.0;
        for (int r = 0; r < sys.dim; ++r)
          for (int c = 0; c < sys.dim; ++c) tr += sys.generators[i](r, c) * sys.generators[j](c, r);
        tr /= sys.dim;
        pairing = std::max(pairing, std::fabs(tr - (i == j ? 1.0 : 0.0)));
      }
      norm_dev = std::max(norm_dev,
                          std::fabs(schatten_norm(sys.generators[i], Pexp::Inf) - 1.0));
    }
    double worst_gram = 0.0;
    for (int t = 0; t < trials; ++t) {
      SplitMix64 gen = derive_stream(seed, t);
      DenseMatrix xi(1, m), eta(1, m);
      for (int c = 0; c < m; ++c) {
        xi(0, c) = gen.gaussian();
        eta(0, c) = gen.gaussian();
      }
      double nx = norm2(xi.row(0)), ny = norm2(eta.row(0));
      for (int c = 0; c < m; ++c) {
        xi(0, c) = nx > 1e-12 ? xi(0, c) / nx : (c == 0 ? 1.0 : 0.0);
        eta(0, c) = ny > 1e-12 ? eta(0, c) / ny : (c == 0 ? 1.0 : 0.0);
      }
      nc::CliffordWitness w = nc::clifford_witness(xi, eta);
      worst_gram = std::max(worst_gram, std::fabs(w.pairing(0, 0) - dot(xi.row(0), eta.row(0))));
    }
    const bool pass = anti <= kTolMatch && pairing <= kTolMatch && norm_dev <= kTolMatch &&
                      worst_gram <= 1e-10;
    Json results = Json::object();
    results.set("dim", sys.dim);
    results.set("anticommutator_deviation", anti);
    results.set("trace_pairing_deviation", pairing);
    results.set("operator_norm_deviation", norm_dev);
    results.set("random_pairing_deviation", worst_gram);
    results.set("pass", pass);
    Json report = make_report("nc", std::move(inputs), std::move(results), opts.tol);
    emit(out, report, flags.json,
         std::string("clifford system m=") + std::to_string(m) + " dim=" +
             std::to_string(sys.dim) + (pass ? " ok" : " FAILED"));
    return pass ? kExitOk : kExitPropertyFailure;
  }

  MatrixFile mf = read_matrix_file(file);
  if (sub == "cs1") {
    const std::string kind = map_kind.empty() ? (mf.choi_dim ? "choi" : "schur") : map_kind;
    inputs.set("map", kind);
    nc::MatrixMap map = map_from_file(mf, kind);
    NormCertificate cert = nc::cs1_norm(map);
    Json results = Json::object();
    results.set("value", cert.value);
    if (cert.meta.cross_check_value) results.set("sdp_cross_check", *cert.meta.cross_check_value);
    if (flags.witness) {
      results.set("certificate", certificate_to_json(cert));
      VerifyReport vr = verify_certificate(map.choi(), cert);
      results.set("witness_verified", vr.pass);
      if (!vr.pass) {
        Json report = make_report("nc", std::move(inputs), std::move(results), opts.tol);
        emit(out, report, flags.json, "cs1 witness verification FAILED");
        return kExitPropertyFailure;
      }
    }
    Json report = make_report("nc", std::move(inputs), std::move(results), opts.tol);
    emit(out, report, flags.json, "cs1 = " + format_double(cert.value));
    return kExitOk;
  }
  if (sub == "choi") {
    const std::string kind = map_kind.empty() ? "schur" : map_kind;
    inputs.set("map", kind);
    nc::MatrixMap map = map_from_file(mf, kind);
    if (flags.json) {
      Json results = Json::object();
      results.set("n", map.dim());
      results.set("choi", matrix_to_json(map.choi()));
      Json report = make_report("nc", std::move(inputs), std::move(results), opts.tol);
      out << report.dump(2) << '\n';
    } else {
      write_choi_matrix(out, map.choi(), map.dim());
    }
    return kExitOk;
  }
  if (sub == "expectation") {
    const std::string kind = map_kind.empty() ? (mf.choi_dim ? "choi" : "schur") : map_kind;
    inputs.set("map", kind);
    nc::MatrixMap map = map_from_file(mf, kind);
    DenseMatrix e = nc::conditional_expectation(map);
    if (flags.json) {
      Json results = Json::object();
      results.set("expectation", matrix_to_json(e));
      Json report = make_report("nc", std::move(inputs), std::move(results), opts.tol);
      out << report.dump(2) << '\n';
    } else {
      write_matrix(out, e);
    }
    return kExitOk;
  }
  if (sub == "gapdemo") {
    nc::GapDemoReport rep = nc::cs1_gap_demo(mf.matrix);
    Json results = Json::object();
    results.set("cs1", rep.cs1);
    results.set("op_to_trace_norm", rep.op_norm);
    results.set("ratio_defined", rep.ratio_defined);
    if (rep.ratio_defined) results.set("ratio", rep.ratio);
    Json report = make_report("nc", std::move(inputs), std::move(results), opts.tol);
    emit(out, report, flags.json,
         "cs1 = " + format_double(rep.cs1) + ", op->trace = " + format_double(rep.op_norm) +
             (rep.ratio_defined ? ", ratio = " + format_double(rep.ratio) : ""));
    return kExitOk;
  }
  if (sub == "gammastarmap") {
    nc::GammaStarReport rep = nc::gamma_star_map_bound(mf.matrix, opts);
    Json results = Json::object();
    results.set("gamma2_star", rep.gamma2_star);
    results.set("certified_value", rep.certified_value);
    results.set("ambient", rep.ambient);
    results.set("truncated", rep.truncated);
    results.set("pairing_error", rep.pairing_error);
    results.set("contraction_pairing_error", rep.contraction_pairing_error);
    if (flags.witness) {
      results.set("xi", matrix_to_json(rep.xi));
      results.set("eta", matrix_to_json(rep.eta));
      results.set("pairing", matrix_to_json(rep.witness.pairing));
      Json bs = Json::array();
      for (const DenseMatrix& b : rep.witness.b) bs.push(matrix_to_json(b));
      results.set("b_matrices", std::move(bs));
      Json cs = Json::array();
      for (const DenseMatrix& c : rep.witness.c) cs.push(matrix_to_json(c));
      results.set("c_matrices", std::move(cs));
      results.set("contraction_alpha", Json::from_vector(rep.contraction.alpha));
      results.set("contraction_beta", Json::from_vector(rep.contraction.beta));
      results.set("contraction_x", matrix_to_json(rep.contraction.x));
    }
    Json report = make_report("nc", std::move(inputs), std::move(results), opts.tol);
    emit(out, report, flags.json,
         "gamma2* = " + format_double(rep.gamma2_star) +
             ", certified = " + format_double(rep.certified_value));
    return kExitOk;
  }
  throw CLI::ValidationError("unknown nc subcommand: " + sub);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified matrix norm toolkit"};
  app.require_subcommand(1);
  CommonFlags flags;

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "compute a norm of a matrix file");
  std::string norm_name, norm_file;
  norm_cmd->add_option("name", norm_name, "norm name")->required();
  norm_cmd->add_option("file", norm_file, "matrix file")->required();
  norm_cmd->add_flag("--witness", flags.witness, "emit and re-verify the certificate");
  norm_cmd->add_flag("--json", flags.json, "report-only JSON output");
  norm_cmd->add_option("--tol", flags.tol, "solver tolerance override (floor 1e-9)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a seeded property suite");
  std::string suite;
  int vn = 4, vtrials = 50;
  std::uint64_t vseed = 0;
  verify_cmd->add_option("suite", suite, "suite name")->required();
  verify_cmd->add_option("--n", vn, "dimension cap");
  verify_cmd->add_option("--trials", vtrials, "instances per property");
  verify_cmd->add_option("--seed", vseed, "generator seed")->required();
  verify_cmd->add_flag("--json", flags.json, "report-only JSON output");
  verify_cmd->add_option("--tol", flags.tol, "solver tolerance override");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "sampled sign-lift statistics");
  std::string exp_file;
  int ek = 8, etrials = 20;
  std::uint64_t eseed = 0;
  bool full_enum = false;
  exp_cmd->add_option("file", exp_file, "matrix file")->required();
  exp_cmd->add_option("--K", ek, "samples per trial");
  exp_cmd->add_option("--trials", etrials, "trial count");
  exp_cmd->add_option("--seed", eseed, "generator seed")->required();
  exp_cmd->add_flag("--full-enum", full_enum, "enumerate all sign vectors (K = 2^n)");
  exp_cmd->add_flag("--json", flags.json, "report-only JSON output");
  exp_cmd->add_option("--tol", flags.tol, "solver tolerance override");

  // nc
  auto* nc_cmd = app.add_subcommand("nc", "Choi-matrix calculus");
  std::string nc_sub, nc_file, nc_map;
  int nm = 4, ntrials = 20;
  std::uint64_t nseed = 0;
  bool nseed_given = false;
  nc_cmd->add_option("subcommand", nc_sub,
                     "one of cs1, choi, expectation, gapdemo, cliffordcheck, gammastarmap")
      ->required();
  nc_cmd->add_option("file", nc_file, "matrix file (not used by cliffordcheck)");
  nc_cmd->add_option("--map", nc_map, "map kind: schur, diag, or choi");
  nc_cmd->add_option("--m", nm, "generator count for cliffordcheck");
  nc_cmd->add_option("--trials", ntrials, "random pairs for cliffordcheck");
  nc_cmd->add_option("--seed", nseed, "generator seed")->each([&](const std::string&) {
    nseed_given = true;
  });
  nc_cmd->add_flag("--witness", flags.witness, "include witness payloads");
  nc_cmd->add_flag("--json", flags.json, "report-only JSON output");
  nc_cmd->add_option("--tol", flags.tol, "solver tolerance override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    if (norm_cmd->parsed()) return cmd_norm(norm_name, norm_file, flags, out);
    if (verify_cmd->parsed()) return cmd_verify(suite, vn, vtrials, vseed, flags, out);
    if (exp_cmd->parsed()) {
      return cmd_experiment(exp_file, ek, etrials, eseed, full_enum, flags, out);
    }
    if (nc_cmd->parsed()) {
      if (nc_sub == "cliffordcheck" && !nseed_given) {
        err << "error: --seed is required for cliffordcheck\n";
        return kExitParse;
      }
      if (nc_sub != "cliffordcheck" && nc_file.empty()) {
        err << "error: a matrix file is required for nc " << nc_sub << '\n';
        return kExitParse;
      }
      return cmd_nc(nc_sub, nc_file, nc_map, nm, ntrials, nseed, flags, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitParse;
  } catch (const sdp::SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitParse;
}

}  // namespace certnorm::cli
