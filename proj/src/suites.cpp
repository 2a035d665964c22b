#include "certnorm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "certnorm/certificate.hpp"
#include "certnorm/fourier.hpp"
#include "certnorm/gronorm.hpp"
#include "certnorm/ncmaps.hpp"
#include "certnorm/norms.hpp"
#include "certnorm/rng.hpp"
#include "certnorm/spectral.hpp"

namespace certnorm::suites {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  void record(const std::string& property, double slack,
              const std::function<Json()>& instance) {
    PropertyResult& p = find(property);
    const bool ok = slack >= 0.0;
    if (ok) {
      ++p.pass;
    } else {
      ++p.fail;
      if (!p.has_failure) {
        p.failure_instance = instance();
        p.has_failure = true;
      }
      report_.all_pass = false;
    }
    if (!p.has_worst || slack < p.worst_slack) {
      p.worst_slack = slack;
      p.has_worst = true;
    }
  }

 private:
  PropertyResult& find(const std::string& name) {
    for (PropertyResult& p : report_.properties) {
      if (p.name == name) return p;
    }
    report_.properties.push_back(PropertyResult{name, 0, 0, 0.0, false, Json(), false});
    return report_.properties.back();
  }

  SuiteReport& report_;
};

DenseMatrix random_matrix(SplitMix64& gen, int rows, int cols) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gen.uniform_pm1();
  return m;
}

DenseMatrix random_symmetric(SplitMix64& gen, int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = gen.uniform_pm1();
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = gen.uniform_pm1();
  }
  return m;
}

DenseMatrix random_hollow_symmetric(SplitMix64& gen, int n) {
  DenseMatrix m = random_symmetric(gen, n);
  for (int i = 0; i < n; ++i) m(i, i) = 0.0;
  return m;
}

DenseMatrix random_psd(SplitMix64& gen, int n) {
  DenseMatrix g = random_matrix(gen, n, n);
  DenseMatrix p = g * g.transpose();
  // Kill round-off asymmetry.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p(i, j) = p(j, i) = 0.5 * (p(i, j) + p(j, i));
  return p;
}

Json instance_json(const char* key, const DenseMatrix& m) {
  Json j = Json::object();
  j.set(key, matrix_to_json(m));
  return j;
}

int dim_in(SplitMix64& gen, int lo, int hi) {
  return lo + static_cast<int>(gen.next() % static_cast<std::uint64_t>(hi - lo + 1));
}

void run_grothendieck(Recorder& rec, int n_cap, int trials, std::uint64_t seed,
                      const sdp::SolveOptions& opts) {
  const int cap = std::clamp(n_cap, 1, 6);
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed, t);
    const int n = dim_in(gen, 1, cap);
    const int k = dim_in(gen, 1, cap);
    DenseMatrix a = random_matrix(gen, n, k);
    const double inf1 = pq_norm(a, Pexp::Inf, Pexp::One);
    const double star = gamma2_star(a, opts).value;
    auto inst = [&] { return instance_json("A", a); };
    rec.record("grothendieck_lower", star - (inf1 - kTolMatch), inst);
    rec.record("grothendieck_upper", 1.8 * inf1 + kTolMatch - star, inst);
  }
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed ^ 0x5bd1e995u, t);
    const int n = dim_in(gen, 1, cap);
    std::vector<double> d(n);
    double sum = 0.0, mx = 0.0;
    for (int i = 0; i < n; ++i) {
      d[i] = gen.uniform_pm1();
      sum += std::fabs(d[i]);
      mx = std::max(mx, std::fabs(d[i]));
    }
    DenseMatrix a = DenseMatrix::diagonal(d);
    auto inst = [&] { return instance_json("A", a); };
    rec.record("diag_gamma2_star_is_abs_sum",
               10.0 * kTolSdp * (1.0 + sum) - std::fabs(gamma2_star(a, opts).value - sum), inst);
    rec.record("diag_gamma2_is_max_abs",
               10.0 * kTolSdp * (1.0 + mx) - std::fabs(gamma2(a, opts).value - mx), inst);
  }
}

void run_duality(Recorder& rec, int n_cap, int trials, std::uint64_t seed,
                 const sdp::SolveOptions& opts) {
  const int cap = std::clamp(n_cap, 1, 6);
  const Pexp exps[3] = {Pexp::One, Pexp::Two, Pexp::Inf};
  auto dual_of = [](Pexp p) {
    return p == Pexp::One ? Pexp::Inf : (p == Pexp::Inf ? Pexp::One : Pexp::Two);
  };
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed, t);
    const int n = dim_in(gen, 1, cap);
    const int k = dim_in(gen, 1, cap);
    DenseMatrix a = random_matrix(gen, n, k);
    DenseMatrix b = random_matrix(gen, n, k);
    auto inst = [&] {
      Json j = Json::object();
      j.set("A", matrix_to_json(a));
      j.set("B", matrix_to_json(b));
      return j;
    };
    double tr = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) tr += a(i, j) * b(i, j);
    rec.record("norm_duality_pairing",
               gamma2(a, opts).value * gamma2_star(b, opts).value + kTolMatch - std::fabs(tr),
               inst);
    rec.record("trace_duality",
               schatten_norm(a, Pexp::One) * schatten_norm(b, Pexp::Inf) + kTolMatch -
                   std::fabs(tr),
               inst);
    DenseMatrix at = a.transpose();
    double worst = 0.0;
    for (Pexp p : exps)
      for (Pexp q : exps) {
        worst = std::max(worst, std::fabs(pq_norm(at, dual_of(q), dual_of(p)) -
                                          pq_norm(a, p, q)));
      }
    rec.record("pq_transpose_duality", kTolMatch * (1.0 + a.max_abs() * n * k) - worst, inst);
  }
}

void run_correlation(Recorder& rec, int n_cap, int trials, std::uint64_t seed,
                     const sdp::SolveOptions& opts) {
  const int cap = std::clamp(n_cap, 2, 8);
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed, t);
    const int n = dim_in(gen, 2, cap);
    DenseMatrix a = random_symmetric(gen, n);
    auto inst = [&] { return instance_json("A", a); };
    NormCertificate c = corr_norm_C(a, opts);
    NormCertificate star = gamma2_star(a, opts);
    rec.record("corrC_equals_gamma2_star",
               10.0 * kTolSdp * (1.0 + std::fabs(c.value)) - std::fabs(c.value - star.value),
               inst);
    NormCertificate cp = corr_norm_Cprime(a, opts);
    rec.record("cprime_below_c", c.value - cp.value + kTolMatch, inst);
    rec.record("corrC_witness_verifies", verify_certificate(a, c).pass ? 0.0 : -1.0, inst);
    rec.record("cprime_witness_verifies", verify_certificate(a, cp).pass ? 0.0 : -1.0, inst);

    // The factor-2 comparison needs a zero diagonal: only then are the
    // certifying diagonals entrywise nonnegative, which the max-combination
    // argument uses.
    DenseMatrix hollow = random_hollow_symmetric(gen, n);
    auto inst_h = [&] { return instance_json("A", hollow); };
    const double hc = corr_norm_C(hollow, opts).value;
    const double hcp = corr_norm_Cprime(hollow, opts).value;
    rec.record("c_below_two_cprime_hollow", 2.0 * hcp + kTolMatch - hc, inst_h);
    rec.record("cprime_below_c_hollow", hc - hcp + kTolMatch, inst_h);
    sdp::SdpSolution dual_side = sdp::solve(build_corr_C_program(a), opts);
    NormCertificate primal18 = gamma2_star_symmetric_primal(a, opts);
    rec.record("strong_duality_pair",
               10.0 * kTolSdp * (1.0 + std::fabs(primal18.value)) -
                   std::fabs(primal18.value - dual_side.dual_value),
               inst);
  }
  for (int n = 2; n <= cap; ++n) {
    DenseMatrix a = DenseMatrix::ones(n, n) - DenseMatrix::identity(n);
    auto inst = [&] { return instance_json("A", a); };
    const double want = 2.0 * (n - 1) / n;
    const double got = corr_norm_C(a, opts).value / corr_norm_Cprime(a, opts).value;
    rec.record("complete_graph_ratio", 10.0 * kTolSdp * (1.0 + want) - std::fabs(got - want),
               inst);
  }
}

void run_fourier(Recorder& rec, int n_cap, int trials, std::uint64_t seed,
                 const sdp::SolveOptions& opts) {
  const int cap = std::clamp(n_cap, 1, 4);
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed, t);
    const int n = dim_in(gen, 1, cap);
    DenseMatrix a = random_matrix(gen, n, n);
    auto inst = [&] { return instance_json("A", a); };
    fourier::LiftGamma2Report lift = fourier::gamma2_of_lift(a, std::nullopt, opts);
    const double lift_val = lift.cert.value;
    const double star = gamma2_star(a, opts).value;
    const double inf1 = pq_norm(a, Pexp::Inf, Pexp::One);
    rec.record("lift_below_star", star - lift_val + 10.0 * kTolSdp * (1.0 + star), inst);
    rec.record("star_below_pi_half_lift",
               (kPi / 2.0) * lift_val - star + 10.0 * kTolSdp * (1.0 + star), inst);
    rec.record("inf1_below_lift", lift_val - inf1 + 10.0 * kTolSdp * (1.0 + inf1), inst);
    rec.record("rho_bound_dominates", lift.slack + kTolMatch, inst);
    const double lift_max = pq_norm(fourier::fourier_lift(a).m, Pexp::One, Pexp::Inf);
    rec.record("lift_one_inf_identity", 1e-12 * (1.0 + inf1) - std::fabs(lift_max - inf1), inst);
  }
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed ^ 0x9e3779b9u, t);
    const int n = dim_in(gen, 1, cap);
    DenseMatrix a = random_psd(gen, n);
    auto inst = [&] { return instance_json("A", a); };
    const double lift_val = fourier::gamma2_of_lift(a, std::nullopt, opts).cert.value;
    const double inf1 = pq_norm(a, Pexp::Inf, Pexp::One);
    rec.record("psd_lift_equality",
               10.0 * kTolSdp * (1.0 + inf1) - std::fabs(lift_val - inf1), inst);
    // rho^2 of any Gram-factor family equals the infty->1 norm of the Gram.
    DenseMatrix factor = factor_gram(a, kTolMatch);
    std::vector<std::vector<double>> fam;
    for (int i = 0; i < n; ++i) fam.push_back(factor.row(i));
    const double r = fourier::rho(fam);
    rec.record("rho_squared_is_gram_inf1",
               kTolMatch * (1.0 + inf1) - std::fabs(r * r - inf1), inst);
  }
}

void run_rietz(Recorder& rec, int n_cap, int trials, std::uint64_t seed,
               const sdp::SolveOptions&) {
  const int n = std::clamp(n_cap, 1, 12);
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed, t);
    const int d = dim_in(gen, 1, 4);
    std::vector<std::vector<double>> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i].resize(d);
      ys[i].resize(d);
      for (int c = 0; c < d; ++c) {
        xs[i][c] = gen.uniform_pm1();
        ys[i][c] = gen.gaussian();
      }
      const double nrm = norm2(ys[i]);
      for (int c = 0; c < d; ++c) ys[i][c] = nrm > 1e-12 ? ys[i][c] / nrm : (c == 0 ? 1.0 : 0.0);
    }
    fourier::RietzReport rr = fourier::rietz_check(xs, ys);
    auto inst = [&] {
      Json j = Json::object();
      j.set("lhs", rr.lhs);
      j.set("rhs", rr.rhs);
      return j;
    };
    rec.record("rietz_tensor_bound", rr.rhs + kTolMatch - rr.lhs, inst);
  }
}

void run_ncmaps(Recorder& rec, int n_cap, int trials, std::uint64_t seed,
                const sdp::SolveOptions& opts) {
  const int cap = std::clamp(n_cap, 2, 4);
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed, t);
    const int n = dim_in(gen, 2, cap);
    DenseMatrix choi = random_symmetric(gen, n * n);
    nc::MatrixMap map(n, choi);
    auto inst = [&] { return instance_json("choi", choi); };
    NormCertificate cs1 = nc::cs1_norm(map);
    if (cs1.meta.cross_check_value) {
      rec.record("cs1_sdp_matches_spectral",
                 10.0 * kTolSdp * (1.0 + cs1.value) -
                     std::fabs(*cs1.meta.cross_check_value - cs1.value),
                 inst);
    }
    rec.record("expectation_lower_bound", cs1.value + kTolMatch - nc::lower_bound_cs1(map),
               inst);
    nc::OpToTraceResult est = nc::op_to_trace_estimate(map, 40, seed ^ t, 6);
    rec.record("op_to_trace_below_cs1", cs1.value + kTolMatch - est.lower_bound, inst);

    DenseMatrix a = random_symmetric(gen, n);
    auto inst_a = [&] { return instance_json("A", a); };
    rec.record("schur_multiplier_cs1_tight",
               kTolMatch * (1.0 + a.max_abs() * n) -
                   std::fabs(nc::cs1_norm(nc::schur_map(a)).value -
                             schatten_norm(a, Pexp::One)),
               inst_a);
    DenseMatrix b = random_matrix(gen, n, n);
    DenseMatrix prod_choi = nc::schur_map(a).choi() * nc::schur_map(b).choi();
    rec.record("schur_embedding_multiplicative",
               1e-10 * (1.0 + prod_choi.max_abs()) -
                   (prod_choi - nc::schur_map(a * b).choi()).max_abs(),
               inst_a);
    rec.record("expectation_left_inverse",
               1e-14 - (nc::conditional_expectation(nc::schur_map(a)) - a).max_abs(), inst_a);
  }
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed ^ 0x2545f491u, t);
    const int m = dim_in(gen, 1, 8);
    const int count = dim_in(gen, 1, 6);
    DenseMatrix xi(count, m), eta(count, m);
    for (int i = 0; i < count; ++i) {
      for (int c = 0; c < m; ++c) {
        xi(i, c) = gen.gaussian();
        eta(i, c) = gen.gaussian();
      }
      double nx = norm2(xi.row(i)), ny = norm2(eta.row(i));
      for (int c = 0; c < m; ++c) {
        xi(i, c) = nx > 1e-12 ? xi(i, c) / nx : (c == 0 ? 1.0 : 0.0);
        eta(i, c) = ny > 1e-12 ? eta(i, c) / ny : (c == 0 ? 1.0 : 0.0);
      }
    }
    nc::CliffordWitness cw = nc::clifford_witness(xi, eta);
    DenseMatrix gram = xi * eta.transpose();
    auto inst = [&] {
      Json j = Json::object();
      j.set("xi", matrix_to_json(xi));
      j.set("eta", matrix_to_json(eta));
      return j;
    };
    rec.record("clifford_pairing_exact", 1e-12 - (cw.pairing - gram).max_abs(), inst);
  }
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed ^ 0x85ebca6bu, t);
    const int n = dim_in(gen, 2, std::clamp(n_cap, 2, 6));
    DenseMatrix a = random_matrix(gen, n, n);
    auto inst = [&] { return instance_json("A", a); };
    nc::GammaStarReport gs = nc::gamma_star_map_bound(a, opts);
    rec.record("gamma_star_certified_value",
               1e-4 * (1.0 + gs.gamma2_star) - std::fabs(gs.certified_value - gs.gamma2_star),
               inst);
    const double inf1 = pq_norm(a, Pexp::Inf, Pexp::One);
    rec.record("gamma_star_dominates_inf1",
               gs.certified_value - inf1 + 1e-4 * (1.0 + inf1), inst);
  }
}

void run_solver(Recorder& rec, int n_cap, int trials, std::uint64_t seed,
                const sdp::SolveOptions& opts) {
  const int cap = std::clamp(n_cap, 2, 8);
  for (int t = 0; t < trials; ++t) {
    SplitMix64 gen = derive_stream(seed, t);
    const int n = dim_in(gen, 2, cap);
    const int k = dim_in(gen, 1, cap);
    DenseMatrix a = random_matrix(gen, n, k);
    auto inst = [&] { return instance_json("A", a); };

    const int which = static_cast<int>(gen.next() % 3u);
    sdp::SdpProblem prob;
    if (which == 0) {
      prob = build_gamma2_program(a);
    } else if (which == 1) {
      prob = build_gamma2_star_program(a);
    } else {
      prob = build_trace_norm_program(a);
    }
    sdp::SdpSolution sol = sdp::solve(prob, opts);
    rec.record("builder_program_optimal",
               sol.status == sdp::SolveStatus::Optimal ? 0.0 : -1.0, inst);
    rec.record("builder_program_gap", std::max(opts.tol, kTolSdp) - sol.gap, inst);
    sdp::CertificateCheck check = sdp::check_certificate(prob, sol);
    rec.record("certificate_check_passes", check.pass ? 0.0 : -1.0, inst);

    const double base = gamma2(a, opts).value;
    for (double c : {2.0, 1.0 / 3.0}) {
      const double scaled = gamma2(a.scaled(c), opts).value;
      rec.record("gamma2_scaling_equivariance",
                 10.0 * kTolSdp * (1.0 + std::fabs(scaled)) - std::fabs(scaled - c * base),
                 inst);
    }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "grothendieck", "duality", "correlation", "fourier", "rietz", "ncmaps", "solver"};
  return names;
}

SuiteReport run_suite(const std::string& name, int n, int trials, std::uint64_t seed,
                      const sdp::SolveOptions& opts) {
  SuiteReport report;
  report.suite = name;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  Recorder rec(report);
  if (name == "grothendieck") {
    run_grothendieck(rec, n, trials, seed, opts);
  } else if (name == "duality") {
    run_duality(rec, n, trials, seed, opts);
  } else if (name == "correlation") {
    run_correlation(rec, n, trials, seed, opts);
  } else if (name == "fourier") {
    run_fourier(rec, n, trials, seed, opts);
  } else if (name == "rietz") {
    run_rietz(rec, n, trials, seed, opts);
  } else if (name == "ncmaps") {
    run_ncmaps(rec, n, trials, seed, opts);
  } else if (name == "solver") {
    run_solver(rec, n, trials, seed, opts);
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  return report;
}

Json suite_report_to_json(const SuiteReport& report) {
  Json j = Json::object();
  j.set("suite", report.suite);
  j.set("n", report.n);
  j.set("trials", report.trials);
  j.set("seed", report.seed);
  Json props = Json::array();
  for (const PropertyResult& p : report.properties) {
    Json jp = Json::object();
    jp.set("name", p.name);
    jp.set("pass", p.pass);
    jp.set("fail", p.fail);
    jp.set("worst_slack", p.has_worst ? p.worst_slack : 0.0);
    if (p.has_failure) jp.set("failure_instance", p.failure_instance);
    props.push(std::move(jp));
  }
  j.set("properties", std::move(props));
  j.set("all_pass", report.all_pass);
  return j;
}

}  // namespace certnorm::suites
