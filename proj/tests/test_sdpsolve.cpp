#include <doctest.h>

#include <cmath>

#include "certnorm/gronorm.hpp"
#include "certnorm/norms.hpp"
#include "certnorm/rng.hpp"
#include "certnorm/sdp.hpp"
#include "oracles.hpp"

using namespace certnorm;
using sdp::SdpProblem;
using sdp::SdpSolution;
using sdp::SolveStatus;

TEST_CASE("forced one-dimensional program") {
  SdpProblem p = SdpProblem::make({1}, 0, false);
  p.set_objective_entry(0, 0, 0, 1.0);
  sdp::Constraint& c = p.add_constraint(1.0);
  sdp::add_entry(c, 0, 0, 0, 1.0);
  SdpSolution sol = sdp::solve(p);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.gap <= kTolSdp);
  CHECK(sdp::check_certificate(p, sol).pass);
}

TEST_CASE("gamma2 program of the all-ones matrix") {
  SdpSolution sol = sdp::solve(build_gamma2_program(DenseMatrix::ones(2, 2)));
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("trace-norm program equals the Schatten-1 norm") {
  DenseMatrix a = DenseMatrix::diagonal({3.0, 4.0});
  SdpSolution sol = sdp::solve(build_trace_norm_program(a));
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal_value == doctest::Approx(7.0).epsilon(1e-6));
  CHECK(schatten_norm(a, Pexp::One) == doctest::Approx(7.0).epsilon(1e-12));

  SplitMix64 gen(31);
  for (int t = 0; t < 10; ++t) {
    DenseMatrix m = oracles::random_matrix(gen, 3, 4);
    SdpSolution s = sdp::solve(build_trace_norm_program(m));
    CHECK(s.status == SolveStatus::Optimal);
    CHECK(s.primal_value ==
          doctest::Approx(schatten_norm(m, Pexp::One)).epsilon(1e-5));
  }
}

TEST_CASE("certificate checker accepts solver output and rejects perturbations") {
  SplitMix64 gen(17);
  DenseMatrix a = oracles::random_matrix(gen, 3, 3);
  SdpProblem p = build_gamma2_star_program(a);
  SdpSolution sol = sdp::solve(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sdp::check_certificate(p, sol).pass);

  SdpSolution bad = sol;
  bad.primal_blocks[0](0, 1) += 1e-2;
  bad.primal_blocks[0](1, 0) += 1e-2;
  sdp::CertificateCheck check = sdp::check_certificate(p, bad);
  CHECK_FALSE(check.pass);
  CHECK((!check.primal_feasible || !check.primal_psd));
}

TEST_CASE("hand-built feasible point for the diagonal-pair program") {
  // X = Y = I is feasible for the identity; value tr(X+Y)/2 = 2 matches
  // the dual-norm value of the identity.
  DenseMatrix a = DenseMatrix::identity(2);
  SdpProblem p = build_gamma2_star_program(a);
  SdpSolution manual;
  manual.status = SolveStatus::MaxIterations;  // no optimality claimed
  DenseMatrix z(4, 4);
  for (int i = 0; i < 2; ++i) {
    z(i, i) = 1.0;
    z(2 + i, 2 + i) = 1.0;
    z(i, 2 + i) = 1.0;
    z(2 + i, i) = 1.0;
  }
  manual.primal_blocks = {z};
  manual.dual_multipliers.assign(p.constraints.size(), 0.0);
  manual.primal_value = 2.0;
  manual.dual_value = 0.0;
  manual.gap = 1.0;
  sdp::CertificateCheck check = sdp::check_certificate(p, manual);
  CHECK(check.primal_feasible);
  CHECK(check.primal_psd);
  CHECK(check.find("primal_value_match")->pass);
  CHECK(check.pass);
  CHECK(sdp::solve(p).primal_value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("scaling equivariance of the gamma2 program") {
  SplitMix64 gen(41);
  DenseMatrix a = oracles::random_matrix(gen, 3, 2);
  const double base = sdp::solve(build_gamma2_program(a)).primal_value;
  for (double c : {2.0, 1.0 / 3.0}) {
    const double scaled = sdp::solve(build_gamma2_program(a.scaled(c))).primal_value;
    CHECK(scaled == doctest::Approx(c * base).epsilon(1e-5));
  }
}

TEST_CASE("builder programs solve to tolerance on random inputs") {
  SplitMix64 gen(53);
  for (int t = 0; t < 8; ++t) {
    const int n = 2 + static_cast<int>(gen.next() % 7);
    const int k = 1 + static_cast<int>(gen.next() % 8);
    DenseMatrix a = oracles::random_matrix(gen, n, k);
    for (const SdpProblem& p :
         {build_gamma2_program(a), build_gamma2_star_program(a), build_trace_norm_program(a)}) {
      SdpSolution sol = sdp::solve(p);
      CAPTURE(t);
      CHECK(sol.status == SolveStatus::Optimal);
      CHECK(sol.gap <= kTolSdp);
      CHECK(sdp::check_certificate(p, sol).pass);
    }
  }
}

TEST_CASE("strong duality across the symmetric primal/dual pair") {
  SplitMix64 gen(67);
  for (int t = 0; t < 6; ++t) {
    const int n = 2 + static_cast<int>(gen.next() % 5);
    DenseMatrix a = oracles::random_symmetric(gen, n);
    SdpSolution corr = sdp::solve(build_corr_C_program(a));
    SdpSolution primal = sdp::solve(build_symmetric_primal_program(a));
    REQUIRE(corr.status == SolveStatus::Optimal);
    REQUIRE(primal.status == SolveStatus::Optimal);
    CHECK(primal.primal_value == doctest::Approx(corr.dual_value).epsilon(1e-5));
    CHECK(primal.primal_value == doctest::Approx(corr.primal_value).epsilon(1e-5));
  }
}

TEST_CASE("infeasible program is not reported optimal") {
  SdpProblem p = SdpProblem::make({1}, 0, false);
  p.set_objective_entry(0, 0, 0, 1.0);
  sdp::Constraint& c = p.add_constraint(-1.0);
  sdp::add_entry(c, 0, 0, 0, 1.0);
  SdpSolution sol = sdp::solve(p);
  CHECK(sol.status != SolveStatus::Optimal);
}

TEST_CASE("problem validation") {
  SdpProblem p = SdpProblem::make({2}, 0, false);
  sdp::Constraint& c = p.add_constraint(0.0);
  sdp::add_entry(c, 0, 0, 1, 1.0);
  CHECK_NOTHROW(p.validate());
  sdp::add_entry(c, 0, 0, 5, 1.0);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("problem and solution serialize to JSON") {
  DenseMatrix a = DenseMatrix::identity(2);
  SdpProblem p = build_gamma2_star_program(a);
  SdpSolution sol = sdp::solve(p);
  const std::string pj = sdp::problem_to_json(p).dump();
  const std::string sj = sdp::solution_to_json(sol).dump();
  CHECK(pj.find("\"block_dims\"") != std::string::npos);
  CHECK(sj.find("\"status\":\"optimal\"") != std::string::npos);
}
