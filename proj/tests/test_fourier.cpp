#include <doctest.h>

#include <cmath>

#include "certnorm/fourier.hpp"
#include "certnorm/gronorm.hpp"
#include "certnorm/norms.hpp"
#include "certnorm/rng.hpp"
#include "oracles.hpp"

using namespace certnorm;
namespace fr = certnorm::fourier;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("sign indexing") {
  fr::SignIndexing idx(3);
  CHECK(idx.count() == 8);
  for (int c = 0; c < 3; ++c) CHECK(idx.sign(0, c) == 1);
  // Bijectivity.
  for (std::uint64_t i = 0; i < idx.count(); ++i) {
    CHECK(idx.index_of(idx.at(i)) == i);
  }
}

TEST_CASE("lift of small matrices") {
  DenseMatrix a1(1, 1);
  a1(0, 0) = 0.75;
  fr::FourierMatrix f1 = fr::fourier_lift(a1);
  CHECK(f1.m(0, 0) == doctest::Approx(0.75));
  CHECK(f1.m(0, 1) == doctest::Approx(-0.75));
  CHECK(f1.m(1, 0) == doctest::Approx(-0.75));
  CHECK(f1.m(1, 1) == doctest::Approx(0.75));

  CHECK(fr::fourier_lift(DenseMatrix::zeros(2, 2)).m.max_abs() == 0.0);

  // All 16 entries of the lift of the identity, from the sign table
  // (index 0 = (+,+), 1 = (-,+), 2 = (+,-), 3 = (-,-)).
  fr::FourierMatrix fi = fr::fourier_lift(DenseMatrix::identity(2));
  DenseMatrix expected{{2.0, 0.0, 0.0, -2.0},
                       {0.0, 2.0, -2.0, 0.0},
                       {0.0, -2.0, 2.0, 0.0},
                       {-2.0, 0.0, 0.0, 2.0}};
  CHECK((fi.m - expected).max_abs() == 0.0);

  DenseMatrix too_big(6, 6);
  CHECK_THROWS_AS(fr::fourier_lift(too_big), std::invalid_argument);
}

TEST_CASE("lift bilinearity invariants") {
  SplitMix64 gen(808);
  for (int n : {1, 2, 3}) {
    DenseMatrix a = oracles::random_matrix(gen, n, n);
    fr::FourierMatrix f = fr::fourier_lift(a);
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t mask = total - 1;
    for (std::uint64_t e = 0; e < total; ++e) {
      for (std::uint64_t h = 0; h < total; ++h) {
        const double v = f.m(static_cast<int>(e), static_cast<int>(h));
        CHECK(f.m(static_cast<int>(e ^ mask), static_cast<int>(h ^ mask)) ==
              doctest::Approx(v).epsilon(1e-14));
        CHECK(f.m(static_cast<int>(e ^ mask), static_cast<int>(h)) ==
              doctest::Approx(-v).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("lift 1->inf norm equals the infty->1 norm to machine precision") {
  SplitMix64 gen(909);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + static_cast<int>(gen.next() % 4);
    DenseMatrix a = oracles::random_matrix(gen, n, n);
    fr::FourierMatrix f = fr::fourier_lift(a);
    const double lhs = pq_norm(f.m, Pexp::One, Pexp::Inf);
    const double rhs = pq_norm(a, Pexp::Inf, Pexp::One);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1.0 + rhs));
  }
  // Integer entries evaluate bitwise-identically on both routes.
  SplitMix64 gi(910);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + static_cast<int>(gi.next() % 4);
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(static_cast<int>(gi.next() % 7)) - 3.0;
    fr::FourierMatrix f = fr::fourier_lift(a);
    CHECK(pq_norm(f.m, Pexp::One, Pexp::Inf) == pq_norm(a, Pexp::Inf, Pexp::One));
  }
}

TEST_CASE("rho on closed-form families and against brute force") {
  std::vector<double> e1 = {1.0, 0.0};
  std::vector<double> e2 = {0.0, 1.0};
  CHECK(fr::rho({e1}) == doctest::Approx(1.0));
  CHECK(fr::rho({e1, e1}) == doctest::Approx(2.0));
  CHECK(fr::rho({e1, e2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  SplitMix64 gen(111);
  for (int t = 0; t < 25; ++t) {
    const int n = 1 + static_cast<int>(gen.next() % 6);
    const int d = 1 + static_cast<int>(gen.next() % 4);
    std::vector<std::vector<double>> xs(n, std::vector<double>(d));
    for (auto& v : xs)
      for (double& x : v) x = gen.uniform_pm1();
    CHECK(fr::rho(xs) == doctest::Approx(oracles::rho_bruteforce(xs)).epsilon(1e-12));
  }
}

TEST_CASE("gamma2 of the lift") {
  DenseMatrix a1(1, 1);
  a1(0, 0) = 1.0;
  fr::LiftGamma2Report r1 = fr::gamma2_of_lift(a1);
  CHECK(r1.cert.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r1.rho_bound >= r1.cert.value - kTolMatch);

  fr::LiftGamma2Report ri = fr::gamma2_of_lift(DenseMatrix::identity(2));
  CHECK(ri.cert.value == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(ri.rho_bound == doctest::Approx(2.0).epsilon(1e-4));

  // Positive semidefinite input: the lift value meets the infty->1 norm.
  fr::LiftGamma2Report rj = fr::gamma2_of_lift(DenseMatrix::ones(2, 2));
  CHECK(rj.cert.value == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(pq_norm(DenseMatrix::ones(2, 2), Pexp::Inf, Pexp::One) == doctest::Approx(4.0));
}

TEST_CASE("witness projection") {
  // n = 1 maps: x(+/-) = +/- a e1, y(+/-) = +/- e1.
  DenseMatrix a(1, 1);
  a(0, 0) = 0.6;
  DenseMatrix xmap(2, 1), ymap(2, 1);
  xmap(0, 0) = 0.6;
  xmap(1, 0) = -0.6;
  ymap(0, 0) = 1.0;
  ymap(1, 0) = -1.0;
  VectorFamilies fam = fr::witness_project(xmap, ymap, a);
  CHECK(fam.xs(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(fam.ys(0, 0) == doctest::Approx(1.0).epsilon(1e-12));

  // Maps from a gamma2 witness of the lift of the identity.
  DenseMatrix i2 = DenseMatrix::identity(2);
  fr::FourierMatrix f = fr::fourier_lift(i2);
  NormCertificate cert = gamma2(f.m);
  VectorFamilies lift_fam = gamma2_vector_witness(cert, f.m);
  VectorFamilies projected = fr::witness_project(lift_fam.xs, lift_fam.ys, i2);
  DenseMatrix gram = projected.cross_gram();
  CHECK((gram - i2).max_abs() <= 1e-5);

  // Linear sign maps project back to exactly the generating family.
  SplitMix64 gen(222);
  const int n = 3, d = 4;
  DenseMatrix u(n, d), v(n, d);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) {
      u(i, c) = gen.uniform_pm1();
      v(i, c) = gen.uniform_pm1();
    }
  DenseMatrix declared = u * v.transpose();
  fr::SignIndexing idx(n);
  DenseMatrix xl(static_cast<int>(idx.count()), d), yl(static_cast<int>(idx.count()), d);
  for (std::uint64_t e = 0; e < idx.count(); ++e)
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < d; ++c) {
        xl(static_cast<int>(e), c) += idx.sign(e, i) * u(i, c);
        yl(static_cast<int>(e), c) += idx.sign(e, i) * v(i, c);
      }
  VectorFamilies back = fr::witness_project(xl, yl, declared);
  CHECK((back.xs - u).max_abs() <= 1e-12);
  CHECK((back.ys - v).max_abs() <= 1e-12);

  // Gram mismatch with the declared matrix is rejected.
  DenseMatrix wrong = declared;
  wrong(0, 0) += 0.5;
  CHECK_THROWS_AS(fr::witness_project(xl, yl, wrong), std::invalid_argument);
}

TEST_CASE("witness lift has constant norms and factors the lift") {
  // 1x1 anchor.
  DenseMatrix a1(1, 1);
  a1(0, 0) = -1.3;
  NormCertificate c1 = gamma2_star(a1);
  VectorFamilies f1 = orthogonal_witness(a1, c1);
  auto [x1, y1] = fr::witness_lift(f1);
  for (int e = 0; e < 2; ++e)
    for (int h = 0; h < 2; ++h) {
      CHECK(norm2(x1.row(e)) * norm2(y1.row(h)) == doctest::Approx(1.3).epsilon(1e-5));
    }

  for (const DenseMatrix& a :
       {DenseMatrix::identity(2), DenseMatrix{{0.0, 1.0}, {1.0, 0.0}}}) {
    NormCertificate cert = gamma2_star(a);
    VectorFamilies fam = orthogonal_witness(a, cert);
    auto [xmap, ymap] = fr::witness_lift(fam);
    fr::FourierMatrix f = fr::fourier_lift(a);
    CHECK((xmap * ymap.transpose() - f.m).max_abs() <= 1e-5);
    for (int e = 0; e < 4; ++e)
      for (int h = 0; h < 4; ++h) {
        CHECK(norm2(xmap.row(e)) * norm2(ymap.row(h)) ==
              doctest::Approx(cert.value).epsilon(1e-5));
      }
    // Lift then project returns the families exactly (averaging identity).
    VectorFamilies back = fr::witness_project(xmap, ymap, a);
    CHECK((back.xs - fam.xs).max_abs() <= 1e-10);
    CHECK((back.ys - fam.ys).max_abs() <= 1e-10);
  }

  VectorFamilies not_orth;
  not_orth.xs = DenseMatrix::ones(2, 2);
  not_orth.ys = DenseMatrix::ones(2, 2);
  not_orth.orthogonal = false;
  CHECK_THROWS_AS(fr::witness_lift(not_orth), std::invalid_argument);
}

TEST_CASE("tensor bound check") {
  // Common unit vector: tensoring is an isometry, lhs equals rho(xs).
  std::vector<std::vector<double>> xs = {{1.0, 0.5}, {-0.25, 1.0}};
  std::vector<std::vector<double>> ys = {{1.0, 0.0}, {1.0, 0.0}};
  fr::RietzReport r = fr::rietz_check(xs, ys);
  CHECK(r.lhs == doctest::Approx(fr::rho(xs)).epsilon(1e-12));
  CHECK(r.pass);

  std::vector<std::vector<double>> e12 = {{1.0, 0.0}, {0.0, 1.0}};
  fr::RietzReport r2 = fr::rietz_check(e12, e12);
  CHECK(r2.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r2.rhs == doctest::Approx(std::sqrt(kPi / 2.0) * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r2.pass);

  std::vector<std::vector<double>> bad = {{2.0, 0.0}};
  CHECK_THROWS_AS(fr::rietz_check(bad, bad), std::invalid_argument);

  SplitMix64 gen(333);
  for (int t = 0; t < 200; ++t) {
    const int n = 6, d = 3;
    std::vector<std::vector<double>> rx(n, std::vector<double>(d));
    std::vector<std::vector<double>> ry(n, std::vector<double>(d));
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) {
        rx[i][c] = gen.uniform_pm1();
        ry[i][c] = gen.gaussian();
      }
      const double nrm = norm2(ry[i]);
      for (int c = 0; c < d; ++c) ry[i][c] = nrm > 1e-12 ? ry[i][c] / nrm : (c == 0);
    }
    CAPTURE(t);
    CHECK(fr::rietz_check(rx, ry).pass);
  }
}

TEST_CASE("sampling experiment") {
  DenseMatrix i4 = DenseMatrix::identity(4);

  // Determinism: identical seeds give identical statistics bit for bit.
  fr::SamplingReport r1 = fr::sampling_experiment(i4, 8, 50, 42);
  fr::SamplingReport r2 = fr::sampling_experiment(i4, 8, 50, 42);
  REQUIRE(r1.ratios.size() == r2.ratios.size());
  for (std::size_t i = 0; i < r1.ratios.size(); ++i) CHECK(r1.ratios[i] == r2.ratios[i]);
  CHECK(r1.min_ratio == r2.min_ratio);
  CHECK(r1.median_ratio == r2.median_ratio);
  CHECK(r1.max_ratio == r2.max_ratio);
  // A different seed changes the sample.
  fr::SamplingReport r3 = fr::sampling_experiment(i4, 8, 50, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < r1.ratios.size(); ++i) {
    any_diff = any_diff || r1.ratios[i] != r3.ratios[i];
  }
  CHECK(any_diff);

  // Full enumeration reduces to the lift.
  DenseMatrix a(3, 3);
  SplitMix64 gen(444);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = gen.uniform_pm1();
  fr::SamplingReport full = fr::sampling_experiment(a, 8, 1, 0, true);
  fr::LiftGamma2Report lift = fr::gamma2_of_lift(a);
  CHECK(full.gamma2_values[0] == doctest::Approx(lift.cert.value).epsilon(1e-6));
  CHECK(full.ratios[0] ==
        doctest::Approx(lift.cert.value / pq_norm(a, Pexp::Inf, Pexp::One)).epsilon(1e-6));

  // Zero matrix flags the degenerate denominator.
  fr::SamplingReport zero = fr::sampling_experiment(DenseMatrix::zeros(2, 2), 4, 3, 7);
  CHECK(zero.degenerate);
  CHECK(zero.ratios.empty());

  CHECK_THROWS_AS(fr::sampling_experiment(i4, 100, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(fr::sampling_experiment(i4, 7, 1, 1, true), std::invalid_argument);
}

TEST_CASE("lift at the dimension cap") {
  // 5x5 psd input: 32x32 lift, equality with the infty->1 norm.
  DenseMatrix g(5, 2);
  SplitMix64 gen(112);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = gen.uniform_pm1();
  DenseMatrix a = g * g.transpose();
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  fr::LiftGamma2Report rep = fr::gamma2_of_lift(a);
  CHECK(rep.cert.value ==
        doctest::Approx(pq_norm(a, Pexp::Inf, Pexp::One)).epsilon(1e-5));
}

TEST_CASE("lift sandwich on random instances") {
  SplitMix64 gen(555);
  for (int t = 0; t < 15; ++t) {
    const int n = 1 + static_cast<int>(gen.next() % 3);
    DenseMatrix a = oracles::random_matrix(gen, n, n);
    const double lift = fr::gamma2_of_lift(a).cert.value;
    const double star = gamma2_star(a).value;
    const double inf1 = pq_norm(a, Pexp::Inf, Pexp::One);
    CAPTURE(t);
    CHECK(lift <= star + 10.0 * kTolSdp * (1.0 + star));
    CHECK(star <= (kPi / 2.0) * lift + 10.0 * kTolSdp * (1.0 + star));
    CHECK(inf1 <= lift + 10.0 * kTolSdp * (1.0 + inf1));
  }
}
