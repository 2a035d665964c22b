#include "certnorm/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "certnorm/norms.hpp"
#include "certnorm/rng.hpp"
#include "certnorm/spectral.hpp"

namespace certnorm::fourier {

namespace {

DenseMatrix rows_from_vectors(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("empty vector family");
  const int n = static_cast<int>(vectors.size());
  const int d = static_cast<int>(vectors[0].size());
  DenseMatrix m(n, d);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(vectors[i].size()) != d) {
      throw std::invalid_argument("vector family has mixed dimensions");
    }
    for (int j = 0; j < d; ++j) m(i, j) = vectors[i][j];
  }
  return m;
}

}  // namespace

FourierMatrix fourier_lift(const DenseMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("fourier_lift: matrix must be square");
  const int n = a.rows();
  if (n > kLiftCap) {
    throw std::invalid_argument("fourier_lift: dimension cap " + std::to_string(kLiftCap) +
                                " exceeded");
  }
  a.ensure_finite("fourier_lift input");
  SignIndexing idx(n);
  const auto total = idx.count();
  FourierMatrix f;
  f.n = n;
  f.m = DenseMatrix(static_cast<int>(total), static_cast<int>(total));
  // Entry (eps, eta) is sum_ij A_ij eps_i eta_j: the row signs weight the
  // row index, so the inner image is A^T eps.
  const DenseMatrix at = a.transpose();
  std::vector<double> eps(n), image(n);
  for (std::uint64_t e = 0; e < total; ++e) {
    for (int i = 0; i < n; ++i) eps[i] = idx.sign(e, i);
    image = at.mul_vec(eps);
    for (std::uint64_t h = 0; h < total; ++h) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += image[j] * idx.sign(h, j);
      f.m(static_cast<int>(e), static_cast<int>(h)) = s;
    }
  }
  return f;
}

double rho(const std::vector<std::vector<double>>& vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n > kRhoCap) {
    throw std::invalid_argument("rho: family size cap " + std::to_string(kRhoCap) + " exceeded");
  }
  // rho(x_1..x_n) = ||columns(x)||_{inf->2}; reuse the exact enumeration.
  DenseMatrix cols = rows_from_vectors(vectors).transpose();
  return pq_norm(cols, Pexp::Inf, Pexp::Two);
}

LiftGamma2Report gamma2_of_lift(const DenseMatrix& a,
                                const std::optional<VectorFamilies>& families,
                                const sdp::SolveOptions& opts) {
  FourierMatrix f = fourier_lift(a);
  LiftGamma2Report rep;
  rep.cert = gamma2(f.m, opts);
  rep.cert.norm_name = "gamma2_of_lift";

  if (families) {
    rep.families = *families;
    const DenseMatrix gram = families->cross_gram();
    if ((gram - a).max_abs() > kTolMatch * (1.0 + a.max_abs())) {
      throw std::invalid_argument("gamma2_of_lift: supplied families do not factor the matrix");
    }
  } else {
    NormCertificate star = gamma2_star(a, opts);
    rep.families = orthogonal_witness(a, star);
  }
  std::vector<std::vector<double>> xs, ys;
  for (int i = 0; i < rep.families.count_x(); ++i) xs.push_back(rep.families.xs.row(i));
  for (int j = 0; j < rep.families.count_y(); ++j) ys.push_back(rep.families.ys.row(j));
  rep.rho_bound = rho(xs) * rho(ys);
  rep.slack = rep.rho_bound - rep.cert.value;
  return rep;
}

VectorFamilies witness_project(const DenseMatrix& xmap, const DenseMatrix& ymap,
                               const DenseMatrix& a) {
  const int n = a.rows();
  if (!a.is_square()) throw std::invalid_argument("witness_project: matrix must be square");
  SignIndexing idx(n);
  const auto total = idx.count();
  if (xmap.rows() != static_cast<int>(total) || ymap.rows() != static_cast<int>(total)) {
    throw std::invalid_argument("witness_project: sign maps must have 2^n rows");
  }
  // The maps must reproduce the lift of the declared matrix.
  FourierMatrix f = fourier_lift(a);
  DenseMatrix gram = xmap * ymap.transpose();
  if ((gram - f.m).max_abs() > kTolMatch * (1.0 + f.m.max_abs())) {
    throw std::invalid_argument("witness_project: sign maps do not match the lift of A");
  }

  const double scale = 1.0 / static_cast<double>(total / 2);
  VectorFamilies fam;
  fam.xs = DenseMatrix(n, xmap.cols());
  fam.ys = DenseMatrix(n, ymap.cols());
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t e = 0; e < total; ++e) {
      if (idx.sign(e, i) != 1) continue;
      for (int c = 0; c < xmap.cols(); ++c) fam.xs(i, c) += scale * xmap(static_cast<int>(e), c);
      for (int c = 0; c < ymap.cols(); ++c) fam.ys(i, c) += scale * ymap(static_cast<int>(e), c);
    }
  }
  fam.relation = VectorFamilies::Relation::CrossGram;
  const DenseMatrix check = fam.cross_gram();
  if ((check - a).max_abs() > kTolMatch * (1.0 + a.max_abs())) {
    throw std::invalid_argument("witness_project: projected families do not reproduce A");
  }
  return fam;
}

std::pair<DenseMatrix, DenseMatrix> witness_lift(const VectorFamilies& families) {
  if (!families.orthogonal) {
    throw std::invalid_argument("witness_lift: families must be orthogonal");
  }
  const int n = families.count_x();
  if (families.count_y() != n) {
    throw std::invalid_argument("witness_lift: families must have equal size");
  }
  if (n > 20) throw std::invalid_argument("witness_lift: family too large to enumerate");
  const double scale = 1.0 + families.xs.max_abs() + families.ys.max_abs();
  auto check_orth = [&](const DenseMatrix& rows) {
    for (int i = 0; i < rows.rows(); ++i)
      for (int j = i + 1; j < rows.rows(); ++j) {
        if (std::fabs(dot(rows.row(i), rows.row(j))) > kTolMatch * scale * scale) {
          throw std::invalid_argument("witness_lift: family is not orthogonal");
        }
      }
  };
  check_orth(families.xs);
  check_orth(families.ys);

  SignIndexing idx(n);
  const auto total = idx.count();
  DenseMatrix xmap(static_cast<int>(total), families.xs.cols());
  DenseMatrix ymap(static_cast<int>(total), families.ys.cols());
  for (std::uint64_t e = 0; e < total; ++e) {
    for (int i = 0; i < n; ++i) {
      const double s = idx.sign(e, i);
      for (int c = 0; c < families.xs.cols(); ++c) {
        xmap(static_cast<int>(e), c) += s * families.xs(i, c);
      }
      for (int c = 0; c < families.ys.cols(); ++c) {
        ymap(static_cast<int>(e), c) += s * families.ys(i, c);
      }
    }
  }
  return {std::move(xmap), std::move(ymap)};
}

RietzReport rietz_check(const std::vector<std::vector<double>>& xs,
                        const std::vector<std::vector<double>>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("rietz_check: family sizes differ");
  const int n = static_cast<int>(xs.size());
  if (n > 20) throw std::invalid_argument("rietz_check: family size cap 20 exceeded");
  for (const auto& y : ys) {
    if (std::fabs(norm2(y) - 1.0) > kTolMatch) {
      throw std::invalid_argument("rietz_check: second family must be unit vectors");
    }
  }
  std::vector<std::vector<double>> tensored(n);
  for (int i = 0; i < n; ++i) {
    const auto& x = xs[i];
    const auto& y = ys[i];
    std::vector<double> t(x.size() * y.size());
    for (std::size_t p = 0; p < x.size(); ++p)
      for (std::size_t q = 0; q < y.size(); ++q) t[p * y.size() + q] = x[p] * y[q];
    tensored[i] = std::move(t);
  }
  RietzReport rep;
  rep.lhs = rho(tensored);
  rep.rhs = std::sqrt(3.14159265358979323846 / 2.0) * rho(xs);
  rep.pass = rep.lhs <= rep.rhs + kTolMatch;
  return rep;
}

SamplingReport sampling_experiment(const DenseMatrix& a, int k, int trials, std::uint64_t seed,
                                   bool full_enumeration, const sdp::SolveOptions& opts) {
  if (!a.is_square()) {
    throw std::invalid_argument("sampling_experiment: matrix must be square");
  }
  const int n = a.rows();
  if (n > kExperimentDimCap) {
    throw std::invalid_argument("sampling_experiment: dimension cap " +
                                std::to_string(kExperimentDimCap) + " exceeded");
  }
  if (k <= 0 || k > kExperimentKCap) {
    throw std::invalid_argument("sampling_experiment: K cap " +
                                std::to_string(kExperimentKCap) + " exceeded");
  }
  if (trials <= 0) throw std::invalid_argument("sampling_experiment: trials must be positive");
  if (full_enumeration && k != (1 << n)) {
    throw std::invalid_argument("sampling_experiment: full enumeration requires K = 2^n");
  }

  SamplingReport rep;
  rep.n = n;
  rep.k = k;
  rep.trials = full_enumeration ? 1 : trials;
  rep.seed = seed;
  rep.full_enumeration = full_enumeration;
  rep.denominator = pq_norm(a, Pexp::Inf, Pexp::One);
  rep.degenerate = rep.denominator == 0.0;

  SignIndexing idx(n);
  for (int t = 0; t < rep.trials; ++t) {
    std::vector<std::vector<double>> eps(k, std::vector<double>(n));
    if (full_enumeration) {
      for (int i = 0; i < k; ++i)
        for (int c = 0; c < n; ++c) eps[i][c] = idx.sign(static_cast<std::uint64_t>(i), c);
    } else {
      SplitMix64 gen = derive_stream(seed, static_cast<std::uint64_t>(t));
      // One draw per coordinate; duplicates are kept by design.
      for (int i = 0; i < k; ++i)
        for (int c = 0; c < n; ++c) eps[i][c] = gen.sign();
    }
    // Same sign convention as the lift: row signs from eps_i.
    const DenseMatrix at = a.transpose();
    DenseMatrix m(k, k);
    for (int i = 0; i < k; ++i) {
      std::vector<double> image = at.mul_vec(eps[i]);
      for (int j = 0; j < k; ++j) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += image[c] * eps[j][c];
        m(i, j) = s;
      }
    }
    NormCertificate cert = gamma2(m, opts);
    rep.gamma2_values.push_back(cert.value);
    if (!rep.degenerate) rep.ratios.push_back(cert.value / rep.denominator);
  }

  if (!rep.degenerate && !rep.ratios.empty()) {
    std::vector<double> sorted = rep.ratios;
    std::sort(sorted.begin(), sorted.end());
    rep.min_ratio = sorted.front();
    rep.max_ratio = sorted.back();
    const std::size_t mid = sorted.size() / 2;
    rep.median_ratio = sorted.size() % 2 == 1 ? sorted[mid]
                                              : 0.5 * (sorted[mid - 1] + sorted[mid]);
  }
  return rep;
}

}  // namespace certnorm::fourier
