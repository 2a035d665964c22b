#include "certnorm/ncmaps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "certnorm/gronorm.hpp"
#include "certnorm/norms.hpp"
#include "certnorm/rng.hpp"
#include "certnorm/spectral.hpp"

namespace certnorm::nc {

namespace {

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      if (v == 0.0) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) out(i * b.rows() + r, j * b.cols() + c) = v * b(r, c);
    }
  return out;
}

double normalized_trace_product(const DenseMatrix& a, const DenseMatrix& b) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s / a.rows();
}

// Polar factor Q of M^T, i.e. the orthogonal maximizer of tr(X M) over
// contractions X. With M = U S V^T this is V U^T.
DenseMatrix polar_maximizer(const DenseMatrix& m) {
  SvdDecomposition sd = svd(m);
  return sd.v * sd.u.transpose();
}

DenseMatrix random_orthogonal(int n, SplitMix64& gen) {
  DenseMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gen.gaussian();
  // Modified Gram-Schmidt on columns.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      double proj = 0.0;
      for (int i = 0; i < n; ++i) proj += g(i, j) * g(i, k);
      for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += g(i, j) * g(i, j);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) {
      for (int i = 0; i < n; ++i) g(i, j) = i == j ? 1.0 : 0.0;
      nrm = 1.0;
    }
    for (int i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

}  // namespace

MatrixMap::MatrixMap(int n, DenseMatrix choi) : n_(n), choi_(std::move(choi)) {
  if (n <= 0 || choi_.rows() != n * n || choi_.cols() != n * n) {
    throw std::invalid_argument("MatrixMap: Choi matrix must be n^2 x n^2");
  }
  choi_.ensure_finite("Choi matrix");
}

MatrixMap MatrixMap::identity(int n) {
  DenseMatrix choi(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) choi(i * n + i, j * n + j) = 1.0;
  return MatrixMap(n, std::move(choi));
}

DenseMatrix MatrixMap::block(int i, int j) const {
  DenseMatrix out(n_, n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out(r, c) = choi_(i * n_ + r, j * n_ + c);
  return out;
}

DenseMatrix MatrixMap::apply(const DenseMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) {
    throw std::invalid_argument("MatrixMap::apply: shape mismatch");
  }
  DenseMatrix out(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const double xij = x(i, j);
      if (xij == 0.0) continue;
      for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) out(r, c) += xij * choi_(i * n_ + r, j * n_ + c);
    }
  }
  return out;
}

MatrixMap schur_map(const DenseMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("schur_map: matrix must be square");
  const int n = a.rows();
  DenseMatrix choi(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) choi(i * n + i, j * n + j) = a(i, j);
  return MatrixMap(n, std::move(choi));
}

MatrixMap diag_channel(const DenseMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("diag_channel: matrix must be square");
  const int n = a.rows();
  DenseMatrix choi(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) choi(i * n + j, i * n + j) = a(i, j);
  return MatrixMap(n, std::move(choi));
}

MatrixMap conjugation_map(const DenseMatrix& g) {
  if (!g.is_square()) throw std::invalid_argument("conjugation_map: matrix must be square");
  const int n = g.rows();
  return map_from_action(n, [&](const DenseMatrix& x) { return g * x * g.transpose(); });
}

MatrixMap conjugate(const MatrixMap& map) {
  return MatrixMap(map.dim(), map.choi().transpose());
}

MatrixMap adjoint(const MatrixMap& map) {
  // Under the pairing tr(map(X) Y) = tr(X adjoint(Y)) the Choi matrix
  // transforms by the tensor flip composed with the transpose; the two
  // coincide exactly when the Choi matrix is symmetric.
  const int n = map.dim();
  DenseMatrix out(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < n; ++r)
      for (int l = 0; l < n; ++l)
        for (int c = 0; c < n; ++c)
          out(k * n + r, l * n + c) = map.choi()(c * n + l, r * n + k);
  return MatrixMap(n, std::move(out));
}

bool is_cp(const MatrixMap& map, double tol) {
  const DenseMatrix& ch = map.choi();
  const double scale = 1.0 + ch.max_abs();
  if (ch.max_asymmetry() > std::max(tol, 1e-12) * scale) return false;
  return is_psd(ch, tol);
}

DenseMatrix conditional_expectation(const MatrixMap& map) {
  const int n = map.dim();
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = map.choi()(i * n + i, j * n + j);
  return out;
}

NormCertificate cs1_norm(const MatrixMap& map) {
  if (map.dim() > kCs1DirectCap) {
    throw std::invalid_argument("cs1_norm: dimension cap " + std::to_string(kCs1DirectCap) +
                                " exceeded");
  }
  SvdDecomposition sd = svd(map.choi());
  double value = 0.0;
  for (double s : sd.singular_values) value += s;

  const int nn = map.choi().rows();
  DenseMatrix sig = DenseMatrix::diagonal(sd.singular_values);
  TracePair w;
  w.x = sd.u * sig * sd.u.transpose();
  w.y = sd.v * sig * sd.v.transpose();
  // Symmetrize away factor round-off so the witness block is exact.
  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j) {
      w.x(i, j) = w.x(j, i) = 0.5 * (w.x(i, j) + w.x(j, i));
      w.y(i, j) = w.y(j, i) = 0.5 * (w.y(i, j) + w.y(j, i));
    }
  NormCertificate cert{"cs1", value, std::move(w), SolverMeta{}};

  if (map.dim() <= 4) {
    NormCertificate sdp_cert = cs1_norm_sdp(map);
    cert.meta.cross_check_value = sdp_cert.value;
    if (std::fabs(sdp_cert.value - value) > 10.0 * kTolSdp * (1.0 + std::fabs(value))) {
      throw std::runtime_error("cs1_norm: SDP cross-check disagrees with the spectral value");
    }
  }
  return cert;
}

NormCertificate cs1_norm_sdp(const MatrixMap& map, const sdp::SolveOptions& opts) {
  if (map.dim() > kCs1SdpCap) {
    throw std::invalid_argument("cs1_norm_sdp: dimension cap " + std::to_string(kCs1SdpCap) +
                                " exceeded");
  }
  const int nn = map.choi().rows();
  sdp::SdpSolution sol = sdp::solve(build_trace_norm_program(map.choi()), opts);
  if (sol.status != sdp::SolveStatus::Optimal) {
    throw sdp::SolverError("cs1_norm_sdp: solver returned status '" +
                           sdp::to_string(sol.status) + "'");
  }
  const DenseMatrix& z = sol.primal_blocks[0];
  TracePair w;
  w.x = DenseMatrix(nn, nn);
  w.y = DenseMatrix(nn, nn);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      w.x(i, j) = z(i, j);
      w.y(i, j) = z(nn + i, nn + j);
    }
  SolverMeta meta;
  meta.gap = sol.gap;
  meta.iterations = sol.iterations;
  return NormCertificate{"cs1", sol.primal_value, std::move(w), meta};
}

double lower_bound_cs1(const MatrixMap& map) {
  return schatten_norm(conditional_expectation(map), Pexp::One);
}

OpToTraceResult op_to_trace_estimate(const MatrixMap& map, int iters, std::uint64_t seed,
                                     int starts) {
  if (iters <= 0 || starts <= 0) {
    throw std::invalid_argument("op_to_trace_estimate: iters and starts must be positive");
  }
  const int n = map.dim();
  MatrixMap adj = adjoint(map);
  OpToTraceResult best;
  best.lower_bound = -1.0;
  for (int s = 0; s < starts; ++s) {
    SplitMix64 gen = derive_stream(seed, static_cast<std::uint64_t>(s));
    DenseMatrix x = random_orthogonal(n, gen);
    double prev = -1.0;
    for (int it = 0; it < iters; ++it) {
      DenseMatrix y = polar_maximizer(map.apply(x));
      x = polar_maximizer(adj.apply(y));
      const double val = schatten_norm(map.apply(x), Pexp::One);
      if (std::fabs(val - prev) <= 1e-12 * (1.0 + std::fabs(val))) break;
      prev = val;
    }
    const double val = schatten_norm(map.apply(x), Pexp::One);
    if (val > best.lower_bound) {
      best.lower_bound = val;
      best.x = x;
    }
  }
  return best;
}

GapDemoReport cs1_gap_demo(const DenseMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("cs1_gap_demo: matrix must be square");
  if (a.rows() > kGapDemoCap) {
    throw std::invalid_argument("cs1_gap_demo: dimension cap " + std::to_string(kGapDemoCap) +
                                " exceeded");
  }
  GapDemoReport rep;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) rep.cs1 += std::fabs(a(i, j));
  rep.op_norm = pq_norm(a, Pexp::Inf, Pexp::One);
  rep.ratio_defined = rep.op_norm > 0.0;
  rep.ratio = rep.ratio_defined ? rep.cs1 / rep.op_norm : 0.0;
  return rep;
}

CliffordSystem clifford_system(int m) {
  if (m < 1 || m > kCliffordCap) {
    throw std::invalid_argument("clifford_system: generator count must be in 1.." +
                                std::to_string(kCliffordCap));
  }
  const DenseMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const DenseMatrix z{{1.0, 0.0}, {0.0, -1.0}};
  const DenseMatrix y{{0.0, -1.0}, {1.0, 0.0}};  // = XZ, antisymmetric

  // Symmetric anticommuting involutions built by doubling; the
  // antisymmetric complex structures omega (commuting with the level
  // below) enter only as tensor factors, so every generator stays
  // symmetric with square +I.
  std::vector<DenseMatrix> dim2 = {x, z};
  std::vector<DenseMatrix> dim4 = {kron(x, x), kron(x, z), kron(z, DenseMatrix::identity(2))};
  const DenseMatrix omega3 = kron(z, y);  // = G1 G2 G3 at the dim-4 level
  std::vector<DenseMatrix> dim8;
  for (const DenseMatrix& g : dim4) dim8.push_back(kron(x, g));
  dim8.push_back(kron(z, DenseMatrix::identity(4)));
  dim8.push_back(kron(y, omega3));
  const DenseMatrix j5 = kron(DenseMatrix::identity(2), omega3);
  const DenseMatrix k5 = kron(kron(z, y), DenseMatrix::identity(2));
  std::vector<DenseMatrix> dim16;
  for (const DenseMatrix& g : dim8) dim16.push_back(kron(x, g));
  dim16.push_back(kron(z, DenseMatrix::identity(8)));
  dim16.push_back(kron(y, j5));
  dim16.push_back(kron(y, k5));

  const std::vector<DenseMatrix>* source = nullptr;
  if (m <= 2) {
    source = &dim2;
  } else if (m == 3) {
    source = &dim4;
  } else if (m <= 5) {
    source = &dim8;
  } else {
    source = &dim16;
  }
  CliffordSystem sys;
  sys.m = m;
  sys.dim = (*source)[0].rows();
  sys.generators.assign(source->begin(), source->begin() + m);
  return sys;
}

CliffordWitness clifford_witness(const DenseMatrix& xis, const DenseMatrix& etas) {
  if (xis.cols() != etas.cols()) {
    throw std::invalid_argument("clifford_witness: vector dimensions differ");
  }
  const int m = xis.cols();
  if (m < 1 || m > kCliffordCap) {
    throw std::invalid_argument("clifford_witness: vector dimension must be in 1.." +
                                std::to_string(kCliffordCap));
  }
  for (int i = 0; i < xis.rows(); ++i) {
    if (std::fabs(norm2(xis.row(i)) - 1.0) > kTolMatch) {
      throw std::invalid_argument("clifford_witness: xi vectors must be unit");
    }
  }
  for (int j = 0; j < etas.rows(); ++j) {
    if (std::fabs(norm2(etas.row(j)) - 1.0) > kTolMatch) {
      throw std::invalid_argument("clifford_witness: eta vectors must be unit");
    }
  }
  CliffordSystem sys = clifford_system(m);
  auto combine = [&](const std::vector<double>& coeffs) {
    DenseMatrix out(sys.dim, sys.dim);
    for (int k = 0; k < m; ++k) {
      if (coeffs[k] == 0.0) continue;
      for (int r = 0; r < sys.dim; ++r)
        for (int c = 0; c < sys.dim; ++c) out(r, c) += coeffs[k] * sys.generators[k](r, c);
    }
    return out;
  };
  CliffordWitness w;
  for (int i = 0; i < xis.rows(); ++i) w.b.push_back(combine(xis.row(i)));
  for (int j = 0; j < etas.rows(); ++j) w.c.push_back(combine(etas.row(j)));
  w.pairing = DenseMatrix(xis.rows(), etas.rows());
  for (int i = 0; i < xis.rows(); ++i)
    for (int j = 0; j < etas.rows(); ++j) {
      w.pairing(i, j) = normalized_trace_product(w.b[i], w.c[j]);
    }
  return w;
}

GammaStarReport gamma_star_map_bound(const DenseMatrix& a, const sdp::SolveOptions& opts) {
  if (!a.is_square()) {
    throw std::invalid_argument("gamma_star_map_bound: matrix must be square");
  }
  const int n = a.rows();
  if (n > 8) {
    throw std::invalid_argument("gamma_star_map_bound: dimension cap 8 exceeded");
  }
  a.ensure_finite("gamma_star_map_bound input");

  sdp::SdpProblem program = build_gamma2_star_program(a);
  sdp::SdpSolution sol = sdp::solve(program, opts);
  if (sol.status != sdp::SolveStatus::Optimal) {
    throw sdp::SolverError("gamma_star_map_bound: solver returned status '" +
                           sdp::to_string(sol.status) + "'");
  }
  GammaStarReport rep;
  rep.gamma2_star = sol.primal_value;

  // The dual slack of the gamma2* program has unit diagonal (scaled by 2)
  // and its Gram vectors are the optimal unit vectors of the bilinear sup.
  DenseMatrix gram = sdp::dual_slack(program, sol.dual_multipliers)[0].scaled(2.0);
  DenseMatrix factor = factor_gram(gram, 10.0 * kTolMatch);
  int ambient = factor.cols();
  if (ambient > kCliffordCap) {
    // Keep the leading components (eigenvalues are sorted descending).
    DenseMatrix cut(factor.rows(), kCliffordCap);
    for (int i = 0; i < factor.rows(); ++i)
      for (int j = 0; j < kCliffordCap; ++j) cut(i, j) = factor(i, j);
    factor = std::move(cut);
    ambient = kCliffordCap;
    rep.truncated = true;
  }
  rep.ambient = ambient;

  rep.xi = DenseMatrix(n, ambient);
  rep.eta = DenseMatrix(n, ambient);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < ambient; ++c) {
      rep.xi(i, c) = factor(i, c);
      rep.eta(i, c) = factor(n + i, c);
    }
  double raw = 0.0;
  {
    DenseMatrix cross = rep.xi * rep.eta.transpose();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) raw += a(i, j) * cross(i, j);
  }
  if (raw < 0.0) rep.eta = rep.eta.scaled(-1.0);

  auto normalize_rows = [](DenseMatrix& rows) {
    for (int i = 0; i < rows.rows(); ++i) {
      const double nrm = norm2(rows.row(i));
      if (nrm < 1e-8) {
        for (int c = 0; c < rows.cols(); ++c) rows(i, c) = c == 0 ? 1.0 : 0.0;
      } else {
        for (int c = 0; c < rows.cols(); ++c) rows(i, c) /= nrm;
      }
    }
  };
  normalize_rows(rep.xi);
  normalize_rows(rep.eta);

  rep.witness = clifford_witness(rep.xi, rep.eta);
  DenseMatrix expected = rep.xi * rep.eta.transpose();
  rep.pairing_error = (rep.witness.pairing - expected).max_abs();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rep.certified_value += a(i, j) * rep.witness.pairing(i, j);

  // Weighted (contraction) view of the same optimum for the report.
  NormCertificate star{"gamma2star", rep.gamma2_star, DiagonalPair{}, SolverMeta{}};
  star.witness = DiagonalPair{sol.primal_blocks[0].diag(), std::vector<double>()};
  auto& dp = std::get<DiagonalPair>(star.witness);
  dp.x.assign(n, 0.0);
  dp.y.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    dp.x[i] = sol.primal_blocks[0](i, i);
    dp.y[i] = sol.primal_blocks[0](n + i, n + i);
  }
  VectorFamilies orth = orthogonal_witness(a, star);
  rep.contraction = contraction_decomp(orth);
  if (rep.contraction.x.rows() > 0) {
    const int r = orth.xs.cols();
    if (r >= 1 && r <= kCliffordCap) {
      DenseMatrix xin(n, r), etan(n, r);
      for (int i = 0; i < n; ++i) {
        const double na = rep.contraction.alpha[i];
        const double nb = rep.contraction.beta[i];
        for (int c = 0; c < r; ++c) {
          xin(i, c) = na == 0.0 ? (c == 0 ? 1.0 : 0.0) : orth.xs(i, c) / na;
          etan(i, c) = nb == 0.0 ? (c == 0 ? 1.0 : 0.0) : orth.ys(i, c) / nb;
        }
      }
      CliffordWitness cw = clifford_witness(xin, etan);
      double err = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (rep.contraction.alpha[i] == 0.0 || rep.contraction.beta[j] == 0.0) continue;
          err = std::max(err, std::fabs(cw.pairing(i, j) - rep.contraction.x(i, j)));
        }
      rep.contraction_pairing_error = err;
    }
  }
  return rep;
}

}  // namespace certnorm::nc
