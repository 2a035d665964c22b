#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "certnorm/matrix.hpp"
#include "certnorm/rng.hpp"

namespace oracles {

using certnorm::DenseMatrix;
using certnorm::SplitMix64;

// Two-sided brute force over both sign vectors: max |sum A_ij e_i h_j|.
inline double infty1_two_sided(const DenseMatrix& a) {
  const int n = a.rows();
  const int k = a.cols();
  double best = 0.0;
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << n); ++e) {
    for (std::uint64_t h = 0; h < (std::uint64_t{1} << k); ++h) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double ei = ((e >> i) & 1u) ? -1.0 : 1.0;
        for (int j = 0; j < k; ++j) {
          const double hj = ((h >> j) & 1u) ? -1.0 : 1.0;
          s += a(i, j) * ei * hj;
        }
      }
      best = std::max(best, std::fabs(s));
    }
  }
  return best;
}

// Plain per-sign-vector recomputation of rho (no incremental updates).
inline double rho_bruteforce(const std::vector<std::vector<double>>& vectors) {
  const int n = static_cast<int>(vectors.size());
  const int d = static_cast<int>(vectors[0].size());
  double best = 0.0;
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << n); ++e) {
    std::vector<double> acc(d, 0.0);
    for (int i = 0; i < n; ++i) {
      const double s = ((e >> i) & 1u) ? -1.0 : 1.0;
      for (int c = 0; c < d; ++c) acc[c] += s * vectors[i][c];
    }
    double nrm = 0.0;
    for (double v : acc) nrm += v * v;
    best = std::max(best, std::sqrt(nrm));
  }
  return best;
}

// Lower bound on gamma2* by alternating maximization of the bilinear form
// over unit vectors, with seeded multistart. Converges to the optimum on
// the small instances used in tests.
inline double gamma2_star_alternating(const DenseMatrix& a, int starts = 24, int iters = 300,
                                      std::uint64_t seed = 12345) {
  const int n = a.rows();
  const int k = a.cols();
  const int dim = n + k;
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    SplitMix64 gen = certnorm::derive_stream(seed, s);
    std::vector<std::vector<double>> xs(n, std::vector<double>(dim));
    std::vector<std::vector<double>> ys(k, std::vector<double>(dim));
    auto normalize = [&](std::vector<double>& v) {
      double nrm = certnorm::norm2(v);
      if (nrm < 1e-14) {
        v.assign(v.size(), 0.0);
        v[0] = 1.0;
      } else {
        for (double& x : v) x /= nrm;
      }
    };
    for (auto& v : xs) {
      for (double& x : v) x = gen.gaussian();
      normalize(v);
    }
    for (auto& v : ys) {
      for (double& x : v) x = gen.gaussian();
      normalize(v);
    }
    double val = 0.0;
    for (int it = 0; it < iters; ++it) {
      for (int i = 0; i < n; ++i) {
        std::vector<double> target(dim, 0.0);
        for (int j = 0; j < k; ++j)
          for (int c = 0; c < dim; ++c) target[c] += a(i, j) * ys[j][c];
        normalize(target);
        xs[i] = target;
      }
      for (int j = 0; j < k; ++j) {
        std::vector<double> target(dim, 0.0);
        for (int i = 0; i < n; ++i)
          for (int c = 0; c < dim; ++c) target[c] += a(i, j) * xs[i][c];
        normalize(target);
        ys[j] = target;
      }
      double now = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) now += a(i, j) * certnorm::dot(xs[i], ys[j]);
      if (std::fabs(now - val) < 1e-13 * (1.0 + std::fabs(now))) {
        val = now;
        break;
      }
      val = now;
    }
    best = std::max(best, std::fabs(val));
  }
  return best;
}

inline DenseMatrix random_matrix(SplitMix64& gen, int rows, int cols) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gen.uniform_pm1();
  return m;
}

inline DenseMatrix random_symmetric(SplitMix64& gen, int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = gen.uniform_pm1();
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = gen.uniform_pm1();
  }
  return m;
}

// Sylvester sign matrices H_1 = [1], H_{2m} = [[H, H], [H, -H]].
inline DenseMatrix sylvester(int n) {
  DenseMatrix h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < n) {
    const int m = h.rows();
    DenseMatrix next(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        next(i, j) = h(i, j);
        next(i, m + j) = h(i, j);
        next(m + i, j) = h(i, j);
        next(m + i, m + j) = -h(i, j);
      }
    h = next;
  }
  return h;
}

}  // namespace oracles
