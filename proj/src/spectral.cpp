#include "certnorm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace certnorm {

namespace {

constexpr int kMaxJacobiSweeps = 100;

// Deterministic sign convention: the entry of largest magnitude in each
// column (lowest index on ties) is made nonnegative.
void fix_column_signs(DenseMatrix& primary, DenseMatrix* companion) {
  for (int j = 0; j < primary.cols(); ++j) {
    int arg = 0;
    double best = 0.0;
    for (int i = 0; i < primary.rows(); ++i) {
      double a = std::fabs(primary(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (primary(arg, j) < 0.0) {
      for (int i = 0; i < primary.rows(); ++i) primary(i, j) = -primary(i, j);
      if (companion) {
        for (int i = 0; i < companion->rows(); ++i) (*companion)(i, j) = -(*companion)(i, j);
      }
    }
  }
}

}  // namespace

DenseMatrix SpectralData::reconstruct() const {
  DenseMatrix r(left.rows(), right.rows());
  for (int i = 0; i < left.rows(); ++i) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double lv = left(i, static_cast<int>(k)) * values[k];
      if (lv == 0.0) continue;
      for (int j = 0; j < right.rows(); ++j) {
        r(i, j) += lv * right(j, static_cast<int>(k));
      }
    }
  }
  return r;
}

EigenDecomposition eigen_symmetric(const DenseMatrix& input) {
  if (!input.is_square()) {
    throw std::invalid_argument("eigen_symmetric: matrix must be square");
  }
  const int n = input.rows();
  // Work on the symmetrized copy; callers guarantee near-symmetry.
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
  DenseMatrix v = DenseMatrix::identity(n);

  const double scale = std::max(1.0, a.max_abs());
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
    if (off <= stop) {
      EigenDecomposition out;
      out.eigenvalues.resize(n);
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      std::vector<double> d(n);
      for (int i = 0; i < n; ++i) d[i] = a(i, i);
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return d[x] > d[y]; });
      DenseMatrix vec(n, n);
      for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = d[order[k]];
        for (int i = 0; i < n; ++i) vec(i, k) = v(i, order[k]);
      }
      fix_column_signs(vec, nullptr);
      out.vectors = std::move(vec);
      return out;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t;
        if (std::fabs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;
        a(p, p) -= h;
        a(q, q) += h;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = akp - s * (akq + tau * akp);
          a(p, k) = a(k, p);
          a(k, q) = akq + s * (akp - tau * akq);
          a(q, k) = a(k, q);
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = vkp - s * (vkq + tau * vkp);
          v(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
  throw std::runtime_error("eigen_symmetric: Jacobi sweeps did not converge");
}

SvdDecomposition svd(const DenseMatrix& a) {
  a.ensure_finite("svd input");
  if (a.rows() < a.cols()) {
    SvdDecomposition t = svd(a.transpose());
    return SvdDecomposition{std::move(t.singular_values), std::move(t.v), std::move(t.u)};
  }
  const int m = a.rows();
  const int n = a.cols();

  DenseMatrix ata(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += a(k, i) * a(k, j);
      ata(i, j) = ata(j, i) = s;
    }
  }
  EigenDecomposition ed = eigen_symmetric(ata);

  SvdDecomposition out;
  out.singular_values.resize(n);
  for (int k = 0; k < n; ++k) {
    out.singular_values[k] = std::sqrt(std::max(0.0, ed.eigenvalues[k]));
  }
  out.v = ed.vectors;

  const double smax = out.singular_values.empty() ? 0.0 : out.singular_values[0];
  const double tiny = smax * 1e-13 * std::max(m, n);
  DenseMatrix u(m, n);
  std::vector<int> deficient;
  for (int k = 0; k < n; ++k) {
    if (out.singular_values[k] > tiny && out.singular_values[k] > 0.0) {
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * out.v(j, k);
        u(i, k) = s / out.singular_values[k];
      }
    } else {
      out.singular_values[k] = out.singular_values[k] > 0.0 ? out.singular_values[k] : 0.0;
      deficient.push_back(k);
    }
  }
  // Complete the left factor for (near-)zero singular values by
  // Gram-Schmidt against the columns already placed.
  if (!deficient.empty()) {
    std::size_t next = 0;
    for (int e = 0; e < m && next < deficient.size(); ++e) {
      std::vector<double> cand(m, 0.0);
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < n; ++k) {
          bool placed = true;
          for (std::size_t d = next; d < deficient.size(); ++d) {
            if (deficient[d] == k) placed = false;
          }
          if (!placed) continue;
          double proj = 0.0;
          for (int i = 0; i < m; ++i) proj += cand[i] * u(i, k);
          for (int i = 0; i < m; ++i) cand[i] -= proj * u(i, k);
        }
      }
      double nrm = norm2(cand);
      if (nrm > 0.5) {
        for (int i = 0; i < m; ++i) u(i, deficient[next]) = cand[i] / nrm;
        ++next;
      }
    }
  }
  fix_column_signs(out.v, &u);
  out.u = std::move(u);
  return out;
}

SpectralData spectral(const DenseMatrix& a) {
  a.ensure_finite("spectral input");
  SpectralData out;
  const double scale = std::max(1.0, a.max_abs());
  if (a.is_square() && a.max_asymmetry() <= kTolMatch * scale) {
    EigenDecomposition ed = eigen_symmetric(a);
    out.values = std::move(ed.eigenvalues);
    out.left = ed.vectors;
    out.right = std::move(ed.vectors);
    out.is_eigen = true;
  } else {
    SvdDecomposition sd = svd(a);
    out.values = std::move(sd.singular_values);
    out.left = std::move(sd.u);
    out.right = std::move(sd.v);
    out.is_eigen = false;
  }
  return out;
}

double min_eigenvalue(const DenseMatrix& symmetric) {
  EigenDecomposition ed = eigen_symmetric(symmetric);
  return ed.eigenvalues.back();
}

double max_abs_eigenvalue(const DenseMatrix& symmetric) {
  EigenDecomposition ed = eigen_symmetric(symmetric);
  return std::max(std::fabs(ed.eigenvalues.front()), std::fabs(ed.eigenvalues.back()));
}

bool is_psd(const DenseMatrix& a, double tol) {
  if (!a.is_square()) throw std::invalid_argument("is_psd: matrix must be square");
  const double scale = std::max(1.0, a.max_abs());
  if (a.max_asymmetry() > std::max(tol, 1e-12) * scale) {
    throw std::invalid_argument("is_psd: matrix is not symmetric within tolerance");
  }
  EigenDecomposition ed = eigen_symmetric(a);
  const double lo = ed.eigenvalues.back();
  const double top = std::max(std::fabs(ed.eigenvalues.front()), std::fabs(lo));
  return lo >= -tol * std::max(1.0, top);
}

DenseMatrix factor_gram(const DenseMatrix& g, double tol) {
  if (!g.is_square()) throw std::invalid_argument("factor_gram: matrix must be square");
  EigenDecomposition ed = eigen_symmetric(g);
  const int n = g.rows();
  const double top = ed.eigenvalues.empty() ? 0.0 : std::fabs(ed.eigenvalues.front());
  if (!ed.eigenvalues.empty() && ed.eigenvalues.back() < -tol * std::max(1.0, top)) {
    throw std::invalid_argument("factor_gram: matrix is not positive semidefinite");
  }
  int rank = 0;
  const double cut = std::max(top, 1.0) * 1e-14;
  for (double lam : ed.eigenvalues) {
    if (lam > cut) ++rank;
  }
  if (rank == 0) rank = 1;  // keep one zero column so vectors have a home
  DenseMatrix r(n, rank);
  for (int k = 0; k < rank; ++k) {
    const double s = std::sqrt(std::max(0.0, ed.eigenvalues[k]));
    for (int i = 0; i < n; ++i) r(i, k) = ed.vectors(i, k) * s;
  }
  return r;
}

}  // namespace certnorm
