#include "certnorm/gronorm.hpp"

#include <cmath>
#include <stdexcept>

#include "certnorm/spectral.hpp"

namespace certnorm {

namespace {

using sdp::add_entry;
using sdp::Constraint;
using sdp::SdpProblem;

void require_symmetric(const DenseMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  }
  const double scale = 1.0 + a.max_abs();
  if (a.max_asymmetry() > kTolMatch * scale) {
    throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  }
}

void require_hollow(const DenseMatrix& a, const char* what) {
  const double scale = 1.0 + a.max_abs();
  for (int i = 0; i < a.rows(); ++i) {
    if (std::fabs(a(i, i)) > kTolMatch * scale) {
      throw std::invalid_argument(std::string(what) + ": matrix diagonal is not zero");
    }
  }
}

SolverMeta meta_of(const sdp::SdpSolution& sol) {
  SolverMeta meta;
  meta.gap = sol.gap;
  meta.iterations = sol.iterations;
  return meta;
}

void require_optimal(const sdp::SdpSolution& sol, const char* what) {
  if (sol.status != sdp::SolveStatus::Optimal) {
    throw sdp::SolverError(std::string(what) + ": solver returned status '" +
                           sdp::to_string(sol.status) + "' (gap " + std::to_string(sol.gap) +
                           " after " + std::to_string(sol.iterations) + " iterations)");
  }
}

// Rows i of the factor are the x-family, rows n..n+k-1 the y-family.
DenseMatrix psd_factor_of_block(const DenseMatrix& x, const DenseMatrix& a,
                                const DenseMatrix& y, const char* what) {
  const int n = a.rows();
  const int k = a.cols();
  DenseMatrix m(n + k, n + k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = x(i, j);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(n + i, n + j) = y(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      m(i, n + j) = a(i, j);
      m(n + j, i) = a(i, j);
    }
  try {
    return factor_gram(m, 10.0 * kTolMatch);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(what) + ": witness block matrix is not psd");
  }
}

DenseMatrix take_rows(const DenseMatrix& m, int from, int count) {
  DenseMatrix out(count, m.cols());
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(from + i, j);
  return out;
}

}  // namespace

sdp::SdpProblem build_gamma2_program(const DenseMatrix& a) {
  const int n = a.rows();
  const int k = a.cols();
  SdpProblem p = SdpProblem::make({n + k}, 1, false);
  p.set_objective_free(0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      Constraint& c = p.add_constraint(a(i, j));
      add_entry(c, 0, i, n + j, 0.5);
    }
  }
  for (int i = 0; i < n + k; ++i) {
    Constraint& c = p.add_constraint(0.0);
    add_entry(c, 0, i, i, 1.0);
    c.free_coeffs[0] = -1.0;
  }
  return p;
}

sdp::SdpProblem build_gamma2_star_program(const DenseMatrix& a) {
  const int n = a.rows();
  const int k = a.cols();
  SdpProblem p = SdpProblem::make({n + k}, 0, false);
  for (int i = 0; i < n + k; ++i) p.set_objective_entry(0, i, i, 0.5);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      Constraint& c = p.add_constraint(a(i, j));
      add_entry(c, 0, i, n + j, 0.5);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Constraint& c = p.add_constraint(0.0);
      add_entry(c, 0, i, j, 0.5);
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      Constraint& c = p.add_constraint(0.0);
      add_entry(c, 0, n + i, n + j, 0.5);
    }
  }
  return p;
}

sdp::SdpProblem build_trace_norm_program(const DenseMatrix& a) {
  const int n = a.rows();
  const int k = a.cols();
  SdpProblem p = SdpProblem::make({n + k}, 0, false);
  for (int i = 0; i < n + k; ++i) p.set_objective_entry(0, i, i, 0.5);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      Constraint& c = p.add_constraint(a(i, j));
      add_entry(c, 0, i, n + j, 0.5);
    }
  }
  return p;
}

sdp::SdpProblem build_corr_problem_program(const DenseMatrix& a) {
  // Z = D + A with D = diag(Z) since A is hollow; minimize tr(Z).
  const int n = a.rows();
  SdpProblem p = SdpProblem::make({n}, 0, false);
  for (int i = 0; i < n; ++i) p.set_objective_entry(0, i, i, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Constraint& c = p.add_constraint(a(i, j));
      add_entry(c, 0, i, j, 0.5);
    }
  }
  return p;
}

sdp::SdpProblem build_corr_C_program(const DenseMatrix& a) {
  // Blocks Z1 = D - A and Z2 = D + A share the diagonal scalars d_i.
  const int n = a.rows();
  SdpProblem p = SdpProblem::make({n, n}, n, false);
  for (int i = 0; i < n; ++i) p.set_objective_free(i, 1.0);
  for (int b = 0; b < 2; ++b) {
    const double sign = b == 0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Constraint& c = p.add_constraint(sign * a(i, j));
        add_entry(c, b, i, j, 0.5);
      }
    }
    for (int i = 0; i < n; ++i) {
      Constraint& c = p.add_constraint(sign * a(i, i));
      add_entry(c, b, i, i, 1.0);
      c.free_coeffs[i] = -1.0;
    }
  }
  return p;
}

sdp::SdpProblem build_corr_Cprime_program(const DenseMatrix& a) {
  // Z1 = D1 - A, Z2 = D2 + A; tr(D1 + D2) = tr(Z1) + tr(Z2).
  const int n = a.rows();
  SdpProblem p = SdpProblem::make({n, n}, 0, false);
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < n; ++i) p.set_objective_entry(b, i, i, 0.5);
  for (int b = 0; b < 2; ++b) {
    const double sign = b == 0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Constraint& c = p.add_constraint(sign * a(i, j));
        add_entry(c, b, i, j, 0.5);
      }
    }
  }
  return p;
}

sdp::SdpProblem build_symmetric_primal_program(const DenseMatrix& a) {
  const int n = a.rows();
  SdpProblem p = SdpProblem::make({2 * n}, 0, true);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (a(i, j) != 0.0) {
        p.set_objective_entry(0, i, j, a(i, j));
        p.set_objective_entry(0, n + i, n + j, -a(i, j));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    Constraint& c = p.add_constraint(1.0);
    add_entry(c, 0, i, i, 1.0);
    add_entry(c, 0, n + i, n + i, 1.0);
  }
  return p;
}

NormCertificate gamma2(const DenseMatrix& a, const sdp::SolveOptions& opts) {
  a.ensure_finite("gamma2 input");
  const int n = a.rows();
  const int k = a.cols();
  sdp::SdpSolution sol = sdp::solve(build_gamma2_program(a), opts);
  require_optimal(sol, "gamma2");
  const DenseMatrix& z = sol.primal_blocks[0];
  BlockPair w;
  w.t = sol.free_values[0];
  w.x = DenseMatrix(n, n);
  w.y = DenseMatrix(k, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.x(i, j) = z(i, j);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) w.y(i, j) = z(n + i, n + j);
  NormCertificate cert{"gamma2", sol.primal_value, std::move(w), meta_of(sol)};
  return cert;
}

VectorFamilies gamma2_vector_witness(const NormCertificate& cert, const DenseMatrix& a) {
  const auto* w = std::get_if<BlockPair>(&cert.witness);
  if (!w) throw std::invalid_argument("gamma2_vector_witness: certificate has no block witness");
  DenseMatrix factor = psd_factor_of_block(w->x, a, w->y, "gamma2_vector_witness");
  VectorFamilies fam;
  fam.xs = take_rows(factor, 0, a.rows());
  fam.ys = take_rows(factor, a.rows(), a.cols());
  fam.relation = VectorFamilies::Relation::CrossGram;
  fam.orthogonal = false;
  return fam;
}

NormCertificate gamma2_star(const DenseMatrix& a, const sdp::SolveOptions& opts) {
  a.ensure_finite("gamma2_star input");
  const int n = a.rows();
  const int k = a.cols();
  sdp::SdpSolution sol = sdp::solve(build_gamma2_star_program(a), opts);
  require_optimal(sol, "gamma2_star");
  const DenseMatrix& z = sol.primal_blocks[0];
  DiagonalPair w;
  w.x.resize(n);
  w.y.resize(k);
  for (int i = 0; i < n; ++i) w.x[i] = z(i, i);
  for (int j = 0; j < k; ++j) w.y[j] = z(n + j, n + j);
  NormCertificate cert{"gamma2star", sol.primal_value, std::move(w), meta_of(sol)};
  return cert;
}

VectorFamilies orthogonal_witness(const DenseMatrix& a, NormCertificate& cert) {
  const auto* w = std::get_if<DiagonalPair>(&cert.witness);
  if (!w) throw std::invalid_argument("orthogonal_witness: certificate has no diagonal witness");
  VerifyReport check = verify_certificate(a, cert, 10.0 * kTolMatch);
  if (!check.pass) {
    throw std::invalid_argument("orthogonal_witness: certificate failed re-verification:\n" +
                                check.summary());
  }
  DenseMatrix factor = psd_factor_of_block(DenseMatrix::diagonal(w->x), a,
                                           DenseMatrix::diagonal(w->y), "orthogonal_witness");
  VectorFamilies fam;
  fam.xs = take_rows(factor, 0, a.rows());
  fam.ys = take_rows(factor, a.rows(), a.cols());
  fam.relation = VectorFamilies::Relation::CrossGram;
  fam.orthogonal = true;

  // The optimum can carry tr(X) != tr(Y) within solver noise; rebalance so
  // both family energies equal sqrt(tr X tr Y) while the cross Gram stays.
  double trx = 0.0, try_ = 0.0;
  for (double v : w->x) trx += v;
  for (double v : w->y) try_ += v;
  if (trx > 0.0 && try_ > 0.0) {
    const double scale = std::pow(try_ / trx, 0.25);
    fam.xs = fam.xs.scaled(scale);
    fam.ys = fam.ys.scaled(1.0 / scale);
    cert.meta.rebalance_scale = scale;
  }
  return fam;
}

ContractionDecomposition contraction_decomp(const VectorFamilies& families) {
  if (families.count_x() != families.count_y()) {
    throw std::invalid_argument("contraction_decomp: families must have equal size");
  }
  if (!families.orthogonal) {
    throw std::invalid_argument("contraction_decomp: families must be orthogonal");
  }
  const int n = families.count_x();
  ContractionDecomposition d;
  d.alpha.resize(n);
  d.beta.resize(n);
  for (int i = 0; i < n; ++i) {
    d.alpha[i] = norm2(families.xs.row(i));
    d.beta[i] = norm2(families.ys.row(i));
  }
  d.x = DenseMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    if (d.alpha[i] == 0.0) continue;  // row stays zero when undefined
    for (int j = 0; j < n; ++j) {
      if (d.beta[j] == 0.0) continue;
      d.x(i, j) = dot(families.xs.row(i), families.ys.row(j)) / (d.alpha[i] * d.beta[j]);
    }
  }
  return d;
}

SchurDecomposition schur_decomp(const ContractionDecomposition& decomp) {
  const int n = static_cast<int>(decomp.alpha.size());
  SchurDecomposition s;
  s.b = DenseMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.b(i, j) = decomp.alpha[i] * decomp.beta[j];
  s.c = decomp.x;
  return s;
}

NormCertificate corr_problem(const DenseMatrix& a, const sdp::SolveOptions& opts) {
  require_symmetric(a, "corr_problem");
  require_hollow(a, "corr_problem");
  sdp::SdpSolution sol = sdp::solve(build_corr_problem_program(a), opts);
  require_optimal(sol, "corr_problem");
  CorrelationDiagonal w;
  w.d1 = sol.primal_blocks[0].diag();
  NormCertificate cert{"corrproblem", sol.primal_value, std::move(w), meta_of(sol)};
  return cert;
}

NormCertificate corr_norm_C(const DenseMatrix& a, const sdp::SolveOptions& opts) {
  require_symmetric(a, "corr_norm_C");
  sdp::SdpSolution sol = sdp::solve(build_corr_C_program(a), opts);
  require_optimal(sol, "corr_norm_C");
  CorrelationDiagonal w;
  w.d1 = sol.free_values;
  NormCertificate cert{"corrC", sol.primal_value, std::move(w), meta_of(sol)};
  return cert;
}

NormCertificate corr_norm_Cprime(const DenseMatrix& a, const sdp::SolveOptions& opts) {
  require_symmetric(a, "corr_norm_Cprime");
  const int n = a.rows();
  sdp::SdpSolution sol = sdp::solve(build_corr_Cprime_program(a), opts);
  require_optimal(sol, "corr_norm_Cprime");
  CorrelationDiagonal w;
  w.d1.resize(n);
  w.d2 = std::vector<double>(n);
  for (int i = 0; i < n; ++i) {
    w.d1[i] = sol.primal_blocks[0](i, i) + a(i, i);   // D1 = Z1 + A on the diagonal
    (*w.d2)[i] = sol.primal_blocks[1](i, i) - a(i, i);  // D2 = Z2 - A
  }
  NormCertificate cert{"corrCprime", sol.primal_value, std::move(w), meta_of(sol)};
  return cert;
}

VectorFamilies cprime_orthogonal_witness(const DenseMatrix& a, const std::vector<double>& d1,
                                         const std::vector<double>& d2) {
  require_symmetric(a, "cprime_orthogonal_witness");
  require_hollow(a, "cprime_orthogonal_witness");
  const int n = a.rows();
  if (static_cast<int>(d1.size()) != n || static_cast<int>(d2.size()) != n) {
    throw std::invalid_argument("cprime_orthogonal_witness: diagonal size mismatch");
  }
  // Feasibility in the proof's labeling: D1 + A >= 0 and D2 - A >= 0.
  DenseMatrix b = DenseMatrix::diagonal(d1) + a;
  DenseMatrix c = DenseMatrix::diagonal(d2) - a;
  DenseMatrix fb, fc;
  try {
    fb = factor_gram(b, 10.0 * kTolMatch);
    fc = factor_gram(c, 10.0 * kTolMatch);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cprime_orthogonal_witness: (D1, D2) is not feasible");
  }
  const int r1 = fb.cols();
  const int r2 = fc.cols();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  VectorFamilies fam;
  fam.xs = DenseMatrix(n, r1 + r2);
  fam.ys = DenseMatrix(n, r1 + r2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r1; ++j) {
      fam.xs(i, j) = inv_sqrt2 * fb(i, j);
      fam.ys(i, j) = inv_sqrt2 * fb(i, j);
    }
    for (int j = 0; j < r2; ++j) {
      fam.xs(i, r1 + j) = inv_sqrt2 * fc(i, j);
      fam.ys(i, r1 + j) = -inv_sqrt2 * fc(i, j);
    }
  }
  fam.relation = VectorFamilies::Relation::OffDiagCrossGram;
  fam.orthogonal = true;
  return fam;
}

VectorFamilies symmetrize_witness(const DenseMatrix& xs, const DenseMatrix& ys) {
  if (xs.rows() != ys.rows() || xs.cols() != ys.cols()) {
    throw std::invalid_argument("symmetrize_witness: family shapes differ");
  }
  const int n = xs.rows();
  const int d = xs.cols();
  for (int i = 0; i < n; ++i) {
    if (std::fabs(norm2(xs.row(i)) - 1.0) > kTolMatch ||
        std::fabs(norm2(ys.row(i)) - 1.0) > kTolMatch) {
      throw std::invalid_argument("symmetrize_witness: input vectors must be unit");
    }
  }
  // z_i, w_i live in the doubled space; the 1/(2 sqrt 2) normalization makes
  // |z_i|^2 + |w_i|^2 = 1 and <z_i,z_j> - <w_i,w_j> = (<x_i,y_j>+<x_j,y_i>)/2.
  const double scale = 1.0 / (2.0 * std::sqrt(2.0));
  VectorFamilies fam;
  fam.xs = DenseMatrix(n, 2 * d);
  fam.ys = DenseMatrix(n, 2 * d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      fam.xs(i, j) = scale * (xs(i, j) + ys(i, j));
      fam.xs(i, d + j) = scale * (ys(i, j) + xs(i, j));
      fam.ys(i, j) = scale * (xs(i, j) - ys(i, j));
      fam.ys(i, d + j) = scale * (ys(i, j) - xs(i, j));
    }
  }
  fam.relation = VectorFamilies::Relation::DifferenceGram;
  return fam;
}

NormCertificate gamma2_star_symmetric_primal(const DenseMatrix& a,
                                             const sdp::SolveOptions& opts) {
  require_symmetric(a, "gamma2_star_symmetric_primal");
  const int n = a.rows();
  sdp::SdpSolution sol = sdp::solve(build_symmetric_primal_program(a), opts);
  require_optimal(sol, "gamma2_star_symmetric_primal");
  DenseMatrix factor = factor_gram(sol.primal_blocks[0], 10.0 * kTolMatch);
  VectorFamilies w;
  w.xs = take_rows(factor, 0, n);
  w.ys = take_rows(factor, n, n);
  w.relation = VectorFamilies::Relation::DifferenceGram;
  NormCertificate cert{"gamma2star_symmetric", sol.primal_value, std::move(w), meta_of(sol)};
  return cert;
}

DenseMatrix tilde_embed(const DenseMatrix& a) {
  const int n = a.rows();
  const int k = a.cols();
  DenseMatrix m(n + k, n + k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      m(i, n + j) = a(i, j);
      m(n + j, i) = a(i, j);
    }
  return m;
}

}  // namespace certnorm
