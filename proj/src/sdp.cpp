#include "certnorm/sdp.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <cmath>
#include <limits>

#include "certnorm/spectral.hpp"

namespace certnorm::sdp {

namespace {

constexpr double kSchurRegularization = 1e-12;
constexpr double kStepFraction = 0.98;
constexpr double kDivergenceFactor = 1e12;

struct OrderedEntry {
  int a = 0;
  int b = 0;
  double v = 0.0;  // v * E_ab
};

// Sparse symmetric coefficients expanded to ordered (a, b) pairs; the
// expansion makes tr(A X B S^-1) a flat double sum.
std::vector<OrderedEntry> expand(const BlockCoeffs& coeffs) {
  std::vector<OrderedEntry> out;
  out.reserve(coeffs.size() * 2);
  for (const CoeffEntry& e : coeffs) {
    out.push_back({e.row, e.col, e.value});
    if (e.row != e.col) out.push_back({e.col, e.row, e.value});
  }
  return out;
}

double inner_block(const BlockCoeffs& coeffs, const DenseMatrix& x) {
  double s = 0.0;
  for (const CoeffEntry& e : coeffs) {
    s += e.row == e.col ? e.value * x(e.row, e.col) : 2.0 * e.value * x(e.row, e.col);
  }
  return s;
}

// tr(A M) for sparse symmetric A and a dense (possibly non-symmetric) M.
double trace_with(const std::vector<OrderedEntry>& entries, const DenseMatrix& m) {
  double s = 0.0;
  for (const OrderedEntry& e : entries) s += e.v * m(e.b, e.a);
  return s;
}

void accumulate(DenseMatrix& target, const BlockCoeffs& coeffs, double scale) {
  for (const CoeffEntry& e : coeffs) {
    target(e.row, e.col) += scale * e.value;
    if (e.row != e.col) target(e.col, e.row) += scale * e.value;
  }
}

// In-place lower Cholesky; returns false on a non-positive pivot.
bool cholesky(DenseMatrix& a) {
  const int n = a.rows();
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    a(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / ljj;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a(i, j) = 0.0;
  return true;
}

void chol_solve_vec(const DenseMatrix& l, std::vector<double>& x) {
  const int n = l.rows();
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l(i, k) * x[k];
    x[i] = s / l(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
    x[i] = s / l(i, i);
  }
}

// Solve a x = rhs through a shifted Cholesky factor. When the factor
// carries an escalated shift the solution is polished by refinement
// against the unshifted matrix; with the baseline 1e-12 shift the direct
// solve is already at rounding accuracy and refinement would only amplify
// noise along near-null directions.
void refined_solve(const DenseMatrix& a, const DenseMatrix& chol, std::vector<double>& x,
                   int passes) {
  const int n = a.rows();
  const std::vector<double> rhs = x;
  chol_solve_vec(chol, x);
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<double> r = rhs;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
      r[i] -= s;
    }
    chol_solve_vec(chol, r);
    for (int i = 0; i < n; ++i) x[i] += r[i];
  }
}

DenseMatrix chol_inverse(const DenseMatrix& l) {
  const int n = l.rows();
  DenseMatrix inv(n, n);
  std::vector<double> e(n);
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    chol_solve_vec(l, e);
    for (int i = 0; i < n; ++i) inv(i, j) = e[i];
  }
  // Symmetrize away round-off.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = v;
    }
  return inv;
}

DenseMatrix symmetrized(const DenseMatrix& t) {
  DenseMatrix s(t.rows(), t.cols());
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) s(i, j) = 0.5 * (t(i, j) + t(j, i));
  return s;
}

// Largest step alpha with P + alpha D psd, via eigenvalues of L^-1 D L^-T.
double step_to_boundary(const DenseMatrix& p, const DenseMatrix& d) {
  DenseMatrix l = p;
  if (!cholesky(l)) throw SolverError("step length: iterate lost positive definiteness");
  const int n = p.rows();
  // W = L^-1 D, then C = W L^-T computed as solving L Z = W^T, C = Z^T.
  DenseMatrix w = d;
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = w(i, col);
      for (int k = 0; k < i; ++k) s -= l(i, k) * w(k, col);
      w(i, col) = s / l(i, i);
    }
  }
  DenseMatrix wt = w.transpose();
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = wt(i, col);
      for (int k = 0; k < i; ++k) s -= l(i, k) * wt(k, col);
      wt(i, col) = s / l(i, i);
    }
  }
  DenseMatrix c = symmetrized(wt.transpose());
  EigenDecomposition ed = eigen_symmetric(c);
  const double lmin = ed.eigenvalues.back();
  if (lmin >= -1e-300) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

struct Workspace {
  int num_blocks = 0;
  int m = 0;
  int f = 0;
  std::vector<std::vector<std::vector<OrderedEntry>>> con;  // [i][block]
  std::vector<std::vector<OrderedEntry>> obj;               // [block]
  std::vector<DenseMatrix> c_dense;                         // internal-sense objective
  std::vector<double> c_free;                               // internal sense
  std::vector<double> rhs;
  DenseMatrix free_mat;  // m x f
  double data_scale = 1.0;
};

double max_abs_coeffs(const BlockCoeffs& coeffs) {
  double m = 0.0;
  for (const CoeffEntry& e : coeffs) m = std::max(m, std::fabs(e.value));
  return m;
}

Workspace build_workspace(const SdpProblem& p) {
  Workspace w;
  w.num_blocks = static_cast<int>(p.block_dims.size());
  w.m = static_cast<int>(p.constraints.size());
  w.f = p.num_free;
  const double sense = p.maximize ? -1.0 : 1.0;

  double coeff_max = 0.0;
  w.obj.resize(w.num_blocks);
  w.c_dense.reserve(w.num_blocks);
  for (int b = 0; b < w.num_blocks; ++b) {
    DenseMatrix cb(p.block_dims[b], p.block_dims[b]);
    if (b < static_cast<int>(p.objective_blocks.size())) {
      BlockCoeffs scaled = p.objective_blocks[b];
      for (CoeffEntry& e : scaled) e.value *= sense;
      w.obj[b] = expand(scaled);
      accumulate(cb, scaled, 1.0);
      coeff_max = std::max(coeff_max, max_abs_coeffs(p.objective_blocks[b]));
    }
    w.c_dense.push_back(std::move(cb));
  }
  w.c_free.assign(w.f, 0.0);
  for (int k = 0; k < w.f && k < static_cast<int>(p.objective_free.size()); ++k) {
    w.c_free[k] = sense * p.objective_free[k];
    coeff_max = std::max(coeff_max, std::fabs(p.objective_free[k]));
  }

  w.con.resize(w.m);
  w.rhs.resize(w.m);
  if (w.f > 0) w.free_mat = DenseMatrix(std::max(w.m, 1), w.f);
  for (int i = 0; i < w.m; ++i) {
    const Constraint& c = p.constraints[i];
    w.con[i].resize(w.num_blocks);
    for (int b = 0; b < w.num_blocks && b < static_cast<int>(c.blocks.size()); ++b) {
      w.con[i][b] = expand(c.blocks[b]);
      coeff_max = std::max(coeff_max, max_abs_coeffs(c.blocks[b]));
    }
    for (int k = 0; k < w.f && k < static_cast<int>(c.free_coeffs.size()); ++k) {
      w.free_mat(i, k) = c.free_coeffs[k];
      coeff_max = std::max(coeff_max, std::fabs(c.free_coeffs[k]));
    }
    w.rhs[i] = c.rhs;
    coeff_max = std::max(coeff_max, std::fabs(c.rhs));
  }
  w.data_scale = coeff_max;
  return w;
}

}  // namespace

void SdpProblem::validate() const {
  if (block_dims.empty()) throw std::invalid_argument("SdpProblem: no blocks");
  for (int d : block_dims) {
    if (d <= 0) throw std::invalid_argument("SdpProblem: block dimension must be positive");
  }
  if (num_free < 0) throw std::invalid_argument("SdpProblem: negative free scalar count");
  auto check_coeffs = [&](const std::vector<BlockCoeffs>& blocks, const char* what) {
    if (static_cast<int>(blocks.size()) > static_cast<int>(block_dims.size())) {
      throw std::invalid_argument(std::string("SdpProblem: too many blocks in ") + what);
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (const CoeffEntry& e : blocks[b]) {
        if (e.row < 0 || e.col < e.row || e.col >= block_dims[b]) {
          throw std::invalid_argument(std::string("SdpProblem: entry out of range in ") + what);
        }
        if (!std::isfinite(e.value)) {
          throw std::invalid_argument(std::string("SdpProblem: non-finite value in ") + what);
        }
      }
    }
  };
  check_coeffs(objective_blocks, "objective");
  for (const Constraint& c : constraints) {
    check_coeffs(c.blocks, "constraint");
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("SdpProblem: non-finite rhs");
    for (double v : c.free_coeffs) {
      if (!std::isfinite(v)) throw std::invalid_argument("SdpProblem: non-finite free coefficient");
    }
  }
}

SdpProblem SdpProblem::make(std::vector<int> dims, int num_free, bool maximize) {
  SdpProblem p;
  p.block_dims = std::move(dims);
  p.num_free = num_free;
  p.maximize = maximize;
  p.objective_blocks.resize(p.block_dims.size());
  p.objective_free.assign(num_free, 0.0);
  return p;
}

Constraint& SdpProblem::add_constraint(double rhs) {
  Constraint c;
  c.blocks.resize(block_dims.size());
  c.free_coeffs.assign(num_free, 0.0);
  c.rhs = rhs;
  constraints.push_back(std::move(c));
  return constraints.back();
}

void SdpProblem::set_objective_entry(int block, int row, int col, double value) {
  if (row > col) std::swap(row, col);
  objective_blocks[block].push_back({row, col, value});
}

void SdpProblem::set_objective_free(int index, double value) { objective_free[index] = value; }

void add_entry(Constraint& c, int block, int row, int col, double value) {
  if (row > col) std::swap(row, col);
  c.blocks[block].push_back({row, col, value});
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::InfeasibleDetected: return "infeasible-detected";
    case SolveStatus::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

double coeff_inner(const std::vector<BlockCoeffs>& coeffs, const std::vector<DenseMatrix>& blocks) {
  double s = 0.0;
  for (std::size_t b = 0; b < coeffs.size() && b < blocks.size(); ++b) {
    s += inner_block(coeffs[b], blocks[b]);
  }
  return s;
}

std::vector<DenseMatrix> dual_slack(const SdpProblem& p, const std::vector<double>& y) {
  // Minimize: S = C - A*(y).  Maximize: S = A*(y) - C.
  const double sense = p.maximize ? -1.0 : 1.0;
  std::vector<DenseMatrix> s;
  s.reserve(p.block_dims.size());
  for (std::size_t b = 0; b < p.block_dims.size(); ++b) {
    DenseMatrix sb(p.block_dims[b], p.block_dims[b]);
    if (b < p.objective_blocks.size()) accumulate(sb, p.objective_blocks[b], sense);
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      if (b < p.constraints[i].blocks.size()) {
        accumulate(sb, p.constraints[i].blocks[b], -sense * y[i]);
      }
    }
    s.push_back(std::move(sb));
  }
  return s;
}

SdpSolution solve(const SdpProblem& problem, const SolveOptions& options) {
  problem.validate();
  const double tol = std::max(options.tol, kTolSdpFloor);
  Workspace w = build_workspace(problem);
  const int nb = w.num_blocks;
  const int m = w.m;
  const int f = w.f;
  if (m == 0 && f > 0) {
    throw std::invalid_argument("solve: free scalars require at least one constraint");
  }

  double nu = 0.0;
  for (int b = 0; b < nb; ++b) nu += problem.block_dims[b];

  const double tau = 1.0 + w.data_scale;
  std::vector<DenseMatrix> x_blocks, s_blocks;
  for (int b = 0; b < nb; ++b) {
    x_blocks.push_back(DenseMatrix::identity(problem.block_dims[b]).scaled(tau));
    s_blocks.push_back(DenseMatrix::identity(problem.block_dims[b]).scaled(tau));
  }
  std::vector<double> u(f, 0.0);
  std::vector<double> y(m, 0.0);

  double b_scale = 0.0;
  for (double v : w.rhs) b_scale = std::max(b_scale, std::fabs(v));
  double c_scale = 0.0;
  for (int b = 0; b < nb; ++b) c_scale = std::max(c_scale, w.c_dense[b].max_abs());
  for (double v : w.c_free) c_scale = std::max(c_scale, std::fabs(v));

  const double sense = problem.maximize ? -1.0 : 1.0;
  auto finish = [&](SolveStatus status, int iterations, double pint, double dint,
                    double gap) {
    SdpSolution sol;
    sol.status = status;
    sol.primal_blocks = x_blocks;
    sol.free_values = u;
    sol.dual_multipliers.resize(m);
    for (int i = 0; i < m; ++i) sol.dual_multipliers[i] = sense * y[i];
    sol.primal_value = sense * pint;
    sol.dual_value = sense * dint;
    sol.gap = gap;
    sol.iterations = iterations;
    return sol;
  };

  std::vector<double> rp(m, 0.0), rf(f, 0.0);
  std::vector<DenseMatrix> rd(nb, DenseMatrix(1, 1));
  int iter = 0;
  double pint = 0.0, dint = 0.0, gap = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  int stalled = 0;

  for (iter = 0; iter <= options.max_iterations; ++iter) {
    // Residuals and objective values at the current iterate.
    pint = 0.0;
    for (int b = 0; b < nb; ++b) pint += trace_with(w.obj[b], x_blocks[b]);
    for (int k = 0; k < f; ++k) pint += w.c_free[k] * u[k];
    dint = 0.0;
    for (int i = 0; i < m; ++i) dint += w.rhs[i] * y[i];

    double rp_max = 0.0;
    for (int i = 0; i < m; ++i) {
      double ax = 0.0;
      for (int b = 0; b < nb; ++b) ax += trace_with(w.con[i][b], x_blocks[b]);
      for (int k = 0; k < f; ++k) ax += w.free_mat(i, k) * u[k];
      rp[i] = w.rhs[i] - ax;
      rp_max = std::max(rp_max, std::fabs(rp[i]));
    }
    double rd_max = 0.0;
    for (int b = 0; b < nb; ++b) {
      DenseMatrix r = w.c_dense[b];
      for (int i = 0; i < m; ++i) {
        if (y[i] != 0.0) {
          for (const OrderedEntry& e : w.con[i][b]) r(e.a, e.b) -= y[i] * e.v;
        }
      }
      r = r - s_blocks[b];
      rd[b] = symmetrized(r);
      rd_max = std::max(rd_max, rd[b].max_abs());
    }
    double rf_max = 0.0;
    for (int k = 0; k < f; ++k) {
      double s = w.c_free[k];
      for (int i = 0; i < m; ++i) s -= w.free_mat(i, k) * y[i];
      rf[k] = s;
      rf_max = std::max(rf_max, std::fabs(s));
    }

    const double user_p = sense * pint;
    const double user_d = sense * dint;
    gap = std::fabs(user_p - user_d) / (1.0 + std::fabs(user_p));
    const double rel_p = rp_max / (1.0 + b_scale);
    const double rel_d = rd_max / (1.0 + c_scale);
    const double rel_f = rf_max / (1.0 + c_scale);

    if (std::getenv("CERTNORM_SDP_TRACE")) {
      std::fprintf(stderr, "it=%3d gap=%.3e rp=%.2e rd=%.2e rf=%.2e p=%.10f d=%.10f\n", iter,
                   gap, rel_p, rel_d, rel_f, sense * pint, sense * dint);
    }
    if (gap <= tol && rel_p <= tol && rel_d <= tol && rel_f <= tol) {
      return finish(SolveStatus::Optimal, iter, pint, dint, gap);
    }
    if (std::fabs(dint) > kDivergenceFactor * (1.0 + b_scale + c_scale)) {
      return finish(SolveStatus::InfeasibleDetected, iter, pint, dint, gap);
    }
    if (iter == options.max_iterations) break;
    // Step lengths collapse once an iterate pins a degenerate boundary;
    // stop rather than burn the remaining iterations in place.
    const double err = std::max(std::max(gap, rel_p), std::max(rel_d, rel_f));
    if (err < best_err * (1.0 - 1e-3)) {
      best_err = err;
      stalled = 0;
    } else if (++stalled >= 20) {
      break;
    }

    // Factorizations of the current iterate.
    std::vector<DenseMatrix> s_inv(nb, DenseMatrix(1, 1));
    for (int b = 0; b < nb; ++b) {
      DenseMatrix l = s_blocks[b];
      if (!cholesky(l)) throw SolverError("Newton system: dual iterate not positive definite");
      s_inv[b] = chol_inverse(l);
    }
    double mu = 0.0;
    for (int b = 0; b < nb; ++b) {
      for (int i = 0; i < x_blocks[b].rows(); ++i)
        for (int j = 0; j < x_blocks[b].cols(); ++j) mu += x_blocks[b](i, j) * s_blocks[b](i, j);
    }
    mu /= nu;

    // Schur complement M_ij = sum_b tr(A_i X A_j S^-1).
    DenseMatrix schur(std::max(m, 1), std::max(m, 1));
    for (int b = 0; b < nb; ++b) {
      const DenseMatrix& xb = x_blocks[b];
      const DenseMatrix& si = s_inv[b];
      for (int i = 0; i < m; ++i) {
        const auto& pi = w.con[i][b];
        if (pi.empty()) continue;
        for (int j = i; j < m; ++j) {
          const auto& pj = w.con[j][b];
          if (pj.empty()) continue;
          double acc = 0.0;
          for (const OrderedEntry& ei : pi) {
            for (const OrderedEntry& ej : pj) {
              acc += ei.v * ej.v * xb(ei.b, ej.a) * si(ej.b, ei.a);
            }
          }
          schur(i, j) += acc;
        }
      }
    }
    double schur_diag_max = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) schur(j, i) = schur(i, j);
      schur_diag_max = std::max(schur_diag_max, schur(i, i));
    }
    // Base regularization is a fixed 1e-12 shift; degenerate optimal faces
    // can still lose rank near convergence, in which case the shift is
    // escalated relative to the diagonal scale until Cholesky succeeds.
    DenseMatrix schur_chol(std::max(m, 1), std::max(m, 1));
    int schur_refine = 0;
    if (m > 0) {
      bool factored = false;
      double shift = kSchurRegularization;
      for (int attempt = 0; attempt < 4; ++attempt) {
        schur_chol = schur;
        for (int i = 0; i < m; ++i) schur_chol(i, i) += shift;
        if (cholesky(schur_chol)) {
          factored = true;
          break;
        }
        shift = (attempt == 0 ? 1e-12 : shift * 1e3) * (1.0 + schur_diag_max);
        schur_refine = 2;
      }
      if (!factored) {
        throw SolverError("Newton system: Schur complement Cholesky failed");
      }
    }

    // Free-variable coupling: (F^T M^-1 F) du = F^T M^-1 h - rf.
    DenseMatrix minv_f(std::max(m, 1), std::max(f, 1));
    DenseMatrix ftmf(std::max(f, 1), std::max(f, 1));
    DenseMatrix ftmf_factor(std::max(f, 1), std::max(f, 1));
    int ftmf_refine = 0;
    if (f > 0) {
      std::vector<double> colbuf(m);
      for (int k = 0; k < f; ++k) {
        for (int i = 0; i < m; ++i) colbuf[i] = w.free_mat(i, k);
        refined_solve(schur, schur_chol, colbuf, schur_refine);
        for (int i = 0; i < m; ++i) minv_f(i, k) = colbuf[i];
      }
      double ftmf_diag_max = 0.0;
      for (int k = 0; k < f; ++k) {
        for (int l = 0; l < f; ++l) {
          double s = 0.0;
          for (int i = 0; i < m; ++i) s += w.free_mat(i, k) * minv_f(i, l);
          ftmf(k, l) = s;
        }
        ftmf_diag_max = std::max(ftmf_diag_max, ftmf(k, k));
      }
      bool factored = false;
      DenseMatrix ftmf_chol = ftmf;
      double shift = kSchurRegularization;
      for (int attempt = 0; attempt < 4; ++attempt) {
        ftmf_chol = ftmf;
        for (int k = 0; k < f; ++k) ftmf_chol(k, k) += shift;
        if (cholesky(ftmf_chol)) {
          factored = true;
          break;
        }
        shift = (attempt == 0 ? 1e-12 : shift * 1e3) * (1.0 + ftmf_diag_max);
        ftmf_refine = 2;
      }
      if (!factored) {
        throw SolverError("Newton system: free-variable block is singular");
      }
      ftmf_factor = ftmf_chol;
    }

    auto solve_direction = [&](double sigma_mu, const std::vector<DenseMatrix>* corrector,
                               std::vector<double>& dy, std::vector<double>& du,
                               std::vector<DenseMatrix>& dxb, std::vector<DenseMatrix>& dsb) {
      std::vector<double> h(m, 0.0);
      std::vector<DenseMatrix> gs(nb, DenseMatrix(1, 1));
      for (int b = 0; b < nb; ++b) {
        // G = (K + X Rd) S^-1 with K the corrector cross term.
        DenseMatrix g = x_blocks[b] * rd[b];
        if (corrector) g = g + (*corrector)[b];
        gs[b] = g * s_inv[b];
      }
      for (int i = 0; i < m; ++i) {
        double v = rp[i];
        for (int b = 0; b < nb; ++b) {
          if (w.con[i][b].empty()) continue;
          v += trace_with(w.con[i][b], x_blocks[b]);
          v += trace_with(w.con[i][b], gs[b]);
          if (sigma_mu != 0.0) v -= sigma_mu * trace_with(w.con[i][b], s_inv[b]);
        }
        h[i] = v;
      }
      dy.assign(m, 0.0);
      du.assign(f, 0.0);
      if (m > 0) {
        std::vector<double> minv_h = h;
        refined_solve(schur, schur_chol, minv_h, schur_refine);
        if (f > 0) {
          std::vector<double> rhs_u(f, 0.0);
          for (int k = 0; k < f; ++k) {
            double s = -rf[k];
            for (int i = 0; i < m; ++i) s += w.free_mat(i, k) * minv_h[i];
            rhs_u[k] = s;
          }
          refined_solve(ftmf, ftmf_factor, rhs_u, ftmf_refine);
          du = rhs_u;
          std::vector<double> h2 = h;
          for (int i = 0; i < m; ++i) {
            double s = h2[i];
            for (int k = 0; k < f; ++k) s -= w.free_mat(i, k) * du[k];
            h2[i] = s;
          }
          refined_solve(schur, schur_chol, h2, schur_refine);
          dy = h2;
        } else {
          dy = minv_h;
        }
      }
      dsb.clear();
      dxb.clear();
      for (int b = 0; b < nb; ++b) {
        DenseMatrix ds = rd[b];
        for (int i = 0; i < m; ++i) {
          if (dy[i] != 0.0) {
            for (const OrderedEntry& e : w.con[i][b]) ds(e.a, e.b) -= dy[i] * e.v;
          }
        }
        ds = symmetrized(ds);
        DenseMatrix g = x_blocks[b] * ds;
        if (corrector) g = g + (*corrector)[b];
        DenseMatrix t = g * s_inv[b];
        const int n = t.rows();
        DenseMatrix dx(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dx(i, j) = -t(i, j);
        if (sigma_mu != 0.0) {
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dx(i, j) += sigma_mu * s_inv[b](i, j);
        }
        dx = dx - x_blocks[b];
        dsb.push_back(std::move(ds));
        dxb.push_back(symmetrized(dx));
      }
    };

    auto max_step = [&](const std::vector<DenseMatrix>& base,
                        const std::vector<DenseMatrix>& dir) {
      double a = std::numeric_limits<double>::infinity();
      for (int b = 0; b < nb; ++b) a = std::min(a, step_to_boundary(base[b], dir[b]));
      return a;
    };

    // Predictor (affine scaling) direction.
    std::vector<double> dy_aff, du_aff;
    std::vector<DenseMatrix> dx_aff, ds_aff;
    solve_direction(0.0, nullptr, dy_aff, du_aff, dx_aff, ds_aff);
    const double ap_aff = std::min(1.0, max_step(x_blocks, dx_aff));
    const double ad_aff = std::min(1.0, max_step(s_blocks, ds_aff));
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b) {
      const int n = x_blocks[b].rows();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          mu_aff += (x_blocks[b](i, j) + ap_aff * dx_aff[b](i, j)) *
                    (s_blocks[b](i, j) + ad_aff * ds_aff[b](i, j));
        }
    }
    mu_aff = std::max(mu_aff / nu, 0.0);
    double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3.0) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector with the Mehrotra cross term K = dX_aff dS_aff.
    std::vector<DenseMatrix> cross;
    cross.reserve(nb);
    for (int b = 0; b < nb; ++b) cross.push_back(dx_aff[b] * ds_aff[b]);
    std::vector<double> dy, du;
    std::vector<DenseMatrix> dx, ds;
    solve_direction(sigma * mu, &cross, dy, du, dx, ds);

    double alpha_p = std::min(1.0, kStepFraction * max_step(x_blocks, dx));
    double alpha_d = std::min(1.0, kStepFraction * max_step(s_blocks, ds));

    // Guard against round-off pushing an iterate out of the cone.
    auto stepped_ok = [&](const std::vector<DenseMatrix>& base,
                          const std::vector<DenseMatrix>& dir, double alpha) {
      for (int b = 0; b < nb; ++b) {
        DenseMatrix t = base[b] + dir[b].scaled(alpha);
        if (!cholesky(t)) return false;
      }
      return true;
    };
    int guard = 0;
    while (alpha_p > 0.0 && !stepped_ok(x_blocks, dx, alpha_p) && guard++ < 40) alpha_p *= 0.9;
    guard = 0;
    while (alpha_d > 0.0 && !stepped_ok(s_blocks, ds, alpha_d) && guard++ < 40) alpha_d *= 0.9;

    for (int b = 0; b < nb; ++b) {
      x_blocks[b] = symmetrized(x_blocks[b] + dx[b].scaled(alpha_p));
      s_blocks[b] = symmetrized(s_blocks[b] + ds[b].scaled(alpha_d));
    }
    for (int k = 0; k < f; ++k) u[k] += alpha_p * du[k];
    for (int i = 0; i < m; ++i) y[i] += alpha_d * dy[i];
  }

  return finish(SolveStatus::MaxIterations, iter, pint, dint, gap);
}

const CheckItem* CertificateCheck::find(const std::string& name) const {
  for (const CheckItem& it : items) {
    if (it.name == name) return &it;
  }
  return nullptr;
}

CertificateCheck check_certificate(const SdpProblem& problem, const SdpSolution& solution,
                                   double tol) {
  CertificateCheck out;
  const int m = static_cast<int>(problem.constraints.size());
  const double sense = problem.maximize ? -1.0 : 1.0;

  double b_scale = 0.0;
  for (const Constraint& c : problem.constraints) b_scale = std::max(b_scale, std::fabs(c.rhs));

  // Primal feasibility.
  double res_max = 0.0;
  for (int i = 0; i < m; ++i) {
    const Constraint& c = problem.constraints[i];
    double ax = coeff_inner(c.blocks, solution.primal_blocks);
    for (std::size_t k = 0; k < c.free_coeffs.size() && k < solution.free_values.size(); ++k) {
      ax += c.free_coeffs[k] * solution.free_values[k];
    }
    res_max = std::max(res_max, std::fabs(ax - c.rhs));
  }
  const double res_bound = tol * (1.0 + b_scale);
  out.primal_feasible = res_max <= res_bound;
  out.items.push_back({"constraint_residual", res_max, res_bound, out.primal_feasible});

  // Primal psd margins.
  out.primal_psd = true;
  for (std::size_t b = 0; b < solution.primal_blocks.size(); ++b) {
    const DenseMatrix& xb = solution.primal_blocks[b];
    EigenDecomposition ed = eigen_symmetric(symmetrized(xb));
    const double lmin = ed.eigenvalues.back();
    const double top = std::max(std::fabs(ed.eigenvalues.front()), std::fabs(lmin));
    const double bound = -kTolPsd * std::max(1.0, top);
    const bool ok = lmin >= bound;
    out.primal_psd = out.primal_psd && ok;
    out.items.push_back({"primal_psd_block_" + std::to_string(b), lmin, bound, ok});
  }

  // Recomputed primal value.
  double pval = coeff_inner(problem.objective_blocks, solution.primal_blocks);
  for (std::size_t k = 0; k < solution.free_values.size() &&
                          k < problem.objective_free.size();
       ++k) {
    pval += problem.objective_free[k] * solution.free_values[k];
  }
  const double value_err = std::fabs(pval - solution.primal_value);
  const double value_bound = tol * (1.0 + std::fabs(solution.primal_value));
  const bool value_ok = value_err <= value_bound;
  out.items.push_back({"primal_value_match", value_err, value_bound, value_ok});

  // Dual feasibility from the multipliers alone.
  double c_scale = 0.0;
  for (const BlockCoeffs& bc : problem.objective_blocks) {
    for (const CoeffEntry& e : bc) c_scale = std::max(c_scale, std::fabs(e.value));
  }
  std::vector<DenseMatrix> slack = dual_slack(problem, solution.dual_multipliers);
  out.dual_feasible = true;
  for (std::size_t b = 0; b < slack.size(); ++b) {
    EigenDecomposition ed = eigen_symmetric(symmetrized(slack[b]));
    const double lmin = ed.eigenvalues.back();
    const double bound = -10.0 * tol * (1.0 + c_scale);
    const bool ok = lmin >= bound;
    out.dual_feasible = out.dual_feasible && ok;
    out.items.push_back({"dual_slack_psd_block_" + std::to_string(b), lmin, bound, ok});
  }
  if (problem.num_free > 0) {
    double stat_max = 0.0;
    for (int k = 0; k < problem.num_free; ++k) {
      double s = k < static_cast<int>(problem.objective_free.size()) ? problem.objective_free[k]
                                                                     : 0.0;
      for (int i = 0; i < m; ++i) {
        const auto& fc = problem.constraints[i].free_coeffs;
        if (k < static_cast<int>(fc.size())) s -= fc[k] * solution.dual_multipliers[i];
      }
      stat_max = std::max(stat_max, std::fabs(s));
    }
    const double stat_bound = 10.0 * tol * (1.0 + c_scale);
    const bool ok = stat_max <= stat_bound;
    out.dual_feasible = out.dual_feasible && ok;
    out.items.push_back({"free_stationarity", stat_max, stat_bound, ok});
  }

  // Duality gap recomputed from the multipliers.
  double dval = 0.0;
  for (int i = 0; i < m; ++i) dval += problem.constraints[i].rhs * solution.dual_multipliers[i];
  (void)sense;
  const double gap = std::fabs(pval - dval) / (1.0 + std::fabs(pval));
  out.gap_ok = gap <= tol;
  out.items.push_back({"duality_gap", gap, tol, out.gap_ok});

  out.pass = out.primal_feasible && out.primal_psd && value_ok;
  if (solution.status == SolveStatus::Optimal) {
    out.pass = out.pass && out.dual_feasible && out.gap_ok;
  }
  return out;
}

Json problem_to_json(const SdpProblem& p) {
  Json root = Json::object();
  Json dims = Json::array();
  for (int d : p.block_dims) dims.push(Json::integer(d));
  root.set("block_dims", std::move(dims));
  root.set("num_free_scalars", p.num_free);
  root.set("sense", p.maximize ? "maximize" : "minimize");
  auto coords = [](const std::vector<BlockCoeffs>& blocks) {
    Json arr = Json::array();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (const CoeffEntry& e : blocks[b]) {
        Json t = Json::array();
        t.push(Json::integer(static_cast<int>(b)));
        t.push(Json::integer(e.row));
        t.push(Json::integer(e.col));
        t.push(Json::number(e.value));
        arr.push(std::move(t));
      }
    }
    return arr;
  };
  root.set("objective", coords(p.objective_blocks));
  root.set("objective_free", Json::from_vector(p.objective_free));
  Json cons = Json::array();
  for (const Constraint& c : p.constraints) {
    Json jc = Json::object();
    jc.set("entries", coords(c.blocks));
    jc.set("free_coeffs", Json::from_vector(c.free_coeffs));
    jc.set("rhs", c.rhs);
    cons.push(std::move(jc));
  }
  root.set("constraints", std::move(cons));
  return root;
}

Json solution_to_json(const SdpSolution& s) {
  Json root = Json::object();
  root.set("status", to_string(s.status));
  Json blocks = Json::array();
  for (const DenseMatrix& b : s.primal_blocks) {
    Json rows = Json::array();
    for (int i = 0; i < b.rows(); ++i) rows.push(Json::from_vector(b.row(i)));
    blocks.push(std::move(rows));
  }
  root.set("primal_blocks", std::move(blocks));
  root.set("free_scalar_values", Json::from_vector(s.free_values));
  root.set("dual_multipliers", Json::from_vector(s.dual_multipliers));
  root.set("primal_value", s.primal_value);
  root.set("dual_value", s.dual_value);
  root.set("gap", s.gap);
  root.set("iterations", s.iterations);
  return root;
}

}  // namespace certnorm::sdp
