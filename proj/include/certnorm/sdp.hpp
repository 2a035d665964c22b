#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "certnorm/matrix.hpp"
#include "certnorm/report.hpp"
#include "certnorm/tolerances.hpp"

// Block-structured semidefinite programming with linear equality
// constraints and free scalar variables:
//
//   optimize   sum_b <C_b, X_b> + c^T u
//   subject to sum_b <A_{i,b}, X_b> + f_i^T u = rhs_i,   X_b psd.
//
// Coefficient matrices are symmetric and stored as sparse upper-triangle
// entries; an entry (r, c, v) with r < c stands for v at (r, c) and (c, r),
// so it contributes 2 v X_rc to the inner product.

namespace certnorm::sdp {

struct CoeffEntry {
  int row = 0;
  int col = 0;  // row <= col
  double value = 0.0;
};

using BlockCoeffs = std::vector<CoeffEntry>;  // one sparse symmetric matrix

struct Constraint {
  std::vector<BlockCoeffs> blocks;  // one per block, may be empty
  std::vector<double> free_coeffs;  // one per free scalar
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<int> block_dims;
  int num_free = 0;
  bool maximize = false;
  std::vector<BlockCoeffs> objective_blocks;
  std::vector<double> objective_free;
  std::vector<Constraint> constraints;

  void validate() const;  // throws std::invalid_argument on malformed data

  // Builder conveniences.
  static SdpProblem make(std::vector<int> dims, int num_free, bool maximize);
  Constraint& add_constraint(double rhs);
  void set_objective_entry(int block, int row, int col, double value);
  void set_objective_free(int index, double value);
};

// Adds an upper-triangle coefficient to a constraint.
void add_entry(Constraint& c, int block, int row, int col, double value);

enum class SolveStatus { Optimal, InfeasibleDetected, MaxIterations };

std::string to_string(SolveStatus s);

struct SdpSolution {
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<DenseMatrix> primal_blocks;
  std::vector<double> free_values;
  std::vector<double> dual_multipliers;
  double primal_value = 0.0;  // in the user's sense
  double dual_value = 0.0;
  double gap = 0.0;  // |primal - dual| / (1 + |primal|)
  int iterations = 0;
};

struct SolveOptions {
  double tol = kTolSdp;
  int max_iterations = kSdpMaxIterations;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Primal-dual path-following interior-point method (predictor-corrector,
// dense Schur complement solved by Cholesky with 1e-12 diagonal
// regularization). Deterministic for fixed input. Throws SolverError on a
// numerical breakdown of the Newton system.
SdpSolution solve(const SdpProblem& problem, const SolveOptions& options = {});

// Evaluates sum_b <A_b, X_b> for the sparse coefficients of a constraint
// or objective.
double coeff_inner(const std::vector<BlockCoeffs>& coeffs,
                   const std::vector<DenseMatrix>& blocks);

// Dual slack S_b = C_b - sum_i y_i A_{i,b} (sign-adjusted for maximize
// problems so that S is psd at optimality).
std::vector<DenseMatrix> dual_slack(const SdpProblem& problem,
                                    const std::vector<double>& dual_multipliers);

struct CheckItem {
  std::string name;
  double value = 0.0;   // measured quantity (residual, margin, ...)
  double bound = 0.0;   // allowed bound
  bool pass = false;
};

struct CertificateCheck {
  std::vector<CheckItem> items;
  bool primal_feasible = false;
  bool primal_psd = false;
  bool dual_feasible = false;
  bool gap_ok = false;
  bool pass = false;  // everything applicable to the claimed status

  const CheckItem* find(const std::string& name) const;
};

// Re-derives feasibility residuals, psd margins and the duality gap from
// scratch using only dense linear algebra. Pure report; never throws on a
// bad certificate.
CertificateCheck check_certificate(const SdpProblem& problem, const SdpSolution& solution,
                                   double tol = kTolSdp);

// Debug serialization (coordinate form); not a stability-guaranteed format.
Json problem_to_json(const SdpProblem& problem);
Json solution_to_json(const SdpSolution& solution);

}  // namespace certnorm::sdp
