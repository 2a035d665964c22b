#pragma once

#include "certnorm/certificate.hpp"
#include "certnorm/matrix.hpp"
#include "certnorm/sdp.hpp"

// The commutative norm calculus: the factorization norm gamma2, its dual
// gamma2*, the correlation norms ||.||_C and ||.||_C', the correlation
// problem, and the witness constructions relating them.

namespace certnorm {

// min t s.t. [[X, A], [A^T, Y]] psd, X_ii = Y_jj = t.
NormCertificate gamma2(const DenseMatrix& a, const sdp::SolveOptions& opts = {});

// Non-orthogonal families with <x_i, y_j> = A_ij and
// max|x_i| max|y_j| <= value, from a psd factorization of the block witness.
VectorFamilies gamma2_vector_witness(const NormCertificate& cert, const DenseMatrix& a);

// min tr(X + Y)/2 s.t. [[X, A], [A^T, Y]] psd, X and Y diagonal.
NormCertificate gamma2_star(const DenseMatrix& a, const sdp::SolveOptions& opts = {});

// Orthogonal families with <x_i, y_j> = A_ij and equal energies
// sum |x_i|^2 = sum |y_j|^2 = gamma2*(A); energies are rebalanced when the
// two traces differ within solver noise (scale recorded in the meta).
VectorFamilies orthogonal_witness(const DenseMatrix& a, NormCertificate& cert);

// alpha_i = |x_i|, beta_j = |y_j|, X_ij = <x_i/alpha_i, y_j/beta_j>, with
// rows/columns zeroed where a weight vanishes. Square orthogonal input.
ContractionDecomposition contraction_decomp(const VectorFamilies& families);

// B = alpha beta^T (rank one) and C = X, so A = B o C with
// ||B||_{S,1} ||C||_{S,inf} equal to the certified value.
SchurDecomposition schur_decomp(const ContractionDecomposition& decomp);

// min tr(D) s.t. D + A psd, D diagonal; A must be symmetric and hollow.
NormCertificate corr_problem(const DenseMatrix& a, const sdp::SolveOptions& opts = {});

// min tr(D) s.t. D - A psd and D + A psd, D diagonal; A symmetric.
NormCertificate corr_norm_C(const DenseMatrix& a, const sdp::SolveOptions& opts = {});

// min tr(D1 + D2)/2 s.t. D1 - A psd and D2 + A psd, both diagonal.
NormCertificate corr_norm_Cprime(const DenseMatrix& a, const sdp::SolveOptions& opts = {});

// Orthogonal families {z_i}, {w_i} with <z_i, w_j> = A_ij off-diagonal and
// sum |z_i|^2 = sum |w_i|^2 = tr(D1 + D2)/2, built from a feasible pair
// with D1 + A psd and D2 - A psd (note the order swap relative to
// corr_norm_Cprime's witness).
VectorFamilies cprime_orthogonal_witness(const DenseMatrix& a, const std::vector<double>& d1,
                                         const std::vector<double>& d2);

// From unit families x_i, y_i, builds paired families (z_i, w_i) with
// |z_i|^2 + |w_i|^2 = 1 and
// (<x_i,y_j> + <x_j,y_i>)/2 = <z_i,z_j> - <w_i,w_j>.
VectorFamilies symmetrize_witness(const DenseMatrix& xs, const DenseMatrix& ys);

// max tr(diag(A, -A) X) over X psd with X_ii + X_{i+n,i+n} = 1.
NormCertificate gamma2_star_symmetric_primal(const DenseMatrix& a,
                                             const sdp::SolveOptions& opts = {});

// The hollow symmetric embedding [[0, A], [A^T, 0]]; accepts rectangular
// input and bridges it to the correlation norms (at twice the dual-norm
// value, since the correlation objective carries the full trace).
DenseMatrix tilde_embed(const DenseMatrix& a);

// Shared SDP builders (exposed for direct solver-level tests).
sdp::SdpProblem build_gamma2_program(const DenseMatrix& a);
sdp::SdpProblem build_gamma2_star_program(const DenseMatrix& a);
sdp::SdpProblem build_trace_norm_program(const DenseMatrix& a);
sdp::SdpProblem build_corr_problem_program(const DenseMatrix& a);
sdp::SdpProblem build_corr_C_program(const DenseMatrix& a);
sdp::SdpProblem build_corr_Cprime_program(const DenseMatrix& a);
sdp::SdpProblem build_symmetric_primal_program(const DenseMatrix& a);

}  // namespace certnorm
