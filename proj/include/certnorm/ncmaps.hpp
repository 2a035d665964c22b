#pragma once

#include <cstdint>
#include <vector>

#include "certnorm/certificate.hpp"
#include "certnorm/matrix.hpp"
#include "certnorm/sdp.hpp"

// Linear maps on n x n matrix space stored by their Choi matrix, the
// complete Schatten-1 norm, the conditional expectation back to matrices,
// operator-to-trace norm estimation, and the Clifford-system witnesses
// that certify the stabilized norm of diagonal channels.

namespace certnorm::nc {

// Choi-matrix carrier: block (i, j) of size n x n is the image of E_ij.
class MatrixMap {
 public:
  MatrixMap() = default;
  MatrixMap(int n, DenseMatrix choi);

  static MatrixMap identity(int n);

  int dim() const { return n_; }
  const DenseMatrix& choi() const { return choi_; }

  // Image of E_ij (one Choi block).
  DenseMatrix block(int i, int j) const;

  DenseMatrix apply(const DenseMatrix& x) const;

 private:
  int n_ = 0;
  DenseMatrix choi_;
};

// The entrywise multiplier X -> A o X; Choi is sum A_ij E_ij (x) E_ij.
MatrixMap schur_map(const DenseMatrix& a);

// The diagonal channel of A: X -> diag(A^T diag(X)); kills off-diagonal
// input blocks entirely.
MatrixMap diag_channel(const DenseMatrix& a);

// Conjugation X -> G X G^T.
MatrixMap conjugation_map(const DenseMatrix& g);

// Builds a map from its action on the matrix units.
template <typename Fn>
MatrixMap map_from_action(int n, Fn&& action) {
  DenseMatrix choi(n * n, n * n);
  DenseMatrix unit(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      unit(i, j) = 1.0;
      DenseMatrix img = action(unit);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) choi(i * n + r, j * n + c) = img(r, c);
      unit(i, j) = 0.0;
    }
  }
  return MatrixMap(n, std::move(choi));
}

// Conjugate map: Choi transposes (real scalars).
MatrixMap conjugate(const MatrixMap& map);

// Trace adjoint: Choi under the tensor flip (i,r),(j,c) -> (r,i),(c,j).
MatrixMap adjoint(const MatrixMap& map);

// Complete positivity via the psd test on the Choi matrix.
bool is_cp(const MatrixMap& map, double tol = kTolPsd);

// The n x n matrix with entries map(E_ij)_ij; left inverse of the Schur
// embedding and monotone for the cp order.
DenseMatrix conditional_expectation(const MatrixMap& map);

inline constexpr int kCs1DirectCap = 16;
inline constexpr int kCs1SdpCap = 8;
inline constexpr int kGapDemoCap = 12;
inline constexpr int kCliffordCap = 8;

// Trace norm of the Choi matrix with an (X, Y) witness from its SVD; when
// n <= 4 the value is cross-checked against the SDP path automatically
// (cross value recorded in the meta).
NormCertificate cs1_norm(const MatrixMap& map);

// The SDP route alone (trace-norm program on the Choi matrix); n <= 8.
NormCertificate cs1_norm_sdp(const MatrixMap& map, const sdp::SolveOptions& opts = {});

// ||conditional_expectation(map)||_{S,1}; never exceeds cs1_norm.
double lower_bound_cs1(const MatrixMap& map);

struct OpToTraceResult {
  double lower_bound = 0.0;
  DenseMatrix x;  // maximizer, ||X||_op <= 1
};

// Certified lower bound on sup_{||X|| <= 1} ||map(X)||_{S,1} by alternating
// polar-factor ascent with seeded multistart.
OpToTraceResult op_to_trace_estimate(const MatrixMap& map, int iters, std::uint64_t seed,
                                     int starts = 16);

struct GapDemoReport {
  double cs1 = 0.0;       // sum_ij |A_ij|
  double op_norm = 0.0;   // exact ||A||_{inf->1}
  double ratio = 0.0;
  bool ratio_defined = false;
};

// The diagonal-channel family separating the complete Schatten-1 norm from
// the operator-to-trace norm; both values by closed form.
GapDemoReport cs1_gap_demo(const DenseMatrix& a);

// Pairwise anticommuting real symmetric involutions with unit operator
// norm and normalized-trace orthonormality. Dimensions by generator count:
// {2, 2, 4, 8, 8, 16, 16, 16} for m = 1..8.
struct CliffordSystem {
  int m = 0;
  int dim = 0;
  std::vector<DenseMatrix> generators;
};

CliffordSystem clifford_system(int m);

struct CliffordWitness {
  std::vector<DenseMatrix> b;  // contractions for the xi family
  std::vector<DenseMatrix> c;  // contractions for the eta family
  DenseMatrix pairing;         // tr_N(B_i C_j)
};

// B_i = sum_k xi_i(k) G_k and C_j = sum_k eta_j(k) G_k; unit inputs give
// contractions with tr_N(B_i C_j) = <xi_i, eta_j> exactly.
CliffordWitness clifford_witness(const DenseMatrix& xis, const DenseMatrix& etas);

struct GammaStarReport {
  double gamma2_star = 0.0;
  double certified_value = 0.0;       // sum_ij A_ij tr_N(B_i C_j)
  int ambient = 0;                    // dimension of the unit-vector witness
  bool truncated = false;             // ambient was cut to the Clifford cap
  DenseMatrix xi;                     // unit vectors, rows
  DenseMatrix eta;
  CliffordWitness witness;
  double pairing_error = 0.0;         // max |tr_N(B_i C_j) - <xi_i, eta_j>|
  ContractionDecomposition contraction;  // Cor-style weighted data for A
  double contraction_pairing_error = 0.0;
};

// Certifies the stabilized norm of the diagonal channel of A at the value
// gamma2*(A): unit vectors extracted from the dual slack of the gamma2*
// program are realized by Clifford contractions whose trace pairing
// reproduces the optimal bilinear form.
GammaStarReport gamma_star_map_bound(const DenseMatrix& a, const sdp::SolveOptions& opts = {});

}  // namespace certnorm::nc
