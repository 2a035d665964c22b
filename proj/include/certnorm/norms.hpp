#pragma once

#include <vector>

#include "certnorm/matrix.hpp"

// Elementary (non-SDP) matrix norms: Schatten p-norms for p in {1, 2, inf}
// and the p->q operator norms for p, q in {1, 2, inf}. The pairs
// (inf,1), (inf,2) and (2,1) are computed by exact sign enumeration with
// a dimension cap; everything else has a closed form.

namespace certnorm {

enum class Pexp { One, Two, Inf };

double schatten_norm(const DenseMatrix& a, Pexp p);
double pq_norm(const DenseMatrix& a, Pexp p, Pexp q);

// Result of maximizing a sign-enumerated functional; ties between
// maximizing sign vectors are broken toward the lexicographically
// smallest one (with +1 < -1).
struct SignOptimum {
  double value = 0.0;
  SignVector argmax;
};

// max over eps in {+-1}^cols of ||A eps||_1, with the maximizing eps.
// The inner maximization over the second sign vector is by coordinate
// signs of A eps, which is also reported.
struct TwoSidedSignOptimum {
  double value = 0.0;
  SignVector eps;  // length cols
  SignVector eta;  // length rows; sign(A eps) with +1 on zeros
};
TwoSidedSignOptimum infty_one_norm_witness(const DenseMatrix& a);

// max over eps in {+-1}^cols of ||A eps||_2.
SignOptimum infty_two_norm_witness(const DenseMatrix& a);

}  // namespace certnorm
