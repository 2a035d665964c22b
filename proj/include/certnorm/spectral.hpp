#pragma once

#include <vector>

#include "certnorm/matrix.hpp"
#include "certnorm/tolerances.hpp"

// Symmetric eigendecomposition by cyclic Jacobi rotations and an SVD built
// on it. Deterministic, dependency-free, and stable at the sizes this
// toolkit handles (blocks up to a few hundred).

namespace certnorm {

// Factorization of a matrix: input = left * diag(values) * right^T.
// For a symmetric input the values are eigenvalues (descending) and
// left == right; otherwise they are singular values (descending).
struct SpectralData {
  std::vector<double> values;
  DenseMatrix left;
  DenseMatrix right;
  bool is_eigen = false;

  DenseMatrix reconstruct() const;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  DenseMatrix vectors;              // columns are eigenvectors
};

struct SvdDecomposition {
  std::vector<double> singular_values;  // descending, >= 0
  DenseMatrix u;                        // rows x min(rows, cols)
  DenseMatrix v;                        // cols x min(rows, cols)
};

// Cyclic Jacobi on a symmetric matrix. Throws std::invalid_argument on a
// non-square input and std::runtime_error if the sweep cap is exceeded.
EigenDecomposition eigen_symmetric(const DenseMatrix& a);

// Thin SVD via eigendecomposition of A^T A (or A A^T) with sign-fixed
// factors so results are reproducible.
SvdDecomposition svd(const DenseMatrix& a);

// Symmetric input (within kTolMatch) yields the eigendecomposition,
// anything else the SVD.
SpectralData spectral(const DenseMatrix& a);

double min_eigenvalue(const DenseMatrix& symmetric);
double max_abs_eigenvalue(const DenseMatrix& symmetric);

// True iff lambda_min(A) >= -tol * max(1, ||A||_op). The input must be
// square and symmetric to within tol (scaled); violations throw.
bool is_psd(const DenseMatrix& a, double tol = kTolPsd);

// Gram factor R (n x rank) with R R^T = G for a psd matrix G; eigenvalues
// below a small relative threshold are truncated. Throws when G has an
// eigenvalue below -tol * max(1, |lambda|_max).
DenseMatrix factor_gram(const DenseMatrix& g, double tol = kTolMatch);

}  // namespace certnorm
