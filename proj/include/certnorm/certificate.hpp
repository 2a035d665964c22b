#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "certnorm/matrix.hpp"
#include "certnorm/report.hpp"
#include "certnorm/tolerances.hpp"

// Norm certificates: a value plus a typed witness that re-verifies with
// plain dense linear algebra, no solver in the loop.

namespace certnorm {

// Families of vectors stored as matrix rows (one vector per row).
struct VectorFamilies {
  // How the families witness a matrix A:
  //   CrossGram:        <x_i, y_j> = A_ij for all i, j
  //   OffDiagCrossGram: <x_i, y_j> = A_ij for i != j only
  //   DifferenceGram:   A_ij is witnessed by <x_i,x_j> - <y_i,y_j>,
  //                     with |x_i|^2 + |y_i|^2 = 1 per index
  enum class Relation { CrossGram, OffDiagCrossGram, DifferenceGram };

  DenseMatrix xs;
  DenseMatrix ys;
  Relation relation = Relation::CrossGram;
  bool orthogonal = false;  // within-family pairwise orthogonality claimed

  int count_x() const { return xs.rows(); }
  int count_y() const { return ys.rows(); }
  DenseMatrix cross_gram() const;  // xs * ys^T
};

struct DiagonalPair {
  std::vector<double> x;
  std::vector<double> y;
};

struct BlockPair {
  DenseMatrix x;
  DenseMatrix y;
  double t = 0.0;
};

struct SchurDecomposition {
  DenseMatrix b;
  DenseMatrix c;
};

struct ContractionDecomposition {
  std::vector<double> alpha;
  std::vector<double> beta;
  DenseMatrix x;
};

struct CorrelationDiagonal {
  std::vector<double> d1;
  std::optional<std::vector<double>> d2;
};

struct TracePair {
  DenseMatrix x;
  DenseMatrix y;
};

struct SignPair {
  SignVector eps;
  SignVector eta;
};

using Witness = std::variant<DiagonalPair, BlockPair, VectorFamilies, SchurDecomposition,
                             ContractionDecomposition, CorrelationDiagonal, TracePair, SignPair>;

struct SolverMeta {
  double gap = 0.0;
  int iterations = 0;
  std::optional<double> rebalance_scale;
  std::optional<double> cross_check_value;
};

struct NormCertificate {
  std::string norm_name;
  double value = 0.0;
  Witness witness;
  SolverMeta meta;
};

struct VerifyItem {
  std::string name;
  double slack = 0.0;  // amount by which the check passes (>= 0 means pass)
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyItem> items;
  bool pass = true;

  void add(const std::string& name, double slack);
  std::string summary() const;
};

// Solver-free re-verification of a certificate against the matrix it was
// computed for. Checks feasibility of the witness and that its objective
// matches the certified value, all within tol.
VerifyReport verify_certificate(const DenseMatrix& a, const NormCertificate& cert,
                                double tol = kTolMatch);

std::string witness_kind(const Witness& w);
Json certificate_to_json(const NormCertificate& cert);
Json matrix_to_json(const DenseMatrix& m);

}  // namespace certnorm
