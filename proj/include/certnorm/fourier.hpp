#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "certnorm/certificate.hpp"
#include "certnorm/gronorm.hpp"
#include "certnorm/matrix.hpp"

// The sign-vector lift of a matrix, the rho functional on vector families,
// witness transport between a matrix and its lift, the pi/2 tensor bound
// check, and the randomized sampling experiment.

namespace certnorm::fourier {

// Canonical enumeration of {+-1}^n: bit b of the index (b = 0 least
// significant) is coordinate b+1; bit 0 means +1. Index 0 is all-ones.
struct SignIndexing {
  int n = 0;

  explicit SignIndexing(int n_) : n(n_) {}
  std::uint64_t count() const { return std::uint64_t{1} << n; }
  int sign(std::uint64_t index, int coord) const {  // coord is 0-based
    return ((index >> coord) & 1u) ? -1 : +1;
  }
  SignVector at(std::uint64_t index) const { return SignVector::from_index(n, index); }
  std::uint64_t index_of(const SignVector& s) const { return s.index(); }
};

struct FourierMatrix {
  int n = 0;
  DenseMatrix m;  // 2^n x 2^n under SignIndexing
};

inline constexpr int kLiftCap = 5;
inline constexpr int kRhoCap = 24;
inline constexpr int kExperimentDimCap = 12;
inline constexpr int kExperimentKCap = 64;

// M_{eps,eta} = <A eps, eta>; requires square A with n <= kLiftCap.
FourierMatrix fourier_lift(const DenseMatrix& a);

// max over eps in {+-1}^n of |sum_i eps_i x_i|_2 (vectors as rows).
double rho(const std::vector<std::vector<double>>& vectors);

struct LiftGamma2Report {
  NormCertificate cert;      // gamma2 of the lift, with block witness
  double rho_bound = 0.0;    // rho(x) rho(y) for the factorization used
  double slack = 0.0;        // rho_bound - value (>= -kTolMatch)
  VectorFamilies families;   // the factorization behind the bound
};

// gamma2 of the lift by SDP, plus the rho*rho upper bound derived from a
// supplied factorization of A (default: the orthogonal gamma2* witness).
LiftGamma2Report gamma2_of_lift(const DenseMatrix& a,
                                const std::optional<VectorFamilies>& families = std::nullopt,
                                const sdp::SolveOptions& opts = {});

// Averages sign-indexed maps down to families x_i, y_j with
// <x_i, y_j> = A_ij; the maps' Gram must match the lift of A.
VectorFamilies witness_project(const DenseMatrix& xmap, const DenseMatrix& ymap,
                               const DenseMatrix& a);

// Lifts orthogonal families to sign-indexed maps (rows indexed by
// SignIndexing) whose Gram is the lift of A and whose norms are constant.
std::pair<DenseMatrix, DenseMatrix> witness_lift(const VectorFamilies& families);

struct RietzReport {
  double lhs = 0.0;  // rho of the tensored family
  double rhs = 0.0;  // sqrt(pi/2) * rho of the first family
  bool pass = false;
};

// Tensor products realized as outer-product flattenings; ys must be unit.
RietzReport rietz_check(const std::vector<std::vector<double>>& xs,
                        const std::vector<std::vector<double>>& ys);

struct SamplingReport {
  int n = 0;
  int k = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool full_enumeration = false;
  double denominator = 0.0;  // exact infty->1 norm of A
  bool degenerate = false;   // denominator is zero, ratios undefined
  std::vector<double> gamma2_values;  // per trial
  std::vector<double> ratios;         // per trial, empty when degenerate
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
};

// Per trial, samples K sign vectors i.i.d. from the seeded generator,
// forms M_ij = <A eps_i, eps_j> and computes gamma2(M). With
// full_enumeration, K must be 2^n and the trial reduces to the lift.
SamplingReport sampling_experiment(const DenseMatrix& a, int k, int trials, std::uint64_t seed,
                                   bool full_enumeration = false,
                                   const sdp::SolveOptions& opts = {});

}  // namespace certnorm::fourier
