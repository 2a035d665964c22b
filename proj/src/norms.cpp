#include "certnorm/norms.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "certnorm/spectral.hpp"
#include "certnorm/tolerances.hpp"

namespace certnorm {

namespace {

double max_column_pnorm(const DenseMatrix& a, int p) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
      s += p == 1 ? std::fabs(a(i, j)) : a(i, j) * a(i, j);
    }
    best = std::max(best, p == 1 ? s : std::sqrt(s));
  }
  return best;
}

double max_row_pnorm(const DenseMatrix& a, int p) {
  double best = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
      s += p == 1 ? std::fabs(a(i, j)) : a(i, j) * a(i, j);
    }
    best = std::max(best, p == 1 ? s : std::sqrt(s));
  }
  return best;
}

void check_enum_cap(int dim) {
  if (dim > kSignEnumCap) {
    throw std::invalid_argument("sign enumeration dimension exceeds cap of " +
                                std::to_string(kSignEnumCap));
  }
}

// Exact enumeration over eps in {+-1}^cols of a norm of A eps. For small
// dimensions every A eps is recomputed from scratch (bitwise-stable sums);
// larger dimensions walk a Gray code and update incrementally.
template <typename Eval>
SignOptimum enumerate_signs(const DenseMatrix& a, int p_norm, Eval eval) {
  const int k = a.cols();
  check_enum_cap(k);
  const std::uint64_t total = std::uint64_t{1} << k;

  SignOptimum best;
  bool have = false;
  if (k <= 16) {
    std::vector<int> signs(k, 1);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      for (int i = 0; i < k; ++i) signs[i] = ((idx >> i) & 1u) ? -1 : +1;
      std::vector<double> v(a.rows(), 0.0);
      for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += a(i, j) * signs[j];
        v[i] = s;
      }
      const double val = eval(v);
      SignVector sv(signs);
      if (!have || val > best.value ||
          (val == best.value && sv.lex_less(best.argmax))) {
        best.value = val;
        best.argmax = sv;
        have = true;
      }
      (void)p_norm;
    }
    return best;
  }

  // Gray-code walk: one coordinate flips per step.
  std::vector<int> signs(k, 1);
  std::vector<double> v(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += a(i, j);
    v[i] = s;
  }
  best.value = eval(v);
  best.argmax = SignVector(signs);
  for (std::uint64_t step = 1; step < total; ++step) {
    int flip = 0;
    std::uint64_t t = step;
    while ((t & 1u) == 0) {
      t >>= 1;
      ++flip;
    }
    const double delta = signs[flip] > 0 ? -2.0 : 2.0;
    signs[flip] = -signs[flip];
    for (int i = 0; i < a.rows(); ++i) v[i] += delta * a(i, flip);
    const double val = eval(v);
    if (val > best.value) {
      best.value = val;
      best.argmax = SignVector(signs);
    } else if (val == best.value) {
      SignVector sv(signs);
      if (sv.lex_less(best.argmax)) best.argmax = sv;
    }
  }
  return best;
}

double one_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

double two_norm(const std::vector<double>& v) { return norm2(v); }

}  // namespace

double schatten_norm(const DenseMatrix& a, Pexp p) {
  a.ensure_finite("schatten_norm input");
  switch (p) {
    case Pexp::Two:
      return a.frobenius();
    case Pexp::One: {
      SpectralData sd = spectral(a);
      double s = 0.0;
      for (double v : sd.values) s += std::fabs(v);
      return s;
    }
    case Pexp::Inf: {
      SpectralData sd = spectral(a);
      double m = 0.0;
      for (double v : sd.values) m = std::max(m, std::fabs(v));
      return m;
    }
  }
  throw std::invalid_argument("schatten_norm: unsupported exponent");
}

TwoSidedSignOptimum infty_one_norm_witness(const DenseMatrix& a) {
  SignOptimum so = enumerate_signs(a, 1, one_norm);
  TwoSidedSignOptimum out;
  out.value = so.value;
  out.eps = so.argmax;
  std::vector<double> image = a.mul_vec([&] {
    std::vector<double> e(a.cols());
    for (int i = 0; i < a.cols(); ++i) e[i] = so.argmax[i];
    return e;
  }());
  std::vector<int> eta(a.rows());
  for (int i = 0; i < a.rows(); ++i) eta[i] = image[i] < 0.0 ? -1 : +1;
  out.eta = SignVector(std::move(eta));
  return out;
}

SignOptimum infty_two_norm_witness(const DenseMatrix& a) {
  return enumerate_signs(a, 2, two_norm);
}

double pq_norm(const DenseMatrix& a, Pexp p, Pexp q) {
  a.ensure_finite("pq_norm input");
  if (p == Pexp::One && q == Pexp::Inf) return a.max_abs();
  if (p == Pexp::One && q == Pexp::Two) return max_column_pnorm(a, 2);
  if (p == Pexp::One && q == Pexp::One) return max_column_pnorm(a, 1);
  if (p == Pexp::Two && q == Pexp::Two) return schatten_norm(a, Pexp::Inf);
  if (p == Pexp::Two && q == Pexp::Inf) return max_row_pnorm(a, 2);
  if (p == Pexp::Inf && q == Pexp::Inf) return max_row_pnorm(a, 1);
  if (p == Pexp::Inf && q == Pexp::One) return infty_one_norm_witness(a).value;
  if (p == Pexp::Inf && q == Pexp::Two) return infty_two_norm_witness(a).value;
  // (2,1) by transpose duality: ||A||_{2->1} = ||A^T||_{inf->2}.
  if (p == Pexp::Two && q == Pexp::One) {
    return infty_two_norm_witness(a.transpose()).value;
  }
  throw std::invalid_argument("pq_norm: unsupported exponent pair");
}

}  // namespace certnorm
