#include "certnorm/certificate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "certnorm/norms.hpp"
#include "certnorm/spectral.hpp"

namespace certnorm {

DenseMatrix VectorFamilies::cross_gram() const {
  return xs * ys.transpose();
}

void VerifyReport::add(const std::string& name, double slack) {
  const bool ok = slack >= 0.0;
  items.push_back({name, slack, ok});
  pass = pass && ok;
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  for (const VerifyItem& it : items) {
    os << (it.pass ? "  ok   " : "  FAIL ") << it.name << " (slack " << it.slack << ")\n";
  }
  return os.str();
}

namespace {

// [[X, A], [A^T, Y]] for rectangular A.
DenseMatrix block2(const DenseMatrix& x, const DenseMatrix& a, const DenseMatrix& y) {
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
  return m;
}

// Slack of lambda_min(M) >= -tol * (1 + max|M|).
double psd_slack(const DenseMatrix& m, double tol) {
  EigenDecomposition ed = eigen_symmetric(m);
  return ed.eigenvalues.back() + tol * (1.0 + m.max_abs());
}

double family_norm_sq(const DenseMatrix& rows, int i) {
  double s = 0.0;
  for (int j = 0; j < rows.cols(); ++j) s += rows(i, j) * rows(i, j);
  return s;
}

double max_offdiag_gram(const DenseMatrix& rows) {
  double worst = 0.0;
  for (int i = 0; i < rows.rows(); ++i)
    for (int j = i + 1; j < rows.rows(); ++j) {
      double s = 0.0;
      for (int c = 0; c < rows.cols(); ++c) s += rows(i, c) * rows(j, c);
      worst = std::max(worst, std::fabs(s));
    }
  return worst;
}

void verify_diagonal_pair(const DenseMatrix& a, const NormCertificate& cert,
                          const DiagonalPair& w, double tol, VerifyReport& rep) {
  if (static_cast<int>(w.x.size()) != a.rows() || static_cast<int>(w.y.size()) != a.cols()) {
    rep.add("witness_shape", -1.0);
    return;
  }
  DenseMatrix m = block2(DenseMatrix::diagonal(w.x), a, DenseMatrix::diagonal(w.y));
  rep.add("block_psd", psd_slack(m, tol));
  double trx = 0.0, try_ = 0.0;
  for (double v : w.x) trx += v;
  for (double v : w.y) try_ += v;
  const double obj = 0.5 * (trx + try_);
  rep.add("objective_match", tol * (1.0 + std::fabs(cert.value)) - std::fabs(obj - cert.value));
}

void verify_block_pair(const DenseMatrix& a, const NormCertificate& cert, const BlockPair& w,
                       double tol, VerifyReport& rep) {
  if (w.x.rows() != a.rows() || w.y.rows() != a.cols()) {
    rep.add("witness_shape", -1.0);
    return;
  }
  DenseMatrix m = block2(w.x, a, w.y);
  rep.add("block_psd", psd_slack(m, tol));
  double diag_err = 0.0;
  for (int i = 0; i < w.x.rows(); ++i) diag_err = std::max(diag_err, std::fabs(w.x(i, i) - w.t));
  for (int j = 0; j < w.y.rows(); ++j) diag_err = std::max(diag_err, std::fabs(w.y(j, j) - w.t));
  rep.add("diagonal_equal_t", tol * (1.0 + std::fabs(w.t)) - diag_err);
  rep.add("objective_match", tol * (1.0 + std::fabs(cert.value)) - std::fabs(w.t - cert.value));
}

void verify_trace_pair(const DenseMatrix& a, const NormCertificate& cert, const TracePair& w,
                       double tol, VerifyReport& rep) {
  if (w.x.rows() != a.rows() || w.y.rows() != a.cols()) {
    rep.add("witness_shape", -1.0);
    return;
  }
  DenseMatrix m = block2(w.x, a, w.y);
  rep.add("block_psd", psd_slack(m, tol));
  const double obj = 0.5 * (w.x.trace() + w.y.trace());
  rep.add("objective_match", tol * (1.0 + std::fabs(cert.value)) - std::fabs(obj - cert.value));
}

void verify_correlation(const DenseMatrix& a, const NormCertificate& cert,
                        const CorrelationDiagonal& w, double tol, VerifyReport& rep) {
  if (static_cast<int>(w.d1.size()) != a.rows()) {
    rep.add("witness_shape", -1.0);
    return;
  }
  const DenseMatrix d1 = DenseMatrix::diagonal(w.d1);
  double objective = 0.0;
  if (cert.norm_name == "corrproblem") {
    rep.add("d_plus_a_psd", psd_slack(d1 + a, tol));
    for (double v : w.d1) objective += v;
  } else if (cert.norm_name == "corrC") {
    rep.add("d_minus_a_psd", psd_slack(d1 - a, tol));
    rep.add("d_plus_a_psd", psd_slack(d1 + a, tol));
    for (double v : w.d1) objective += v;
  } else {  // corrCprime: D1 - A >= 0, D2 + A >= 0
    if (!w.d2 || static_cast<int>(w.d2->size()) != a.rows()) {
      rep.add("witness_shape", -1.0);
      return;
    }
    const DenseMatrix d2 = DenseMatrix::diagonal(*w.d2);
    rep.add("d1_minus_a_psd", psd_slack(d1 - a, tol));
    rep.add("d2_plus_a_psd", psd_slack(d2 + a, tol));
    for (double v : w.d1) objective += 0.5 * v;
    for (double v : *w.d2) objective += 0.5 * v;
  }
  rep.add("objective_match",
          tol * (1.0 + std::fabs(cert.value)) - std::fabs(objective - cert.value));
}

void verify_families(const DenseMatrix& a, const NormCertificate& cert, const VectorFamilies& w,
                     double tol, VerifyReport& rep) {
  const double scale = 1.0 + a.max_abs();
  if (w.relation == VectorFamilies::Relation::DifferenceGram) {
    // Witness for the symmetric primal form: value = sum_ij A_ij
    // (<x_i,x_j> - <y_i,y_j>) with |x_i|^2 + |y_i|^2 = 1.
    double norm_err = 0.0;
    for (int i = 0; i < w.count_x(); ++i) {
      norm_err = std::max(norm_err,
                          std::fabs(family_norm_sq(w.xs, i) + family_norm_sq(w.ys, i) - 1.0));
    }
    rep.add("unit_split", tol - norm_err);
    double val = 0.0;
    DenseMatrix gx = w.xs * w.xs.transpose();
    DenseMatrix gy = w.ys * w.ys.transpose();
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) val += a(i, j) * (gx(i, j) - gy(i, j));
    rep.add("objective_match", tol * (1.0 + std::fabs(cert.value)) - std::fabs(val - cert.value));
    return;
  }

  if (w.count_x() != a.rows() || w.count_y() != a.cols()) {
    rep.add("witness_shape", -1.0);
    return;
  }
  DenseMatrix gram = w.cross_gram();
  double gram_err = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (w.relation == VectorFamilies::Relation::OffDiagCrossGram && i == j) continue;
      gram_err = std::max(gram_err, std::fabs(gram(i, j) - a(i, j)));
    }
  rep.add("gram_reconstruction", tol * scale - gram_err);

  if (w.orthogonal) {
    rep.add("xs_orthogonal", tol * scale - max_offdiag_gram(w.xs));
    rep.add("ys_orthogonal", tol * scale - max_offdiag_gram(w.ys));
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < w.count_x(); ++i) sx += family_norm_sq(w.xs, i);
    for (int j = 0; j < w.count_y(); ++j) sy += family_norm_sq(w.ys, j);
    rep.add("x_energy_match",
            tol * (1.0 + std::fabs(cert.value)) - std::fabs(sx - cert.value));
    rep.add("y_energy_match",
            tol * (1.0 + std::fabs(cert.value)) - std::fabs(sy - cert.value));
  } else {
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < w.count_x(); ++i) mx = std::max(mx, family_norm_sq(w.xs, i));
    for (int j = 0; j < w.count_y(); ++j) my = std::max(my, family_norm_sq(w.ys, j));
    rep.add("max_norm_product",
            cert.value + tol * (1.0 + std::fabs(cert.value)) - std::sqrt(mx * my));
  }
}

void verify_schur(const DenseMatrix& a, const NormCertificate& cert, const SchurDecomposition& w,
                  double tol, VerifyReport& rep) {
  DenseMatrix prod = schur_product(w.b, w.c);
  rep.add("schur_product_match", tol * (1.0 + a.max_abs()) - (prod - a).max_abs());
  rep.add("factor_contraction", 1.0 + tol - schatten_norm(w.c, Pexp::Inf));
  rep.add("objective_match", tol * (1.0 + std::fabs(cert.value)) -
                                 std::fabs(schatten_norm(w.b, Pexp::One) - cert.value));
}

void verify_contraction(const DenseMatrix& a, const NormCertificate& cert,
                        const ContractionDecomposition& w, double tol, VerifyReport& rep) {
  double recon_err = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      recon_err = std::max(recon_err, std::fabs(w.alpha[i] * w.beta[j] * w.x(i, j) - a(i, j)));
    }
  rep.add("weighted_reconstruction", tol * (1.0 + a.max_abs()) - recon_err);
  rep.add("contraction_norm", 1.0 + tol - schatten_norm(w.x, Pexp::Inf));
  const double prod = norm2(w.alpha) * norm2(w.beta);
  rep.add("objective_match", tol * (1.0 + std::fabs(cert.value)) - std::fabs(prod - cert.value));
}

void verify_sign_pair(const DenseMatrix& a, const NormCertificate& cert, const SignPair& w,
                      double tol, VerifyReport& rep) {
  if (w.eps.size() != a.cols() || w.eta.size() != a.rows()) {
    rep.add("witness_shape", -1.0);
    return;
  }
  double form = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) form += a(i, j) * w.eps[j] * w.eta[i];
  rep.add("bilinear_form_match",
          tol * (1.0 + std::fabs(cert.value)) - std::fabs(std::fabs(form) - cert.value));
}

}  // namespace

VerifyReport verify_certificate(const DenseMatrix& a, const NormCertificate& cert, double tol) {
  VerifyReport rep;
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, DiagonalPair>) {
          verify_diagonal_pair(a, cert, w, tol, rep);
        } else if constexpr (std::is_same_v<T, BlockPair>) {
          verify_block_pair(a, cert, w, tol, rep);
        } else if constexpr (std::is_same_v<T, TracePair>) {
          verify_trace_pair(a, cert, w, tol, rep);
        } else if constexpr (std::is_same_v<T, CorrelationDiagonal>) {
          verify_correlation(a, cert, w, tol, rep);
        } else if constexpr (std::is_same_v<T, VectorFamilies>) {
          verify_families(a, cert, w, tol, rep);
        } else if constexpr (std::is_same_v<T, SchurDecomposition>) {
          verify_schur(a, cert, w, tol, rep);
        } else if constexpr (std::is_same_v<T, ContractionDecomposition>) {
          verify_contraction(a, cert, w, tol, rep);
        } else if constexpr (std::is_same_v<T, SignPair>) {
          verify_sign_pair(a, cert, w, tol, rep);
        }
      },
      cert.witness);
  return rep;
}

std::string witness_kind(const Witness& w) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiagonalPair>) return "diagonal_pair";
        if constexpr (std::is_same_v<T, BlockPair>) return "block_pair";
        if constexpr (std::is_same_v<T, VectorFamilies>) return "vector_families";
        if constexpr (std::is_same_v<T, SchurDecomposition>) return "schur_decomposition";
        if constexpr (std::is_same_v<T, ContractionDecomposition>)
          return "contraction_decomposition";
        if constexpr (std::is_same_v<T, CorrelationDiagonal>) return "correlation_diagonal";
        if constexpr (std::is_same_v<T, TracePair>) return "trace_pair";
        if constexpr (std::is_same_v<T, SignPair>) return "sign_pair";
        return "unknown";
      },
      w);
}

Json matrix_to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push(Json::from_vector(m.row(i)));
  return rows;
}

namespace {

Json signs_to_json(const SignVector& s) {
  Json a = Json::array();
  for (int i = 0; i < s.size(); ++i) a.push(Json::integer(s[i]));
  return a;
}

Json witness_payload(const Witness& w) {
  Json payload = Json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiagonalPair>) {
          payload.set("x_diagonal", Json::from_vector(v.x));
          payload.set("y_diagonal", Json::from_vector(v.y));
        } else if constexpr (std::is_same_v<T, BlockPair>) {
          payload.set("x", matrix_to_json(v.x));
          payload.set("y", matrix_to_json(v.y));
          payload.set("t", v.t);
        } else if constexpr (std::is_same_v<T, VectorFamilies>) {
          payload.set("xs", matrix_to_json(v.xs));
          payload.set("ys", matrix_to_json(v.ys));
          const char* rel = v.relation == VectorFamilies::Relation::CrossGram ? "cross_gram"
                            : v.relation == VectorFamilies::Relation::OffDiagCrossGram
                                ? "offdiag_cross_gram"
                                : "difference_gram";
          payload.set("relation", rel);
          payload.set("orthogonal", v.orthogonal);
        } else if constexpr (std::is_same_v<T, SchurDecomposition>) {
          payload.set("b", matrix_to_json(v.b));
          payload.set("c", matrix_to_json(v.c));
        } else if constexpr (std::is_same_v<T, ContractionDecomposition>) {
          payload.set("alpha", Json::from_vector(v.alpha));
          payload.set("beta", Json::from_vector(v.beta));
          payload.set("x", matrix_to_json(v.x));
        } else if constexpr (std::is_same_v<T, CorrelationDiagonal>) {
          payload.set("d1", Json::from_vector(v.d1));
          if (v.d2) payload.set("d2", Json::from_vector(*v.d2));
        } else if constexpr (std::is_same_v<T, TracePair>) {
          payload.set("x", matrix_to_json(v.x));
          payload.set("y", matrix_to_json(v.y));
        } else if constexpr (std::is_same_v<T, SignPair>) {
          payload.set("eps", signs_to_json(v.eps));
          payload.set("eta", signs_to_json(v.eta));
        }
      },
      w);
  return payload;
}

}  // namespace

Json certificate_to_json(const NormCertificate& cert) {
  Json root = Json::object();
  root.set("norm", cert.norm_name);
  root.set("value", cert.value);
  Json w = Json::object();
  w.set("kind", witness_kind(cert.witness));
  w.set("payload", witness_payload(cert.witness));
  root.set("witness", std::move(w));
  Json meta = Json::object();
  meta.set("gap", cert.meta.gap);
  meta.set("iterations", cert.meta.iterations);
  if (cert.meta.rebalance_scale) meta.set("rebalance_scale", *cert.meta.rebalance_scale);
  if (cert.meta.cross_check_value) meta.set("cross_check_value", *cert.meta.cross_check_value);
  root.set("meta", std::move(meta));
  return root;
}

}  // namespace certnorm
