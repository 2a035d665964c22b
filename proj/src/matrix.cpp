#include "certnorm/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace certnorm {

namespace {

void check_shape(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("matrix dimensions must be positive");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_shape(rows, cols);
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_shape(rows, cols);
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("entry count does not match rows*cols");
  }
  ensure_finite("matrix entries");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  check_shape(rows_, cols_);
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) {
      throw std::invalid_argument("ragged initializer for matrix");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  ensure_finite("matrix entries");
}

DenseMatrix DenseMatrix::zeros(int rows, int cols) { return DenseMatrix(rows, cols); }

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::ones(int rows, int cols) {
  DenseMatrix m(rows, cols);
  for (auto& v : m.data_) v = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const std::vector<double>& d) {
  DenseMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows_; ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("shape mismatch in matrix addition");
  }
  DenseMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + other.data_[k];
  return r;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("shape mismatch in matrix subtraction");
  }
  DenseMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - other.data_[k];
  return r;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& other) const {
  if (cols_ != other.rows_) {
    throw std::invalid_argument("shape mismatch in matrix product");
  }
  DenseMatrix r(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < other.cols_; ++j) {
        r(i, j) += aik * other(k, j);
      }
    }
  }
  return r;
}

DenseMatrix DenseMatrix::scaled(double factor) const {
  DenseMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = factor * data_[k];
  return r;
}

std::vector<double> DenseMatrix::mul_vec(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols_) {
    throw std::invalid_argument("shape mismatch in matrix-vector product");
  }
  std::vector<double> y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> DenseMatrix::row(int i) const {
  std::vector<double> r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

std::vector<double> DenseMatrix::col(int j) const {
  std::vector<double> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<double> DenseMatrix::diag() const {
  int n = rows_ < cols_ ? rows_ : cols_;
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = (*this)(i, i);
  return d;
}

double DenseMatrix::trace() const {
  double t = 0.0;
  int n = rows_ < cols_ ? rows_ : cols_;
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

double DenseMatrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::max_asymmetry() const {
  if (!is_square()) {
    throw std::invalid_argument("asymmetry is defined for square matrices only");
  }
  double m = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
  return m;
}

bool DenseMatrix::symmetric_within(double tol) const {
  return is_square() && max_asymmetry() <= tol;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void DenseMatrix::ensure_finite(const std::string& what) const {
  if (!all_finite()) {
    throw std::invalid_argument(what + ": non-finite entry");
  }
}

DenseMatrix schur_product(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("shape mismatch in entrywise product");
  }
  DenseMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * b(i, j);
  return r;
}

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("sign vector entries must be +-1");
  }
}

SignVector SignVector::from_index(int n, std::uint64_t index) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = ((index >> i) & 1u) ? -1 : +1;
  return SignVector(std::move(s));
}

std::uint64_t SignVector::index() const {
  std::uint64_t idx = 0;
  for (int i = 0; i < size(); ++i) {
    if (signs_[i] < 0) idx |= (std::uint64_t{1} << i);
  }
  return idx;
}

bool SignVector::lex_less(const SignVector& other) const {
  // +1 sorts before -1, coordinate 1 compared first.
  int n = size() < other.size() ? size() : other.size();
  for (int i = 0; i < n; ++i) {
    if (signs_[i] != other.signs_[i]) return signs_[i] > other.signs_[i];
  }
  return size() < other.size();
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

}  // namespace certnorm
