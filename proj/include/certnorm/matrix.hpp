#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

// Dense real matrices in row-major order: the universal carrier for every
// matrix-valued object in the toolkit (inputs, SDP blocks, Choi matrices,
// witnesses).

namespace certnorm {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols);
  DenseMatrix(int rows, int cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix zeros(int rows, int cols);
  static DenseMatrix identity(int n);
  static DenseMatrix ones(int rows, int cols);
  static DenseMatrix diagonal(const std::vector<double>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  DenseMatrix transpose() const;
  DenseMatrix operator+(const DenseMatrix& other) const;
  DenseMatrix operator-(const DenseMatrix& other) const;
  DenseMatrix operator*(const DenseMatrix& other) const;
  DenseMatrix scaled(double factor) const;

  std::vector<double> mul_vec(const std::vector<double>& x) const;
  std::vector<double> row(int i) const;
  std::vector<double> col(int j) const;
  std::vector<double> diag() const;

  double trace() const;
  double max_abs() const;
  double frobenius() const;
  double max_asymmetry() const;  // max |A_ij - A_ji|; requires square
  bool symmetric_within(double tol) const;
  bool all_finite() const;

  // Throws std::invalid_argument when any entry is non-finite.
  void ensure_finite(const std::string& what) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Entrywise product; shapes must match.
DenseMatrix schur_product(const DenseMatrix& a, const DenseMatrix& b);

// Sign vector over {+1, -1}.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<int> signs);

  // Canonical bijection {0, ..., 2^n - 1} -> {+-1}^n: bit b of `index`
  // (b = 0 least significant) gives coordinate b+1; bit 0 -> +1, bit 1 -> -1.
  static SignVector from_index(int n, std::uint64_t index);

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[i]; }
  const std::vector<int>& signs() const { return signs_; }
  std::uint64_t index() const;

  // Lexicographic comparison with +1 < -1, coordinate 1 most significant.
  bool lex_less(const SignVector& other) const;

 private:
  std::vector<int> signs_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

}  // namespace certnorm
