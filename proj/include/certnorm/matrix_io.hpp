#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "certnorm/matrix.hpp"

// Shared matrix text format: optional '#' comment lines, then a line
// "rows cols", then rows lines of cols whitespace-separated numbers.
// Writers emit 17 significant digits. A map stored by its Choi matrix
// carries the header comment "# choi n=<n>".

namespace certnorm {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixFile {
  DenseMatrix matrix;
  // Set when the header "# choi n=<n>" is present.
  std::optional<int> choi_dim;
};

MatrixFile read_matrix(std::istream& in);
MatrixFile read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const DenseMatrix& m);
void write_matrix_file(const std::string& path, const DenseMatrix& m);
void write_choi_matrix(std::ostream& out, const DenseMatrix& choi, int n);
void write_choi_matrix_file(const std::string& path, const DenseMatrix& choi, int n);

// Fixed numeric formatting used by all writers (17 significant digits).
std::string format_double(double v);

}  // namespace certnorm
