#include "certnorm/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace certnorm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

MatrixFile read_matrix(std::istream& in) {
  MatrixFile out;
  std::string line;
  int rows = -1, cols = -1;
  while (std::getline(in, line)) {
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') {
      std::istringstream hs(line.substr(pos + 1));
      std::string tag;
      hs >> tag;
      if (tag == "choi") {
        std::string kv;
        hs >> kv;
        if (kv.rfind("n=", 0) == 0) {
          try {
            out.choi_dim = std::stoi(kv.substr(2));
          } catch (const std::exception&) {
            throw ParseError("malformed choi header: " + line);
          }
        }
      }
      continue;
    }
    std::istringstream ss(line);
    if (!(ss >> rows >> cols)) throw ParseError("expected 'rows cols' size line");
    break;
  }
  if (rows <= 0 || cols <= 0) throw ParseError("missing or invalid matrix size line");

  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  double v;
  while (static_cast<int>(entries.size()) < rows * cols && (in >> v)) {
    entries.push_back(v);
  }
  if (static_cast<int>(entries.size()) != rows * cols) {
    throw ParseError("matrix body ended early: expected " + std::to_string(rows * cols) +
                     " entries, got " + std::to_string(entries.size()));
  }
  for (double e : entries) {
    if (!std::isfinite(e)) throw ParseError("non-finite matrix entry");
  }
  out.matrix = DenseMatrix(rows, cols, std::move(entries));
  if (out.choi_dim) {
    int n = *out.choi_dim;
    if (rows != n * n || cols != n * n) {
      throw ParseError("choi header dimension does not match matrix shape");
    }
  }
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_matrix(out, m);
}

void write_choi_matrix(std::ostream& out, const DenseMatrix& choi, int n) {
  out << "# choi n=" << n << '\n';
  write_matrix(out, choi);
}

void write_choi_matrix_file(const std::string& path, const DenseMatrix& choi, int n) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_choi_matrix(out, choi, n);
}

}  // namespace certnorm
