#ifndef GCB_LINALG_HPP
#define GCB_LINALG_HPP

#include "gcb/rational.hpp"

namespace gcb {

struct Degenerate : GcbError {
  Degenerate() : GcbError("matrix is not invertible over the rational-function field") {}
};

// Dense matrix over the field of rational functions.
class Matrix {
 public:
  int rows = 0, cols = 0;
  std::vector<RationalExpr> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r * c)) {}
  static Matrix identity(int n);

  RationalExpr& at(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
  const RationalExpr& at(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  bool isZero() const;
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  // Gaussian elimination at the generic point; throws Degenerate
  Matrix inverse() const;
};

}  // namespace gcb

#endif
