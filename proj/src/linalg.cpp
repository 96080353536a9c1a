#include "gcb/linalg.hpp"

namespace gcb {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = RationalExpr::fromInt(1);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k).isZero()) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::isZero() const {
  for (auto& e : a)
    if (!e.isZero()) return false;
  return true;
}

Matrix Matrix::inverse() const {
  if (rows != cols) throw GcbError("inverse of non-square matrix");
  int n = rows;
  Matrix m = *this;
  Matrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!m.at(r, col).isZero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Degenerate();
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(pivot, j), m.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    RationalExpr p = m.at(col, col);
    for (int j = 0; j < n; ++j) {
      m.at(col, j) = m.at(col, j) / p;
      inv.at(col, j) = inv.at(col, j) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m.at(r, col).isZero()) continue;
      RationalExpr f = m.at(r, col);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = m.at(r, j) - f * m.at(col, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

}  // namespace gcb
