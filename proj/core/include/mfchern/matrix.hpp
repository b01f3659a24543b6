#pragma once

#include <stdexcept>
#include <vector>

namespace mfc {

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(int r, int c, const T& fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}
  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

template <class T, class Mul>
Matrix<T> matmul(const Matrix<T>& x, const Matrix<T>& y, const T& zero, Mul mul) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> z(x.rows, y.cols, zero);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k)
      for (int j = 0; j < y.cols; ++j) z(i, j) += mul(x(i, k), y(k, j));
  return z;
}

}  // namespace mfc
