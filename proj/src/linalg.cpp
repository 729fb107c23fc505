#include "arat/linalg.hpp"

#include <cmath>
#include <utility>

namespace arat {

Vec solve_linear(const Matrix& a, const Vec& b) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("solve_linear: dimension mismatch");
  }

  Matrix m = a;
  Vec rhs = b;
  std::vector<double> scale(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) scale[i] = std::max(scale[i], std::fabs(m(i, j)));
  }

  std::vector<int> row(n);
  for (int i = 0; i < n; ++i) row[i] = i;

  for (int k = 0; k < n; ++k) {
    // Pick the row whose pivot is largest relative to its own scale.
    int best = -1;
    double best_ratio = -1.0;
    for (int i = k; i < n; ++i) {
      const double s = scale[row[i]];
      if (s == 0.0) continue;
      const double ratio = std::fabs(m(row[i], k)) / s;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = i;
      }
    }
    if (best < 0) throw SingularMatrixError("solve_linear: zero row encountered");
    std::swap(row[k], row[best]);

    const int rk = row[k];
    const double pivot = m(rk, k);
    if (std::fabs(pivot) <= 1e-13 * scale[rk]) {
      throw SingularMatrixError("solve_linear: pivot below 1e-13 of row scale at column " +
                                std::to_string(k));
    }
    for (int i = k + 1; i < n; ++i) {
      const int ri = row[i];
      const double f = m(ri, k) / pivot;
      if (f == 0.0) continue;
      m(ri, k) = 0.0;
      for (int j = k + 1; j < n; ++j) m(ri, j) -= f * m(rk, j);
      rhs[ri] -= f * rhs[rk];
    }
  }

  Vec x(n, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    const int rk = row[k];
    double acc = rhs[rk];
    for (int j = k + 1; j < n; ++j) acc -= m(rk, j) * x[j];
    x[k] = acc / m(rk, k);
  }
  return x;
}

}  // namespace arat
