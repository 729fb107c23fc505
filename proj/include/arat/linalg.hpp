#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace arat {

using Vec = std::vector<double>;

/// Dense row-major matrix, just large enough for the solver internals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Solves A x = b with Gaussian elimination under scaled partial pivoting.
/// A pivot whose magnitude falls below 1e-13 times the scale of its row
/// raises SingularMatrixError.  Dimension mismatches raise
/// std::invalid_argument.
Vec solve_linear(const Matrix& a, const Vec& b);

}  // namespace arat
