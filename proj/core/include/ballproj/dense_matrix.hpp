#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ballproj {

/// Row-major dense matrix of finite doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return values_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> entries);

  DenseMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// C = A * B with sequential accumulation.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// Frobenius norm.
double frobenius_norm(const DenseMatrix& a);

}  // namespace ballproj
