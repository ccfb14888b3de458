#include "ballproj/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ballproj {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw std::invalid_argument("dense matrix value count " +
                                std::to_string(values_.size()) +
                                " does not match " + std::to_string(rows_) +
                                "x" + std::to_string(cols_));
  }
  for (double x : values_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("dense matrix entries must be finite");
    }
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> entries) {
  DenseMatrix a(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) a(i, i) = entries[i];
  return a;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul dimension mismatch");
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

double frobenius_norm(const DenseMatrix& a) {
  // Scaled by the peak entry so squaring cannot overflow.
  double peak = 0.0;
  for (double x : a.values()) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : a.values()) {
    const double t = x / peak;
    acc += t * t;
  }
  return peak * std::sqrt(acc);
}

}  // namespace ballproj
