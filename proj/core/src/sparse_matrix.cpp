#include "ballproj/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ballproj {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != rows_ + 1 || row_offsets_.front() != 0 ||
      row_offsets_.back() != values_.size() ||
      col_indices_.size() != values_.size()) {
    throw std::invalid_argument("inconsistent CSR arrays");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1]) {
      throw std::invalid_argument("row offsets must be nondecreasing");
    }
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] >= cols_) {
        throw std::invalid_argument("column index out of bounds in row " +
                                    std::to_string(i));
      }
      if (k > row_offsets_[i] && col_indices_[k - 1] >= col_indices_[k]) {
        throw std::invalid_argument(
            "column indices must be strictly increasing within row " +
            std::to_string(i));
      }
    }
  }
  for (double x : values_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("sparse matrix values must be finite");
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(
    std::size_t rows, std::size_t cols,
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets) {
  std::sort(triplets.begin(), triplets.end(),
            [](const auto& a, const auto& b) {
              return std::tie(std::get<0>(a), std::get<1>(a)) <
                     std::tie(std::get<0>(b), std::get<1>(b));
            });
  std::vector<std::size_t> row_offsets(rows + 1, 0);
  std::vector<std::size_t> col_indices;
  std::vector<double> values;
  col_indices.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const auto& [r, c, v] = triplets[k];
    if (r >= rows || c >= cols) {
      throw std::invalid_argument("triplet coordinate out of bounds");
    }
    if (k > 0) {
      const auto& [pr, pc, pv] = triplets[k - 1];
      if (pr == r && pc == c) {
        throw std::invalid_argument("duplicate coordinate (" +
                                    std::to_string(r) + ", " +
                                    std::to_string(c) + ")");
      }
    }
    ++row_offsets[r + 1];
    col_indices.push_back(c);
    values.push_back(v);
  }
  for (std::size_t i = 0; i < rows; ++i) row_offsets[i + 1] += row_offsets[i];
  return SparseMatrix(rows, cols, std::move(row_offsets),
                      std::move(col_indices), std::move(values));
}

std::vector<double> sparse_matvec(const SparseMatrix& a,
                                  std::span<const double> x) {
  if (x.size() != a.cols()) {
    throw std::invalid_argument("matvec length " + std::to_string(x.size()) +
                                " does not match " + std::to_string(a.cols()) +
                                " columns");
  }
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) acc += vals[k] * x[cols[k]];
    out[i] = acc;
  }
  return out;
}

}  // namespace ballproj
