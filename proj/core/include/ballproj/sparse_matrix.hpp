#pragma once

#include <cstddef>
#include <span>
#include <tuple>
#include <vector>

namespace ballproj {

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row and all values are finite.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices,
               std::vector<double> values);

  /// Builds from (row, col, value) triplets; entries are sorted and
  /// duplicate coordinates rejected.
  static SparseMatrix from_triplets(
      std::size_t rows, std::size_t cols,
      std::vector<std::tuple<std::size_t, std::size_t, double>> triplets);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_indices_.data() + row_offsets_[i],
            row_offsets_[i + 1] - row_offsets_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_offsets_[i],
            row_offsets_[i + 1] - row_offsets_[i]};
  }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::size_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) =
      default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// Exact CSR product A*x with sequential in-row accumulation.
std::vector<double> sparse_matvec(const SparseMatrix& a,
                                  std::span<const double> x);

}  // namespace ballproj
