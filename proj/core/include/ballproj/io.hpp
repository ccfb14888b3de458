#pragma once

#include <span>
#include <string>
#include <vector>

#include "ballproj/sparse_matrix.hpp"

namespace ballproj {

/// MatrixMarket coordinate format, 1-based indices,
/// "%%MatrixMarket matrix coordinate real general" header.
SparseMatrix load_matrix_market(const std::string& path);
void save_matrix_market(const SparseMatrix& a, const std::string& path);

/// Single-column CSV: one value per line, blank lines ignored.
std::vector<double> load_vector_csv(const std::string& path);
void save_vector_csv(std::span<const double> v, const std::string& path);

}  // namespace ballproj
