#pragma once

#include <vector>

#include "ballproj/dense_matrix.hpp"

namespace ballproj {

/// Thin SVD: a = u * diag(singular_values) * v^T with orthonormal columns
/// and singular values sorted descending.
struct SvdResult {
  DenseMatrix u;
  std::vector<double> singular_values;
  DenseMatrix v;
};

SvdResult svd(const DenseMatrix& a);

}  // namespace ballproj
