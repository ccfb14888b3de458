#include "ballproj/svd.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace ballproj {

// Two-sided Jacobi for small matrices (tightest orthogonality), bidiagonal
// divide-and-conquer above that. Both return descending, nonnegative
// singular values.
SvdResult svd(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument("svd of an empty matrix");
  }
  using EMatrix =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto rows = static_cast<Eigen::Index>(a.rows());
  const auto cols = static_cast<Eigen::Index>(a.cols());
  Eigen::Map<const EMatrix> mapped(a.values().data(), rows, cols);

  EMatrix u_mat, v_mat;
  Eigen::VectorXd sing;
  if (std::min(rows, cols) <= 64) {
    Eigen::JacobiSVD<EMatrix> solver(
        mapped, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u_mat = solver.matrixU();
    v_mat = solver.matrixV();
    sing = solver.singularValues();
  } else {
    Eigen::BDCSVD<EMatrix> solver(mapped,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
    u_mat = solver.matrixU();
    v_mat = solver.matrixV();
    sing = solver.singularValues();
  }

  SvdResult out;
  out.singular_values.assign(sing.data(), sing.data() + sing.size());
  for (double s : out.singular_values) {
    if (!std::isfinite(s)) {
      throw std::runtime_error("svd did not converge to finite values");
    }
  }
  out.u = DenseMatrix(static_cast<std::size_t>(u_mat.rows()),
                      static_cast<std::size_t>(u_mat.cols()),
                      {u_mat.data(), u_mat.data() + u_mat.size()});
  out.v = DenseMatrix(static_cast<std::size_t>(v_mat.rows()),
                      static_cast<std::size_t>(v_mat.cols()),
                      {v_mat.data(), v_mat.data() + v_mat.size()});
  return out;
}

}  // namespace ballproj
