#pragma once

#include <span>
#include <vector>

#include "ballproj/dense_matrix.hpp"
#include "ballproj/exponent.hpp"
#include "ballproj/prox.hpp"
#include "ballproj/root_finding.hpp"

namespace ballproj {

/// prox of theta*||.||_q over singular values (Schatten-q): X has the same
/// singular vectors as Y with prox_lq applied to the spectrum. q = 1 is
/// singular value thresholding.
DenseMatrix prox_schatten(const DenseMatrix& y, double theta, Exponent q,
                          const ProxTolerance& tol = {});

struct MatrixProjectionResult {
  std::vector<DenseMatrix> blocks;
  double theta_star = 0.0;
  double residual = 0.0;
  int evaluations = 0;
  bool interior = false;
};

/// Projection of the block list onto {X : sum_i ||X^i||_q <= gamma}. Each
/// block is decomposed once; the problem reduces to the vector projection
/// of the grouped singular values (one group per block), after which the
/// blocks are rebuilt around the shrunk spectra. Feasible inputs are
/// returned unchanged.
MatrixProjectionResult project_matrix_mixed_ball(
    std::span<const DenseMatrix> blocks, double gamma, Exponent q,
    const RootConfig& cfg = {}, const ProxTolerance& tol = {});

}  // namespace ballproj
