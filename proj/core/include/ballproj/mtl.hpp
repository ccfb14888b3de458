#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ballproj/dense_matrix.hpp"
#include "ballproj/exponent.hpp"
#include "ballproj/grouped_vector.hpp"
#include "ballproj/problem.hpp"
#include "ballproj/sparse_matrix.hpp"

namespace ballproj {

/// One regression task: design X (rows x d) and labels y (one per row).
struct MtlTask {
  SparseMatrix x;
  std::vector<double> y;
};

/// Multitask lasso data: n tasks sharing d features, with the weight matrix
/// W (d x n) constrained by sum_i ||w^i||_q <= gamma over the rows w^i.
struct MtlProblem {
  std::vector<MtlTask> tasks;
  std::size_t feature_count = 0;  // d
  double gamma = 1.0;
  Exponent q = Exponent::inf();

  std::size_t task_count() const { return tasks.size(); }
  std::size_t row_count() const;  // r = sum of per-task rows
};

void validate(const MtlProblem& prob);

/// sum_j 0.5 * ||y_j - X_j w_j||^2.
double mtl_objective(const DenseMatrix& w, const MtlProblem& prob);

/// Column j is X_j^T (X_j w_j - y_j); the block structure is exploited, the
/// stacked design never materializes.
DenseMatrix mtl_gradient(const DenseMatrix& w, const MtlProblem& prob);

/// Row-sampled gradient estimate scaled by r/b: the sum over the selected
/// (task, row) pairs of each row's contribution. Rows of task j only touch
/// column j. With all rows selected this equals mtl_gradient bit for bit.
DenseMatrix mtl_stoch_gradient(
    const DenseMatrix& w, const MtlProblem& prob,
    std::span<const std::pair<std::size_t, std::size_t>> batch);

/// Shapes for synthetic data with planted row sparsity.
struct SynthSpec {
  std::size_t rows_per_task = 100;  // m
  std::size_t feature_count = 50;   // d
  std::size_t task_count = 4;       // n
  double density = 0.1;             // nonzero fraction of each X_j
  std::size_t active_rows = 5;      // planted nonzero rows of W
  double noise_sigma = -1.0;        // < 0: 0.01 * signal RMS
  std::uint64_t seed = 0;
};

struct SynthResult {
  MtlProblem problem;  // gamma set to the planted mixed norm
  DenseMatrix planted; // d x n
  std::vector<std::size_t> active_rows;
};

/// Deterministic under the seed: X_j entries appear independently with the
/// given density and standard normal values; labels are X_j w_j plus
/// Gaussian noise.
SynthResult generate_synthetic(const SynthSpec& spec);

/// JSON manifest listing d, n, gamma and per-task MatrixMarket/CSV paths.
MtlProblem load_mtl(const std::string& manifest_path);

/// Writes task files plus manifest.json into `dir`; returns the manifest
/// path. Planted metadata, when given, is embedded for reference.
std::string save_mtl(const MtlProblem& prob, const std::string& dir,
                     const SynthResult* planted = nullptr);

/// Scales every feature column to unit Euclidean norm across all tasks
/// (zero columns stay zero).
MtlProblem normalize_columns(const MtlProblem& prob);

/// Row-grouping adapter: W (d x n) maps to d groups of size n, so the
/// (1, q) mixed norm of the result is exactly sum_i ||w^i||_q. Round-trips
/// bit-exactly with from_row_grouped.
GroupedVector row_grouped(const DenseMatrix& w);
DenseMatrix from_row_grouped(std::span<const double> flat, std::size_t d,
                             std::size_t n);

/// Assembles the solver-facing problem over the flat row-grouped iterate.
/// Runs a directional finite-difference check of the gradient oracle and
/// throws if it disagrees beyond 1e-5 relative.
ConstrainedProblem make_constrained_problem(
    std::shared_ptr<const MtlProblem> prob);

}  // namespace ballproj
