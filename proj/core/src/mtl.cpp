#include "ballproj/mtl.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ballproj/io.hpp"
#include "ballproj/norms.hpp"

namespace ballproj {

using nlohmann::json;

std::size_t MtlProblem::row_count() const {
  std::size_t r = 0;
  for (const MtlTask& task : tasks) r += task.x.rows();
  return r;
}

void validate(const MtlProblem& prob) {
  if (prob.tasks.empty()) throw std::invalid_argument("mtl needs tasks");
  if (prob.feature_count == 0) {
    throw std::invalid_argument("mtl needs at least one feature");
  }
  for (std::size_t j = 0; j < prob.tasks.size(); ++j) {
    const MtlTask& task = prob.tasks[j];
    if (task.x.cols() != prob.feature_count) {
      throw std::invalid_argument(
          "task " + std::to_string(j) + " has " +
          std::to_string(task.x.cols()) + " features, expected " +
          std::to_string(prob.feature_count));
    }
    if (task.y.size() != task.x.rows()) {
      throw std::invalid_argument("task " + std::to_string(j) + " has " +
                                  std::to_string(task.y.size()) +
                                  " labels for " +
                                  std::to_string(task.x.rows()) + " rows");
    }
  }
  if (!(prob.gamma > 0.0)) {
    throw std::invalid_argument("mtl ball radius must be positive");
  }
}

namespace {

void check_shape(const DenseMatrix& w, const MtlProblem& prob) {
  if (w.rows() != prob.feature_count || w.cols() != prob.task_count()) {
    throw std::invalid_argument(
        "weight matrix is " + std::to_string(w.rows()) + "x" +
        std::to_string(w.cols()) + ", expected " +
        std::to_string(prob.feature_count) + "x" +
        std::to_string(prob.task_count()));
  }
}

// Loss over the flat row-major iterate (row i of W at flat[i*n .. i*n+n)).
double objective_flat(std::span<const double> flat, const MtlProblem& prob) {
  const std::size_t n = prob.task_count();
  double total = 0.0;
  std::vector<double> w_col(prob.feature_count);
  for (std::size_t j = 0; j < n; ++j) {
    const MtlTask& task = prob.tasks[j];
    for (std::size_t c = 0; c < prob.feature_count; ++c) {
      w_col[c] = flat[c * n + j];
    }
    for (std::size_t i = 0; i < task.x.rows(); ++i) {
      const auto cols = task.x.row_cols(i);
      const auto vals = task.x.row_values(i);
      double acc = 0.0;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        acc += vals[k] * w_col[cols[k]];
      }
      const double resid = acc - task.y[i];
      total += 0.5 * resid * resid;
    }
  }
  return total;
}

// Accumulates scale * (per-row gradient) for the given (task, row) pairs,
// which must be sorted task-major. Shared by the full and the stochastic
// gradient so the full batch reproduces mtl_gradient exactly.
void accumulate_rows(
    std::span<const double> flat, const MtlProblem& prob,
    std::span<const std::pair<std::size_t, std::size_t>> batch, double scale,
    std::vector<double>& grad) {
  const std::size_t n = prob.task_count();
  std::vector<double> w_col(prob.feature_count);
  std::vector<double> g_col(prob.feature_count);
  std::size_t pos = 0;
  while (pos < batch.size()) {
    const std::size_t j = batch[pos].first;
    if (j >= n) throw std::invalid_argument("task index out of range");
    const MtlTask& task = prob.tasks[j];
    for (std::size_t c = 0; c < prob.feature_count; ++c) {
      w_col[c] = flat[c * n + j];
      g_col[c] = 0.0;
    }
    for (; pos < batch.size() && batch[pos].first == j; ++pos) {
      const std::size_t i = batch[pos].second;
      if (i >= task.x.rows()) {
        throw std::invalid_argument("row index out of range");
      }
      const auto cols = task.x.row_cols(i);
      const auto vals = task.x.row_values(i);
      double acc = 0.0;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        acc += vals[k] * w_col[cols[k]];
      }
      const double coeff = scale * (acc - task.y[i]);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        g_col[cols[k]] += coeff * vals[k];
      }
    }
    for (std::size_t c = 0; c < prob.feature_count; ++c) {
      grad[c * n + j] += g_col[c];
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> all_rows(
    const MtlProblem& prob) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(prob.row_count());
  for (std::size_t j = 0; j < prob.task_count(); ++j) {
    for (std::size_t i = 0; i < prob.tasks[j].x.rows(); ++i) {
      pairs.emplace_back(j, i);
    }
  }
  return pairs;
}

}  // namespace

double mtl_objective(const DenseMatrix& w, const MtlProblem& prob) {
  check_shape(w, prob);
  return objective_flat(w.values(), prob);
}

DenseMatrix mtl_gradient(const DenseMatrix& w, const MtlProblem& prob) {
  check_shape(w, prob);
  std::vector<double> grad(w.values().size(), 0.0);
  accumulate_rows(w.values(), prob, all_rows(prob), 1.0, grad);
  return DenseMatrix(w.rows(), w.cols(), std::move(grad));
}

DenseMatrix mtl_stoch_gradient(
    const DenseMatrix& w, const MtlProblem& prob,
    std::span<const std::pair<std::size_t, std::size_t>> batch) {
  check_shape(w, prob);
  if (batch.empty()) throw std::invalid_argument("empty mini-batch");
  std::vector<std::pair<std::size_t, std::size_t>> sorted(batch.begin(),
                                                          batch.end());
  std::sort(sorted.begin(), sorted.end());
  const double scale = static_cast<double>(prob.row_count()) /
                       static_cast<double>(sorted.size());
  std::vector<double> grad(w.values().size(), 0.0);
  accumulate_rows(w.values(), prob, sorted, scale, grad);
  return DenseMatrix(w.rows(), w.cols(), std::move(grad));
}

SynthResult generate_synthetic(const SynthSpec& spec) {
  if (spec.rows_per_task == 0 || spec.feature_count == 0 ||
      spec.task_count == 0) {
    throw std::invalid_argument("synthetic sizes must be positive");
  }
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  if (spec.active_rows > spec.feature_count) {
    throw std::invalid_argument("more active rows than features");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  SynthResult out;
  out.problem.feature_count = spec.feature_count;
  out.problem.q = Exponent::inf();

  for (std::size_t j = 0; j < spec.task_count; ++j) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    for (std::size_t i = 0; i < spec.rows_per_task; ++i) {
      for (std::size_t c = 0; c < spec.feature_count; ++c) {
        if (uniform(rng) < spec.density) {
          triplets.emplace_back(i, c, normal(rng));
        }
      }
    }
    MtlTask task;
    task.x = SparseMatrix::from_triplets(spec.rows_per_task,
                                         spec.feature_count,
                                         std::move(triplets));
    task.y.assign(spec.rows_per_task, 0.0);
    out.problem.tasks.push_back(std::move(task));
  }

  // Plant the active rows.
  std::vector<std::size_t> rows(spec.feature_count);
  std::iota(rows.begin(), rows.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng);
  out.active_rows.assign(rows.begin(),
                         rows.begin() + static_cast<std::ptrdiff_t>(
                                            spec.active_rows));
  std::sort(out.active_rows.begin(), out.active_rows.end());
  out.planted = DenseMatrix(spec.feature_count, spec.task_count);
  for (std::size_t row : out.active_rows) {
    for (std::size_t j = 0; j < spec.task_count; ++j) {
      out.planted(row, j) = normal(rng);
    }
  }

  // Clean labels, then the noise level from their RMS when not specified.
  double signal_sq = 0.0;
  std::vector<double> w_col(spec.feature_count);
  for (std::size_t j = 0; j < spec.task_count; ++j) {
    for (std::size_t c = 0; c < spec.feature_count; ++c) {
      w_col[c] = out.planted(c, j);
    }
    out.problem.tasks[j].y = sparse_matvec(out.problem.tasks[j].x, w_col);
    for (double v : out.problem.tasks[j].y) signal_sq += v * v;
  }
  const std::size_t total_rows = spec.rows_per_task * spec.task_count;
  const double rms = std::sqrt(signal_sq / static_cast<double>(total_rows));
  double sigma = spec.noise_sigma;
  if (sigma < 0.0) sigma = rms > 0.0 ? 0.01 * rms : 1.0;
  if (sigma > 0.0) {
    for (auto& task : out.problem.tasks) {
      for (double& v : task.y) v += sigma * normal(rng);
    }
  }

  const double planted_norm =
      mixed_norm(row_grouped(out.planted), {Exponent(1.0), Exponent::inf()});
  out.problem.gamma = planted_norm > 0.0 ? planted_norm : 1.0;
  validate(out.problem);
  return out;
}

MtlProblem load_mtl(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open " + manifest_path);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw std::runtime_error(manifest_path + ": " + e.what());
  }

  MtlProblem prob;
  try {
    prob.feature_count = manifest.at("d").get<std::size_t>();
    prob.gamma = manifest.at("gamma").get<double>();
    if (manifest.contains("q")) {
      const auto& q = manifest.at("q");
      prob.q = q.is_string() ? Exponent::inf() : Exponent(q.get<double>());
    }
    const auto& tasks = manifest.at("tasks");
    const std::size_t n = manifest.at("n").get<std::size_t>();
    if (tasks.size() != n) {
      throw std::runtime_error("manifest lists " +
                               std::to_string(tasks.size()) +
                               " tasks but declares n = " + std::to_string(n));
    }
    const auto base = std::filesystem::path(manifest_path).parent_path();
    for (const auto& entry : tasks) {
      MtlTask task;
      const std::string x_path =
          (base / entry.at("x").get<std::string>()).string();
      const std::string y_path =
          (base / entry.at("y").get<std::string>()).string();
      task.x = load_matrix_market(x_path);
      task.y = load_vector_csv(y_path);
      if (task.x.cols() != prob.feature_count) {
        throw std::runtime_error(x_path + ": has " +
                                 std::to_string(task.x.cols()) +
                                 " columns, manifest declares d = " +
                                 std::to_string(prob.feature_count));
      }
      if (task.y.size() != task.x.rows()) {
        throw std::runtime_error(y_path + ": " + std::to_string(task.y.size()) +
                                 " labels for " +
                                 std::to_string(task.x.rows()) + " rows");
      }
      prob.tasks.push_back(std::move(task));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(manifest_path + ": " + e.what());
  }
  validate(prob);
  return prob;
}

std::string save_mtl(const MtlProblem& prob, const std::string& dir,
                     const SynthResult* planted) {
  validate(prob);
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["d"] = prob.feature_count;
  manifest["n"] = prob.task_count();
  manifest["gamma"] = prob.gamma;
  if (prob.q.is_inf()) {
    manifest["q"] = "inf";
  } else {
    manifest["q"] = prob.q.value();
  }
  json tasks = json::array();
  for (std::size_t j = 0; j < prob.task_count(); ++j) {
    const std::string x_name = "task" + std::to_string(j) + "_X.mtx";
    const std::string y_name = "task" + std::to_string(j) + "_y.csv";
    save_matrix_market(prob.tasks[j].x,
                       (std::filesystem::path(dir) / x_name).string());
    save_vector_csv(prob.tasks[j].y,
                    (std::filesystem::path(dir) / y_name).string());
    tasks.push_back({{"x", x_name}, {"y", y_name}});
  }
  manifest["tasks"] = std::move(tasks);
  if (planted != nullptr) {
    manifest["planted_rows"] = planted->active_rows;
    manifest["planted_norm_1inf"] = mixed_norm(
        row_grouped(planted->planted), {Exponent(1.0), Exponent::inf()});
  }
  const std::string path =
      (std::filesystem::path(dir) / "manifest.json").string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << manifest.dump(2) << "\n";
  return path;
}

MtlProblem normalize_columns(const MtlProblem& prob) {
  validate(prob);
  std::vector<double> col_sq(prob.feature_count, 0.0);
  for (const MtlTask& task : prob.tasks) {
    for (std::size_t i = 0; i < task.x.rows(); ++i) {
      const auto cols = task.x.row_cols(i);
      const auto vals = task.x.row_values(i);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        col_sq[cols[k]] += vals[k] * vals[k];
      }
    }
  }
  std::vector<double> scale(prob.feature_count, 1.0);
  for (std::size_t c = 0; c < prob.feature_count; ++c) {
    if (col_sq[c] > 0.0) scale[c] = 1.0 / std::sqrt(col_sq[c]);
  }

  MtlProblem out = prob;
  for (MtlTask& task : out.tasks) {
    std::vector<std::size_t> offsets(task.x.row_offsets().begin(),
                                     task.x.row_offsets().end());
    std::vector<std::size_t> cols(task.x.col_indices().begin(),
                                  task.x.col_indices().end());
    std::vector<double> vals(task.x.values().begin(), task.x.values().end());
    for (std::size_t k = 0; k < vals.size(); ++k) vals[k] *= scale[cols[k]];
    task.x = SparseMatrix(task.x.rows(), task.x.cols(), std::move(offsets),
                          std::move(cols), std::move(vals));
  }
  return out;
}

GroupedVector row_grouped(const DenseMatrix& w) {
  // Row-major storage: rows are already contiguous, one group per row.
  return GroupedVector(w.values(),
                       GroupPartition::uniform(w.rows(), w.cols()));
}

DenseMatrix from_row_grouped(std::span<const double> flat, std::size_t d,
                             std::size_t n) {
  return DenseMatrix(d, n, {flat.begin(), flat.end()});
}

ConstrainedProblem make_constrained_problem(
    std::shared_ptr<const MtlProblem> prob) {
  if (!prob) throw std::invalid_argument("null mtl problem");
  validate(*prob);
  const std::size_t d = prob->feature_count;
  const std::size_t n = prob->task_count();
  const std::size_t r = prob->row_count();

  // Flat index c maps to the task whose row range contains c.
  std::vector<std::size_t> task_offsets{0};
  for (const MtlTask& task : prob->tasks) {
    task_offsets.push_back(task_offsets.back() + task.x.rows());
  }

  double frob_sq = 0.0;
  for (const MtlTask& task : prob->tasks) {
    for (double v : task.x.values()) frob_sq += v * v;
  }

  ConstrainedProblem cp;
  cp.partition = GroupPartition::uniform(d, n);
  cp.q = prob->q;
  cp.gamma = prob->gamma;
  cp.component_count = r;
  cp.stepsize_hint = frob_sq > 0.0 ? 1.0 / frob_sq : 1.0;
  cp.loss = [prob](std::span<const double> flat) {
    return objective_flat(flat, *prob);
  };
  cp.gradient = [prob](std::span<const double> flat) {
    std::vector<double> grad(flat.size(), 0.0);
    accumulate_rows(flat, *prob, all_rows(*prob), 1.0, grad);
    return grad;
  };
  cp.stochastic_gradient = [prob, task_offsets](
                               std::span<const double> flat,
                               std::span<const std::size_t> indices) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(indices.size());
    for (std::size_t flat_index : indices) {
      const auto it = std::upper_bound(task_offsets.begin(),
                                       task_offsets.end(), flat_index);
      const std::size_t j =
          static_cast<std::size_t>(it - task_offsets.begin()) - 1;
      pairs.emplace_back(j, flat_index - task_offsets[j]);
    }
    std::sort(pairs.begin(), pairs.end());
    const double scale = static_cast<double>(
                             task_offsets.back()) /
                         static_cast<double>(pairs.size());
    std::vector<double> grad(flat.size(), 0.0);
    accumulate_rows(flat, *prob, pairs, scale, grad);
    return grad;
  };

  const double mismatch = gradient_check(cp, 20, 0x5eedf00dULL);
  if (mismatch > 1e-5) {
    throw std::runtime_error(
        "gradient oracle failed the finite-difference self-check: " +
        std::to_string(mismatch));
  }
  return cp;
}

}  // namespace ballproj
