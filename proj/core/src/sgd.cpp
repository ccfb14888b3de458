#include "ballproj/sgd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ballproj/norms.hpp"

namespace ballproj {

namespace {

void check_options(const ConstrainedProblem& prob, const SgdOptions& opts) {
  if (!prob.stochastic_gradient || prob.component_count == 0) {
    throw std::invalid_argument("sgd needs a stochastic gradient oracle");
  }
  if (!prob.loss) throw std::invalid_argument("sgd needs a loss oracle");
  if (opts.batch_size < 1 || opts.batch_size > prob.component_count) {
    throw std::invalid_argument("batch size must lie in [1, r]");
  }
  if (opts.projection_period < 1) {
    throw std::invalid_argument("projection period must be >= 1");
  }
  if (opts.epochs < 1) throw std::invalid_argument("need at least one epoch");
}

// One pass of `steps` mini-batch updates from x, returning the objective of
// the projected endpoint. Used by the stepsize probe; every candidate sees
// the same sampling order.
double probe_objective(const ConstrainedProblem& prob,
                       const std::vector<std::size_t>& order,
                       std::size_t batch, std::size_t steps, double eta,
                       std::vector<double> x) {
  const std::size_t r = prob.component_count;
  std::vector<std::size_t> indices;
  std::size_t cursor = 0;
  for (std::size_t s = 0; s < steps && cursor < r; ++s) {
    const std::size_t take = std::min(batch, r - cursor);
    indices.assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                   order.begin() + static_cast<std::ptrdiff_t>(cursor + take));
    cursor += take;
    std::sort(indices.begin(), indices.end());
    const std::vector<double> ghat = prob.stochastic_gradient(x, indices);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= eta * ghat[i];
    for (double& xi : x) {
      if (!std::isfinite(xi)) return std::numeric_limits<double>::infinity();
    }
  }
  const GroupedVector projected = project_mixed_ball(
      GroupedVector(std::move(x), prob.partition), prob.gamma, prob.q,
      prob.projection_cfg, prob.prox_tol).x;
  return prob.loss(projected.data());
}

}  // namespace

std::pair<std::vector<double>, SolverReport> sgd_solve(
    const ConstrainedProblem& prob, const SgdOptions& opts) {
  check_options(prob, opts);
  const std::size_t d = prob.partition.dimension();
  const std::size_t r = prob.component_count;
  const std::size_t b = opts.batch_size;
  const std::size_t batches_per_epoch = (r + b - 1) / b;
  const std::size_t total_steps = batches_per_epoch * opts.epochs;

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  SolverReport report;
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  std::optional<double> theta_hint;
  const auto project = [&](std::vector<double> v) {
    const auto t0 = clock::now();
    ProjectionResult res = project_mixed_ball(
        GroupedVector(std::move(v), prob.partition), prob.gamma, prob.q,
        prob.projection_cfg, prob.prox_tol, theta_hint);
    report.projection_seconds +=
        std::chrono::duration<double>(clock::now() - t0).count();
    ++report.projection_count;
    if (!res.interior) theta_hint = res.theta_star;
    return res.x.data();
  };
  const auto record = [&](std::size_t step, const std::vector<double>& v) {
    const double norm =
        mixed_norm(GroupedVector(v, prob.partition), {Exponent(1.0), prob.q});
    report.trace.push_back(
        {step, elapsed(), prob.loss(v), std::max(0.0, norm - prob.gamma)});
    if (opts.iterate_stride > 0 &&
        (report.trace.size() - 1) % opts.iterate_stride == 0) {
      report.iterates.push_back(v);
    }
  };

  std::vector<double> x = opts.x0.value_or(std::vector<double>(d, 0.0));
  if (x.size() != d) throw std::invalid_argument("x0 dimension mismatch");
  x = project(std::move(x));
  record(0, x);

  // eta_t = eta0 / (1 + t / T0); T0 defaults to one epoch of steps.
  const double horizon = opts.decay_horizon > 0.0
                             ? opts.decay_horizon
                             : static_cast<double>(batches_per_epoch);

  double eta0 = opts.eta0;
  if (!(eta0 > 0.0)) {
    // Grid probe: ten steps per candidate on a fixed shuffled prefix, pick
    // the candidate with the lowest projected objective.
    std::mt19937_64 probe_rng(opts.seed + 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), probe_rng);
    const std::size_t steps = std::min<std::size_t>(10, batches_per_epoch);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k >= -6; --k) {
      const double candidate = std::pow(10.0, k) * prob.stepsize_hint;
      const double obj = probe_objective(prob, order, b, steps, candidate, x);
      if (obj < best) {
        best = obj;
        eta0 = candidate;
      }
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> batch;

  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t cursor = 0;
    while (cursor < r) {
      const std::size_t take = std::min(b, r - cursor);
      batch.assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                   order.begin() + static_cast<std::ptrdiff_t>(cursor + take));
      cursor += take;
      std::sort(batch.begin(), batch.end());

      const double eta = eta0 / (1.0 + static_cast<double>(t) / horizon);
      const std::vector<double> ghat = prob.stochastic_gradient(x, batch);
      for (std::size_t i = 0; i < d; ++i) x[i] -= eta * ghat[i];
      ++t;

      if (t % opts.projection_period == 0 || t == total_steps) {
        x = project(std::move(x));
        record(t, x);
      }
    }
  }

  report.iterations = t;
  report.termination_reason = "epochs_completed";
  report.total_seconds = elapsed();
  return {x, report};
}

}  // namespace ballproj
