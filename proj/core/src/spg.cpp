#include "ballproj/spg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "ballproj/norms.hpp"

namespace ballproj {

double bb_stepsize(std::span<const double> dx, std::span<const double> dg,
                   int variant, double step_min, double step_max,
                   double fallback) {
  if (dx.size() != dg.size()) {
    throw std::invalid_argument("bb_stepsize length mismatch");
  }
  if (variant != 1 && variant != 2) {
    throw std::invalid_argument("bb variant must be 1 or 2");
  }
  if (!(step_min > 0.0 && step_min < step_max)) {
    throw std::invalid_argument("bb step bounds must satisfy 0 < min < max");
  }
  const double num = variant == 1 ? detail::dot(dx, dx) : detail::dot(dx, dg);
  const double den = variant == 1 ? detail::dot(dg, dx) : detail::dot(dg, dg);
  const double raw = num / den;  // IEEE handles den == 0
  if (!std::isfinite(raw) || raw <= 0.0) {
    return std::clamp(fallback, step_min, step_max);
  }
  return std::clamp(raw, step_min, step_max);
}

double bb_stepsize(std::span<const double> dx, std::span<const double> dg,
                   int variant, double step_min, double step_max) {
  return bb_stepsize(dx, dg, variant, step_min, step_max, step_max);
}

namespace {

void check_options(const SpgOptions& opts) {
  if (opts.max_iterations < 0) {
    throw std::invalid_argument("negative iteration cap");
  }
  if (opts.memory < 1) throw std::invalid_argument("memory must be >= 1");
  if (!(opts.sufficient_decrease > 0.0 && opts.sufficient_decrease < 1.0)) {
    throw std::invalid_argument("sufficient decrease must lie in (0, 1)");
  }
  if (!(opts.step_min > 0.0 && opts.step_min < opts.step_max)) {
    throw std::invalid_argument("step bounds must satisfy 0 < min < max");
  }
  if (opts.bb_variant != 1 && opts.bb_variant != 2) {
    throw std::invalid_argument("bb variant must be 1 or 2");
  }
  if (!(opts.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
}

double inf_norm_diff(std::span<const double> a, std::span<const double> b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out = std::max(out, std::abs(a[i] - b[i]));
  }
  return out;
}

}  // namespace

std::pair<std::vector<double>, SolverReport> spg_solve(
    const ConstrainedProblem& prob, const SpgOptions& opts) {
  check_options(opts);
  if (!prob.loss || !prob.gradient) {
    throw std::invalid_argument("spg needs loss and gradient oracles");
  }
  const std::size_t d = prob.partition.dimension();

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  SolverReport report;
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  std::optional<double> theta_hint;
  const auto project = [&](const std::vector<double>& v) {
    const auto t0 = clock::now();
    ProjectionResult res =
        project_mixed_ball(GroupedVector(v, prob.partition), prob.gamma,
                           prob.q, prob.projection_cfg, prob.prox_tol,
                           theta_hint);
    report.projection_seconds +=
        std::chrono::duration<double>(clock::now() - t0).count();
    ++report.projection_count;
    if (!res.interior) theta_hint = res.theta_star;
    return res;
  };
  const auto feasibility_error = [&](const std::vector<double>& v) {
    const double norm =
        mixed_norm(GroupedVector(v, prob.partition), {Exponent(1.0), prob.q});
    return std::max(0.0, norm - prob.gamma);
  };
  const auto record = [&](std::size_t iter, double objective,
                          const std::vector<double>& v) {
    report.trace.push_back({iter, elapsed(), objective, feasibility_error(v)});
    if (opts.iterate_stride > 0 && iter % opts.iterate_stride == 0) {
      report.iterates.push_back(v);
    }
  };

  std::vector<double> x = opts.x0.value_or(std::vector<double>(d, 0.0));
  if (x.size() != d) throw std::invalid_argument("x0 dimension mismatch");
  x = project(x).x.data();

  double objective = prob.loss(x);
  std::vector<double> grad = prob.gradient(x);
  record(0, objective, x);

  std::deque<double> window{objective};  // last M accepted objectives

  std::vector<double> best_x = x;
  double best_objective = objective;

  // Unit-step projection: the stationarity residual and the first stepsize.
  std::vector<double> shifted(d);
  for (std::size_t i = 0; i < d; ++i) shifted[i] = x[i] - grad[i];
  std::vector<double> unit = project(shifted).x.data();
  double residual = inf_norm_diff(x, unit);
  if (residual <= opts.tolerance) {
    report.termination_reason = "converged";
    report.total_seconds = elapsed();
    return {x, report};
  }
  double eta =
      std::clamp(1.0 / residual, opts.step_min, opts.step_max);

  int variant = opts.bb_variant;
  bool previous_backtracked = false;
  std::string reason = "max_iterations";

  for (int t = 0; t < opts.max_iterations; ++t) {
    const double window_max = *std::max_element(window.begin(), window.end());

    double eta_try = eta;
    std::vector<double> x_new;
    double objective_new = 0.0;
    double delta = 0.0;
    bool accepted = false;
    bool backtracked = false;
    for (int ls = 0; ls <= opts.max_backtracks; ++ls) {
      for (std::size_t i = 0; i < d; ++i) {
        shifted[i] = x[i] - eta_try * grad[i];
      }
      x_new = project(shifted).x.data();
      objective_new = prob.loss(x_new);
      std::vector<double> step(d);
      for (std::size_t i = 0; i < d; ++i) step[i] = x_new[i] - x[i];
      delta = detail::dot(grad, step);
      if (objective_new <=
          window_max + opts.sufficient_decrease * delta) {
        accepted = true;
        break;
      }
      backtracked = true;
      // Quadratic interpolation of the scalar step, clipped to keep
      // progress bounded away from both ends.
      const double denom = 2.0 * (objective_new - objective - delta);
      double fraction = denom > 0.0 ? -delta / denom : 0.5;
      if (!std::isfinite(fraction)) fraction = 0.5;
      fraction = std::clamp(fraction, 0.1, 0.9);
      eta_try *= fraction;
    }
    if (!accepted) {
      reason = "line_search_failure";
      x = best_x;
      break;
    }

    std::vector<double> grad_new = prob.gradient(x_new);
    std::vector<double> dx(d), dg(d);
    for (std::size_t i = 0; i < d; ++i) {
      dx[i] = x_new[i] - x[i];
      dg[i] = grad_new[i] - grad[i];
    }

    x = std::move(x_new);
    grad = std::move(grad_new);
    objective = objective_new;
    report.iterations = static_cast<std::size_t>(t) + 1;
    record(report.iterations, objective, x);
    window.push_back(objective);
    if (window.size() > static_cast<std::size_t>(opts.memory)) {
      window.pop_front();
    }
    if (objective < best_objective) {
      best_objective = objective;
      best_x = x;
    }

    for (std::size_t i = 0; i < d; ++i) shifted[i] = x[i] - grad[i];
    unit = project(shifted).x.data();
    residual = inf_norm_diff(x, unit);
    if (residual <= opts.tolerance) {
      reason = "converged";
      break;
    }

    // Two rejected line searches in a row: switch the BB variant.
    if (backtracked && previous_backtracked) variant = 3 - variant;
    previous_backtracked = backtracked;
    eta = bb_stepsize(dx, dg, variant, opts.step_min, opts.step_max, eta);
  }

  report.termination_reason = reason;
  report.total_seconds = elapsed();
  return {x, report};
}

}  // namespace ballproj
