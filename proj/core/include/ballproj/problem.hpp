#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ballproj/exponent.hpp"
#include "ballproj/group_partition.hpp"
#include "ballproj/mixed_ball.hpp"

namespace ballproj {

/// A differentiable loss constrained to a mixed-norm ball
/// {x : ||x||_{1,q} <= gamma} over the given grouping.
///
/// The optional stochastic oracle receives sorted component indices and
/// returns an unbiased gradient estimate that already carries the r/b
/// scale, where r = component_count and b is the batch size.
struct ConstrainedProblem {
  GroupPartition partition = GroupPartition::single(1);
  Exponent q = Exponent::inf();
  double gamma = 1.0;

  std::function<double(std::span<const double>)> loss;
  std::function<std::vector<double>(std::span<const double>)> gradient;

  std::size_t component_count = 0;  // r; 0 when no stochastic oracle exists
  std::function<std::vector<double>(std::span<const double>,
                                    std::span<const std::size_t>)>
      stochastic_gradient;

  double stepsize_hint = 1.0;  // base scale for the sgd stepsize probe

  RootConfig projection_cfg{};
  ProxTolerance prox_tol{};
};

/// Largest relative mismatch between central finite differences of the loss
/// and the directional derivative from the gradient oracle, over `points`
/// random points and directions.
double gradient_check(const ConstrainedProblem& prob, int points,
                      std::uint64_t seed);

struct TracePoint {
  std::size_t iteration = 0;
  double seconds = 0.0;  // wall clock since solver start (monotonic)
  double objective = 0.0;
  double feasibility_error = 0.0;  // max(0, ||x||_{1,q} - gamma)
};

struct SolverReport {
  std::vector<TracePoint> trace;  // the projected (feasible) iterates
  std::vector<std::vector<double>> iterates;  // optional, thinned
  std::size_t iterations = 0;
  std::size_t projection_count = 0;
  double projection_seconds = 0.0;
  double total_seconds = 0.0;
  std::string termination_reason;
};

}  // namespace ballproj
