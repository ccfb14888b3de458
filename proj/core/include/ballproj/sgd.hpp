#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ballproj/problem.hpp"

namespace ballproj {

struct SgdOptions {
  std::size_t batch_size = 1;
  double eta0 = 0.0;           // <= 0: tune by the grid probe
  double decay_horizon = 0.0;  // T0 in eta_t = eta0/(1 + t/T0);
                               // <= 0: one epoch of steps; +inf: constant
  std::size_t projection_period = 1;  // project every k-th step
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> x0;  // default: the origin
  std::size_t iterate_stride = 0;         // 0: do not record iterates
};

/// Mini-batch stochastic projected gradient. Components are sampled
/// without replacement within an epoch (reshuffled each epoch); the iterate
/// is projected every projection_period steps and always after the last
/// step, and only those feasible iterates are reported.
std::pair<std::vector<double>, SolverReport> sgd_solve(
    const ConstrainedProblem& prob, const SgdOptions& opts);

}  // namespace ballproj
