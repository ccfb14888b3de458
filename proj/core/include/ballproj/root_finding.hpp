#pragma once

#include <functional>
#include <optional>

namespace ballproj {

/// Settings for the scalar root search. At this level both tolerances are
/// absolute; project_mixed_ball scales them by max(1, gamma) and by the
/// bracket width before calling in.
struct RootConfig {
  double feasibility_tol = 1e-10;  // accept when |g| falls below this
  double bracket_tol = 1e-13;      // or when the bracket shrinks below this
  int max_iterations = 200;
  bool assume_decreasing = false;  // degrade to pure bisection on the first
                                   // non-monotone evaluation (noisy g)
};

struct RootResult {
  double root = 0.0;
  double value = 0.0;  // g at the root
  int evaluations = 0;
  bool width_converged = false;  // stopped on bracket width, not |g|
};

/// Finds the root of a continuous g with g(lo) > 0 >= g(hi) (up to the
/// feasibility tolerance). Interpolation candidates (inverse quadratic or
/// secant) are accepted only strictly inside the bracket and must keep
/// shrinking it, otherwise the step falls back to bisection. An optional
/// hint is tried first when it lies strictly inside the bracket.
RootResult find_root_detailed(const std::function<double(double)>& g,
                              double lo, double hi, const RootConfig& cfg,
                              std::optional<double> hint = std::nullopt);

double find_root(const std::function<double(double)>& g, double lo, double hi,
                 const RootConfig& cfg);

}  // namespace ballproj
