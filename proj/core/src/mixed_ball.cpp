#include "ballproj/mixed_ball.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ballproj/norms.hpp"

namespace ballproj {

ProjectionResult project_mixed_ball(const GroupedVector& y, double gamma,
                                    Exponent q, const RootConfig& cfg,
                                    const ProxTolerance& tol,
                                    std::optional<double> theta_hint) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("ball radius gamma must be positive");
  }
  const NormSpec spec{Exponent(1.0), q};

  ProjectionResult result{y};
  if (mixed_norm(y, spec) <= gamma) {
    result.interior = true;
    return result;
  }

  // theta beyond the dual norm maps y to 0, so the multiplier lives in
  // [0, theta_max] and g changes sign there.
  const double theta_max = dual_mixed_norm(y, spec);

  int evaluations = 0;
  GroupedVector last = y;
  double last_theta = -1.0;
  const auto g = [&](double theta) {
    last = prox_grouped(y, theta, q, tol);
    last_theta = theta;
    ++evaluations;
    return mixed_norm(last, spec) - gamma;
  };

  RootConfig scaled = cfg;
  scaled.feasibility_tol = cfg.feasibility_tol * std::max(1.0, gamma);
  scaled.bracket_tol = cfg.bracket_tol * theta_max;
  // The general-q prox is only computed approximately; let the root search
  // fall back to bisection if that noise breaks monotonicity.
  scaled.assume_decreasing = !(q.is_one() || q.value() == 2.0 || q.is_inf());

  const RootResult root =
      find_root_detailed(g, 0.0, theta_max, scaled, theta_hint);

  if (root.root != last_theta) {
    last = prox_grouped(y, root.root, q, tol);
    ++evaluations;
  }
  result.x = std::move(last);
  result.theta_star = root.root;
  result.residual = std::abs(mixed_norm(result.x, spec) - gamma);
  result.evaluations = evaluations;
  return result;
}

}  // namespace ballproj
