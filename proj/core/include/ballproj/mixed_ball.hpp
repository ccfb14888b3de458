#pragma once

#include <optional>

#include "ballproj/exponent.hpp"
#include "ballproj/grouped_vector.hpp"
#include "ballproj/prox.hpp"
#include "ballproj/root_finding.hpp"

namespace ballproj {

/// Projection output. For interior inputs theta_star is 0 and x equals the
/// input; otherwise the active constraint holds to the configured
/// feasibility tolerance.
struct ProjectionResult {
  GroupedVector x;
  double theta_star = 0.0;
  double residual = 0.0;  // |g(theta_star)| = |  ||x||_{1,q} - gamma  |
  int evaluations = 0;    // prox_grouped calls
  bool interior = false;
};

/// Euclidean projection of y onto {x : sum_i ||x^i||_q <= gamma} by
/// root-finding on the multiplier of the grouped lq prox. The residual
/// g(theta) = ||prox(y, theta)||_{1,q} - gamma is decreasing on
/// [0, ||y||_{inf,q*}] and changes sign there, so the root is bracketed
/// from the start.
///
/// Tolerances: the root is accepted when |g| <= cfg.feasibility_tol *
/// max(1, gamma) or the bracket shrinks below cfg.bracket_tol * theta_max.
/// theta_hint seeds the first interpolation candidate (a previous
/// theta_star) and never alters the safeguard bracket.
ProjectionResult project_mixed_ball(
    const GroupedVector& y, double gamma, Exponent q,
    const RootConfig& cfg = {}, const ProxTolerance& tol = {},
    std::optional<double> theta_hint = std::nullopt);

}  // namespace ballproj
