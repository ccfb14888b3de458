#pragma once

#include <span>
#include <vector>

#include "ballproj/exponent.hpp"
#include "ballproj/grouped_vector.hpp"

namespace ballproj {

/// Tolerances for the approximate (general-q) proximity operators.
struct ProxTolerance {
  double inner_tol = 1e-12;  // per-coordinate stationarity, relative to the
                             // peak magnitude of the input
  double outer_tol = 1e-10;  // multiplier equation |  ||x||_q - r  | <= outer_tol * r
  int max_iterations = 200;  // budget per root solve (inner and outer)
};

void validate(const ProxTolerance& tol);

/// Soft thresholding: sign(v) .* max(|v| - theta, 0).
std::vector<double> prox_l1(std::span<const double> v, double theta);

/// Block soft thresholding: max(1 - theta/||v||_2, 0) * v.
std::vector<double> prox_l2(std::span<const double> v, double theta);

/// Euclidean projection onto {x : ||x||_1 <= radius} by the exact
/// sort-and-scan threshold.
std::vector<double> project_l1_ball(std::span<const double> v, double radius);

/// prox of theta*||.||_inf via the Moreau decomposition:
/// v - project_l1_ball(v, theta).
std::vector<double> prox_linf(std::span<const double> v, double theta);

/// Detailed output of the general-q ball projection: the multiplier of the
/// power-form stationarity t + multiplier*q*t^(q-1) = |v_j| and the achieved
/// constraint residual |  ||x||_q - r  |.
struct LqProjection {
  std::vector<double> x;
  double multiplier = 0.0;
  double residual = 0.0;
  bool interior = false;
  int outer_iterations = 0;
};

/// Euclidean projection onto {x : ||x||_q <= radius} for 1 < q < inf.
/// Interior inputs return unchanged. Otherwise each coordinate magnitude
/// solves the monotone scalar equation t + lambda*q*t^(q-1) = |v_j| by
/// safeguarded Newton, and the multiplier lambda is driven to
/// |  ||x(lambda)||_q - r  | <= outer_tol*r by a safeguarded bracket search
/// with geometric bracket growth.
LqProjection project_lq_ball_detailed(std::span<const double> v, double radius,
                                      Exponent q,
                                      const ProxTolerance& tol = {});
std::vector<double> project_lq_ball(std::span<const double> v, double radius,
                                    Exponent q, const ProxTolerance& tol = {});

/// prox of theta*||.||_q: closed forms for q in {1, 2, inf}, otherwise
/// v - project_lq_ball(v, theta, q*) with the conjugate exponent q*.
std::vector<double> prox_lq(std::span<const double> v, double theta,
                            Exponent q, const ProxTolerance& tol = {});

/// Applies prox_lq independently to every group.
GroupedVector prox_grouped(const GroupedVector& y, double theta, Exponent q,
                           const ProxTolerance& tol = {});

}  // namespace ballproj
