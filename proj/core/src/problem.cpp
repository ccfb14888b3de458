#include "ballproj/problem.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ballproj/norms.hpp"

namespace ballproj {

double gradient_check(const ConstrainedProblem& prob, int points,
                      std::uint64_t seed) {
  if (!prob.loss || !prob.gradient) {
    throw std::invalid_argument("problem lacks loss or gradient oracle");
  }
  const std::size_t d = prob.partition.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  double worst = 0.0;
  for (int p = 0; p < points; ++p) {
    std::vector<double> x(d), u(d);
    for (auto& xi : x) xi = normal(rng);
    double unorm = 0.0;
    for (auto& ui : u) {
      ui = normal(rng);
      unorm += ui * ui;
    }
    unorm = std::sqrt(unorm);
    for (auto& ui : u) ui /= unorm;

    const std::vector<double> g = prob.gradient(x);
    const double directional = detail::dot(g, u);

    const double h =
        std::cbrt(std::numeric_limits<double>::epsilon()) *
        (1.0 + detail::peak_magnitude(x));
    std::vector<double> plus(d), minus(d);
    for (std::size_t i = 0; i < d; ++i) {
      plus[i] = x[i] + h * u[i];
      minus[i] = x[i] - h * u[i];
    }
    const double fd = (prob.loss(plus) - prob.loss(minus)) / (2.0 * h);

    const double denom =
        std::max({1.0, std::abs(fd), std::abs(directional)});
    worst = std::max(worst, std::abs(fd - directional) / denom);
  }
  return worst;
}

}  // namespace ballproj
