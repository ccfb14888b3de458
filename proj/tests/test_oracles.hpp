// Independent reference implementations used only by tests. Everything here
// is deliberately dumb-but-sure (direct formulas, plain bisection, grid
// refinement) and shares no code with the library paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ballproj/exponent.hpp"
#include "ballproj/grouped_vector.hpp"

namespace oracle {

inline double lq_norm_direct(std::span<const double> v, double q) {
  if (v.empty()) return 0.0;
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  for (double x : v) acc += std::pow(std::abs(x), q);
  return std::pow(acc, 1.0 / q);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double conj(double e) {
  if (e == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(e)) return 1.0;
  return e / (e - 1.0);
}

// Mixed norm straight off the definition.
inline double mixed_norm_direct(const ballproj::GroupedVector& x, double p,
                                double q) {
  std::vector<double> gn(x.group_count());
  for (std::size_t i = 0; i < x.group_count(); ++i) {
    gn[i] = lq_norm_direct(x.group(i), q);
  }
  return lq_norm_direct(gn, p);
}

// Holder-equality candidate for any exponent pair, boundaries included:
// per-group lq maximizers combined with the lp-optimal group weights.
// Returns x with ||x||_{p,q} = 1 and <x, u> = ||u||_{p*,q*} (for u != 0).
inline ballproj::GroupedVector holder_maximizer(
    const ballproj::GroupedVector& u, double p, double q) {
  const double qs = conj(q);
  const double ps = conj(p);
  const std::size_t m = u.group_count();

  std::vector<std::vector<double>> unit(m);
  std::vector<double> xi(m, 0.0);  // per-group dual norms ||u^i||_{q*}
  for (std::size_t i = 0; i < m; ++i) {
    const auto g = u.group(i);
    unit[i].assign(g.size(), 0.0);
    xi[i] = lq_norm_direct(g, qs);
    if (xi[i] == 0.0) continue;
    if (q == 1.0) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < g.size(); ++j) {
        if (std::abs(g[j]) > std::abs(g[best])) best = j;
      }
      unit[i][best] = g[best] >= 0.0 ? 1.0 : -1.0;
    } else if (std::isinf(q)) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        unit[i][j] = g[j] > 0.0 ? 1.0 : (g[j] < 0.0 ? -1.0 : 0.0);
      }
    } else {
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g[j] == 0.0) continue;
        unit[i][j] = std::copysign(std::pow(std::abs(g[j]), qs - 1.0), g[j]);
      }
      const double norm = lq_norm_direct(unit[i], q);
      for (double& w : unit[i]) w /= norm;
    }
  }

  std::vector<double> coeff(m, 0.0);
  if (p == 1.0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (xi[i] > xi[best]) best = i;
    }
    coeff[best] = 1.0;
  } else if (std::isinf(p)) {
    coeff.assign(m, 1.0);
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      coeff[i] = std::pow(xi[i], ps - 1.0);
    }
    const double norm = lq_norm_direct(coeff, p);
    for (double& c : coeff) c /= norm;
  }

  std::vector<double> data(u.dimension(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t off = u.partition().offset(i);
    for (std::size_t j = 0; j < unit[i].size(); ++j) {
      data[off + j] = coeff[i] * unit[i][j];
    }
  }
  return u.with_data(std::move(data));
}

// --- lq-ball projection by pure nested bisection ---------------------------

// Root of t + lam*q*t^(q-1) = a on [0, a] by bisection only.
inline double power_prox_coordinate(double a, double lam, double q,
                                    int iters = 200) {
  if (a == 0.0) return 0.0;
  double lo = 0.0, hi = a;
  for (int k = 0; k < iters; ++k) {
    const double t = 0.5 * (lo + hi);
    const double phi = t + lam * q * std::pow(t, q - 1.0) - a;
    if (phi > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::vector<double> project_lq_ball_bisect(std::span<const double> v,
                                                  double radius, double q) {
  if (lq_norm_direct(v, q) <= radius) return {v.begin(), v.end()};
  std::vector<double> mag(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) mag[j] = std::abs(v[j]);

  const auto norm_at = [&](double lam) {
    std::vector<double> t(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      t[j] = power_prox_coordinate(mag[j], lam, q);
    }
    return lq_norm_direct(t, q);
  };

  double lo = 0.0, hi = 1.0;
  while (norm_at(hi) > radius) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("oracle bracket overflow");
  }
  for (int k = 0; k < 120; ++k) {
    const double lam = 0.5 * (lo + hi);
    if (norm_at(lam) > radius) {
      lo = lam;
    } else {
      hi = lam;
    }
  }
  const double lam = 0.5 * (lo + hi);
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = std::copysign(power_prox_coordinate(mag[j], lam, q), v[j]);
  }
  return out;
}

// --- group prox by closed forms / bisection ---------------------------------

// l1-ball projection via bisection on the threshold (no sorting).
inline std::vector<double> project_l1_ball_bisect(std::span<const double> v,
                                                  double radius) {
  double l1 = 0.0, peak = 0.0;
  for (double x : v) {
    l1 += std::abs(x);
    peak = std::max(peak, std::abs(x));
  }
  if (l1 <= radius) return {v.begin(), v.end()};
  const auto mass = [&](double tau) {
    double acc = 0.0;
    for (double x : v) acc += std::max(std::abs(x) - tau, 0.0);
    return acc;
  };
  double lo = 0.0, hi = peak;
  for (int k = 0; k < 200; ++k) {
    const double tau = 0.5 * (lo + hi);
    if (mass(tau) > radius) {
      lo = tau;
    } else {
      hi = tau;
    }
  }
  const double tau = 0.5 * (lo + hi);
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = std::copysign(std::max(std::abs(v[j]) - tau, 0.0), v[j]);
  }
  return out;
}

// prox of theta*||.||_q with bisection-backed pieces. Closed forms for
// q in {1, 2, inf}; otherwise the Moreau route through the nested-bisection
// ball projection with the conjugate exponent.
inline std::vector<double> prox_lq_bisect(std::span<const double> v,
                                          double theta, double q) {
  std::vector<double> out(v.begin(), v.end());
  if (theta == 0.0) return out;
  if (q == 1.0) {
    for (double& x : out) {
      x = std::copysign(std::max(std::abs(x) - theta, 0.0), x);
    }
    return out;
  }
  if (q == 2.0) {
    const double n2 = lq_norm_direct(v, 2.0);
    const double scale = n2 > theta ? 1.0 - theta / n2 : 0.0;
    for (double& x : out) x *= scale;
    return out;
  }
  const double qs = conj(q);
  std::vector<double> proj;
  if (std::isinf(q)) {
    proj = project_l1_ball_bisect(v, theta);
  } else {
    proj = project_lq_ball_bisect(v, theta, qs);
  }
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] - proj[j];
  return out;
}

// --- mixed-ball projection, bisection-only on theta --------------------------

inline ballproj::GroupedVector project_mixed_ball_bisect(
    const ballproj::GroupedVector& y, double gamma, double q,
    double rel_tol = 1e-14) {
  const auto prox_at = [&](double theta) {
    std::vector<double> data(y.dimension());
    for (std::size_t i = 0; i < y.group_count(); ++i) {
      const auto g = y.group(i);
      const std::vector<double> pg = prox_lq_bisect(g, theta, q);
      std::copy(pg.begin(), pg.end(),
                data.begin() +
                    static_cast<std::ptrdiff_t>(y.partition().offset(i)));
    }
    return y.with_data(std::move(data));
  };
  if (mixed_norm_direct(y, 1.0, q) <= gamma) return y;

  double theta_max = 0.0;
  const double qs = conj(q);
  for (std::size_t i = 0; i < y.group_count(); ++i) {
    theta_max = std::max(theta_max, lq_norm_direct(y.group(i), qs));
  }
  double lo = 0.0, hi = theta_max;
  while (hi - lo > rel_tol * theta_max) {
    const double theta = 0.5 * (lo + hi);
    if (mixed_norm_direct(prox_at(theta), 1.0, q) > gamma) {
      lo = theta;
    } else {
      hi = theta;
    }
  }
  return prox_at(0.5 * (lo + hi));
}

// --- brute force in 2-D -----------------------------------------------------

// min 0.5||x - v||^2 s.t. ||x||_q <= r by brute force. Infeasible inputs
// land on the boundary with signs copied from v, so sweep its exact
// parametrization t(u) = r * (u^(1/q), (1-u)^(1/q)), u in [0, 1], and
// refine the grid around the best sample. Every sample is feasible, which
// keeps the refinement error proportional to the cell width.
inline std::vector<double> project_ball_grid_2d(std::span<const double> v,
                                                double radius, double q,
                                                int levels = 25) {
  const double norm =
      std::isinf(q)
          ? std::max(std::abs(v[0]), std::abs(v[1]))
          : std::pow(std::pow(std::abs(v[0]), q) + std::pow(std::abs(v[1]), q),
                     1.0 / q);
  if (norm <= radius) return {v[0], v[1]};

  const double a0 = std::abs(v[0]);
  const double a1 = std::abs(v[1]);
  const auto objective = [&](double u) {
    const double t0 = radius * std::pow(u, 1.0 / q);
    const double t1 = radius * std::pow(1.0 - u, 1.0 / q);
    return 0.5 * ((t0 - a0) * (t0 - a0) + (t1 - a1) * (t1 - a1));
  };

  const int n = 2001;
  double center = 0.5, span = 1.0;
  double best_u = 0.5;
  for (int level = 0; level < levels; ++level) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const double u = std::clamp(
          center - span / 2 + span * k / (n - 1), 0.0, 1.0);
      const double obj = objective(u);
      if (obj < best) {
        best = obj;
        best_u = u;
      }
    }
    center = best_u;
    span *= 10.0 / (n - 1);
  }
  return {std::copysign(radius * std::pow(best_u, 1.0 / q), v[0]),
          std::copysign(radius * std::pow(1.0 - best_u, 1.0 / q), v[1])};
}

// --- random instances --------------------------------------------------------

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine);
  }
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(engine);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine);
  }
};

inline ballproj::GroupedVector random_grouped(Rng& rng, std::size_t max_groups,
                                              std::size_t max_group_size) {
  const std::size_t m = 1 + rng.index(max_groups);
  std::vector<std::size_t> offsets{0};
  for (std::size_t i = 0; i < m; ++i) {
    offsets.push_back(offsets.back() + 1 + rng.index(max_group_size));
  }
  std::vector<double> data(offsets.back());
  for (double& x : data) x = rng.normal();
  return {std::move(data), ballproj::GroupPartition(std::move(offsets))};
}

}  // namespace oracle
