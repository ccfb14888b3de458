#include "ballproj/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ballproj/norms.hpp"
#include "ballproj/parallel.hpp"

namespace ballproj {

void validate(const ProxTolerance& tol) {
  if (!(tol.inner_tol > 0.0 && tol.inner_tol <= 1e-2) ||
      !(tol.outer_tol > 0.0 && tol.outer_tol <= 1e-2)) {
    throw std::invalid_argument("prox tolerances must lie in (0, 1e-2]");
  }
  if (tol.max_iterations < 1) {
    throw std::invalid_argument("prox iteration budget must be >= 1");
  }
}

namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("theta must be finite and nonnegative");
  }
}

}  // namespace

std::vector<double> prox_l1(std::span<const double> v, double theta) {
  check_theta(theta);
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double mag = std::abs(v[j]) - theta;
    out[j] = mag > 0.0 ? std::copysign(mag, v[j]) : 0.0;
  }
  return out;
}

std::vector<double> prox_l2(std::span<const double> v, double theta) {
  check_theta(theta);
  const double norm = lq_norm(v, Exponent(2.0));
  if (norm <= theta) return std::vector<double>(v.size(), 0.0);
  const double scale = 1.0 - theta / norm;
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = scale * v[j];
  return out;
}

std::vector<double> project_l1_ball(std::span<const double> v, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("l1 ball radius must be positive");
  }
  double l1 = 0.0;
  for (double x : v) l1 += std::abs(x);
  if (l1 <= radius) return {v.begin(), v.end()};

  // Exact threshold by descending sort and breakpoint scan.
  std::vector<double> mag(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) mag[j] = std::abs(v[j]);
  std::sort(mag.begin(), mag.end(), std::greater<>());
  double prefix = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    prefix += mag[k];
    const double candidate = (prefix - radius) / static_cast<double>(k + 1);
    if (mag[k] > candidate) {
      tau = candidate;
    } else {
      break;
    }
  }
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double m = std::abs(v[j]) - tau;
    out[j] = m > 0.0 ? std::copysign(m, v[j]) : 0.0;
  }
  return out;
}

std::vector<double> prox_linf(std::span<const double> v, double theta) {
  check_theta(theta);
  if (theta == 0.0) return {v.begin(), v.end()};
  const std::vector<double> proj = project_l1_ball(v, theta);
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] - proj[j];
  return out;
}

namespace {

// Root of t + exp(mu + ln q + (q-1) ln t) = a on (0, a], for a in (0, 1].
// The multiplier enters only through exponent sums, so values of exp(mu)
// far outside double range remain usable. A short Newton run from t = a
// handles benign exponents; stiff ones (the power term moves by a full
// e-fold per Newton step, so plain Newton creeps) fall through to
// bisection plus Newton on ln t, whose conditioning does not depend on q.
// A bracket that certifies the root lies below 1e-14 * a (where the
// derivative is singular for q < 2) snaps the coordinate to 0.
double solve_inner(double a, double mu, double q, double ln_q, double ln_qm1,
                   double inner_tol, int max_iter) {
  if (a == 0.0) return 0.0;
  const double beta = mu + ln_q;  // power term is exp(beta + kappa ln t)
  const double kappa = q - 1.0;
  const double tol = inner_tol * a;
  const double snap = 1e-14 * a;

  const auto phi_at = [&](double t) {
    const double e = beta + kappa * std::log(t);
    if (e > 700.0) return std::numeric_limits<double>::infinity();
    return t + std::exp(e) - a;
  };

  double lo = 0.0;  // phi < 0 side (0 exclusive)
  double hi = a;    // phi >= 0 side
  double t = a;
  int budget = max_iter;

  // Fast path: Newton in t.
  for (int k = 0; k < 10 && budget > 0; ++k, --budget) {
    const double phi = phi_at(t);
    if (std::abs(phi) <= tol) return t;
    if (phi > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    if (hi <= snap) return 0.0;
    double next;
    const double ed = beta + ln_qm1 + (kappa - 1.0) * std::log(t);
    if (!std::isfinite(phi) || ed > 700.0) {
      next = 0.5 * (lo + hi);
    } else {
      next = t - phi / (1.0 + std::exp(ed));
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    }
    t = next;
  }

  // Certify the snap zone before switching to log space.
  if (lo == 0.0) {
    const double phi_snap = phi_at(snap);
    --budget;
    if (phi_snap >= 0.0) return 0.0;
    if (std::abs(phi_snap) <= tol) return snap;
    lo = snap;
  }

  double s_lo = std::log(lo);
  double s_hi = std::log(hi);
  double best = t;
  double best_resid = std::abs(phi_at(t));
  while (budget > 0) {
    const double s = 0.5 * (s_lo + s_hi);
    t = std::exp(s);
    const double phi = phi_at(t);
    --budget;
    if (std::abs(phi) <= tol) return t;
    if (std::isfinite(phi) && std::abs(phi) < best_resid) {
      best_resid = std::abs(phi);
      best = t;
    }
    if (phi > 0.0) {
      s_hi = s;
    } else {
      s_lo = s;
    }
    // Newton on ln t once the bracket is tight enough for its quadratic
    // zone (the power term varies by exp(kappa * ds) across the bracket).
    if (std::isfinite(phi) && kappa * (s_hi - s_lo) < 0.5) {
      const double slope = t + kappa * (phi - t + a);  // t + kappa * term
      double s_next = s - phi / slope;
      while (budget > 0) {
        if (!(s_next > s_lo && s_next < s_hi)) break;  // resume bisection
        t = std::exp(s_next);
        const double p = phi_at(t);
        --budget;
        if (std::abs(p) <= tol) return t;
        if (p > 0.0) {
          s_hi = s_next;
        } else {
          s_lo = s_next;
        }
        const double sl = t + kappa * (p - t + a);
        s_next -= p / sl;
      }
    }
    if (s_hi - s_lo < 1e-17) break;  // bracket exhausted
  }
  return best;
}

}  // namespace

LqProjection project_lq_ball_detailed(std::span<const double> v, double radius,
                                      Exponent q, const ProxTolerance& tol) {
  validate(tol);
  if (q.is_one() || q.is_inf()) {
    throw std::invalid_argument(
        "project_lq_ball requires 1 < q < inf (use the closed forms at the "
        "boundary exponents)");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball radius must be positive");
  }

  LqProjection result;
  if (lq_norm(v, q) <= radius) {
    result.x.assign(v.begin(), v.end());
    result.interior = true;
    return result;
  }

  // Work on |v| / ||v||_inf; the problem is positively homogeneous.
  const double peak = detail::peak_magnitude(v);
  std::vector<double> a(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) a[j] = std::abs(v[j]) / peak;
  const double target = radius / peak;

  const double qv = q.value();
  const double ln_q = std::log(qv);
  const double ln_qm1 = std::log(qv - 1.0);

  // t always holds the inner solution for the most recent multiplier, so
  // the accepted iterate and the reported residual stay in sync.
  std::vector<double> t(v.size());
  double mu_last = 0.0;
  double h_last = 0.0;
  int evals = 0;
  const auto residual_at = [&](double mu) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      t[j] = solve_inner(a[j], mu, qv, ln_q, ln_qm1, tol.inner_tol,
                         tol.max_iterations);
    }
    mu_last = mu;
    h_last = lq_norm(t, q) - target;
    ++evals;
    return h_last;
  };
  const double accept = tol.outer_tol * target;
  const auto fail = [&](const std::string& what) {
    throw std::runtime_error("lq ball projection " + what + ": residual " +
                             std::to_string(std::abs(h_last) * peak) +
                             " after " + std::to_string(evals) +
                             " evaluations");
  };

  // Bracket the multiplier in log space with geometrically growing steps;
  // h(mu) = ||t(mu)||_q - target is strictly decreasing in mu.
  double mu_lo = 0.0;
  double mu_hi = 0.0;
  double h_lo = residual_at(0.0);
  double h_hi = h_lo;
  double step = 1.0;
  if (h_lo > 0.0) {
    while (h_hi > 0.0 && std::abs(h_hi) > accept) {
      if (evals >= tol.max_iterations) fail("could not bracket");
      mu_lo = mu_hi;
      h_lo = h_hi;
      mu_hi += step;
      step *= 2.0;
      h_hi = residual_at(mu_hi);
    }
  } else {
    while (h_lo <= 0.0 && std::abs(h_lo) > accept) {
      if (evals >= tol.max_iterations) fail("could not bracket");
      mu_hi = mu_lo;
      h_hi = h_lo;
      mu_lo -= step;
      step *= 2.0;
      h_lo = residual_at(mu_lo);
    }
  }

  // Illinois-damped regula falsi with bisection safeguard.
  int last_side = 0;
  while (std::abs(h_last) > accept) {
    if (evals >= tol.max_iterations) fail("did not converge");
    const double width = mu_hi - mu_lo;
    if (width <= 1e-15 * (1.0 + std::abs(mu_lo) + std::abs(mu_hi))) {
      fail("stalled on an exhausted bracket");
    }
    double mu_mid = mu_lo + h_lo * width / (h_lo - h_hi);
    const double margin = 1e-3 * width;
    if (!(mu_mid > mu_lo + margin && mu_mid < mu_hi - margin)) {
      mu_mid = 0.5 * (mu_lo + mu_hi);
    }
    const double h_mid = residual_at(mu_mid);
    if (h_mid > 0.0) {
      mu_lo = mu_mid;
      h_lo = h_mid;
      if (last_side == 1) h_hi *= 0.5;
      last_side = 1;
    } else {
      mu_hi = mu_mid;
      h_hi = h_mid;
      if (last_side == -1) h_lo *= 0.5;
      last_side = -1;
    }
  }
  result.x.resize(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    result.x[j] = std::copysign(t[j] * peak, v[j]);
  }
  // Undo the peak scaling on the multiplier: the unscaled stationarity is
  // t + lambda*q*t^(q-1) = |v_j| with lambda = exp(mu) * peak^(2-q).
  // Saturates to 0/inf for extreme exponents.
  result.multiplier = std::exp(mu_last + (2.0 - qv) * std::log(peak));
  result.residual = std::abs(h_last) * peak;
  result.outer_iterations = evals;
  return result;
}

std::vector<double> project_lq_ball(std::span<const double> v, double radius,
                                    Exponent q, const ProxTolerance& tol) {
  return project_lq_ball_detailed(v, radius, q, tol).x;
}

std::vector<double> prox_lq(std::span<const double> v, double theta, Exponent q,
                            const ProxTolerance& tol) {
  check_theta(theta);
  if (q.is_one()) return prox_l1(v, theta);
  if (q.value() == 2.0) return prox_l2(v, theta);
  if (q.is_inf()) return prox_linf(v, theta);
  if (theta == 0.0) return {v.begin(), v.end()};
  const std::vector<double> proj =
      project_lq_ball(v, theta, q.conjugate(), tol);
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] - proj[j];
  return out;
}

GroupedVector prox_grouped(const GroupedVector& y, double theta, Exponent q,
                           const ProxTolerance& tol) {
  check_theta(theta);
  std::vector<double> out(y.dimension());
  std::exception_ptr failure;
  parallel_chunks(y.group_count(), [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        const std::vector<double> g = prox_lq(y.group(i), theta, q, tol);
        std::copy(g.begin(), g.end(),
                  out.begin() + static_cast<std::ptrdiff_t>(
                                    y.partition().offset(i)));
      }
    } catch (...) {
      failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  return y.with_data(std::move(out));
}

}  // namespace ballproj
