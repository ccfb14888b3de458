#include "ballproj/root_finding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ballproj {

namespace {

void check_config(const RootConfig& cfg) {
  if (!(cfg.feasibility_tol > 0.0) || !(cfg.bracket_tol > 0.0)) {
    throw std::invalid_argument("root tolerances must be positive");
  }
  if (cfg.max_iterations < 1) {
    throw std::invalid_argument("root iteration budget must be >= 1");
  }
}

}  // namespace

RootResult find_root_detailed(const std::function<double(double)>& g,
                              double lo, double hi, const RootConfig& cfg,
                              std::optional<double> hint) {
  check_config(cfg);
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("invalid root bracket");
  }

  RootResult out;
  double fa = g(lo);
  ++out.evaluations;
  if (std::abs(fa) <= cfg.feasibility_tol) {
    out.root = lo;
    out.value = fa;
    return out;
  }
  double fb = g(hi);
  ++out.evaluations;
  if (std::abs(fb) <= cfg.feasibility_tol) {
    out.root = hi;
    out.value = fb;
    return out;
  }
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::runtime_error("no sign change on the root bracket: g(" +
                             std::to_string(lo) + ") = " + std::to_string(fa) +
                             ", g(" + std::to_string(hi) + ") = " +
                             std::to_string(fb));
  }

  // Normalize the orientation so the left end is positive.
  const double flip = fa > 0.0 ? 1.0 : -1.0;
  double a = lo, b = hi;
  fa *= flip;
  fb *= flip;

  // Previous bracket point, kept for inverse quadratic interpolation.
  double c = a, fc = fa;
  bool bisect_only = false;
  int slow_steps = 0;

  while (out.evaluations < cfg.max_iterations + 2) {
    const double width = b - a;
    if (width <= cfg.bracket_tol) {
      out.root = 0.5 * (a + b);
      out.value = flip * (fa < -fb ? fa : fb);
      out.width_converged = true;
      return out;
    }

    double x;
    bool interpolated = false;
    if (hint && *hint > a && *hint < b) {
      x = *hint;
      hint.reset();
      interpolated = true;
    } else if (!bisect_only && slow_steps < 2) {
      if (fc != fa && fc != fb && c != a && c != b) {
        // Inverse quadratic interpolation through (a, fa), (b, fb), (c, fc).
        x = a * fb * fc / ((fa - fb) * (fa - fc)) +
            b * fa * fc / ((fb - fa) * (fb - fc)) +
            c * fa * fb / ((fc - fa) * (fc - fb));
      } else {
        x = b - fb * (b - a) / (fb - fa);  // secant
      }
      interpolated = true;
      const double guard = 0.01 * width;
      if (!(x > a + guard && x < b - guard)) {
        x = 0.5 * (a + b);
        interpolated = false;
      }
    } else {
      x = 0.5 * (a + b);
      slow_steps = 0;
    }

    const double fx = flip * g(x);
    ++out.evaluations;
    if (std::abs(fx) <= cfg.feasibility_tol) {
      out.root = x;
      out.value = flip * fx;
      return out;
    }
    if (cfg.assume_decreasing) {
      // g should fall between the bracket values; noisy evaluations that
      // break this order make interpolation untrustworthy.
      const double jitter = 1e-11 * (std::abs(fa) + std::abs(fb)) + 1e-300;
      if (fx > fa + jitter || fx < fb - jitter) bisect_only = true;
    }

    if (fx > 0.0) {
      c = a;
      fc = fa;
      a = x;
      fa = fx;
    } else {
      c = b;
      fc = fb;
      b = x;
      fb = fx;
    }
    if (interpolated) {
      slow_steps = (b - a) > 0.5 * width ? slow_steps + 1 : 0;
    }
  }
  throw std::runtime_error("root search exhausted its iteration budget (" +
                           std::to_string(cfg.max_iterations) +
                           "); best residual " +
                           std::to_string(std::min(fa, -fb)));
}

double find_root(const std::function<double(double)>& g, double lo, double hi,
                 const RootConfig& cfg) {
  return find_root_detailed(g, lo, hi, cfg).root;
}

}  // namespace ballproj
