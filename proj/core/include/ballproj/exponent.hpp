#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ballproj {

/// A norm exponent in [1, inf]. Infinity is stored as the IEEE infinity so
/// max-based formulas dispatch exactly; finite values above `inf_cutoff` are
/// indistinguishable from infinity at double precision and are normalized.
class Exponent {
 public:
  static constexpr double inf_cutoff = 1e6;

  Exponent(double value) : value_(normalize(value)) {}

  static Exponent inf() {
    return Exponent(std::numeric_limits<double>::infinity());
  }

  double value() const { return value_; }
  bool is_inf() const { return std::isinf(value_); }
  bool is_one() const { return value_ == 1.0; }

  /// Conjugate exponent: 1/e + 1/e* = 1, with 1 <-> inf.
  Exponent conjugate() const {
    if (is_one()) return inf();
    if (is_inf()) return Exponent(1.0);
    return Exponent(value_ / (value_ - 1.0));
  }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.value_ == b.value_;
  }

 private:
  static double normalize(double v) {
    if (std::isnan(v) || v < 1.0) {
      throw std::invalid_argument("exponent must be >= 1, got " +
                                  std::to_string(v));
    }
    return v > inf_cutoff ? std::numeric_limits<double>::infinity() : v;
  }

  double value_;
};

inline Exponent dual_exponent(Exponent e) { return e.conjugate(); }

/// Outer/inner exponent pair of a mixed norm.
struct NormSpec {
  Exponent p;
  Exponent q;

  NormSpec conjugate() const { return {p.conjugate(), q.conjugate()}; }
};

}  // namespace ballproj
