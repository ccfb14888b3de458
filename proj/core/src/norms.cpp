#include "ballproj/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "ballproj/svd.hpp"

namespace ballproj {

namespace detail {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double peak_magnitude(std::span<const double> v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  return peak;
}

}  // namespace detail

double lq_norm(std::span<const double> v, Exponent q) {
  const double peak = detail::peak_magnitude(v);
  if (peak == 0.0) return 0.0;
  if (q.is_inf()) return peak;
  if (q.is_one()) {
    double acc = 0.0;
    for (double x : v) acc += std::abs(x);
    return acc;
  }
  const double qv = q.value();
  double acc = 0.0;
  if (qv == 2.0) {
    for (double x : v) {
      const double t = x / peak;
      acc += t * t;
    }
    return peak * std::sqrt(acc);
  }
  for (double x : v) acc += std::pow(std::abs(x) / peak, qv);
  return peak * std::pow(acc, 1.0 / qv);
}

double mixed_norm(const GroupedVector& x, const NormSpec& spec) {
  std::vector<double> group_norms(x.group_count());
  for (std::size_t i = 0; i < x.group_count(); ++i) {
    group_norms[i] = lq_norm(x.group(i), spec.q);
  }
  return lq_norm(group_norms, spec.p);
}

double dual_mixed_norm(const GroupedVector& u, const NormSpec& spec) {
  return mixed_norm(u, spec.conjugate());
}

GroupedVector dual_witness(const GroupedVector& u, const NormSpec& spec) {
  if (spec.p.is_one() || spec.p.is_inf() || spec.q.is_one() ||
      spec.q.is_inf()) {
    throw std::invalid_argument(
        "dual_witness requires finite exponents strictly between 1 and inf");
  }
  const double peak = detail::peak_magnitude(u.data());
  if (peak == 0.0) {
    throw std::invalid_argument("dual_witness of the zero vector");
  }
  const double p = spec.p.value();
  const double ps = spec.p.conjugate().value();
  const double qs = spec.q.conjugate().value();

  // The construction is scale invariant, so work on u / peak to keep the
  // powers of the group norms in range.
  const std::size_t m = u.group_count();
  std::vector<double> group_dual(m);
  double beta = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> scaled(u.group(i).begin(), u.group(i).end());
    for (double& x : scaled) x /= peak;
    group_dual[i] = lq_norm(scaled, Exponent(qs));
    beta += std::pow(group_dual[i], ps);
  }
  const double outer = std::pow(beta, -1.0 / p);

  std::vector<double> witness(u.dimension(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (group_dual[i] == 0.0) continue;  // zero group contributes nothing
    const double coeff = outer * std::pow(group_dual[i], ps - qs);
    const auto src = u.group(i);
    const std::size_t off = u.partition().offset(i);
    for (std::size_t j = 0; j < src.size(); ++j) {
      const double a = std::abs(src[j]) / peak;
      if (a == 0.0) continue;
      const double sign = src[j] > 0.0 ? 1.0 : -1.0;
      witness[off + j] = coeff * sign * std::pow(a, qs - 1.0);
    }
  }
  return u.with_data(std::move(witness));
}

double schatten_norm(const DenseMatrix& x, Exponent q) {
  if (x.rows() == 0 || x.cols() == 0) return 0.0;
  return lq_norm(svd(x).singular_values, q);
}

double matrix_mixed_norm(std::span<const DenseMatrix> blocks,
                         const NormSpec& spec) {
  if (blocks.empty()) {
    throw std::invalid_argument("matrix mixed norm of an empty block list");
  }
  std::vector<double> block_norms(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    block_norms[i] = schatten_norm(blocks[i], spec.q);
  }
  return lq_norm(block_norms, spec.p);
}

}  // namespace ballproj
