#include "ballproj/matrix_ball.hpp"

#include <cmath>
#include <stdexcept>

#include "ballproj/mixed_ball.hpp"
#include "ballproj/norms.hpp"
#include "ballproj/svd.hpp"

namespace ballproj {

namespace {

DenseMatrix rebuild(const SvdResult& factors, std::span<const double> spectrum) {
  const std::size_t rows = factors.u.rows();
  const std::size_t cols = factors.v.rows();
  const std::size_t rank = spectrum.size();
  DenseMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k) {
        acc += factors.u(i, k) * spectrum[k] * factors.v(j, k);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

DenseMatrix prox_schatten(const DenseMatrix& y, double theta, Exponent q,
                          const ProxTolerance& tol) {
  const SvdResult factors = svd(y);
  const std::vector<double> shrunk =
      prox_lq(factors.singular_values, theta, q, tol);
  return rebuild(factors, shrunk);
}

MatrixProjectionResult project_matrix_mixed_ball(
    std::span<const DenseMatrix> blocks, double gamma, Exponent q,
    const RootConfig& cfg, const ProxTolerance& tol) {
  if (blocks.empty()) {
    throw std::invalid_argument("cannot project an empty block list");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("ball radius gamma must be positive");
  }

  // One decomposition per block; the spectra carry the whole problem.
  std::vector<SvdResult> factors;
  factors.reserve(blocks.size());
  std::vector<double> spectra;
  std::vector<std::size_t> offsets{0};
  for (const DenseMatrix& block : blocks) {
    factors.push_back(svd(block));
    const auto& s = factors.back().singular_values;
    spectra.insert(spectra.end(), s.begin(), s.end());
    offsets.push_back(spectra.size());
  }
  const GroupedVector grouped(std::move(spectra),
                              GroupPartition(std::move(offsets)));

  MatrixProjectionResult result;
  if (mixed_norm(grouped, {Exponent(1.0), q}) <= gamma) {
    result.blocks.assign(blocks.begin(), blocks.end());
    result.interior = true;
    return result;
  }

  ProjectionResult vec = project_mixed_ball(grouped, gamma, q, cfg, tol);
  result.blocks.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    result.blocks.push_back(rebuild(factors[i], vec.x.group(i)));
  }
  result.theta_star = vec.theta_star;
  result.residual = vec.residual;
  result.evaluations = vec.evaluations;
  return result;
}

}  // namespace ballproj
