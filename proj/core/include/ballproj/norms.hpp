#pragma once

#include <span>
#include <vector>

#include "ballproj/dense_matrix.hpp"
#include "ballproj/exponent.hpp"
#include "ballproj/grouped_vector.hpp"

namespace ballproj {

/// (sum_j |v_j|^q)^(1/q); max for q = inf. Power sums run on entries scaled
/// by the largest magnitude, so they cannot overflow.
double lq_norm(std::span<const double> v, Exponent q);

/// (sum_i ||x^i||_q^p)^(1/p) over the groups; p = inf takes the max group.
double mixed_norm(const GroupedVector& x, const NormSpec& spec);

/// Norm of the conjugate-exponent pair, evaluated on the same grouping.
double dual_mixed_norm(const GroupedVector& u, const NormSpec& spec);

/// For finite p, q > 1: the unit-mixed-norm vector x attaining
/// <x, u> = dual_mixed_norm(u, spec). Throws for zero input or boundary
/// exponents (their maximizers are sign/indicator vectors, not this form).
GroupedVector dual_witness(const GroupedVector& u, const NormSpec& spec);

/// lq norm of the singular values.
double schatten_norm(const DenseMatrix& x, Exponent q);

/// (sum_i ||X^i||_q^p)^(1/p) over Schatten norms of the blocks.
double matrix_mixed_norm(std::span<const DenseMatrix> blocks,
                         const NormSpec& spec);

namespace detail {
/// Left-to-right sequential dot product (bit-reproducible reduction order).
double dot(std::span<const double> a, std::span<const double> b);
/// Largest absolute entry (0 for empty input).
double peak_magnitude(std::span<const double> v);
}  // namespace detail

}  // namespace ballproj
