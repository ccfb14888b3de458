#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ballproj/group_partition.hpp"

namespace ballproj {

/// A flat coefficient vector together with a partition into contiguous
/// groups. Entries must be finite and data.size() == partition.dimension().
///
/// When built through make_grouped from per-entry group ids, the permutation
/// that made the groups contiguous is retained in `source_index` so results
/// can be mapped back to the caller's ordering (empty means identity).
class GroupedVector {
 public:
  GroupedVector(std::vector<double> data, GroupPartition partition);
  GroupedVector(std::vector<double> data, GroupPartition partition,
                std::vector<std::size_t> source_index);

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }
  const GroupPartition& partition() const { return partition_; }
  const std::vector<std::size_t>& source_index() const {
    return source_index_;
  }

  std::size_t dimension() const { return partition_.dimension(); }
  std::size_t group_count() const { return partition_.group_count(); }

  std::span<const double> group(std::size_t i) const {
    return {data_.data() + partition_.offset(i), partition_.group_size(i)};
  }
  std::span<double> group(std::size_t i) {
    return {data_.data() + partition_.offset(i), partition_.group_size(i)};
  }

  /// Same partition and permutation, new coefficients.
  GroupedVector with_data(std::vector<double> data) const;

 private:
  std::vector<double> data_;
  GroupPartition partition_;
  std::vector<std::size_t> source_index_;
};

/// Permutes `data` so entries sharing a group id become contiguous (stable
/// within a group). Ids must cover 0..m-1 with every group nonempty.
GroupedVector make_grouped(std::span<const double> data,
                           std::span<const int> group_ids);

/// Inverse of the permutation applied by make_grouped.
std::vector<double> ungroup(const GroupedVector& v);

}  // namespace ballproj
