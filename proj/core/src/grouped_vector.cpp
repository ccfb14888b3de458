#include "ballproj/grouped_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ballproj {

GroupPartition::GroupPartition(std::vector<std::size_t> offsets)
    : offsets_(std::move(offsets)) {
  if (offsets_.size() < 2) {
    throw std::invalid_argument("partition needs at least one group");
  }
  if (offsets_.front() != 0) {
    throw std::invalid_argument("partition offsets must start at 0");
  }
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    if (offsets_[i] >= offsets_[i + 1]) {
      throw std::invalid_argument(
          "partition offsets must be strictly increasing (group " +
          std::to_string(i) + " is empty)");
    }
  }
}

GroupPartition GroupPartition::uniform(std::size_t groups,
                                       std::size_t group_size) {
  std::vector<std::size_t> offsets(groups + 1);
  for (std::size_t i = 0; i <= groups; ++i) offsets[i] = i * group_size;
  return GroupPartition(std::move(offsets));
}

GroupPartition GroupPartition::single(std::size_t dimension) {
  return GroupPartition({0, dimension});
}

namespace {

void check_finite(const std::vector<double>& data) {
  for (double x : data) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("grouped vector entries must be finite");
    }
  }
}

}  // namespace

GroupedVector::GroupedVector(std::vector<double> data, GroupPartition partition)
    : GroupedVector(std::move(data), std::move(partition), {}) {}

GroupedVector::GroupedVector(std::vector<double> data, GroupPartition partition,
                             std::vector<std::size_t> source_index)
    : data_(std::move(data)),
      partition_(std::move(partition)),
      source_index_(std::move(source_index)) {
  if (data_.size() != partition_.dimension()) {
    throw std::invalid_argument("data length " + std::to_string(data_.size()) +
                                " does not match partition dimension " +
                                std::to_string(partition_.dimension()));
  }
  if (!source_index_.empty() && source_index_.size() != data_.size()) {
    throw std::invalid_argument("source index length mismatch");
  }
  check_finite(data_);
}

GroupedVector GroupedVector::with_data(std::vector<double> data) const {
  return GroupedVector(std::move(data), partition_, source_index_);
}

GroupedVector make_grouped(std::span<const double> data,
                           std::span<const int> group_ids) {
  if (data.size() != group_ids.size()) {
    throw std::invalid_argument("data and group ids differ in length");
  }
  if (data.empty()) {
    throw std::invalid_argument("cannot group an empty vector");
  }
  int max_id = -1;
  for (int id : group_ids) {
    if (id < 0) throw std::invalid_argument("negative group id");
    max_id = std::max(max_id, id);
  }
  const std::size_t m = static_cast<std::size_t>(max_id) + 1;

  std::vector<std::size_t> counts(m, 0);
  for (int id : group_ids) ++counts[static_cast<std::size_t>(id)];
  for (std::size_t g = 0; g < m; ++g) {
    if (counts[g] == 0) {
      throw std::invalid_argument("group ids leave group " + std::to_string(g) +
                                  " empty");
    }
  }

  std::vector<std::size_t> offsets(m + 1, 0);
  for (std::size_t g = 0; g < m; ++g) offsets[g + 1] = offsets[g] + counts[g];

  // Stable bucket placement: original order preserved within each group.
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<double> permuted(data.size());
  std::vector<std::size_t> source(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t pos = cursor[static_cast<std::size_t>(group_ids[i])]++;
    permuted[pos] = data[i];
    source[pos] = i;
  }
  return GroupedVector(std::move(permuted), GroupPartition(std::move(offsets)),
                       std::move(source));
}

std::vector<double> ungroup(const GroupedVector& v) {
  if (v.source_index().empty()) return v.data();
  std::vector<double> out(v.dimension());
  for (std::size_t k = 0; k < v.dimension(); ++k) {
    out[v.source_index()[k]] = v.data()[k];
  }
  return out;
}

}  // namespace ballproj
