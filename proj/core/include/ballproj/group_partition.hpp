#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ballproj {

/// Partition of [0, d) into m contiguous, nonempty groups, stored as m+1
/// strictly increasing offsets with offsets[0] = 0 and offsets[m] = d.
class GroupPartition {
 public:
  explicit GroupPartition(std::vector<std::size_t> offsets);

  /// m equal groups of the given size.
  static GroupPartition uniform(std::size_t groups, std::size_t group_size);
  /// One group spanning the whole vector.
  static GroupPartition single(std::size_t dimension);

  std::size_t group_count() const { return offsets_.size() - 1; }
  std::size_t dimension() const { return offsets_.back(); }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  std::size_t group_size(std::size_t i) const {
    return offsets_[i + 1] - offsets_[i];
  }
  std::span<const std::size_t> offsets() const { return offsets_; }

  friend bool operator==(const GroupPartition& a, const GroupPartition& b) {
    return a.offsets_ == b.offsets_;
  }

 private:
  std::vector<std::size_t> offsets_;
};

}  // namespace ballproj
