#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sbmtest {

// Two-community labelling with entries in {+1, -1}.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::int8_t> labels);

  // First floor(n/2) nodes labelled +1, the rest -1.
  static Partition halves(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  std::int8_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::int8_t> labels() const { return labels_; }
  std::vector<double> as_doubles() const;

  Partition negated() const;
  Partition flipped(std::span<const std::size_t> nodes) const;
  std::int64_t sum() const;
  bool is_balanced() const { return sum() == 0; }
  std::size_t count(std::int8_t label) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::int8_t> labels_;
};

std::size_t hamming(const Partition& x, const Partition& y);
// min(Hamming(x, y), Hamming(x, -y)).
std::size_t distortion(const Partition& x, const Partition& y);

}  // namespace sbmtest
