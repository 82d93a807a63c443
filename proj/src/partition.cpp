#include "sbmtest/partition.hpp"

#include <algorithm>
#include <string>

#include "sbmtest/error.hpp"

namespace sbmtest {

Partition::Partition(std::vector<std::int8_t> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1) {
      throw Error(ErrorCode::InvalidArgument,
                  "partition label at node " + std::to_string(i) + " is not +1 or -1");
    }
  }
}

Partition Partition::halves(std::size_t n) {
  std::vector<std::int8_t> labels(n, -1);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n / 2), 1);
  return Partition(std::move(labels));
}

std::vector<double> Partition::as_doubles() const {
  return std::vector<double>(labels_.begin(), labels_.end());
}

Partition Partition::negated() const {
  Partition out = *this;
  for (auto& l : out.labels_) l = static_cast<std::int8_t>(-l);
  return out;
}

Partition Partition::flipped(std::span<const std::size_t> nodes) const {
  Partition out = *this;
  for (std::size_t i : nodes) {
    if (i >= size()) throw Error(ErrorCode::OutOfRange, "flipped: node index out of range");
    out.labels_[i] = static_cast<std::int8_t>(-out.labels_[i]);
  }
  return out;
}

std::int64_t Partition::sum() const {
  std::int64_t s = 0;
  for (auto l : labels_) s += l;
  return s;
}

std::size_t Partition::count(std::int8_t label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

std::size_t hamming(const Partition& x, const Partition& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "hamming: partitions differ in length");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

std::size_t distortion(const Partition& x, const Partition& y) {
  const std::size_t h = hamming(x, y);
  return std::min(h, x.size() - h);
}

}  // namespace sbmtest
