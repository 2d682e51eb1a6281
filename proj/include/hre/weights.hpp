#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hre {

/// Priority weights, one strictly positive value per concept.
class WeightVector {
 public:
  /// Throws InputError if any value is non-positive or non-finite, or if
  /// `normalized` is set and the values do not sum to 1 within 1e-9.
  explicit WeightVector(std::vector<double> values, bool normalized = false);

  /// Rescaled copy summing to one.
  WeightVector normalize() const;

  const std::vector<double>& values() const noexcept { return values_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  operator std::span<const double>() const noexcept { return values_; }

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> values_;
  bool normalized_;
};

}  // namespace hre
