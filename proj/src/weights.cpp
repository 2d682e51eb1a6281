#include "hre/weights.hpp"

#include <cmath>
#include <numeric>

#include "hre/error.hpp"

namespace hre {

WeightVector::WeightVector(std::vector<double> values, bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
  for (double v : values_) {
    if (!(std::isfinite(v) && v > 0.0)) throw InputError("weights must be strictly positive and finite");
  }
  if (normalized_) {
    double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("normalized weights must sum to 1");
  }
}

WeightVector WeightVector::normalize() const {
  double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] / sum;
  return WeightVector(std::move(out), true);
}

}  // namespace hre
