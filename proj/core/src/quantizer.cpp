#include "qtrack/quantizer.hpp"

#include <cmath>

#include "qtrack/errors.hpp"

namespace qtrack {

UniformQuantizer::UniformQuantizer(double delta) : delta_(delta) {
  if (!(delta > 0.0))
    throw Error("UniformQuantizer: step must be positive");
}

std::int64_t UniformQuantizer::region_index(double z) const {
  auto j = static_cast<std::int64_t>(std::floor(z / delta_ + 0.5));
  // floor(z/delta + 0.5) can land one region off when z sits within a
  // rounding error of a boundary; settle membership with the boundary
  // comparisons themselves.
  while (z < (static_cast<double>(j) - 0.5) * delta_) --j;
  while (z >= (static_cast<double>(j) + 0.5) * delta_) ++j;
  return j;
}

double UniformQuantizer::quantize(double z) const {
  return static_cast<double>(region_index(z)) * delta_;
}

double UniformQuantizer::crossing_value(std::int64_t j, std::int64_t i) const {
  const std::int64_t diff = i > j ? i - j : j - i;
  if (diff != 1)
    throw NonAdjacentRegions("crossing_value: regions do not share a boundary");
  return 0.5 * static_cast<double>(j + i) * delta_;
}

}  // namespace qtrack
