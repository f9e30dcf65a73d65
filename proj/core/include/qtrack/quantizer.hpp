#pragma once

#include <cstdint>

namespace qtrack {

/// Uniform mid-tread quantizer with step delta > 0.
///
/// Region j is the half-open interval [(j - 0.5) * delta, (j + 0.5) * delta)
/// and every value in it maps to the lattice point j * delta.  Membership is
/// decided by the IEEE comparisons against the computed boundary products --
/// no epsilon slack -- so quantize() is exactly monotone and idempotent.
class UniformQuantizer {
 public:
  /// Throws qtrack::Error unless delta > 0.
  explicit UniformQuantizer(double delta);

  double delta() const { return delta_; }

  /// Index j of the region containing z.
  std::int64_t region_index(double z) const;

  /// Nearest lattice point j * delta (ties at region boundaries go up).
  double quantize(double z) const;

  /// Boundary value shared by two adjacent regions, (j + i) / 2 * delta.
  /// Throws NonAdjacentRegions unless |i - j| == 1.
  double crossing_value(std::int64_t j, std::int64_t i) const;

 private:
  double delta_;
};

}  // namespace qtrack
