// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <array>
#include <cmath>

namespace shearsr {

/// An orientation snapped to the integer lattice, as a (row, col) step.
struct LatticeDirection {
  int drow, dcol;
};

namespace detail {

/// Snaps an angle (x right, y up) to the nearest rational lattice direction.
/// Both the directional interpolators and the block line partitions use this,
/// so regularity is measured along the same discrete direction that
/// interpolation follows. The set covers the 20-angle grid to within ~4.5
/// degrees everywhere.
inline LatticeDirection snap_direction(double theta) {
  static constexpr std::array<std::array<int, 2>, 16> dirs = {{
      {1, 0},  {5, 1},  {3, 1},  {2, 1},  {1, 1},  {1, 2},  {1, 3},  {1, 5},
      {0, 1},  {-1, 5}, {-1, 3}, {-1, 2}, {-1, 1}, {-2, 1}, {-3, 1}, {-5, 1}  // (dx, dy)
  }};
  double best = -1.0;
  LatticeDirection out{0, 1};
  for (const auto& d : dirs) {
    const double phi = std::atan2(static_cast<double>(d[1]), static_cast<double>(d[0]));
    const double score = std::abs(std::cos(theta - phi));
    if (score > best) {
      best = score;
      out = {-d[1], d[0]};  // y up -> row down
    }
  }
  return out;
}

}  // namespace detail
}  // namespace shearsr
