#pragma once

#include <cstddef>

#include "hfock/types.hpp"

namespace hfock {

/// Rectangular grid of sample points in the plane. Point (i, j) sits at
/// origin + i*step + j*step*i_unit; each point owns a step x step cell.
struct GridSpec {
  Complex origin{0.0, 0.0};
  double step = 1.0;
  int nx = 1;
  int ny = 1;

  /// n x n points from lo to hi inclusive on both axes.
  static GridSpec spanning(double lo, double hi, int n);
  /// Centers of the square cells of side `step` tiling [lo, hi]^2 (step
  /// adjusted down so the cells fit exactly).
  static GridSpec cells(double lo, double hi, double step);

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  Complex point(int i, int j) const { return origin + Complex(i * step, j * step); }
  double cell_area() const { return step * step; }
};

}  // namespace hfock
