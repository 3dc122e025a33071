#pragma once

#include <vector>

#include "convect/types.hpp"

namespace convect {

/// A partition of one axis of the box into sub-intervals, each uniformly divided.
/// The breakpoints run from 0 to the aspect ratio of the axis.
struct AxisPartition {
  std::vector<double> breakpoints;  // strictly increasing, first = 0, last = A_axis
  std::vector<int> divisions;       // one count per sub-interval, each >= 1

  static AxisPartition uniform(double length, int n) { return {{0.0, length}, {n}}; }

  double length() const { return breakpoints.empty() ? 0.0 : breakpoints.back(); }

  int total_divisions() const {
    int n = 0;
    for (int d : divisions) n += d;
    return n;
  }

  void validate() const;
};

/// Coarse gridline coordinates of the partition: 1 + sum(divisions) values,
/// uniformly spaced within each sub-interval.
std::vector<double> build_axis_partition(const AxisPartition& spec);

/// Fine gridlines: the coarse ones with every interval midpoint inserted.
std::vector<double> refine_gridlines(const std::vector<double>& coarse);

}  // namespace convect
