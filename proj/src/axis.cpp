#include "convect/axis.hpp"

namespace convect {

void AxisPartition::validate() const {
  require(breakpoints.size() >= 2, "axis partition needs at least two breakpoints");
  require(divisions.size() == breakpoints.size() - 1,
          "axis partition needs one division count per sub-interval");
  require(breakpoints.front() == 0.0, "axis partition must start at 0");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    require(breakpoints[i] > breakpoints[i - 1], "axis breakpoints must be strictly increasing");
  for (int d : divisions) require(d >= 1, "axis division counts must be >= 1");
}

std::vector<double> build_axis_partition(const AxisPartition& spec) {
  spec.validate();
  std::vector<double> lines;
  lines.reserve(static_cast<std::size_t>(spec.total_divisions()) + 1);
  lines.push_back(spec.breakpoints.front());
  for (std::size_t s = 0; s + 1 < spec.breakpoints.size(); ++s) {
    const double a = spec.breakpoints[s];
    const double b = spec.breakpoints[s + 1];
    const int n = spec.divisions[s];
    for (int k = 1; k < n; ++k) lines.push_back(a + (b - a) * (static_cast<double>(k) / n));
    lines.push_back(b);  // exact breakpoint, no rounding accumulation
  }
  return lines;
}

std::vector<double> refine_gridlines(const std::vector<double>& coarse) {
  require(coarse.size() >= 2, "need at least one coarse interval to refine");
  std::vector<double> fine;
  fine.reserve(coarse.size() * 2 - 1);
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    fine.push_back(coarse[i]);
    fine.push_back(0.5 * (coarse[i] + coarse[i + 1]));
  }
  fine.push_back(coarse.back());
  return fine;
}

}  // namespace convect
