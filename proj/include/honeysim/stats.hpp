#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace honeysim {

// Descriptive statistics in the shape used by the report tables. St.Dev. is
// the sample (n-1) form and is absent for n == 1.
struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  std::optional<double> st_dev;
  double min = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quartiles use linear interpolation between closest ranks (type-7).
DescriptiveStats describe(std::vector<double> values);

// Quantile of an already sorted sample, p in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace honeysim
