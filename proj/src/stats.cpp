#include "honeysim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace honeysim {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  double h = p * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = static_cast<std::size_t>(std::ceil(h));
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DescriptiveStats describe(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("describe: empty sample");
  std::sort(values.begin(), values.end());
  DescriptiveStats s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  s.median = quantile_sorted(values, 0.5);
  s.q1 = quantile_sorted(values, 0.25);
  s.q3 = quantile_sorted(values, 0.75);
  s.min = values.front();
  s.max = values.back();
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.st_dev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

}  // namespace honeysim
