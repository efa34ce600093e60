#pragma once

// Schedule quality measures: the per-slot peak, the sum-of-squares distance
// between two schedules, and the gamma/zeta distances of a schedule from the
// two extreme benchmarks (GC flatness deficit, UC inconvenience).

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loadshift/core.hpp"
#include "loadshift/scheduling.hpp"

namespace loadshift {

struct ScheduleComparison {
  double peak = 0.0;
  double gamma = 0.0;  // distance from the GC benchmark, kWh^2
  double zeta = 0.0;   // distance from the UC benchmark, kWh^2

  bool operator==(const ScheduleComparison&) const = default;
};

inline double peak_load(const std::vector<double>& load) {
  return load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
}

// Sum of squared per-slot differences. Despite the name this is not divided
// by the horizon; the distance is the plain sum of squares.
inline double mse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("mse: horizon mismatch, " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + " slots");
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double d = a[t] - b[t];
    sum += d * d;
  }
  return sum;
}

inline double mse(const Schedule& a, const Schedule& b) {
  return mse(std::span<const double>(a.load), std::span<const double>(b.load));
}

inline ScheduleComparison compare(const Schedule& s, const Schedule& gc, const Schedule& uc) {
  return {peak_load(s.load), mse(s, gc), mse(s, uc)};
}

inline ScheduleComparison compare(const Schedule& s, const Instance& inst) {
  return compare(s, gc_schedule(inst), uc_schedule(inst));
}

// Rescales a sweep's metric values to percentages of the sweep maximum.
inline std::vector<double> relative_levels(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("relative_levels: empty value list");
  const double max = *std::max_element(values.begin(), values.end());
  if (!(max > 0.0))
    throw std::domain_error("relative_levels: maximum is not positive, percentages undefined");
  std::vector<double> out;
  out.reserve(values.size());
  for (const double v : values) out.push_back(v * 100.0 / max);
  return out;
}

}  // namespace loadshift
