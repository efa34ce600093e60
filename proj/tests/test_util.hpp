#pragma once

// Shared helpers for the test suites: the worked three-slot example instance,
// a test-side instance generator with mixed flags and fractional energies,
// brute-force reference computations kept independent of the solvers, and
// small statistics utilities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "loadshift/core.hpp"

namespace testutil {

// Three slots, essential {2,1,0}, a one-slot 5 kWh task and a two-slot 4 kWh
// task, both preferred at slot 1 and fully flexible.
inline loadshift::Instance example_instance() {
  loadshift::Instance inst;
  inst.horizon = 3;
  inst.essential = {2.0, 1.0, 0.0};
  inst.tasks = {
      {1, 5.0, 1, 1, 3, true},
      {2, 4.0, 2, 1, 3, true},
  };
  return inst;
}

// Random instances with more variety than the production generator: real
// valued essential loads and energies, mixed flexibility flags and arbitrary
// deviations.
inline loadshift::Instance random_instance(std::mt19937_64& rng, int max_horizon = 16,
                                           int max_tasks = 8) {
  std::uniform_int_distribution<int> horizon_dist(1, max_horizon);
  const int horizon = horizon_dist(rng);
  std::uniform_int_distribution<int> task_count_dist(0, max_tasks);
  std::uniform_real_distribution<double> essential_dist(0.0, 5.0);
  std::uniform_real_distribution<double> energy_dist(0.5, 5.0);

  loadshift::Instance inst;
  inst.horizon = horizon;
  for (int t = 0; t < horizon; ++t) inst.essential.push_back(essential_dist(rng));
  const int n_tasks = task_count_dist(rng);
  for (int i = 1; i <= n_tasks; ++i) {
    loadshift::FlexTask task;
    task.id = i;
    task.energy = energy_dist(rng);
    task.duration = std::uniform_int_distribution<int>(1, std::min(5, horizon))(rng);
    task.preferred_start =
        std::uniform_int_distribution<int>(1, horizon - task.duration + 1)(rng);
    task.deviation = std::uniform_int_distribution<int>(0, horizon + 2)(rng);
    task.is_flexible = std::bernoulli_distribution(0.75)(rng);
    inst.tasks.push_back(task);
  }
  return inst;
}

// Load vector of one fully specified assignment, built from per-slot profiles
// only; the reference route used to check the solvers.
inline std::vector<double> assignment_load(const loadshift::Instance& inst,
                                           const std::vector<double>& base,
                                           const std::vector<loadshift::FlexTask>& tasks,
                                           const std::vector<int>& starts) {
  std::vector<double> load = base;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto profile = loadshift::per_slot_profile(tasks[i], starts[i], inst.horizon);
    for (int t = 0; t < inst.horizon; ++t) load[t] += profile[t];
  }
  return load;
}

// Enumerates every feasible start assignment of the flexible tasks and
// returns the peak of each, in lexicographic order of the start vectors
// (tasks ordered by id). Only usable on tiny instances.
inline std::vector<double> brute_force_peaks(const loadshift::Instance& inst) {
  auto folded = loadshift::fold_inflexible(inst);
  auto tasks = folded.flexible;
  std::sort(tasks.begin(), tasks.end(),
            [](const loadshift::FlexTask& a, const loadshift::FlexTask& b) { return a.id < b.id; });
  std::vector<loadshift::Window> windows;
  for (const auto& task : tasks) windows.push_back(loadshift::window(task, inst.horizon));

  std::vector<double> peaks;
  std::vector<int> starts(tasks.size());
  const auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == tasks.size()) {
      const auto load = assignment_load(inst, folded.essential, tasks, starts);
      peaks.push_back(*std::max_element(load.begin(), load.end()));
      return;
    }
    for (int s = windows[depth].lo; s <= windows[depth].hi; ++s) {
      starts[depth] = s;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  return peaks;
}

// Draws one uniformly random feasible start vector for the flexible tasks,
// ordered by id.
inline std::vector<int> random_feasible_starts(const loadshift::Instance& inst,
                                               std::mt19937_64& rng) {
  auto folded = loadshift::fold_inflexible(inst);
  auto tasks = folded.flexible;
  std::sort(tasks.begin(), tasks.end(),
            [](const loadshift::FlexTask& a, const loadshift::FlexTask& b) { return a.id < b.id; });
  std::vector<int> starts;
  for (const auto& task : tasks) {
    const auto w = loadshift::window(task, inst.horizon);
    starts.push_back(std::uniform_int_distribution<int>(w.lo, w.hi)(rng));
  }
  return starts;
}

inline double mean(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

inline std::vector<double> ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> out(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = shared;
    i = j + 1;
  }
  return out;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  return cov / std::sqrt(vx * vy);
}

}  // namespace testutil
