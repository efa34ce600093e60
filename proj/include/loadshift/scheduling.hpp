#pragma once

// The two extreme benchmark schedules (GC, UC) and the two practical solvers
// for the min-peak placement problem: exhaustive search over task orderings
// (optimal_schedule) and the uniform-power single-pass heuristic
// (greedy_schedule).

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loadshift/core.hpp"
#include "loadshift/parallel.hpp"

namespace loadshift {

// optimal_schedule refuses more flexible tasks than this unless overridden;
// 10! ~ 3.6M orderings keeps the enumeration desk-scale.
inline constexpr int kMaxEnumeratedFlexible = 10;

struct OptimalOptions {
  bool override_guard = false;
  unsigned workers = 1;
};

// One candidate placement: the start slot and the peak the load would reach
// over the occupied slots if the task were placed there.
struct CandidateLoadRow {
  int start = 0;
  double peak_if_placed = 0.0;
};

inline double peak_if_placed(const std::vector<double>& load, int start, int duration,
                             double slot_power) {
  double peak = 0.0;
  for (int j = 0; j < duration; ++j)
    peak = std::max(peak, load[start - 1 + j] + slot_power);
  return peak;
}

// Scans the window and keeps the start with the smallest resulting peak.
// Ties go to the earliest start slot.
inline CandidateLoadRow best_start(const std::vector<double>& load, Window w, int duration,
                                   double slot_power) {
  CandidateLoadRow best{w.lo, peak_if_placed(load, w.lo, duration, slot_power)};
  for (int t = w.lo + 1; t <= w.hi; ++t) {
    const double peak = peak_if_placed(load, t, duration, slot_power);
    if (peak < best.peak_if_placed) best = {t, peak};
  }
  return best;
}

inline void add_block(std::vector<double>& load, int start, int duration, double slot_power) {
  for (int j = 0; j < duration; ++j) load[start - 1 + j] += slot_power;
}

struct Placement {
  int start = 0;
  std::vector<double> load;
};

// Places one task at the peak-minimizing start in its window, drawing
// `slot_power` per occupied slot, and returns the chosen start plus the
// updated load.
inline Placement place_task(std::vector<double> load, const FlexTask& task, Window w,
                            double slot_power) {
  const auto row = best_start(load, w, task.duration, slot_power);
  add_block(load, row.start, task.duration, slot_power);
  return {row.start, std::move(load)};
}

inline Placement place_task(std::vector<double> load, const FlexTask& task, Window w) {
  return place_task(std::move(load), task, w, task.slot_power());
}

// Grid-convenient benchmark: all energy (essential and every task) divided
// equally across the horizon. Ignores feasibility; carries no starts.
inline Schedule gc_schedule(const Instance& inst) {
  const double flat = total_energy(inst) / inst.horizon;
  return {Label::GC, std::vector<double>(inst.horizon, flat), {}};
}

// User-convenient benchmark: every task, flexible or not, at its preferred
// start. This is the status quo and defines zero inconvenience.
inline Schedule uc_schedule(const Instance& inst) {
  Schedule sched{Label::UC, inst.essential, {}};
  for (const auto& task : inst.tasks) {
    add_block(sched.load, task.preferred_start, task.duration, task.slot_power());
    sched.starts[task.id] = task.preferred_start;
  }
  return sched;
}

namespace detail {

struct OrderSearchBest {
  double peak = std::numeric_limits<double>::infinity();
  std::vector<int> order;
  std::vector<int> starts;
  std::vector<double> load;
};

// Evaluates every permutation of `suffix` (already sorted ascending) behind
// the fixed id `first`, in lexicographic order, keeping the first strict
// minimum. A permutation is abandoned as soon as its running peak reaches the
// block's best, which cannot change the selected order: peaks only grow as
// tasks are added, and ties never replace an earlier winner.
inline OrderSearchBest search_orders_with_first(const std::vector<double>& base, int horizon,
                                                const std::map<int, const FlexTask*>& by_id,
                                                int first, std::vector<int> suffix) {
  OrderSearchBest best;
  std::vector<int> order(suffix.size() + 1);
  std::vector<double> load;
  std::vector<int> starts;
  do {
    order[0] = first;
    std::copy(suffix.begin(), suffix.end(), order.begin() + 1);
    load = base;
    starts.clear();
    double running = base.empty() ? 0.0 : *std::max_element(base.begin(), base.end());
    bool abandoned = false;
    for (const int id : order) {
      const FlexTask& task = *by_id.at(id);
      const auto row = best_start(load, window(task, horizon), task.duration, task.slot_power());
      add_block(load, row.start, task.duration, task.slot_power());
      starts.push_back(row.start);
      running = std::max(running, row.peak_if_placed);
      if (running >= best.peak) {
        abandoned = true;
        break;
      }
    }
    if (!abandoned && running < best.peak)
      best = {running, order, starts, load};
  } while (std::next_permutation(suffix.begin(), suffix.end()));
  return best;
}

}  // namespace detail

// Places the instance's flexible tasks one by one in the given id order,
// after folding inflexible tasks into the essential load. This is the
// building block optimal_schedule minimizes over; exposed so a specific
// ordering can be forced.
inline Schedule schedule_in_order(const Instance& inst, std::span<const int> ids) {
  auto folded = fold_inflexible(inst);
  std::map<int, const FlexTask*> by_id;
  for (const auto& task : folded.flexible) by_id[task.id] = &task;
  if (ids.size() != by_id.size())
    throw std::invalid_argument("schedule_in_order: expected " + std::to_string(by_id.size()) +
                                " flexible task ids, got " + std::to_string(ids.size()));
  std::set<int> distinct(ids.begin(), ids.end());
  if (distinct.size() != ids.size())
    throw std::invalid_argument("schedule_in_order: duplicate task id in the ordering");
  for (const int id : ids)
    if (!by_id.count(id))
      throw std::invalid_argument("schedule_in_order: id " + std::to_string(id) +
                                  " is not a flexible task of this instance");
  Schedule sched{Label::Optimal, folded.essential, {}};
  for (const int id : ids) {
    const FlexTask& task = *by_id.at(id);
    const auto row = best_start(sched.load, window(task, inst.horizon), task.duration,
                                task.slot_power());
    add_block(sched.load, row.start, task.duration, task.slot_power());
    sched.starts[task.id] = row.start;
  }
  return sched;
}

// Exhaustive ordering search: folds inflexible tasks, then tries all Y!
// orders of the flexible subset, placing tasks greedily within each order,
// and returns the order with the smallest peak. Ties break toward the
// lexicographically smallest id sequence. Cost is factorial in Y, so more
// than kMaxEnumeratedFlexible tasks are refused unless overridden.
inline Schedule optimal_schedule(const Instance& inst, const OptimalOptions& opt = {}) {
  auto folded = fold_inflexible(inst);
  const int y = static_cast<int>(folded.flexible.size());
  if (y > kMaxEnumeratedFlexible && !opt.override_guard)
    throw CapacityError("optimal_schedule: " + std::to_string(y) +
                        " flexible tasks exceed the enumeration bound of " +
                        std::to_string(kMaxEnumeratedFlexible) +
                        "; rerun with the guard override to force the factorial search");
  if (y == 0) return {Label::Optimal, std::move(folded.essential), {}};

  std::map<int, const FlexTask*> by_id;
  for (const auto& task : folded.flexible) by_id[task.id] = &task;
  std::vector<int> ids;
  ids.reserve(y);
  for (const auto& [id, task] : by_id) ids.push_back(id);

  // One block per choice of leading task; blocks are reduced in ascending
  // order of the leading id so the parallel result matches the sequential
  // lexicographic scan bit for bit.
  std::vector<detail::OrderSearchBest> block_best(ids.size());
  parallel_for_index(ids.size(), opt.workers, [&](std::size_t k) {
    std::vector<int> suffix;
    suffix.reserve(ids.size() - 1);
    for (std::size_t j = 0; j < ids.size(); ++j)
      if (j != k) suffix.push_back(ids[j]);
    block_best[k] = detail::search_orders_with_first(folded.essential, inst.horizon, by_id,
                                                     ids[k], std::move(suffix));
  });
  const detail::OrderSearchBest* winner = &block_best[0];
  for (std::size_t k = 1; k < block_best.size(); ++k)
    if (block_best[k].peak < winner->peak) winner = &block_best[k];

  Schedule sched{Label::Optimal, winner->load, {}};
  for (std::size_t i = 0; i < winner->order.size(); ++i)
    sched.starts[winner->order[i]] = winner->starts[i];
  return sched;
}

// Uniform-power heuristic: every flexible task is provisionally placed as if
// it drew the subset's maximum per-slot power, in input order, and the
// over-provisioned amount is subtracted from each occupied slot afterwards.
inline Schedule greedy_schedule(const Instance& inst) {
  auto folded = fold_inflexible(inst);
  Schedule sched{Label::Greedy, std::move(folded.essential), {}};
  if (folded.flexible.empty()) return sched;

  double uniform = 0.0;
  for (const auto& task : folded.flexible)
    uniform = std::max(uniform, task.slot_power());

  for (const auto& task : folded.flexible) {
    const auto row = best_start(sched.load, window(task, inst.horizon), task.duration, uniform);
    add_block(sched.load, row.start, task.duration, uniform);
    sched.starts[task.id] = row.start;
  }
  // Restore the actual power level of each task on the slots it occupies,
  // clamping at zero in case of over-subtraction.
  for (const auto& task : folded.flexible) {
    const double excess = uniform - task.slot_power();
    const int start = sched.starts.at(task.id);
    for (int j = 0; j < task.duration; ++j) {
      double& slot = sched.load[start - 1 + j];
      slot = std::max(slot - excess, 0.0);
    }
  }
  return sched;
}

}  // namespace loadshift
