#pragma once

// Exhaustive ground truth for the min-peak placement problem: enumerates
// every combination of feasible start slots and returns an assignment that
// attains the exact minimum peak. Exponential by nature; guarded by a
// combination-count limit. Kept independent of the scheduling heuristics so
// it can adjudicate them.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "loadshift/core.hpp"
#include "loadshift/parallel.hpp"

namespace loadshift {

inline constexpr std::uint64_t kMaxOracleCombinations = 10'000'000;

struct OracleOptions {
  bool override_guard = false;
  unsigned workers = 1;
};

namespace detail {

struct OracleBest {
  double peak = std::numeric_limits<double>::infinity();
  std::vector<int> starts;  // by task position, tasks sorted by id
  std::vector<double> load;
};

// Depth-first enumeration with incremental load updates. Blocks are undone
// by restoring the saved slot values, so the load at any node is exactly the
// left-fold of the blocks on the current path, independent of visit history.
// A subtree is pruned when its running peak already reaches the best (or the
// shared bound strictly), which can only skip assignments that cannot
// strictly improve; the first minimum in enumeration order survives, giving
// the lexicographically smallest start vector.
class OracleSearch {
 public:
  OracleSearch(const std::vector<FlexTask>& tasks, const std::vector<Window>& windows,
               std::vector<double> load, const std::atomic<double>* shared_bound)
      : tasks_(tasks),
        windows_(windows),
        load_(std::move(load)),
        shared_bound_(shared_bound),
        chosen_(tasks.size(), 0),
        saved_(tasks.size()) {}

  OracleBest run(std::size_t depth, double running) {
    search(depth, running);
    return std::move(best_);
  }

  // Applies one block in place; returns the new running peak. Paired with
  // undo() for an exact restore.
  double apply(std::size_t depth, int start, double running) {
    const FlexTask& task = tasks_[depth];
    const double power = task.slot_power();
    auto& saved = saved_[depth];
    saved.assign(load_.begin() + (start - 1), load_.begin() + (start - 1) + task.duration);
    for (int j = 0; j < task.duration; ++j) {
      double& slot = load_[start - 1 + j];
      slot += power;
      running = std::max(running, slot);
    }
    chosen_[depth] = start;
    return running;
  }

  void undo(std::size_t depth, int start) {
    const auto& saved = saved_[depth];
    std::copy(saved.begin(), saved.end(), load_.begin() + (start - 1));
  }

 private:
  void search(std::size_t depth, double running) {
    if (running >= best_.peak) return;
    if (shared_bound_ && running > shared_bound_->load(std::memory_order_relaxed)) return;
    if (depth == tasks_.size()) {
      best_ = {running, chosen_, load_};
      return;
    }
    const Window w = windows_[depth];
    for (int start = w.lo; start <= w.hi; ++start) {
      const double next_running = apply(depth, start, running);
      search(depth + 1, next_running);
      undo(depth, start);
    }
  }

  const std::vector<FlexTask>& tasks_;
  const std::vector<Window>& windows_;
  std::vector<double> load_;
  const std::atomic<double>* shared_bound_;
  std::vector<int> chosen_;
  std::vector<std::vector<double>> saved_;
  OracleBest best_;
};

inline void lower_shared_bound(std::atomic<double>& bound, double value) {
  double current = bound.load(std::memory_order_relaxed);
  while (value < current &&
         !bound.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
  }
}

}  // namespace detail

// Minimum-peak assignment over every feasible start combination. Ties break
// toward the lexicographically smallest start vector in task-id order.
inline Schedule oracle_schedule(const Instance& inst, const OracleOptions& opt = {}) {
  auto folded = fold_inflexible(inst);
  std::vector<FlexTask> tasks = std::move(folded.flexible);
  std::sort(tasks.begin(), tasks.end(),
            [](const FlexTask& a, const FlexTask& b) { return a.id < b.id; });

  std::vector<Window> windows;
  windows.reserve(tasks.size());
  std::uint64_t combinations = 1;
  for (const auto& task : tasks) {
    windows.push_back(window(task, inst.horizon));
    const auto width = static_cast<std::uint64_t>(windows.back().width());
    combinations = combinations > std::numeric_limits<std::uint64_t>::max() / width
                       ? std::numeric_limits<std::uint64_t>::max()
                       : combinations * width;
  }
  if (combinations > kMaxOracleCombinations && !opt.override_guard)
    throw CapacityError("oracle_schedule: search space of " + std::to_string(combinations) +
                        " start combinations exceeds the bound of " +
                        std::to_string(kMaxOracleCombinations) +
                        "; rerun with the guard override to force the enumeration");

  if (tasks.empty()) return {Label::Oracle, std::move(folded.essential), {}};

  const double base_peak = *std::max_element(folded.essential.begin(), folded.essential.end());

  detail::OracleBest winner;
  if (opt.workers <= 1) {
    detail::OracleSearch search(tasks, windows, folded.essential, nullptr);
    winner = search.run(0, base_peak);
  } else {
    // Partition the outermost task's window across workers. Each slice is an
    // independent search; a shared bound (strict comparison only, so ties are
    // never dropped) prunes across slices without affecting the result. The
    // ordered reduction reproduces the sequential scan.
    const Window outer = windows.front();
    std::atomic<double> shared_bound{std::numeric_limits<double>::infinity()};
    std::vector<detail::OracleBest> slice_best(outer.width());
    parallel_for_index(slice_best.size(), opt.workers, [&](std::size_t i) {
      detail::OracleSearch search(tasks, windows, folded.essential, &shared_bound);
      const int start = outer.lo + static_cast<int>(i);
      const double running = search.apply(0, start, base_peak);
      slice_best[i] = search.run(1, running);
      if (slice_best[i].peak < std::numeric_limits<double>::infinity())
        detail::lower_shared_bound(shared_bound, slice_best[i].peak);
    });
    winner = slice_best.front();
    for (std::size_t i = 1; i < slice_best.size(); ++i)
      if (slice_best[i].peak < winner.peak) winner = slice_best[i];
  }

  Schedule sched{Label::Oracle, std::move(winner.load), {}};
  for (std::size_t i = 0; i < tasks.size(); ++i) sched.starts[tasks[i].id] = winner.starts[i];
  return sched;
}

}  // namespace loadshift
