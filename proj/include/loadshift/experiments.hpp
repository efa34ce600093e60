#pragma once

// Random instance generation and the two sweep protocols: varying the number
// of fully flexible devices, and varying the shared slot-deviation tolerance
// for a fixed number of flexible devices. Everything is seeded and
// reproducible; trials of a sweep may run in parallel without changing the
// result.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "loadshift/core.hpp"
#include "loadshift/metrics.hpp"
#include "loadshift/oracle.hpp"
#include "loadshift/parallel.hpp"
#include "loadshift/scheduling.hpp"

namespace loadshift {

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool operator==(const IntRange&) const = default;
};

// Generator settings. Per-slot essential load, task energy and task duration
// are discrete uniform integers over the given ranges; the preferred start is
// uniform over the starts that let the task finish within the horizon.
struct GenConfig {
  int horizon = 24;
  int n_tasks = 100;
  IntRange essential_range{1, 5};
  IntRange energy_range{1, 5};
  IntRange duration_range{1, 5};
  std::uint64_t seed = 0;
};

inline std::vector<std::string> validate(const GenConfig& cfg) {
  std::vector<std::string> issues;
  if (cfg.horizon < 1)
    issues.push_back("horizon must be >= 1, got " + std::to_string(cfg.horizon));
  if (cfg.n_tasks < 0)
    issues.push_back("task count must be >= 0, got " + std::to_string(cfg.n_tasks));
  const auto check_range = [&](const IntRange& r, const std::string& name) {
    if (r.lo < 1 || r.hi < r.lo)
      issues.push_back(name + " range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                       "] must satisfy 1 <= lo <= hi");
  };
  check_range(cfg.essential_range, "essential");
  check_range(cfg.energy_range, "energy");
  check_range(cfg.duration_range, "duration");
  if (cfg.duration_range.hi > cfg.horizon)
    issues.push_back("duration range upper bound " + std::to_string(cfg.duration_range.hi) +
                     " exceeds horizon " + std::to_string(cfg.horizon));
  return issues;
}

inline void validate_or_throw(const GenConfig& cfg) {
  auto issues = validate(cfg);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

// Unbiased draw from [0, range) by rejecting the remainder zone.
// std::uniform_int_distribution is implementation-defined, so it would break
// seed reproducibility across standard libraries; the raw mt19937_64 stream
// is fully specified.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t v = rng();
    if (v >= threshold) return (v - threshold) % range;
  }
}

inline int draw_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

// Seed for the k-th trial of a sweep: the k-th output of a splitmix64 stream
// seeded with the master seed (closed form). Trials are therefore
// independent of each other yet fully determined by (master seed, index).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial_index) {
  std::uint64_t z = master + (trial_index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Draws an instance from the config. Draw order is fixed: the essential load
// slot by slot, then per task its energy, duration and preferred start.
// Generated tasks have ids 1..n and are fully flexible (deviation = horizon);
// use with_flexible_prefix to re-flag them for a sweep point.
inline Instance generate(const GenConfig& cfg) {
  validate_or_throw(cfg);
  std::mt19937_64 rng(cfg.seed);
  Instance inst{cfg.horizon, {}, {}};
  inst.essential.reserve(cfg.horizon);
  for (int t = 0; t < cfg.horizon; ++t)
    inst.essential.push_back(draw_int(rng, cfg.essential_range.lo, cfg.essential_range.hi));
  inst.tasks.reserve(cfg.n_tasks);
  for (int i = 1; i <= cfg.n_tasks; ++i) {
    FlexTask task;
    task.id = i;
    task.energy = draw_int(rng, cfg.energy_range.lo, cfg.energy_range.hi);
    task.duration = draw_int(rng, cfg.duration_range.lo, cfg.duration_range.hi);
    task.preferred_start = draw_int(rng, 1, cfg.horizon - task.duration + 1);
    task.deviation = cfg.horizon;
    task.is_flexible = true;
    inst.tasks.push_back(task);
  }
  return inst;
}

// Marks the first `count` tasks in id order as flexible with the given
// deviation tolerance; the rest become inflexible and run at their preferred
// start. The loads themselves are untouched.
inline Instance with_flexible_prefix(Instance inst, int count, int deviation) {
  if (count < 0 || count > static_cast<int>(inst.tasks.size()))
    throw std::invalid_argument("flexible count " + std::to_string(count) + " outside [0, " +
                                std::to_string(inst.tasks.size()) + "]");
  if (deviation < 0)
    throw std::invalid_argument("deviation must be >= 0, got " + std::to_string(deviation));
  std::vector<FlexTask*> by_id;
  by_id.reserve(inst.tasks.size());
  for (auto& task : inst.tasks) by_id.push_back(&task);
  std::sort(by_id.begin(), by_id.end(),
            [](const FlexTask* a, const FlexTask* b) { return a->id < b->id; });
  for (std::size_t i = 0; i < by_id.size(); ++i) {
    const bool flex = static_cast<int>(i) < count;
    by_id[i]->is_flexible = flex;
    by_id[i]->deviation = flex ? deviation : 0;
  }
  return inst;
}

struct RunOptions {
  unsigned workers = 1;
  bool override_guards = false;
};

inline Schedule run_algorithm(Label algorithm, const Instance& inst, const RunOptions& opt = {}) {
  switch (algorithm) {
    case Label::GC: return gc_schedule(inst);
    case Label::UC: return uc_schedule(inst);
    case Label::Optimal: return optimal_schedule(inst, {opt.override_guards, opt.workers});
    case Label::Greedy: return greedy_schedule(inst);
    case Label::Oracle: return oracle_schedule(inst, {opt.override_guards, opt.workers});
  }
  throw std::invalid_argument("unknown algorithm label");
}

// One sweep measurement: metrics of the chosen algorithm on trial `trial`'s
// instance flagged according to (param, value).
struct SweepRow {
  std::string param;
  double value = 0.0;
  int trial = 0;
  std::string algorithm;
  double peak = 0.0;
  double gamma = 0.0;
  double zeta = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepPoint {
  std::string param;
  double value = 0.0;
  int n_trials = 0;
  double mean_peak = 0.0;
  double mean_gamma = 0.0;
  double mean_zeta = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  // Per-(param, value) means in first-appearance order, recomputable from
  // the rows alone.
  std::vector<SweepPoint> averages() const {
    std::vector<SweepPoint> points;
    for (const auto& row : rows) {
      SweepPoint* point = nullptr;
      for (auto& p : points)
        if (p.param == row.param && p.value == row.value) {
          point = &p;
          break;
        }
      if (!point) {
        points.push_back({row.param, row.value, 0, 0.0, 0.0, 0.0});
        point = &points.back();
      }
      point->n_trials += 1;
      point->mean_peak += row.peak;
      point->mean_gamma += row.gamma;
      point->mean_zeta += row.zeta;
    }
    for (auto& p : points) {
      p.mean_peak /= p.n_trials;
      p.mean_gamma /= p.n_trials;
      p.mean_zeta /= p.n_trials;
    }
    return points;
  }

  bool operator==(const SweepResult&) const = default;
};

struct SweepOptions {
  unsigned workers = 1;
  bool override_guards = false;
};

namespace detail {

// Shared trial loop: every swept setting of a trial reuses that trial's
// instance, only the flexibility flags differ. GC and UC ignore flags, so
// the comparison baselines are computed once per trial.
template <typename FlagFn>
SweepResult run_sweep(const GenConfig& cfg, Label algorithm, int n_trials,
                      std::size_t n_settings, FlagFn&& flag_setting,
                      const SweepOptions& opt) {
  if (n_trials < 1)
    throw std::invalid_argument("sweep needs at least one trial, got " +
                                std::to_string(n_trials));
  std::vector<std::vector<SweepRow>> per_trial(n_trials);
  parallel_for_index(static_cast<std::size_t>(n_trials), opt.workers, [&](std::size_t k) {
    GenConfig trial_cfg = cfg;
    trial_cfg.seed = trial_seed(cfg.seed, k);
    const Instance base = generate(trial_cfg);
    const Schedule gc = gc_schedule(base);
    const Schedule uc = uc_schedule(base);
    auto& rows = per_trial[k];
    rows.reserve(n_settings);
    for (std::size_t s = 0; s < n_settings; ++s) {
      auto [param, value, flagged] = flag_setting(base, s);
      const Schedule sched = run_algorithm(algorithm, flagged, {1, opt.override_guards});
      const ScheduleComparison cmp = compare(sched, gc, uc);
      rows.push_back({std::move(param), value, static_cast<int>(k),
                      std::string(algorithm_name(algorithm)), cmp.peak, cmp.gamma, cmp.zeta});
    }
  });
  SweepResult result;
  result.rows.reserve(static_cast<std::size_t>(n_trials) * n_settings);
  for (std::size_t s = 0; s < n_settings; ++s)
    for (int k = 0; k < n_trials; ++k) result.rows.push_back(std::move(per_trial[k][s]));
  return result;
}

}  // namespace detail

// Varies the number of devices that opt into 100% flexibility. For each
// count Y, the first Y tasks by id become fully flexible and the rest are
// folded into the essential load.
inline SweepResult sweep_devices(const GenConfig& cfg, Label algorithm,
                                 std::span<const int> counts, int n_trials,
                                 const SweepOptions& opt = {}) {
  for (const int y : counts)
    if (y < 0 || y > cfg.n_tasks)
      throw std::invalid_argument("devices sweep: count " + std::to_string(y) +
                                  " outside [0, " + std::to_string(cfg.n_tasks) + "]");
  return detail::run_sweep(
      cfg, algorithm, n_trials, counts.size(),
      [&](const Instance& base, std::size_t s) {
        const int y = counts[s];
        return std::tuple<std::string, double, Instance>(
            "devices", y, with_flexible_prefix(base, y, cfg.horizon));
      },
      opt);
}

// Varies the shared deviation tolerance X for each fixed number of flexible
// devices; one curve per flex count, labelled "deviation:flex=<count>".
inline SweepResult sweep_deviation(const GenConfig& cfg, Label algorithm,
                                   std::span<const int> x_values, std::span<const int> flex_counts,
                                   int n_trials, const SweepOptions& opt = {}) {
  for (const int count : flex_counts)
    if (count < 0 || count > cfg.n_tasks)
      throw std::invalid_argument("deviation sweep: flex count " + std::to_string(count) +
                                  " outside [0, " + std::to_string(cfg.n_tasks) + "]");
  for (const int x : x_values)
    if (x < 0)
      throw std::invalid_argument("deviation sweep: X must be >= 0, got " + std::to_string(x));
  return detail::run_sweep(
      cfg, algorithm, n_trials, flex_counts.size() * x_values.size(),
      [&](const Instance& base, std::size_t s) {
        const int count = flex_counts[s / x_values.size()];
        const int x = x_values[s % x_values.size()];
        return std::tuple<std::string, double, Instance>(
            "deviation:flex=" + std::to_string(count), x,
            with_flexible_prefix(base, count, x));
      },
      opt);
}

}  // namespace loadshift
