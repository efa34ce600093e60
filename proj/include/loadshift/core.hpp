#pragma once

// Data model for the peak-shaving scheduler: a discrete horizon of 1-hour
// slots carrying a fixed essential load, plus a set of shiftable tasks that
// draw uniform power over a contiguous run of slots.
//
// Slots are 1-indexed everywhere, including serialized formats. Loads are
// real-valued kWh; equality checks use an absolute tolerance of 1e-9.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loadshift {

inline constexpr double kLoadTolerance = 1e-9;

// Raised when an input fails model validation; carries one message per
// violated invariant so callers can report all of them at once.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string all;
    for (const auto& issue : issues) {
      if (!all.empty()) all += "; ";
      all += issue;
    }
    return all;
  }

  std::vector<std::string> issues_;
};

// Raised when a request exceeds an enumeration guard (see optimal_schedule
// and oracle_schedule). Overridable by the caller.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One shiftable appliance task. `energy` is the total kWh drawn over
// `duration` consecutive slots at uniform power energy/duration. A task may
// start up to `deviation` slots before or after `preferred_start`; tasks
// with is_flexible == false always run at their preferred start.
struct FlexTask {
  int id = 0;
  double energy = 0.0;
  int duration = 1;
  int preferred_start = 1;
  int deviation = 0;
  bool is_flexible = false;

  double slot_power() const { return energy / duration; }

  bool operator==(const FlexTask&) const = default;
};

// A scheduling problem: `horizon` slots, per-slot essential load, and the
// task list. Validate with validate()/validate_or_throw() before solving.
struct Instance {
  int horizon = 0;
  std::vector<double> essential;
  std::vector<FlexTask> tasks;

  bool operator==(const Instance&) const = default;
};

// Feasible start interval [lo, hi] for one task, 1-indexed, inclusive.
struct Window {
  int lo = 1;
  int hi = 1;

  int width() const { return hi - lo + 1; }

  bool operator==(const Window&) const = default;
};

enum class Label { GC, UC, Optimal, Greedy, Oracle };

constexpr std::string_view to_string(Label label) {
  switch (label) {
    case Label::GC: return "GC";
    case Label::UC: return "UC";
    case Label::Optimal: return "OPTIMAL";
    case Label::Greedy: return "GREEDY";
    case Label::Oracle: return "ORACLE";
  }
  return "?";
}

inline Label label_from_string(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "GC") return Label::GC;
  if (upper == "UC") return Label::UC;
  if (upper == "OPTIMAL") return Label::Optimal;
  if (upper == "GREEDY") return Label::Greedy;
  if (upper == "ORACLE") return Label::Oracle;
  throw std::invalid_argument("unknown schedule label: " + std::string(text));
}

// Lowercase algorithm name as used by the CLI and sweep CSVs.
constexpr std::string_view algorithm_name(Label label) {
  switch (label) {
    case Label::GC: return "gc";
    case Label::UC: return "uc";
    case Label::Optimal: return "optimal";
    case Label::Greedy: return "greedy";
    case Label::Oracle: return "oracle";
  }
  return "?";
}

// Solver output: total per-slot load and the chosen start slot per task.
// GC is the idealized flat benchmark and carries no starts; every other
// label is reconstructible from its starts (see reconstructed_load).
struct Schedule {
  Label label = Label::UC;
  std::vector<double> load;
  std::map<int, int> starts;

  bool operator==(const Schedule&) const = default;
};

// Collects every violated invariant; empty result means the instance is valid.
inline std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> issues;
  if (inst.horizon < 1)
    issues.push_back("horizon must be a positive slot count, got " + std::to_string(inst.horizon));
  if (static_cast<int>(inst.essential.size()) != inst.horizon)
    issues.push_back("essential load has " + std::to_string(inst.essential.size()) +
                     " entries, expected horizon = " + std::to_string(inst.horizon));
  for (std::size_t t = 0; t < inst.essential.size(); ++t) {
    if (!std::isfinite(inst.essential[t]) || inst.essential[t] < 0.0)
      issues.push_back("essential load at slot " + std::to_string(t + 1) +
                       " must be finite and >= 0, got " + std::to_string(inst.essential[t]));
  }
  std::set<int> seen_ids;
  for (const auto& task : inst.tasks) {
    const std::string tag = "task " + std::to_string(task.id);
    if (!seen_ids.insert(task.id).second) issues.push_back(tag + ": duplicate id");
    if (!std::isfinite(task.energy) || task.energy <= 0.0)
      issues.push_back(tag + ": energy must be finite and > 0, got " + std::to_string(task.energy));
    if (task.duration < 1 || task.duration > inst.horizon)
      issues.push_back(tag + ": duration " + std::to_string(task.duration) +
                       " outside [1, " + std::to_string(inst.horizon) + "]");
    else if (task.preferred_start < 1 || task.preferred_start > inst.horizon - task.duration + 1)
      issues.push_back(tag + ": preferred_start " + std::to_string(task.preferred_start) +
                       " outside [1, " + std::to_string(inst.horizon - task.duration + 1) + "]");
    if (task.deviation < 0)
      issues.push_back(tag + ": deviation must be >= 0, got " + std::to_string(task.deviation));
  }
  return issues;
}

inline void validate_or_throw(const Instance& inst) {
  auto issues = validate(inst);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

// Per-slot expansion of one task placed at `start`: energy/duration on the
// `duration` contiguous slots beginning at `start`, zero elsewhere.
inline std::vector<double> per_slot_profile(const FlexTask& task, int start, int horizon) {
  const int last_start = horizon - task.duration + 1;
  if (start < 1 || start > last_start)
    throw std::out_of_range("task " + std::to_string(task.id) + ": start " +
                            std::to_string(start) + " outside [1, " +
                            std::to_string(last_start) + "]");
  std::vector<double> profile(horizon, 0.0);
  const double power = task.slot_power();
  for (int t = start; t < start + task.duration; ++t) profile[t - 1] = power;
  return profile;
}

// Feasible start interval for a task: [max(1, B-X), min(T-dur+1, B+X)],
// collapsed to the preferred start for inflexible tasks. Any deviation
// >= horizon clips to the full interval, i.e. 100% flexibility.
inline Window window(const FlexTask& task, int horizon) {
  if (!task.is_flexible) return {task.preferred_start, task.preferred_start};
  const int last_start = horizon - task.duration + 1;
  return {std::max(1, task.preferred_start - task.deviation),
          std::min(last_start, task.preferred_start + task.deviation)};
}

// Result of folding inflexible tasks into the essential load: the effective
// essential vector plus the remaining flexible subset, in input order.
struct FoldResult {
  std::vector<double> essential;
  std::vector<FlexTask> flexible;
};

inline FoldResult fold_inflexible(const Instance& inst) {
  FoldResult out{inst.essential, {}};
  for (const auto& task : inst.tasks) {
    if (task.is_flexible) {
      out.flexible.push_back(task);
      continue;
    }
    const double power = task.slot_power();
    for (int t = task.preferred_start; t < task.preferred_start + task.duration; ++t)
      out.essential[t - 1] += power;
  }
  return out;
}

// Total energy over the horizon: essential plus every task, flexible or not.
inline double total_energy(const Instance& inst) {
  double total = std::accumulate(inst.essential.begin(), inst.essential.end(), 0.0);
  for (const auto& task : inst.tasks) total += task.energy;
  return total;
}

// Rebuilds a schedule's load vector from its start assignments: tasks absent
// from `starts` are pinned at their preferred slot. Meaningless for GC.
inline std::vector<double> reconstructed_load(const Instance& inst, const Schedule& sched) {
  std::vector<double> load = inst.essential;
  for (const auto& task : inst.tasks) {
    const auto it = sched.starts.find(task.id);
    const int start = it == sched.starts.end() ? task.preferred_start : it->second;
    const double power = task.slot_power();
    for (int t = start; t < start + task.duration; ++t) load[t - 1] += power;
  }
  return load;
}

}  // namespace loadshift
