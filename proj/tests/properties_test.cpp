// Cross-module invariants over randomized instances. The acceptance suite
// re-runs these at full scale; this suite keeps the developer loop fast.

#include <gtest/gtest.h>

#include <random>

#include "loadshift/loadshift.hpp"
#include "test_util.hpp"

using namespace loadshift;

namespace {

double sum(const std::vector<double>& values) {
  double total = 0.0;
  for (const double v : values) total += v;
  return total;
}

std::vector<Schedule> practical_schedules(const Instance& inst) {
  std::vector<Schedule> scheds{uc_schedule(inst), greedy_schedule(inst)};
  const auto folded = fold_inflexible(inst);
  if (folded.flexible.size() <= 6) scheds.push_back(optimal_schedule(inst));
  std::uint64_t combos = 1;
  for (const auto& task : folded.flexible) combos *= window(task, inst.horizon).width();
  if (combos <= 100000) scheds.push_back(oracle_schedule(inst));
  return scheds;
}

TEST(Properties, EnergyConservationAndReconstruction) {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 250; ++trial) {
    const auto inst = testutil::random_instance(rng);
    const double total = total_energy(inst);
    for (const auto& sched : practical_schedules(inst)) {
      EXPECT_NEAR(sum(sched.load), total, kLoadTolerance)
          << "label " << to_string(sched.label);
      const auto rebuilt = reconstructed_load(inst, sched);
      ASSERT_EQ(rebuilt.size(), sched.load.size());
      for (std::size_t t = 0; t < rebuilt.size(); ++t)
        EXPECT_NEAR(rebuilt[t], sched.load[t], kLoadTolerance)
            << "label " << to_string(sched.label) << " slot " << t + 1;
    }
    EXPECT_NEAR(sum(gc_schedule(inst).load), total, kLoadTolerance);
  }
}

TEST(Properties, StartsStayInsideWindows) {
  std::mt19937_64 rng(1002);
  for (int trial = 0; trial < 250; ++trial) {
    const auto inst = testutil::random_instance(rng);
    for (const auto& sched : practical_schedules(inst)) {
      for (const auto& task : inst.tasks) {
        const auto it = sched.starts.find(task.id);
        if (it == sched.starts.end()) continue;
        const auto w = sched.label == Label::UC ? Window{task.preferred_start,
                                                         task.preferred_start}
                                                : window(task, inst.horizon);
        EXPECT_GE(it->second, w.lo);
        EXPECT_LE(it->second, w.hi);
      }
    }
  }
}

TEST(Properties, OracleNeverWorseThanEitherAlgorithm) {
  std::mt19937_64 rng(1003);
  int checked = 0;
  while (checked < 120) {
    const auto inst = testutil::random_instance(rng, 10, 5);
    const auto folded = fold_inflexible(inst);
    std::uint64_t combos = 1;
    for (const auto& task : folded.flexible) combos *= window(task, inst.horizon).width();
    if (combos > 100000 || folded.flexible.size() > 6) continue;
    ++checked;
    const double oracle_peak = peak_load(oracle_schedule(inst).load);
    EXPECT_LE(oracle_peak, peak_load(optimal_schedule(inst).load) + kLoadTolerance);
    EXPECT_LE(oracle_peak, peak_load(greedy_schedule(inst).load) + kLoadTolerance);
  }
}

TEST(Properties, WidenedWindowsNeverRaiseOraclePeak) {
  std::mt19937_64 rng(1004);
  int checked = 0;
  while (checked < 60) {
    auto inst = testutil::random_instance(rng, 8, 4);
    const auto folded = fold_inflexible(inst);
    std::uint64_t combos = 1;
    for (const auto& task : folded.flexible) combos *= window(task, inst.horizon).width();
    if (combos > 20000) continue;
    ++checked;
    const double before = peak_load(oracle_schedule(inst).load);
    auto widened = inst;
    for (auto& task : widened.tasks)
      if (task.is_flexible) task.deviation = inst.horizon;
    const double after = peak_load(oracle_schedule(widened).load);
    EXPECT_LE(after, before + kLoadTolerance);
  }
}

TEST(Properties, ClippingEquivalenceForLargeDeviations) {
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 150; ++trial) {
    auto inst = testutil::random_instance(rng);
    auto clipped = inst;
    for (auto& task : clipped.tasks)
      if (task.is_flexible && task.deviation > inst.horizon) task.deviation = inst.horizon;
    EXPECT_EQ(greedy_schedule(inst), greedy_schedule(clipped));
    EXPECT_EQ(uc_schedule(inst), uc_schedule(clipped));
  }
}

TEST(Properties, MseIsAMetricUpToSquaring) {
  std::mt19937_64 rng(1006);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = testutil::random_instance(rng);
    const auto gc = gc_schedule(inst);
    const auto uc = uc_schedule(inst);
    EXPECT_DOUBLE_EQ(mse(gc, uc), mse(uc, gc));
    EXPECT_DOUBLE_EQ(mse(gc, gc), 0.0);
    EXPECT_GE(mse(gc, uc), 0.0);
  }
}

TEST(Properties, ParallelismDoesNotChangeResults) {
  std::mt19937_64 rng(1007);
  int checked = 0;
  while (checked < 40) {
    const auto inst = testutil::random_instance(rng, 10, 5);
    const auto folded = fold_inflexible(inst);
    std::uint64_t combos = 1;
    for (const auto& task : folded.flexible) combos *= window(task, inst.horizon).width();
    if (combos > 50000) continue;
    ++checked;
    EXPECT_EQ(optimal_schedule(inst, {false, 1}), optimal_schedule(inst, {false, 3}));
    EXPECT_EQ(oracle_schedule(inst, {false, 1}), oracle_schedule(inst, {false, 3}));
  }
}

}  // namespace
