// Command-line front end: generate instances, run any of the schedulers on
// an instance file, or execute a sweep and emit its CSV.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation or usage error,
// 3 enumeration guard exceeded.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loadshift/loadshift.hpp"

namespace {

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty()) {
    std::cout << content;
    if (!std::cout) throw loadshift::IoError("failed writing to stdout");
    return;
  }
  loadshift::write_file(output_path, content);
}

struct GenArgs {
  loadshift::GenConfig cfg;
  int flexible = -1;   // -1: all tasks
  int deviation = -1;  // -1: horizon, i.e. 100% flexible
  std::string output;
};

int run_gen(const GenArgs& args) {
  loadshift::Instance inst = loadshift::generate(args.cfg);
  const int flexible = args.flexible < 0 ? args.cfg.n_tasks : args.flexible;
  const int deviation = args.deviation < 0 ? args.cfg.horizon : args.deviation;
  inst = loadshift::with_flexible_prefix(std::move(inst), flexible, deviation);
  emit(args.output, loadshift::to_json(inst).dump(2) + "\n");
  return 0;
}

struct ScheduleArgs {
  std::string algorithm;
  std::string instance_path;
  std::string output;
  unsigned parallel = 1;
  bool override_guards = false;
};

int run_schedule(const ScheduleArgs& args) {
  const loadshift::Label label = loadshift::label_from_string(args.algorithm);
  const loadshift::Instance inst =
      loadshift::parse_instance(loadshift::read_file(args.instance_path));
  const loadshift::Schedule sched =
      loadshift::run_algorithm(label, inst, {args.parallel, args.override_guards});
  const loadshift::ScheduleComparison cmp = loadshift::compare(sched, inst);
  emit(args.output, loadshift::schedule_to_json(sched, cmp).dump(2) + "\n");
  return 0;
}

struct SweepArgs {
  std::string mode;
  std::string algorithm = "greedy";
  loadshift::GenConfig cfg;
  int trials = 20;
  std::vector<int> counts{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<int> x_values{0, 2, 4, 6, 8, 10, 12, 14};
  std::vector<int> flex_counts{10, 30, 50};
  std::string output;
  unsigned parallel = 1;
  bool override_guards = false;
};

int run_sweep(const SweepArgs& args) {
  const loadshift::Label label = loadshift::label_from_string(args.algorithm);
  const loadshift::SweepOptions opt{args.parallel, args.override_guards};
  loadshift::SweepResult result;
  if (args.mode == "devices")
    result = loadshift::sweep_devices(args.cfg, label, args.counts, args.trials, opt);
  else
    result = loadshift::sweep_deviation(args.cfg, label, args.x_values, args.flex_counts,
                                        args.trials, opt);
  emit(args.output, loadshift::to_csv(result));
  return 0;
}

void add_gen_config_options(CLI::App* cmd, loadshift::GenConfig& cfg) {
  cmd->add_option("--horizon", cfg.horizon, "number of one-hour slots")->capture_default_str();
  cmd->add_option("--tasks", cfg.n_tasks, "number of shiftable tasks")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
  cmd->add_option("--essential-min", cfg.essential_range.lo, "per-slot essential load lower bound, kWh")
      ->capture_default_str();
  cmd->add_option("--essential-max", cfg.essential_range.hi, "per-slot essential load upper bound, kWh")
      ->capture_default_str();
  cmd->add_option("--energy-min", cfg.energy_range.lo, "task energy lower bound, kWh")
      ->capture_default_str();
  cmd->add_option("--energy-max", cfg.energy_range.hi, "task energy upper bound, kWh")
      ->capture_default_str();
  cmd->add_option("--duration-min", cfg.duration_range.lo, "task duration lower bound, slots")
      ->capture_default_str();
  cmd->add_option("--duration-max", cfg.duration_range.hi, "task duration upper bound, slots")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peak-shaving scheduler for flexible household tasks"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance as JSON");
  add_gen_config_options(gen, gen_args.cfg);
  gen->add_option("--flexible", gen_args.flexible,
                  "mark the first N tasks flexible (default: all)")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--deviation", gen_args.deviation,
                  "deviation tolerance of flexible tasks, slots (default: horizon)")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("-o,--output", gen_args.output, "output file (default: stdout)");

  ScheduleArgs sched_args;
  CLI::App* sched = app.add_subcommand("schedule", "run a scheduler on an instance file");
  sched->add_option("--algorithm", sched_args.algorithm, "one of gc|uc|optimal|greedy|oracle")
      ->required()
      ->check(CLI::IsMember({"gc", "uc", "optimal", "greedy", "oracle"}));
  sched->add_option("--instance", sched_args.instance_path, "instance JSON file")->required();
  sched->add_option("-o,--output", sched_args.output, "output file (default: stdout)");
  sched->add_option("--parallel", sched_args.parallel, "worker thread cap")
      ->check(CLI::PositiveNumber);
  sched->add_flag("--override-guards", sched_args.override_guards,
                  "lift the enumeration guards of optimal and oracle");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "run a sweep and emit its CSV");
  sweep->add_option("--mode", sweep_args.mode, "devices or deviation")
      ->required()
      ->check(CLI::IsMember({"devices", "deviation"}));
  sweep->add_option("--algorithm", sweep_args.algorithm, "scheduler to sweep")
      ->check(CLI::IsMember({"gc", "uc", "optimal", "greedy", "oracle"}))
      ->capture_default_str();
  add_gen_config_options(sweep, sweep_args.cfg);
  sweep->add_option("--trials", sweep_args.trials, "instances per sweep point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--counts", sweep_args.counts,
                    "flexible device counts for the devices mode (comma separated)")
      ->delimiter(',');
  sweep->add_option("--x-values", sweep_args.x_values,
                    "deviation tolerances for the deviation mode (comma separated)")
      ->delimiter(',');
  sweep->add_option("--flex-counts", sweep_args.flex_counts,
                    "flexible device counts for the deviation mode (comma separated)")
      ->delimiter(',');
  sweep->add_option("-o,--output", sweep_args.output, "output file (default: stdout)");
  sweep->add_option("--parallel", sweep_args.parallel, "worker thread cap")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--override-guards", sweep_args.override_guards,
                  "lift the enumeration guards of optimal and oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (sched->parsed()) return run_schedule(sched_args);
    return run_sweep(sweep_args);
  } catch (const loadshift::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const loadshift::ValidationError& e) {
    std::cerr << "error: invalid input\n";
    for (const auto& issue : e.issues()) std::cerr << "  - " << issue << "\n";
    return 2;
  } catch (const loadshift::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
