#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coalsim/metrics.hpp"

namespace coalsim {

enum class SweepVariable { None, NumD2d, NumAccess, NumChannels, SiMagnitude, RMin };

std::string to_string(SweepVariable v);

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  RadioParams params;
  GameConfig game;
  std::vector<SchemeId> schemes = {SchemeId::FdCoalition};
  int trials = 200;
  std::uint64_t master_seed = 1;
  SweepVariable sweep_var = SweepVariable::None;
  std::vector<double> sweep_values;  // r_min values in Mbit/s
  int n_bs = 3;
  int n_access = 5;
  int n_d2d = 30;
  int num_channels = 5;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  int workers = 1;
  bool verify_stability = false;
  bool timing = false;  // wall-clock runtime_s in output (non-reproducible)
  bool optimal_enforce_rmin = true;
  std::uint64_t optimal_work_bound = 100'000'000;
};

// Flat key = value document ('#' comments). Unknown keys and out-of-range
// values are rejected with the line number. Absent keys keep the defaults.
ExperimentConfig parse_config(const std::string& text);

enum class TrialStatus { Ok, Skipped, Failed };

struct TrialRecord {
  SchemeId scheme = SchemeId::FdCoalition;
  SweepVariable sweep_var = SweepVariable::None;
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  TrialStatus status = TrialStatus::Ok;
  std::string message;  // failure/skip reason
  TrialResult result;
};

struct SweepPointAggregate {
  SchemeId scheme;
  double sweep_value;
  AggregateStats stats;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<SweepPointAggregate> aggregates;
};

// Seeded Monte-Carlo sweep. One scenario per (trial) child seed, shared by all
// schemes of that trial. Scheme errors are recorded per trial without
// aborting the sweep. Fully deterministic given the master seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_csv(const ExperimentResult& r, std::ostream& out);
void write_json(const ExperimentResult& r, std::ostream& out);

// Dispatches on cfg.format; throws on I/O failure naming the path.
void write_results(const ExperimentResult& r, const std::string& path);

}  // namespace coalsim
