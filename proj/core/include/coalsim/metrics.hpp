#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coalsim/baselines.hpp"

namespace coalsim {

struct TrialResult {
  SchemeId scheme = SchemeId::FdCoalition;
  std::uint64_t seed = 0;
  double throughput = 0.0;  // bit/s
  double fairness = 0.0;    // Jain index, (0,1]
  long switch_count = 0;
  bool stable = false;
  std::vector<double> per_link_rates;
  double runtime = 0.0;  // seconds
};

// Sum of all per-link rates; throws on a negative rate.
double system_throughput(const std::vector<double>& rates);

// Jain's index (sum R)^2 / (n * sum R^2). Throws on empty or all-zero input.
double jain_fairness(const std::vector<double>& rates);

struct Stats {
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct AggregateStats {
  long trial_count = 0;
  Stats throughput;
  Stats fairness;
  Stats switch_count;
  double stable_fraction = 0.0;
  Stats runtime;
};

Stats compute_stats(const std::vector<double>& xs);  // throws on empty

// Per-scheme mean/sd/min/max over the trials. Throws on an empty list.
std::map<SchemeId, AggregateStats> aggregate(const std::vector<TrialResult>& results);

}  // namespace coalsim
