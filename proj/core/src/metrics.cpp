#include "coalsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coalsim {

double system_throughput(const std::vector<double>& rates) {
  double sum = 0.0;
  for (double r : rates) {
    if (r < 0.0) throw std::invalid_argument("system_throughput: negative rate");
    sum += r;
  }
  return sum;
}

double jain_fairness(const std::vector<double>& rates) {
  if (rates.empty())
    throw std::invalid_argument("jain_fairness: empty rate vector");
  double sum = 0.0, sum_sq = 0.0;
  for (double r : rates) {
    if (r < 0.0) throw std::invalid_argument("jain_fairness: negative rate");
    sum += r;
    sum_sq += r * r;
  }
  if (sum_sq == 0.0)
    throw std::invalid_argument("jain_fairness: all-zero rate vector");
  return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

Stats compute_stats(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("compute_stats: empty input");
  Stats st;
  st.min = *std::min_element(xs.begin(), xs.end());
  st.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - st.mean) * (x - st.mean);
  st.sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  return st;
}

std::map<SchemeId, AggregateStats> aggregate(const std::vector<TrialResult>& results) {
  if (results.empty()) throw std::invalid_argument("aggregate: empty result list");
  std::map<SchemeId, std::vector<const TrialResult*>> by_scheme;
  for (const TrialResult& r : results) by_scheme[r.scheme].push_back(&r);

  std::map<SchemeId, AggregateStats> out;
  for (auto& [scheme, rs] : by_scheme) {
    AggregateStats a;
    a.trial_count = static_cast<long>(rs.size());
    std::vector<double> tp, fair, sw, rt;
    long stable = 0;
    for (const TrialResult* r : rs) {
      tp.push_back(r->throughput);
      fair.push_back(r->fairness);
      sw.push_back(static_cast<double>(r->switch_count));
      rt.push_back(r->runtime);
      if (r->stable) ++stable;
    }
    a.throughput = compute_stats(tp);
    a.fairness = compute_stats(fair);
    a.switch_count = compute_stats(sw);
    a.runtime = compute_stats(rt);
    a.stable_fraction = static_cast<double>(stable) / static_cast<double>(rs.size());
    out[scheme] = a;
  }
  return out;
}

}  // namespace coalsim
