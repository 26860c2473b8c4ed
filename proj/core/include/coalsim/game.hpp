#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coalsim/radio.hpp"
#include "coalsim/rng.hpp"

namespace coalsim {

// Total assignment link id -> sub-channel index in [0, num_channels).
struct Partition {
  std::vector<int> channel;

  std::vector<LinkId> members_of(int c) const {
    std::vector<LinkId> out;
    for (LinkId l = 0; l < static_cast<LinkId>(channel.size()); ++l)
      if (channel[static_cast<size_t>(l)] == c) out.push_back(l);
    return out;
  }
  std::uint64_t hash() const;
  bool operator==(const Partition&) const = default;
};

enum class SwitchKind { Single, TwoStep };

struct SwitchRecord {
  LinkId link = 0;
  int from_channel = 0;
  int to_channel = 0;
  SwitchKind kind = SwitchKind::Single;
  // Total utility of the partition before/after the accepted operation (for a
  // two-step acceptance, before/after the pair; strictly increasing).
  double utility_before = 0.0;
  double utility_after = 0.0;
};

struct GameConfig {
  double r_min = 400e6;              // bit/s
  long max_iterations = 100000;      // switch-attempt cap
  long stability_scan_interval = 0;  // 0 = 50 * |links|
  Duplex duplex = Duplex::FD;
  std::uint64_t seed = 0;
};

struct GameResult {
  Partition partition;
  std::vector<SwitchRecord> switches;
  bool stable = false;
  long attempts = 0;
  bool state_repeated = false;  // a committed partition hash recurred
};

// Called after each accepted operation with the partitions around it.
using SwitchObserver = std::function<void(
    const Partition& before, const Partition& after, const SwitchRecord&)>;

// Uniform random channel per link, repaired to feasibility by reassigning
// violating links (bounded retries). Throws if no feasible partition is found.
Partition random_feasible_partition(const Scenario& s, Duplex duplex, Rng& rng);

// The coalition-formation engine for one scenario. Holds the precomputed
// rate model; all queries are const and safe to call concurrently.
class CoalitionGame {
 public:
  CoalitionGame(const Scenario& s, GameConfig cfg);

  const Scenario& scenario() const { return *scenario_; }
  const GameConfig& config() const { return cfg_; }
  const RateModel& model() const { return model_; }

  // alpha * sum rate of the links on `c`; 0 for an empty channel.
  double coalition_utility(int c, const Partition& p) const;
  // Sum over channels; equals alpha * system throughput.
  double total_utility(const Partition& p) const;
  double total_rate(const Partition& p) const;

  // Coalition feasibility for the hypothetical join of `link` into `c`:
  // every node is transmitter of at most one member and receiver of at most
  // one member; under HD no node may appear in two members at all.
  bool is_feasible_join(LinkId link, int c, const Partition& p) const;

  // True iff after the join every member of the destination coalition
  // (including `link`) keeps rate >= r_min.
  bool rmin_ok(LinkId link, int c, const Partition& p) const;

  // Strict preference: U(dest + link) + U(origin - link) > U(dest) + U(origin).
  bool prefers(LinkId link, int to_channel, const Partition& p) const;

  static Partition apply_switch(const Partition& p, LinkId link, int to_channel);

  // No link has a feasible, R_min-respecting, strictly preferred move.
  bool is_nash_stable(const Partition& p) const;

  // Algorithm: random single switches gated by feasibility, R_min and strict
  // preference; on preference failure a tentative two-step lookahead accepted
  // iff the total rate strictly increases. Stability detected by an
  // exhaustive scan after a streak of rejected attempts.
  GameResult run(const SwitchObserver& observer = {}) const;

  // Per-channel feasibility audit of a whole partition.
  std::vector<std::string> audit_partition(const Partition& p) const;

  std::vector<double> per_link_rates(const Partition& p) const;

 private:
  const Scenario* scenario_;
  GameConfig cfg_;
  RateModel model_;
};

}  // namespace coalsim
