#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "coalsim/game.hpp"

namespace coalsim {

enum class SchemeId { FdCoalition, HdCoalition, Random, Optimal };

std::string to_string(SchemeId s);
SchemeId parse_scheme(const std::string& name);  // throws on unknown name

// Uniform random channel per link, repaired to feasibility exactly like the
// game's initial partition. Deterministic per seed.
Partition random_allocation(const Scenario& s, std::uint64_t seed);

// Coalition formation restricted to HD: no co-channel node sharing, RSI = 0.
GameResult hd_coalition_formation(const Scenario& s, GameConfig cfg);

struct WorkBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Depth-first enumeration over all feasible assignments with feasibility (and
// optional R_min) pruning; returns a sum-rate maximizer, ties broken by the
// lexicographically smallest assignment. Throws WorkBoundExceeded when more
// than `work_bound` link-rate evaluations would be needed.
Partition exhaustive_optimal(const Scenario& s, const GameConfig& cfg,
                             bool enforce_rmin,
                             std::uint64_t work_bound = 100'000'000);

}  // namespace coalsim
