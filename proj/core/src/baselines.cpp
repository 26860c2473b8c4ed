#include "coalsim/baselines.hpp"

#include <limits>

namespace coalsim {

std::string to_string(SchemeId s) {
  switch (s) {
    case SchemeId::FdCoalition: return "fd-coalition";
    case SchemeId::HdCoalition: return "hd-coalition";
    case SchemeId::Random: return "random";
    case SchemeId::Optimal: return "optimal";
  }
  return "unknown";
}

SchemeId parse_scheme(const std::string& name) {
  if (name == "fd-coalition") return SchemeId::FdCoalition;
  if (name == "hd-coalition") return SchemeId::HdCoalition;
  if (name == "random") return SchemeId::Random;
  if (name == "optimal") return SchemeId::Optimal;
  throw std::invalid_argument("unknown scheme: " + name);
}

Partition random_allocation(const Scenario& s, std::uint64_t seed) {
  Rng rng(seed);
  return random_feasible_partition(s, Duplex::FD, rng);
}

GameResult hd_coalition_formation(const Scenario& s, GameConfig cfg) {
  cfg.duplex = Duplex::HD;
  return CoalitionGame(s, cfg).run();
}

namespace {

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const Scenario& s, double r_min, bool enforce_rmin,
                   std::uint64_t work_bound)
      : s_(s),
        model_(s, Duplex::FD),
        r_min_(enforce_rmin ? r_min : 0.0),
        work_bound_(work_bound),
        num_links_(static_cast<int>(s.links.size())),
        members_(static_cast<size_t>(s.num_channels)),
        chan_rate_(static_cast<size_t>(s.num_channels), 0.0),
        assignment_(static_cast<size_t>(num_links_), 0) {}

  Partition search() {
    recurse(0, 0.0);
    if (!found_)
      throw std::runtime_error("exhaustive_optimal: no feasible assignment");
    Partition p;
    p.channel = best_assignment_;
    return p;
  }

 private:
  bool feasible(LinkId link, int c) const {
    const Link& l = s_.link(link);
    for (LinkId m : members_[static_cast<size_t>(c)]) {
      const Link& o = s_.link(m);
      if (l.tx == o.tx || l.rx == o.rx) return false;
    }
    return true;
  }

  void recurse(LinkId link, double total) {
    if (link == num_links_) {
      // Strict > keeps the first maximizer found; channels are explored in
      // index order, so that is the lexicographically smallest assignment.
      if (!found_ || total > best_total_) {
        found_ = true;
        best_total_ = total;
        best_assignment_ = assignment_;
      }
      return;
    }
    for (int c = 0; c < s_.num_channels; ++c) {
      if (!feasible(link, c)) continue;
      auto& mem = members_[static_cast<size_t>(c)];
      mem.push_back(link);
      evals_ += mem.size();
      if (evals_ > work_bound_)
        throw WorkBoundExceeded("exhaustive_optimal: work bound exceeded");
      bool ok = true;
      double rate_sum = 0.0;
      for (LinkId m : mem) {
        const double r = model_.member_rate(m, mem);
        if (r < r_min_) {
          // More co-channel links can only lower this rate further: prune.
          ok = false;
          break;
        }
        rate_sum += r;
      }
      if (ok) {
        const double old = chan_rate_[static_cast<size_t>(c)];
        chan_rate_[static_cast<size_t>(c)] = rate_sum;
        assignment_[static_cast<size_t>(link)] = c;
        recurse(link + 1, total - old + rate_sum);
        chan_rate_[static_cast<size_t>(c)] = old;
      }
      mem.pop_back();
    }
  }

  const Scenario& s_;
  RateModel model_;
  double r_min_;
  std::uint64_t work_bound_;
  int num_links_;
  std::vector<std::vector<LinkId>> members_;
  std::vector<double> chan_rate_;
  std::vector<int> assignment_;
  std::vector<int> best_assignment_;
  double best_total_ = -std::numeric_limits<double>::infinity();
  bool found_ = false;
  std::uint64_t evals_ = 0;
};

}  // namespace

Partition exhaustive_optimal(const Scenario& s, const GameConfig& cfg,
                             bool enforce_rmin, std::uint64_t work_bound) {
  if (s.links.empty()) return Partition{};
  return ExhaustiveSearch(s, cfg.r_min, enforce_rmin, work_bound).search();
}

}  // namespace coalsim
