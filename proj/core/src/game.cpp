#include "coalsim/game.hpp"

#include <algorithm>
#include <unordered_set>

namespace coalsim {

namespace {

bool pair_conflict(const Link& a, const Link& b, Duplex duplex) {
  if (a.tx == b.tx || a.rx == b.rx) return true;
  if (duplex == Duplex::HD && (a.tx == b.rx || a.rx == b.tx)) return true;
  return false;
}

}  // namespace

std::uint64_t Partition::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int c : channel) {
    const std::uint64_t v = static_cast<std::uint32_t>(c);
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

Partition random_feasible_partition(const Scenario& s, Duplex duplex, Rng& rng) {
  const int num_links = static_cast<int>(s.links.size());
  const int num_channels = s.num_channels;
  Partition p;
  p.channel.resize(static_cast<size_t>(num_links));
  for (int l = 0; l < num_links; ++l) p.channel[static_cast<size_t>(l)] = rng.uniform_int(num_channels);

  for (int pass = 0; pass < 500; ++pass) {
    // Keep the lowest-id link of each conflicting group, reassign the rest.
    std::vector<LinkId> violating;
    for (int c = 0; c < num_channels; ++c) {
      std::vector<LinkId> kept;
      for (LinkId l = 0; l < num_links; ++l) {
        if (p.channel[static_cast<size_t>(l)] != c) continue;
        bool conflict = false;
        for (LinkId k : kept)
          if (pair_conflict(s.link(l), s.link(k), duplex)) {
            conflict = true;
            break;
          }
        if (conflict)
          violating.push_back(l);
        else
          kept.push_back(l);
      }
    }
    if (violating.empty()) return p;
    for (LinkId l : violating)
      p.channel[static_cast<size_t>(l)] = rng.uniform_int(num_channels);
  }
  throw std::runtime_error(
      "random_feasible_partition: no feasible partition found within the "
      "retry bound");
}

CoalitionGame::CoalitionGame(const Scenario& s, GameConfig cfg)
    : scenario_(&s), cfg_(cfg), model_(s, cfg.duplex) {
  if (cfg.max_iterations < 1)
    throw std::invalid_argument("GameConfig: max_iterations must be >= 1");
  if (cfg.stability_scan_interval < 0)
    throw std::invalid_argument(
        "GameConfig: stability_scan_interval must be >= 0");
}

double CoalitionGame::coalition_utility(int c, const Partition& p) const {
  const std::vector<LinkId> members = p.members_of(c);
  return scenario_->params.alpha * model_.coalition_rate(members);
}

double CoalitionGame::total_rate(const Partition& p) const {
  double sum = 0.0;
  for (int c = 0; c < scenario_->num_channels; ++c)
    sum += model_.coalition_rate(p.members_of(c));
  return sum;
}

double CoalitionGame::total_utility(const Partition& p) const {
  return scenario_->params.alpha * total_rate(p);
}

bool CoalitionGame::is_feasible_join(LinkId link, int c, const Partition& p) const {
  const Link& l = scenario_->link(link);
  for (LinkId m = 0; m < static_cast<LinkId>(p.channel.size()); ++m) {
    if (m == link || p.channel[static_cast<size_t>(m)] != c) continue;
    if (pair_conflict(l, scenario_->link(m), cfg_.duplex)) return false;
  }
  return true;
}

bool CoalitionGame::rmin_ok(LinkId link, int c, const Partition& p) const {
  if (cfg_.r_min <= 0.0) return true;
  std::vector<LinkId> members = p.members_of(c);
  members.push_back(link);
  for (LinkId m : members)
    if (model_.member_rate(m, members) < cfg_.r_min) return false;
  return true;
}

bool CoalitionGame::prefers(LinkId link, int to_channel, const Partition& p) const {
  const int from = p.channel[static_cast<size_t>(link)];
  std::vector<LinkId> dest = p.members_of(to_channel);
  std::vector<LinkId> origin = p.members_of(from);
  const double before =
      model_.coalition_rate(dest) + model_.coalition_rate(origin);
  dest.push_back(link);
  origin.erase(std::find(origin.begin(), origin.end(), link));
  const double after =
      model_.coalition_rate(dest) + model_.coalition_rate(origin);
  return after > before;  // alpha > 0 cancels in the strict comparison
}

Partition CoalitionGame::apply_switch(const Partition& p, LinkId link,
                                      int to_channel) {
  if (to_channel < 0)
    throw std::out_of_range("apply_switch: invalid channel index");
  Partition q = p;
  q.channel.at(static_cast<size_t>(link)) = to_channel;
  return q;
}

bool CoalitionGame::is_nash_stable(const Partition& p) const {
  const int num_links = static_cast<int>(p.channel.size());
  for (LinkId l = 0; l < num_links; ++l) {
    for (int c = 0; c < scenario_->num_channels; ++c) {
      if (c == p.channel[static_cast<size_t>(l)]) continue;
      if (is_feasible_join(l, c, p) && rmin_ok(l, c, p) && prefers(l, c, p))
        return false;
    }
  }
  return true;
}

std::vector<std::string> CoalitionGame::audit_partition(const Partition& p) const {
  std::vector<std::string> out;
  const int num_links = static_cast<int>(p.channel.size());
  for (LinkId a = 0; a < num_links; ++a)
    for (LinkId b = a + 1; b < num_links; ++b) {
      if (p.channel[static_cast<size_t>(a)] != p.channel[static_cast<size_t>(b)]) continue;
      if (pair_conflict(scenario_->link(a), scenario_->link(b), cfg_.duplex))
        out.push_back("channel " + std::to_string(p.channel[static_cast<size_t>(a)]) +
                      ": links " + std::to_string(a) + " and " +
                      std::to_string(b) + " conflict");
    }
  return out;
}

std::vector<double> CoalitionGame::per_link_rates(const Partition& p) const {
  std::vector<double> rates(p.channel.size(), 0.0);
  for (int c = 0; c < scenario_->num_channels; ++c) {
    const std::vector<LinkId> members = p.members_of(c);
    for (LinkId m : members)
      rates[static_cast<size_t>(m)] = model_.member_rate(m, members);
  }
  return rates;
}

GameResult CoalitionGame::run(const SwitchObserver& observer) const {
  const int num_links = static_cast<int>(scenario_->links.size());
  const int num_channels = scenario_->num_channels;
  const double alpha = scenario_->params.alpha;

  Rng rng(cfg_.seed);
  GameResult res;
  res.partition = random_feasible_partition(*scenario_, cfg_.duplex, rng);
  if (num_links <= 1 || num_channels < 2) {
    res.stable = true;
    return res;
  }

  Partition& cur = res.partition;
  std::vector<double> chan_rate(static_cast<size_t>(num_channels));
  for (int c = 0; c < num_channels; ++c)
    chan_rate[static_cast<size_t>(c)] = model_.coalition_rate(cur.members_of(c));
  double total = 0.0;
  for (double r : chan_rate) total += r;

  std::unordered_set<std::uint64_t> seen;
  seen.insert(cur.hash());

  const long scan_interval = cfg_.stability_scan_interval > 0
                                 ? cfg_.stability_scan_interval
                                 : 50L * num_links;
  long rejected_streak = 0;

  // Random target channels, distinct from `skip`, in random order.
  auto shuffled_targets = [&](int skip) {
    std::vector<int> t;
    t.reserve(static_cast<size_t>(num_channels) - 1);
    for (int c = 0; c < num_channels; ++c)
      if (c != skip) t.push_back(c);
    for (int i = static_cast<int>(t.size()) - 1; i > 0; --i)
      std::swap(t[static_cast<size_t>(i)], t[static_cast<size_t>(rng.uniform_int(i + 1))]);
    return t;
  };

  auto commit_hash = [&](bool& repeated) {
    const std::uint64_t h = cur.hash();
    if (!seen.insert(h).second) repeated = true;
  };

  for (long attempt = 1; attempt <= cfg_.max_iterations; ++attempt) {
    res.attempts = attempt;
    bool accepted = false;

    const LinkId l = rng.uniform_int(num_links);
    const int from = cur.channel[static_cast<size_t>(l)];
    for (int q : shuffled_targets(from)) {
      if (!is_feasible_join(l, q, cur)) break;
      if (!rmin_ok(l, q, cur)) continue;  // Rmin failure: try another channel

      // Rates of the two affected coalitions before/after the single switch.
      std::vector<LinkId> dest = cur.members_of(q);
      std::vector<LinkId> origin = cur.members_of(from);
      const double affected_before =
          model_.coalition_rate(dest) + model_.coalition_rate(origin);
      dest.push_back(l);
      origin.erase(std::find(origin.begin(), origin.end(), l));
      const double dest_after = model_.coalition_rate(dest);
      const double origin_after = model_.coalition_rate(origin);

      if (dest_after + origin_after > affected_before) {
        // Switch Rule 1 + 2 satisfied: accept the single switch.
        const Partition before_p = cur;
        const double new_total = total - chan_rate[static_cast<size_t>(from)] -
                                 chan_rate[static_cast<size_t>(q)] + origin_after + dest_after;
        SwitchRecord rec{l, from, q, SwitchKind::Single, alpha * total,
                         alpha * new_total};
        cur.channel[static_cast<size_t>(l)] = q;
        chan_rate[static_cast<size_t>(from)] = origin_after;
        chan_rate[static_cast<size_t>(q)] = dest_after;
        total = new_total;
        commit_hash(res.state_repeated);
        res.switches.push_back(rec);
        if (observer) observer(before_p, cur, rec);
        accepted = true;
      } else {
        // Two-step lookahead: tentatively apply the first switch, then one
        // random second switch; accept both iff the total rate strictly
        // increases over the current partition.
        Partition tem = cur;
        tem.channel[static_cast<size_t>(l)] = q;
        const LinkId l1 = rng.uniform_int(num_links);
        const int from1 = tem.channel[static_cast<size_t>(l1)];
        for (int q1 : shuffled_targets(from1)) {
          if (!is_feasible_join(l1, q1, tem)) break;
          if (!rmin_ok(l1, q1, tem)) continue;
          Partition tem2 = tem;
          tem2.channel[static_cast<size_t>(l1)] = q1;
          // Compare freshly computed rates of the affected channels on both
          // sides: an exact comparison that cannot accept a no-op pair via
          // drift in the incremental cache.
          int affected[4] = {from, q, from1, q1};
          double old_affected = 0.0, new_affected = 0.0;
          for (int i = 0; i < 4; ++i) {
            bool dup = false;
            for (int j = 0; j < i; ++j)
              if (affected[j] == affected[i]) dup = true;
            if (dup) continue;
            old_affected += model_.coalition_rate(cur.members_of(affected[i]));
            new_affected += model_.coalition_rate(tem2.members_of(affected[i]));
          }
          if (new_affected > old_affected) {
            double new_total = total - old_affected + new_affected;
            const double u_before = alpha * total;
            const double u_after = alpha * new_total;
            SwitchRecord rec1{l, from, q, SwitchKind::TwoStep, u_before, u_after};
            SwitchRecord rec2{l1, from1, q1, SwitchKind::TwoStep, u_before, u_after};
            const Partition before_p = cur;
            cur = tem2;
            for (int i = 0; i < 4; ++i)
              chan_rate[static_cast<size_t>(affected[i])] =
                  model_.coalition_rate(cur.members_of(affected[i]));
            new_total = 0.0;
            for (double cr : chan_rate) new_total += cr;
            total = new_total;
            commit_hash(res.state_repeated);
            res.switches.push_back(rec1);
            res.switches.push_back(rec2);
            if (observer) {
              observer(before_p, tem, rec1);
              observer(tem, cur, rec2);
            }
            accepted = true;
          }
          break;
        }
      }
      break;  // a feasible, Rmin-respecting target was evaluated
    }

    if (accepted) {
      rejected_streak = 0;
    } else if (++rejected_streak >= scan_interval) {
      if (is_nash_stable(cur)) {
        res.stable = true;
        break;
      }
      rejected_streak = 0;
    }
  }

  if (!res.stable && is_nash_stable(cur)) res.stable = true;
  return res;
}

}  // namespace coalsim
