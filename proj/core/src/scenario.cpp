#include "coalsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>

#include "coalsim/rng.hpp"

namespace coalsim {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t hash_double(std::uint64_t h, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  return fnv1a(h, bits);
}

}  // namespace

void check_params(const RadioParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("RadioParams: ") + what);
  };
  require(p.tx_power > 0.0, "tx_power must be > 0");
  require(p.eta > 0.0 && p.eta < 1.0, "eta must be in (0,1)");
  require(p.path_loss_exp > 0.0, "path_loss_exp must be > 0");
  require(p.bandwidth > 0.0, "bandwidth must be > 0");
  require(p.noise_psd >= 0.0, "noise_psd must be >= 0");
  require(p.mui_factor >= 0.0, "mui_factor must be >= 0");
  require(p.carrier_freq > 0.0, "carrier_freq must be > 0");
  require(p.beamwidth > 0.0, "beamwidth must be > 0");
  require(p.r_min >= 0.0, "r_min must be >= 0");
  require(p.si_low >= 0.0, "si_low must be >= 0");
  require(p.si_low <= p.si_high, "si_low must be <= si_high");
  require(p.area_side > 0.0, "area_side must be > 0");
  require(p.d2d_max_dist > 0.0, "d2d_max_dist must be > 0");
  require(p.alpha > 0.0, "alpha must be > 0");
  require(p.d2d_pair_prob >= 0.0 && p.d2d_pair_prob <= 1.0,
          "d2d_pair_prob must be in [0,1]");
}

std::uint64_t Scenario::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, static_cast<std::uint64_t>(num_channels));
  for (const Node& n : nodes) {
    h = fnv1a(h, static_cast<std::uint64_t>(n.id));
    h = fnv1a(h, n.kind == NodeKind::BaseStation ? 1 : 2);
    h = hash_double(h, n.pos.x);
    h = hash_double(h, n.pos.y);
    h = hash_double(h, n.beta);
  }
  for (const Link& l : links) {
    h = fnv1a(h, static_cast<std::uint64_t>(l.id));
    h = fnv1a(h, static_cast<std::uint64_t>(l.tx));
    h = fnv1a(h, static_cast<std::uint64_t>(l.rx));
    h = fnv1a(h, static_cast<std::uint64_t>(l.kind));
    h = hash_double(h, l.length);
  }
  return h;
}

NodeId nearest_bs(Position p, const std::vector<Node>& nodes) {
  NodeId best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Node& n : nodes) {
    if (n.kind != NodeKind::BaseStation) continue;
    const double d = distance(p, n.pos);
    if (d < best_d || (d == best_d && (best < 0 || n.id < best))) {
      best = n.id;
      best_d = d;
    }
  }
  if (best < 0) throw std::invalid_argument("nearest_bs: no BS present");
  return best;
}

Scenario generate_scenario(const RadioParams& params, int n_bs, int n_access,
                           int n_d2d, int num_channels, std::uint64_t seed) {
  check_params(params);
  if (n_bs < 0 || n_access < 0 || n_d2d < 0)
    throw std::invalid_argument("generate_scenario: negative count");
  if (num_channels < 1)
    throw std::invalid_argument("generate_scenario: num_channels must be >= 1");
  if (n_access > n_bs * num_channels)
    throw std::invalid_argument(
        "generate_scenario: BS over-subscription (n_access > n_bs * "
        "num_channels)");

  Rng rng(seed);
  Scenario s;
  s.num_channels = num_channels;
  s.params = params;
  s.pattern = GainPattern::reference(params.beamwidth);

  const double side = params.area_side;
  const double beta_scale = std::pow(10.0, -params.si_magnitude);
  auto sample_beta = [&] {
    return rng.uniform(params.si_low, params.si_high) * beta_scale;
  };
  auto add_node = [&](NodeKind kind, Position pos) {
    Node n;
    n.id = static_cast<NodeId>(s.nodes.size());
    n.kind = kind;
    n.pos = pos;
    n.beta = sample_beta();
    s.nodes.push_back(n);
    return n.id;
  };
  auto uniform_pos = [&] {
    return Position{rng.uniform(0.0, side), rng.uniform(0.0, side)};
  };

  for (int i = 0; i < n_bs; ++i) add_node(NodeKind::BaseStation, uniform_pos());

  // Access links: user uniform in the square, attached to its nearest BS.
  // Resample the user position while the nearest BS is already saturated;
  // feasibility (n_access <= n_bs * |C|) guarantees spare capacity exists.
  std::map<NodeId, int> bs_load;
  for (int i = 0; i < n_access; ++i) {
    Position pos;
    NodeId bs = -1;
    bool placed = false;
    for (int attempt = 0; attempt < 100000; ++attempt) {
      pos = uniform_pos();
      bs = nearest_bs(pos, s.nodes);
      if (bs_load[bs] < num_channels) {
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::runtime_error(
          "generate_scenario: could not place access user without BS "
          "over-subscription");
    bs_load[bs]++;
    const NodeId user = add_node(NodeKind::User, pos);
    Link l;
    l.id = static_cast<LinkId>(s.links.size());
    if (rng.coin()) {
      l.kind = LinkKind::AccessUplink;
      l.tx = user;
      l.rx = bs;
    } else {
      l.kind = LinkKind::AccessDownlink;
      l.tx = bs;
      l.rx = user;
    }
    l.length = distance(s.node(l.tx).pos, s.node(l.rx).pos);
    s.links.push_back(l);
  }

  // D2D links. A link may be generated as the reverse of the previous one
  // (shared endpoints, swapped roles): the two-antenna FD pairing of devices.
  bool prev_paired = true;  // no previous link to pair with yet
  for (int j = 0; j < n_d2d; ++j) {
    Link l;
    l.id = static_cast<LinkId>(s.links.size());
    l.kind = LinkKind::D2D;
    const bool pair =
        !prev_paired && rng.uniform() < params.d2d_pair_prob;
    if (pair) {
      const Link& prev = s.links.back();
      l.tx = prev.rx;
      l.rx = prev.tx;
      prev_paired = true;
    } else {
      const Position tx_pos = uniform_pos();
      Position rx_pos;
      bool ok = false;
      for (int attempt = 0; attempt < 100000; ++attempt) {
        const double r = params.d2d_max_dist * std::sqrt(rng.uniform());
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        rx_pos = {tx_pos.x + r * std::cos(phi), tx_pos.y + r * std::sin(phi)};
        if (rx_pos.x >= 0.0 && rx_pos.x <= side && rx_pos.y >= 0.0 &&
            rx_pos.y <= side && distance(tx_pos, rx_pos) > 0.0) {
          ok = true;
          break;
        }
      }
      if (!ok)
        throw std::runtime_error(
            "generate_scenario: could not place D2D receiver inside the area");
      l.tx = add_node(NodeKind::User, tx_pos);
      l.rx = add_node(NodeKind::User, rx_pos);
      prev_paired = false;
    }
    l.length = distance(s.node(l.tx).pos, s.node(l.rx).pos);
    s.links.push_back(l);
  }

  return s;
}

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  auto flag = [&](std::string invariant, std::string detail) {
    out.push_back({std::move(invariant), std::move(detail)});
  };

  const double side = s.params.area_side;
  const double beta_scale = std::pow(10.0, -s.params.si_magnitude);
  if (s.num_channels < 1) flag("num-channels", "num_channels < 1");

  for (const Node& n : s.nodes) {
    if (n.pos.x < 0.0 || n.pos.x > side || n.pos.y < 0.0 || n.pos.y > side)
      flag("node-in-area", "node " + std::to_string(n.id));
    if (n.beta < 0.0) flag("beta-nonnegative", "node " + std::to_string(n.id));
    const double lo = s.params.si_low * beta_scale;
    const double hi = s.params.si_high * beta_scale;
    if (n.beta < lo * (1.0 - 1e-12) || n.beta > hi * (1.0 + 1e-12))
      flag("beta-in-range", "node " + std::to_string(n.id));
  }

  std::map<NodeId, int> user_tx, user_rx, bs_access;
  for (const Link& l : s.links) {
    const std::string id = "link " + std::to_string(l.id);
    if (l.tx < 0 || l.tx >= static_cast<NodeId>(s.nodes.size()) || l.rx < 0 ||
        l.rx >= static_cast<NodeId>(s.nodes.size())) {
      flag("endpoint-exists", id);
      continue;
    }
    if (l.tx == l.rx) flag("distinct-endpoints", id);
    const Node& tx = s.node(l.tx);
    const Node& rx = s.node(l.rx);
    if (std::abs(l.length - distance(tx.pos, rx.pos)) >
        1e-9 * std::max(1.0, l.length))
      flag("cached-length", id);
    switch (l.kind) {
      case LinkKind::D2D:
        if (tx.kind != NodeKind::User || rx.kind != NodeKind::User)
          flag("d2d-user-endpoints", id);
        if (l.length > s.params.d2d_max_dist * (1.0 + 1e-12))
          flag("d2d-length", id);
        break;
      case LinkKind::AccessUplink:
        if (rx.kind != NodeKind::BaseStation || tx.kind != NodeKind::User)
          flag("uplink-endpoints", id);
        break;
      case LinkKind::AccessDownlink:
        if (tx.kind != NodeKind::BaseStation || rx.kind != NodeKind::User)
          flag("downlink-endpoints", id);
        break;
    }
    if (tx.kind == NodeKind::User && ++user_tx[l.tx] > 1)
      flag("endpoint-multiplicity", "node " + std::to_string(l.tx) +
                                        " transmits more than one link");
    if (rx.kind == NodeKind::User && ++user_rx[l.rx] > 1)
      flag("endpoint-multiplicity",
           "node " + std::to_string(l.rx) + " receives more than one link");
    if (l.is_access()) {
      const NodeId bs = tx.kind == NodeKind::BaseStation ? l.tx : l.rx;
      if (++bs_access[bs] > s.num_channels)
        flag("bs-access-capacity", "BS " + std::to_string(bs));
    }
    if (l.is_access()) {
      // Nearest-BS association, re-checkable against the node set.
      const Node& user = tx.kind == NodeKind::User ? tx : rx;
      const NodeId bs = tx.kind == NodeKind::BaseStation ? l.tx : l.rx;
      try {
        // Saturated-BS resampling can attach a user to a farther BS only by
        // rejecting the position outright, so the nearest-BS rule is strict.
        const NodeId nb = nearest_bs(user.pos, s.nodes);
        const double d_near = distance(user.pos, s.node(nb).pos);
        const double d_here = distance(user.pos, s.node(bs).pos);
        if (d_here > d_near * (1.0 + 1e-12) + 1e-12)
          flag("nearest-bs", "link " + std::to_string(l.id));
      } catch (const std::invalid_argument&) {
        flag("nearest-bs", "no BS present for " + id);
      }
    }
  }
  return out;
}

}  // namespace coalsim
