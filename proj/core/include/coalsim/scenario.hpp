#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coalsim/antenna.hpp"

namespace coalsim {

using NodeId = int;
using LinkId = int;

enum class NodeKind { BaseStation, User };
enum class LinkKind { AccessUplink, AccessDownlink, D2D };

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// All fields in linear SI units (watts, Hz, meters, bit/s). dBm/dB values are
// converted at the configuration boundary only.
struct RadioParams {
  double tx_power = dbm_to_watts(30.0);  // P_t, watts
  double eta = 0.5;                      // transceiver efficiency, (0,1)
  double path_loss_exp = 2.0;            // n
  double bandwidth = 540e6;              // W per sub-channel, Hz
  double noise_psd = 3.9810717055349854e-23;  // N0, watts/Hz (-134 dBm/MHz)
  double mui_factor = 1.0;               // rho
  double carrier_freq = 60e9;            // Hz, fixes k0 = (lambda/4pi)^2
  double beamwidth = 30.0;               // theta_-3dB, degrees
  double r_min = 400e6;                  // bit/s
  double si_low = 0.5;                   // beta mantissa range
  double si_high = 1.5;
  int si_magnitude = 8;                  // beta = mantissa * 10^-si_magnitude
  double area_side = 100.0;              // meters
  double d2d_max_dist = 5.0;             // d, meters
  double alpha = 1.0;                    // utility factor
  // Probability that a D2D link is generated as the reverse of the previous
  // one (shared endpoints with swapped roles), creating FD pairing chances.
  double d2d_pair_prob = 0.15;
};

// Throws std::invalid_argument naming the offending field.
void check_params(const RadioParams& p);

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::User;
  Position pos;
  double beta = 0.0;  // residual self-interference factor
};

struct Link {
  LinkId id = 0;
  NodeId tx = 0;
  NodeId rx = 0;
  LinkKind kind = LinkKind::D2D;
  double length = 0.0;
  std::optional<double> tx_power;  // per-link override, else params.tx_power

  bool is_access() const { return kind != LinkKind::D2D; }
};

// Immutable deployment. Node and link ids are indices into the vectors.
struct Scenario {
  std::vector<Node> nodes;
  std::vector<Link> links;
  int num_channels = 1;
  RadioParams params;
  GainPattern pattern;  // shared by all antennas

  const Node& node(NodeId id) const { return nodes.at(static_cast<size_t>(id)); }
  const Link& link(LinkId id) const { return links.at(static_cast<size_t>(id)); }
  double link_tx_power(const Link& l) const {
    return l.tx_power.value_or(params.tx_power);
  }
  std::uint64_t hash() const;
};

// Random deployment: BSs and access users uniform in the square, access users
// attached to the nearest BS with a fair uplink/downlink coin, D2D receivers
// uniform in the disk of radius d around their transmitter (clipped to the
// area). Deterministic per seed. Throws on infeasible counts.
Scenario generate_scenario(const RadioParams& params, int n_bs, int n_access,
                           int n_d2d, int num_channels, std::uint64_t seed);

// BS with minimal Euclidean distance to p; ties broken by smallest id.
// Throws if no BS is present.
NodeId nearest_bs(Position p, const std::vector<Node>& nodes);

struct Violation {
  std::string invariant;
  std::string detail;
};

// Empty iff all Scenario/Link/Node invariants hold.
std::vector<Violation> validate_scenario(const Scenario& s);

}  // namespace coalsim
