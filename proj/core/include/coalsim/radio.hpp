#pragma once

#include <span>
#include <vector>

#include "coalsim/scenario.hpp"

namespace coalsim {

enum class Duplex { FD, HD };

// Links sharing one sub-channel. Feasibility of the membership is the game
// module's responsibility and is assumed here.
struct CoChannelSet {
  std::vector<LinkId> members;
  Duplex duplex = Duplex::FD;
};

struct RateBreakdown {
  double signal = 0.0;  // watts
  double noise = 0.0;   // watts
  double rsi = 0.0;     // watts
  double mui = 0.0;     // watts
  double rate = 0.0;    // bit/s
};

// N0 * W in watts.
double noise_power(const RadioParams& p);

// k0 = (lambda / 4pi)^2 for the configured carrier.
double path_gain_constant(const RadioParams& p);

// Received power with both beams at boresight:
//   k0 * G^t(0) * G^r(0) * l^-n * P_t.
double received_power(const Link& link, const Scenario& s);

// MUI from `interferer`'s transmitter at `victim`'s receiver. Each beam is
// aimed at its own link partner; gains evaluated at the resulting offsets:
//   rho * k0 * G^t(theta_t) * G^r(theta_r) * l(s_j,r_i)^-n * P_t.
// Must not be called for an RSI pair (interferer transmitting from victim.rx).
double mui_power(const Link& interferer, const Link& victim, const Scenario& s);

// Residual self-interference at victim.rx: beta_{rx} * P_t' of the one
// co-channel member transmitting from victim.rx, 0 if there is none or under
// HD. Throws if two members transmit from victim.rx.
double rsi_power(const Link& victim, const CoChannelSet& co_set,
                 const Scenario& s);

// Time-sharing factor of a link: 1 under FD. Under HD a node cannot transmit
// and receive simultaneously (on any channel), so a link whose transmitter
// also receives elsewhere, or whose receiver also transmits elsewhere, gets
// only half the airtime.
double time_share_factor(const Link& link, const Scenario& s, Duplex duplex);

// Shannon rate of `link` within its co-channel set:
//   t * eta * W * log2(1 + P_r / (N0 W + RSI + sum MUI))
// with t the time-sharing factor above.
RateBreakdown link_rate(const Link& link, const CoChannelSet& co_set,
                        const Scenario& s);

// Sum of member rates; 0 for the empty set.
double coalition_sum_rate(const CoChannelSet& co_set, const Scenario& s);

// Precomputed pairwise interference cache. Entries are produced by the
// functions above; the game's inner loop reads the matrix instead of
// re-deriving geometry on every evaluation.
class RateModel {
 public:
  RateModel(const Scenario& s, Duplex duplex);

  int num_links() const { return num_links_; }
  Duplex duplex() const { return duplex_; }
  double noise() const { return noise_; }
  double received(LinkId i) const { return p_r_[static_cast<size_t>(i)]; }

  // Interference power from `from` onto `to` when co-channel (RSI value for
  // the pair transmitting from to's receiver, MUI otherwise).
  double interference(LinkId from, LinkId to) const {
    return interf_[static_cast<size_t>(from) * num_links_ +
                   static_cast<size_t>(to)];
  }

  double member_rate(LinkId link, std::span<const LinkId> members) const;
  double coalition_rate(std::span<const LinkId> members) const;

 private:
  int num_links_;
  Duplex duplex_;
  double noise_;
  double eta_w_;
  std::vector<double> time_share_;
  std::vector<double> p_r_;
  std::vector<double> interf_;  // row-major [from][to]
};

}  // namespace coalsim
