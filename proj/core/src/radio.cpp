#include "coalsim/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace coalsim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;

// Finds the one co-channel member transmitting from victim.rx, -1 if none.
// Throws if there are two (infeasible coalition).
LinkId rsi_partner(const Link& victim, std::span<const LinkId> members,
                   const Scenario& s) {
  LinkId partner = -1;
  for (LinkId m : members) {
    if (m == victim.id) continue;
    if (s.link(m).tx == victim.rx) {
      if (partner >= 0)
        throw std::logic_error(
            "rsi_power: two co-channel links transmit from the victim's "
            "receiver (infeasible coalition)");
      partner = m;
    }
  }
  return partner;
}
}  // namespace

double noise_power(const RadioParams& p) { return p.noise_psd * p.bandwidth; }

double path_gain_constant(const RadioParams& p) {
  const double lambda = kSpeedOfLight / p.carrier_freq;
  const double x = lambda / (4.0 * M_PI);
  return x * x;
}

double received_power(const Link& link, const Scenario& s) {
  if (!(link.length > 0.0))
    throw std::domain_error("received_power: zero-length link");
  const double g = db_to_linear(antenna_gain_db(0.0, s.pattern));
  return path_gain_constant(s.params) * g * g *
         std::pow(link.length, -s.params.path_loss_exp) * s.link_tx_power(link);
}

double mui_power(const Link& interferer, const Link& victim, const Scenario& s) {
  const Position tx_pos = s.node(interferer.tx).pos;
  const Position rx_pos = s.node(victim.rx).pos;
  const double l = distance(tx_pos, rx_pos);
  if (l == 0.0)
    throw std::domain_error("mui_power: interferer tx coincides with victim rx");
  // Interferer's beam aims at its own receiver; victim's receive beam aims at
  // its own transmitter.
  const double theta_t =
      offset_angle_deg(tx_pos, s.node(interferer.rx).pos, rx_pos);
  const double theta_r =
      offset_angle_deg(rx_pos, s.node(victim.tx).pos, tx_pos);
  const double gt = db_to_linear(antenna_gain_db(theta_t, s.pattern));
  const double gr = db_to_linear(antenna_gain_db(theta_r, s.pattern));
  return s.params.mui_factor * path_gain_constant(s.params) * gt * gr *
         std::pow(l, -s.params.path_loss_exp) * s.link_tx_power(interferer);
}

double rsi_power(const Link& victim, const CoChannelSet& co_set,
                 const Scenario& s) {
  const LinkId partner = rsi_partner(victim, co_set.members, s);
  if (partner < 0 || co_set.duplex == Duplex::HD) return 0.0;
  return s.node(victim.rx).beta * s.link_tx_power(s.link(partner));
}

double time_share_factor(const Link& link, const Scenario& s, Duplex duplex) {
  if (duplex == Duplex::FD) return 1.0;
  for (const Link& o : s.links) {
    if (o.id == link.id) continue;
    if (o.rx == link.tx || o.tx == link.rx) return 0.5;
  }
  return 1.0;
}

RateBreakdown link_rate(const Link& link, const CoChannelSet& co_set,
                        const Scenario& s) {
  RateBreakdown b;
  b.signal = received_power(link, s);
  b.noise = noise_power(s.params);
  b.rsi = rsi_power(link, co_set, s);
  const LinkId partner = rsi_partner(link, co_set.members, s);
  for (LinkId m : co_set.members) {
    if (m == link.id || m == partner) continue;
    b.mui += mui_power(s.link(m), link, s);
  }
  b.rate = time_share_factor(link, s, co_set.duplex) * s.params.eta *
           s.params.bandwidth *
           std::log2(1.0 + b.signal / (b.noise + b.rsi + b.mui));
  return b;
}

double coalition_sum_rate(const CoChannelSet& co_set, const Scenario& s) {
  double sum = 0.0;
  for (LinkId m : co_set.members) sum += link_rate(s.link(m), co_set, s).rate;
  return sum;
}

RateModel::RateModel(const Scenario& s, Duplex duplex)
    : num_links_(static_cast<int>(s.links.size())),
      duplex_(duplex),
      noise_(noise_power(s.params)),
      eta_w_(s.params.eta * s.params.bandwidth),
      time_share_(s.links.size(), 1.0),
      p_r_(s.links.size()),
      interf_(s.links.size() * s.links.size(), 0.0) {
  for (const Link& l : s.links) {
    p_r_[static_cast<size_t>(l.id)] = received_power(l, s);
    time_share_[static_cast<size_t>(l.id)] = time_share_factor(l, s, duplex);
  }
  for (const Link& from : s.links) {
    for (const Link& to : s.links) {
      if (from.id == to.id) continue;
      double v;
      if (from.tx == to.rx) {
        // RSI relationship: residual self-interference, no MUI term.
        v = duplex == Duplex::HD
                ? 0.0
                : s.node(to.rx).beta * s.link_tx_power(from);
      } else {
        v = mui_power(from, to, s);
      }
      interf_[static_cast<size_t>(from.id) * num_links_ +
              static_cast<size_t>(to.id)] = v;
    }
  }
}

double RateModel::member_rate(LinkId link, std::span<const LinkId> members) const {
  double denom = noise_;
  for (LinkId m : members) {
    if (m == link) continue;
    denom += interference(m, link);
  }
  return time_share_[static_cast<size_t>(link)] * eta_w_ *
         std::log2(1.0 + received(link) / denom);
}

double RateModel::coalition_rate(std::span<const LinkId> members) const {
  double sum = 0.0;
  for (LinkId m : members) sum += member_rate(m, members);
  return sum;
}

}  // namespace coalsim
