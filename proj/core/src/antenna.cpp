#include "coalsim/antenna.hpp"

#include <algorithm>
#include <stdexcept>

namespace coalsim {

GainPattern GainPattern::reference(double theta_3db_deg) {
  if (!(theta_3db_deg > 0.0))
    throw std::invalid_argument("GainPattern: theta_3db must be > 0");
  GainPattern p;
  p.theta_3db = theta_3db_deg;
  p.theta_ml = 2.6 * theta_3db_deg;
  const double half_rad = theta_3db_deg / 2.0 * M_PI / 180.0;
  const double ratio = 1.6162 / std::sin(half_rad);
  p.g0 = 10.0 * std::log10(ratio * ratio);
  p.g_sl = -0.4111 * std::log(theta_3db_deg) - 10.579;
  return p;
}

GainPattern GainPattern::isotropic() {
  GainPattern p;
  p.theta_3db = std::numeric_limits<double>::infinity();
  p.theta_ml = std::numeric_limits<double>::infinity();
  p.g0 = 0.0;
  p.g_sl = 0.0;
  return p;
}

double antenna_gain_db(double theta_deg, const GainPattern& pattern) {
  if (theta_deg < 0.0 || theta_deg > 180.0)
    throw std::domain_error("antenna_gain_db: theta outside [0, 180]");
  if (theta_deg <= pattern.theta_ml / 2.0) {
    const double x = 2.0 * theta_deg / pattern.theta_3db;
    return pattern.g0 - 3.01 * x * x;
  }
  return pattern.g_sl;
}

double offset_angle_deg(Position origin, Position boresight_target,
                        Position toward) {
  const double ax = boresight_target.x - origin.x;
  const double ay = boresight_target.y - origin.y;
  const double bx = toward.x - origin.x;
  const double by = toward.y - origin.y;
  const double na = std::hypot(ax, ay);
  const double nb = std::hypot(bx, by);
  if (na == 0.0 || nb == 0.0)
    throw std::domain_error("offset_angle_deg: coincident points");
  const double c = std::clamp((ax * bx + ay * by) / (na * nb), -1.0, 1.0);
  return std::acos(c) * 180.0 / M_PI;
}

}  // namespace coalsim
