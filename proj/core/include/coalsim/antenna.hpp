#pragma once

#include <cmath>

namespace coalsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Position a, Position b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// IEEE 802.15.3c reference directional pattern with sidelobe. All angles in
// degrees, gains in dB.
struct GainPattern {
  double theta_3db = 30.0;  // half-power beamwidth
  double theta_ml = 78.0;   // mainlobe width, 2.6 * theta_3db
  double g0 = 0.0;          // boresight gain
  double g_sl = 0.0;        // sidelobe gain

  // Reference pattern for a given half-power beamwidth:
  //   G0   = 10*log10(1.6162 / sin(theta_3db/2))^2
  //   Gsl  = -0.4111*ln(theta_3db) - 10.579
  static GainPattern reference(double theta_3db_deg);

  // Flat 0 dB pattern, used for identity-configuration checks.
  static GainPattern isotropic();
};

// Gain in dB at offset angle theta in [0, 180] from boresight.
// Mainlobe branch for theta <= theta_ml/2, sidelobe floor beyond.
double antenna_gain_db(double theta_deg, const GainPattern& pattern);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Angle in degrees between the vectors origin->boresight_target and
// origin->toward. Throws on coincident points.
double offset_angle_deg(Position origin, Position boresight_target,
                        Position toward);

}  // namespace coalsim
