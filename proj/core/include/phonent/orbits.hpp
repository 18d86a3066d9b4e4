#pragma once

// Hohmann transfers between circular orbits and the mapping from a change in
// gravitational potential to the duration of constant-thrust acceleration.

#include "phonent/constants.hpp"

namespace phonent {

class OrbitPair {
public:
    /// Throws InvalidArgument unless gm > 0 and 0 < r_low <= r_high.
    OrbitPair(double r_low, double r_high, double gm = constants::kEarthGm);

    double gm() const { return gm_; }
    double r_low() const { return r_low_; }
    double r_high() const { return r_high_; }
    double separation() const { return r_high_ - r_low_; }

private:
    double r_low_;
    double r_high_;
    double gm_;
};

struct TransferKicks {
    double dv_low = 0.0;   ///< burn at the lower orbit [m/s]
    double dv_high = 0.0;  ///< circularisation burn [m/s]
};

TransferKicks hohmann_kicks(const OrbitPair& o);

struct TransferPeriod {
    double circular = 0.0;  ///< 2 pi sqrt(r_h^3 / GM)
    double exact = 0.0;  ///< 2 pi sqrt(a^3 / GM), a = (r_l + r_h)/2
};

TransferPeriod transfer_period(const OrbitPair& o);

/// GM (1/r_l - 1/r_h) [m^2/s^2].
double delta_phi(const OrbitPair& o);

/// Small-separation kick sqrt(r_h / GM) * delta_phi / 4.
double dv_from_delta_phi(double delta_phi, double r_high, double gm = constants::kEarthGm);

/// Duration of a constant-acceleration burn, dv / a.
double duration_from_kick(double dv, double acceleration);

/// Upper orbit whose potential lies delta_phi above the circular orbit r_low.
OrbitPair orbit_for_delta_phi(double r_low, double delta_phi, double gm = constants::kEarthGm);

/// Upper orbit reached by a Hohmann transfer whose first kick is dv_low.
OrbitPair orbit_for_kick(double r_low, double dv_low, double gm = constants::kEarthGm);

/// First Hohmann kick from the circular orbit r_low to the orbit delta_phi
/// higher, without forming r_high (exact for arbitrarily small delta_phi).
double kick_for_delta_phi(double r_low, double delta_phi, double gm = constants::kEarthGm);

/// Inverse of kick_for_delta_phi.
double delta_phi_for_kick(double r_low, double dv_low, double gm = constants::kEarthGm);

struct ManeuverPlan {
    TransferKicks kicks;
    TransferPeriod period;
    double delta_phi = 0.0;
    double delta_tau_low = 0.0;  ///< first burn duration at the given thrust [s]

    bool within_capability(double max_dv = constants::kThrusterCapability) const {
        return kicks.dv_low + kicks.dv_high <= max_dv;
    }
};

ManeuverPlan plan_maneuver(const OrbitPair& o, double acceleration);

}  // namespace phonent
