#pragma once

// Acoustic-metric and Rindler-frame utilities. These are diagnostics: the
// entanglement pipeline itself only consumes the speed of sound.

#include <Eigen/Dense>

#include "phonent/bogoliubov.hpp"
#include "phonent/constants.hpp"

namespace phonent {

struct EffectiveMetric {
    Eigen::Matrix4d components;   ///< g_ab in the coordinates of the input metric
    double conformal_factor = 0;  ///< rho / sqrt(1 - u.u / c0^2)
};

/// Effective metric seen by phonons on a background metric `g` with
/// condensate flow `u` (contravariant components), phonon speed `c0` and
/// background density `rho`:
///   rho / sqrt(1 - u.u/c0^2) * [ g (1 - u.u/c0^2) + u_a u_b / c0^2 ].
/// Throws InvalidArgument when 1 - u.u/c0^2 <= 0 or rho <= 0.
EffectiveMetric effective_metric(const Eigen::Matrix4d& g, const Eigen::Vector4d& u, double c0, double rho);

/// c_s^2 = (c^2 c0^2 / |u|^2) / (1 + c0^2 / |u|^2).
double scalar_speed_of_sound(double c0, double u_norm, double c = constants::kSpeedOfLight);

struct RindlerPoint {
    double eta = 0.0;  ///< dimensionless Rindler time
    double chi = 0.0;  ///< [m], right wedge only: chi > 0
};

struct MinkowskiPoint {
    double t = 0.0;  ///< [s]
    double x = 0.0;  ///< [m]
};

/// t = (chi/c_s) sinh(eta), x = chi cosh(eta).
MinkowskiPoint minkowski_from_rindler(const RindlerPoint& p, double sound_speed);

/// a = c_s^2 / chi0.
double proper_acceleration(double chi0, double sound_speed);

/// chi0 = c_s^2 / a, the worldline with proper acceleration a.
double rindler_position(double acceleration, double sound_speed);

/// tau = (c_s / a) eta = chi0 eta / c_s.
double proper_time(double eta, double chi0, double sound_speed);

inline constexpr double kHomogeneityThreshold = 1e-3;

struct HomogeneityCheck {
    double density_gradient = 0.0;  ///< h / L [1/m]
    double compton_scale = 0.0;     ///< m c / hbar [1/m]
    double ratio = 0.0;
    bool pass = false;
};

/// Quantum-pressure term is negligible while (h/L) / (m c/hbar) < 1e-3.
HomogeneityCheck homogeneity_check(double h, const CondensateParams& p, double c = constants::kSpeedOfLight);

}  // namespace phonent
