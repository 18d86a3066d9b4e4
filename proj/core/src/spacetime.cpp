#include "phonent/spacetime.hpp"

#include <cmath>
#include <sstream>

#include "phonent/errors.hpp"

namespace phonent {

EffectiveMetric effective_metric(const Eigen::Matrix4d& g, const Eigen::Vector4d& u, double c0, double rho) {
    if (!(c0 > 0.0) || !std::isfinite(c0)) {
        throw InvalidArgument("effective metric: phonon speed must be positive");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw InvalidArgument("effective metric: background density must be positive");
    }
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw InvalidArgument("effective metric: background metric must be symmetric");
    }
    const Eigen::Vector4d u_lower = g * u;
    const double contraction = u.dot(u_lower);
    const double causal = 1.0 - contraction / (c0 * c0);
    if (!(causal > 0.0)) {
        std::ostringstream os;
        os << "effective metric: acausal flow, 1 - u.u/c0^2 = " << causal;
        throw InvalidArgument(os.str());
    }
    EffectiveMetric out;
    out.conformal_factor = rho / std::sqrt(causal);
    out.components = out.conformal_factor * (g * causal + u_lower * u_lower.transpose() / (c0 * c0));
    return out;
}

double scalar_speed_of_sound(double c0, double u_norm, double c) {
    if (!(u_norm > 0.0)) {
        throw InvalidArgument("scalar speed of sound: |u| must be positive");
    }
    if (!(c0 >= 0.0) || !(c > 0.0)) {
        throw InvalidArgument("scalar speed of sound: speeds must be non-negative");
    }
    if (std::isinf(c0)) {
        return c;
    }
    const double ratio = (c0 * c0) / (u_norm * u_norm);
    return std::sqrt(c * c * ratio / (1.0 + ratio));
}

MinkowskiPoint minkowski_from_rindler(const RindlerPoint& p, double sound_speed) {
    if (!(p.chi > 0.0)) {
        throw InvalidArgument("Rindler point: chi must be positive (right wedge)");
    }
    if (!(sound_speed > 0.0)) {
        throw InvalidArgument("Rindler map: speed of sound must be positive");
    }
    return {p.chi / sound_speed * std::sinh(p.eta), p.chi * std::cosh(p.eta)};
}

double proper_acceleration(double chi0, double sound_speed) {
    if (!(chi0 > 0.0)) {
        throw InvalidArgument("proper acceleration: chi0 must be positive");
    }
    return sound_speed * sound_speed / chi0;
}

double rindler_position(double acceleration, double sound_speed) {
    if (!(acceleration > 0.0)) {
        throw InvalidArgument("Rindler position: acceleration must be positive");
    }
    return sound_speed * sound_speed / acceleration;
}

double proper_time(double eta, double chi0, double sound_speed) {
    if (!(chi0 > 0.0) || !(sound_speed > 0.0)) {
        throw InvalidArgument("proper time: chi0 and c_s must be positive");
    }
    return chi0 * eta / sound_speed;
}

HomogeneityCheck homogeneity_check(double h, const CondensateParams& p, double c) {
    p.validate();
    if (!(h >= 0.0) || !(c > 0.0)) {
        throw InvalidArgument("homogeneity check: h must be non-negative and c positive");
    }
    HomogeneityCheck out;
    out.density_gradient = h / p.length;
    out.compton_scale = p.atom_mass * c / constants::kHbar;
    out.ratio = out.density_gradient / out.compton_scale;
    out.pass = out.ratio < kHomogeneityThreshold;
    return out;
}

}  // namespace phonent
