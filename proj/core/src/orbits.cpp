#include "phonent/orbits.hpp"

#include <cmath>
#include <sstream>

#include "phonent/errors.hpp"

namespace phonent {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(std::string(what) + " must be positive");
    }
}

}  // namespace

OrbitPair::OrbitPair(double r_low, double r_high, double gm) : r_low_(r_low), r_high_(r_high), gm_(gm) {
    require_positive(gm, "gravitational parameter");
    require_positive(r_low, "lower orbit radius");
    if (!(r_high >= r_low) || !std::isfinite(r_high)) {
        std::ostringstream os;
        os << "orbit pair: r_high = " << r_high << " must not be below r_low = " << r_low;
        throw InvalidArgument(os.str());
    }
}

TransferKicks hohmann_kicks(const OrbitPair& o) {
    const double rl = o.r_low();
    const double rh = o.r_high();
    if (rl == rh) {
        return {};
    }
    // sqrt(1 + x) - 1 and 1 - sqrt(1 - x) with x = (r_h - r_l)/(r_h + r_l),
    // rewritten so nearby orbits keep full precision.
    const double x = (rh - rl) / (rh + rl);
    TransferKicks k;
    k.dv_low = std::sqrt(o.gm() / rl) * x / (std::sqrt(1.0 + x) + 1.0);
    k.dv_high = std::sqrt(o.gm() / rh) * x / (1.0 + std::sqrt(1.0 - x));
    return k;
}

TransferPeriod transfer_period(const OrbitPair& o) {
    const double a = 0.5 * (o.r_low() + o.r_high());
    return {constants::kTwoPi * std::sqrt(o.r_high() * o.r_high() * o.r_high() / o.gm()),
            constants::kTwoPi * std::sqrt(a * a * a / o.gm())};
}

double delta_phi(const OrbitPair& o) {
    // GM (r_h - r_l) / (r_l r_h) avoids cancellation for nearby orbits.
    return o.gm() * (o.r_high() - o.r_low()) / (o.r_low() * o.r_high());
}

double dv_from_delta_phi(double delta_phi, double r_high, double gm) {
    require_positive(r_high, "orbit radius");
    require_positive(gm, "gravitational parameter");
    if (!(delta_phi >= 0.0)) {
        throw InvalidArgument("potential difference must be non-negative");
    }
    return std::sqrt(r_high / gm) * delta_phi / 4.0;
}

double duration_from_kick(double dv, double acceleration) {
    require_positive(acceleration, "thruster acceleration");
    if (!(dv >= 0.0)) {
        throw InvalidArgument("velocity change must be non-negative");
    }
    return dv / acceleration;
}

OrbitPair orbit_for_delta_phi(double r_low, double delta_phi, double gm) {
    require_positive(r_low, "lower orbit radius");
    require_positive(gm, "gravitational parameter");
    if (!(delta_phi >= 0.0)) {
        throw InvalidArgument("potential difference must be non-negative");
    }
    const double inv_high = 1.0 / r_low - delta_phi / gm;
    if (!(inv_high > 0.0)) {
        throw InvalidArgument("potential difference exceeds the escape energy of the lower orbit");
    }
    // r_h = r_l + r_l^2 dphi / (GM - r_l dphi), written to keep the small offset exact.
    const double r_high = r_low + r_low * r_low * delta_phi / (gm - r_low * delta_phi);
    return OrbitPair(r_low, r_high, gm);
}

OrbitPair orbit_for_kick(double r_low, double dv_low, double gm) {
    require_positive(r_low, "lower orbit radius");
    require_positive(gm, "gravitational parameter");
    if (!(dv_low >= 0.0)) {
        throw InvalidArgument("velocity change must be non-negative");
    }
    // Invert dv = v (q - 1), q^2 = 2 r_h / (r_l + r_h).
    const double eps = dv_low / std::sqrt(gm / r_low);
    const double q2_minus_1 = eps * (2.0 + eps);
    if (!(q2_minus_1 < 1.0)) {
        throw InvalidArgument("velocity change reaches escape velocity");
    }
    const double r_high = r_low + 2.0 * r_low * q2_minus_1 / (1.0 - q2_minus_1);
    return OrbitPair(r_low, r_high, gm);
}

double kick_for_delta_phi(double r_low, double delta_phi, double gm) {
    require_positive(r_low, "lower orbit radius");
    require_positive(gm, "gravitational parameter");
    if (!(delta_phi >= 0.0)) {
        throw InvalidArgument("potential difference must be non-negative");
    }
    const double u = r_low * delta_phi / gm;  // 1 - r_l / r_h
    if (!(u < 1.0)) {
        throw InvalidArgument("potential difference exceeds the escape energy of the lower orbit");
    }
    const double x = u / (2.0 - u);
    return std::sqrt(gm / r_low) * x / (std::sqrt(1.0 + x) + 1.0);
}

double delta_phi_for_kick(double r_low, double dv_low, double gm) {
    require_positive(r_low, "lower orbit radius");
    require_positive(gm, "gravitational parameter");
    if (!(dv_low >= 0.0)) {
        throw InvalidArgument("velocity change must be non-negative");
    }
    const double eps = dv_low / std::sqrt(gm / r_low);
    const double x = eps * (2.0 + eps);
    if (!(x < 1.0)) {
        throw InvalidArgument("velocity change reaches escape velocity");
    }
    return 2.0 * x / (1.0 + x) * gm / r_low;
}

ManeuverPlan plan_maneuver(const OrbitPair& o, double acceleration) {
    ManeuverPlan plan;
    plan.kicks = hohmann_kicks(o);
    plan.period = transfer_period(o);
    plan.delta_phi = delta_phi(o);
    plan.delta_tau_low = duration_from_kick(plan.kicks.dv_low, acceleration);
    return plan;
}

}  // namespace phonent
