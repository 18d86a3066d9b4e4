#pragma once

// End-to-end pipeline: two-mode squeezed phonons shared between two
// condensates, one of which is accelerated for a finite proper time while its
// satellite changes orbit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "phonent/bogoliubov.hpp"
#include "phonent/orbits.hpp"
#include "phonent/symplectic.hpp"

namespace phonent {

enum class ChannelMode {
    literal,   ///< first-order coefficients with their printed phases
    composed,  ///< exactly symplectic B^{-1} R(delta_tau) B
};

std::string_view to_string(ChannelMode mode);
/// Accepts "literal" or "composed"; throws InvalidArgument otherwise.
ChannelMode parse_channel_mode(std::string_view text);

struct DeltaPhi {
    double value = 0.0;  ///< [m^2/s^2]
};

struct DeltaTau {
    double value = 0.0;  ///< [s]
};

using ManeuverSource = std::variant<OrbitPair, DeltaPhi, DeltaTau>;

struct ExperimentConfig {
    CondensateParams condensate;
    double thruster_acceleration = 1e-3;  ///< a [m/s^2]
    double squeezing = 0.5;               ///< r
    std::size_t mode_k = 1;               ///< inertial partner's mode
    std::size_t mode_k_prime = 1;         ///< accelerated condensate's mode
    std::optional<double> omega1;         ///< overrides Omega_1 = 2 pi c_s / L
    ChannelMode channel = ChannelMode::composed;
    ManeuverSource maneuver = DeltaTau{0.0};
    double gm = constants::kEarthGm;
    double base_radius = constants::kLeoRadius;  ///< initial circular orbit [m]

    void validate() const;
    RindlerSpectrum spectrum() const;
};

struct NegativityResult {
    double n0 = 0.0;
    double n_pert = 0.0;
    double n_num = 0.0;
    double degradation_pct = 0.0;
    double h = 0.0;
    double delta_tau = 0.0;
    double delta_phi = 0.0;

    double n_full_state = 0.0;     ///< same quantity via the full propagated covariance
    double f_alpha = 0.0;
    double f_beta = 0.0;
    double channel_residual = 0.0; ///< ||S Omega S^T - Omega||_max of the applied channel
};

/// max[0, (e^{2r} - 1)/2].
double initial_negativity(double squeezing);

/// max[0, N0 (1 - e^{2r}(f_a + f_b) h^2) - e^{2r} f_b h^2].
double perturbative_negativity(double squeezing, double h, double f_alpha, double f_beta);

struct ManeuverPoint {
    double delta_tau = 0.0;
    double delta_phi = 0.0;
};

/// Converts any maneuver source to (delta_tau, delta_phi) through a Hohmann
/// transfer starting at cfg.base_radius and a constant-thrust first burn.
ManeuverPoint resolve_maneuver(const ExperimentConfig& cfg, const ManeuverSource& source);

/// Reusable evaluator for one (condensate, thrust, squeezing, modes, channel)
/// combination. Immutable after construction; evaluate() may be called from
/// several threads at once.
class NegativityPipeline {
public:
    explicit NegativityPipeline(ExperimentConfig cfg);

    const ExperimentConfig& config() const { return cfg_; }
    double h() const { return h_; }
    bool strongly_perturbative() const { return is_strongly_perturbative(h_); }

    NegativityResult evaluate(const ManeuverSource& source) const;
    NegativityResult evaluate(const ManeuverPoint& point) const;

    /// Single-condensate channel for a given duration.
    Matrix channel_matrix(double delta_tau) const;

private:
    ExperimentConfig cfg_;
    double h_;
    RindlerSpectrum spectrum_;
    std::optional<ComposedChannel> composed_;
    FSums base_sums_;
};

NegativityResult numeric_negativity(const ExperimentConfig& cfg);

/// Negativity of the two-mode state built from the block formulas, given the
/// 2x2 blocks M_{k'n} of the accelerated condensate's channel.
double block_formula_negativity(double squeezing, const Matrix& channel, std::size_t mode_k_prime);

/// Same state obtained by propagating the full covariance of the inertial
/// mode plus every accelerated mode, then tracing and transposing.
double full_state_negativity(double squeezing, const Matrix& channel, std::size_t mode_k_prime,
                             bool channel_is_symplectic);

enum class SweepAxis { delta_phi, delta_tau };

std::string_view to_string(SweepAxis axis);
/// Accepts "dphi" or "dtau".
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepRange {
    double min = 0.0;
    double max = 0.0;
    std::size_t steps = 2;
};

/// Grid values: one point when steps == 1 or min == max, otherwise `steps`
/// evenly spaced values including both ends.
std::vector<double> sweep_grid(const SweepRange& range);

/// Evaluates every grid point (concurrently when threads != 1) and returns the
/// rows in grid order. threads == 0 picks the hardware concurrency.
std::vector<NegativityResult> sweep(const ExperimentConfig& cfg, SweepAxis axis, const SweepRange& range,
                                    unsigned threads = 0);

/// hbar / (m c_s^2).
double coherence_time(double atom_mass, double sound_speed);

/// n_dots * floor(t_coherence / t_modulation).
std::uint64_t measurement_budget(std::uint64_t n_dots, double t_coherence, double t_modulation);

}  // namespace phonent
