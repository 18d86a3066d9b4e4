#include "phonent/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "phonent/errors.hpp"

namespace phonent {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double delta_tau_for_kick(double dv, double acceleration) {
    if (dv == 0.0) {
        return 0.0;
    }
    if (!(acceleration > 0.0)) {
        throw InvalidArgument("a non-zero orbit change needs a positive thruster acceleration");
    }
    return duration_from_kick(dv, acceleration);
}

Matrix embed_spectator(const Matrix& channel) {
    const Eigen::Index n = channel.rows();
    Matrix full = Matrix::Identity(n + 2, n + 2);
    full.bottomRightCorner(n, n) = channel;
    return full;
}

}  // namespace

std::string_view to_string(ChannelMode mode) { return mode == ChannelMode::literal ? "literal" : "composed"; }

ChannelMode parse_channel_mode(std::string_view text) {
    if (text == "literal") {
        return ChannelMode::literal;
    }
    if (text == "composed") {
        return ChannelMode::composed;
    }
    throw InvalidArgument("channel mode must be 'literal' or 'composed', got '" + std::string(text) + "'");
}

std::string_view to_string(SweepAxis axis) { return axis == SweepAxis::delta_phi ? "dphi" : "dtau"; }

SweepAxis parse_sweep_axis(std::string_view text) {
    if (text == "dphi") {
        return SweepAxis::delta_phi;
    }
    if (text == "dtau") {
        return SweepAxis::delta_tau;
    }
    throw InvalidArgument("sweep axis must be 'dphi' or 'dtau', got '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
    condensate.validate();
    if (!(thruster_acceleration >= 0.0) || !std::isfinite(thruster_acceleration)) {
        throw InvalidArgument("thruster acceleration must be finite and non-negative");
    }
    if (!(squeezing >= 0.0) || !std::isfinite(squeezing)) {
        throw InvalidArgument("squeezing parameter must be finite and non-negative");
    }
    if (mode_k == 0 || mode_k_prime == 0) {
        throw InvalidArgument("mode indices start at 1");
    }
    if (condensate.truncation < mode_k_prime + kTruncationMargin) {
        std::ostringstream os;
        os << "truncation N_max = " << condensate.truncation << " must be at least k' + " << kTruncationMargin;
        throw TruncationError(os.str());
    }
    if (omega1 && !(*omega1 > 0.0 && std::isfinite(*omega1))) {
        throw InvalidArgument("Omega_1 override must be positive");
    }
    if (!(gm > 0.0) || !(base_radius > 0.0)) {
        throw InvalidArgument("gravitational parameter and base orbit radius must be positive");
    }
}

RindlerSpectrum ExperimentConfig::spectrum() const {
    return omega1 ? RindlerSpectrum(*omega1) : default_spectrum(condensate);
}

double initial_negativity(double squeezing) {
    if (!std::isfinite(squeezing)) {
        throw InvalidArgument("squeezing parameter must be finite");
    }
    return std::max(0.0, 0.5 * std::expm1(2.0 * squeezing));
}

double perturbative_negativity(double squeezing, double h, double f_alpha, double f_beta) {
    if (!(h < 1.0)) {
        throw PerturbationBreakdown("perturbative negativity requires h < 1");
    }
    const double n0 = initial_negativity(squeezing);
    const double e2r = std::exp(2.0 * squeezing);
    const double h2 = h * h;
    return std::max(0.0, n0 * (1.0 - e2r * (f_alpha + f_beta) * h2) - e2r * f_beta * h2);
}

ManeuverPoint resolve_maneuver(const ExperimentConfig& cfg, const ManeuverSource& source) {
    const double a = cfg.thruster_acceleration;
    return std::visit(
        Overloaded{
            [&](const OrbitPair& o) {
                const TransferKicks k = hohmann_kicks(o);
                return ManeuverPoint{delta_tau_for_kick(k.dv_low, a), delta_phi(o)};
            },
            [&](const DeltaPhi& d) {
                const double dv = kick_for_delta_phi(cfg.base_radius, d.value, cfg.gm);
                return ManeuverPoint{delta_tau_for_kick(dv, a), d.value};
            },
            [&](const DeltaTau& d) {
                if (!(d.value >= 0.0) || !std::isfinite(d.value)) {
                    throw InvalidArgument("acceleration duration must be finite and non-negative");
                }
                return ManeuverPoint{d.value, delta_phi_for_kick(cfg.base_radius, a * d.value, cfg.gm)};
            },
        },
        source);
}

double block_formula_negativity(double squeezing, const Matrix& channel, std::size_t mode_k_prime) {
    const auto kp = static_cast<Eigen::Index>(mode_k_prime - 1);
    const Eigen::Index n_modes = channel.rows() / 2;
    const double c = std::cosh(2.0 * squeezing);
    const double s = std::sinh(2.0 * squeezing);
    const Eigen::Matrix2d phi = (Eigen::Matrix2d() << s, 0.0, 0.0, -s).finished();
    const Eigen::Matrix2d own = channel.block<2, 2>(2 * kp, 2 * kp);

    Eigen::Matrix2d c_primed = c * own * own.transpose();
    for (Eigen::Index n = 0; n < n_modes; ++n) {
        if (n == kp) {
            continue;
        }
        const Eigen::Matrix2d m = channel.block<2, 2>(2 * kp, 2 * n);
        c_primed += m * m.transpose();
    }
    Matrix sigma(4, 4);
    sigma.topLeftCorner<2, 2>() = c * Eigen::Matrix2d::Identity();
    sigma.topRightCorner<2, 2>() = phi * own.transpose();
    sigma.bottomLeftCorner<2, 2>() = (phi * own.transpose()).transpose();
    sigma.bottomRightCorner<2, 2>() = c_primed;
    const CovarianceMatrix state(std::move(sigma));
    return negativity(transposed_symplectic_eigenvalues_two_mode(state).nu_minus);
}

double full_state_negativity(double squeezing, const Matrix& channel, std::size_t mode_k_prime,
                             bool channel_is_symplectic) {
    const std::size_t n_modes = static_cast<std::size_t>(channel.rows() / 2);
    // Mode 0 is the inertial partner; modes 1..N_max the accelerated condensate.
    Matrix initial = vacuum_covariance(n_modes + 1).matrix();
    const CovarianceMatrix pair = tms_covariance(squeezing);
    const std::array<Eigen::Index, 2> slots{0, static_cast<Eigen::Index>(2 * mode_k_prime)};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            initial.block<2, 2>(slots[a], slots[b]) = pair.block(a, b);
        }
    }
    const CovarianceMatrix sigma(std::move(initial));
    const Matrix full = embed_spectator(channel);
    const CovarianceMatrix evolved = channel_is_symplectic ? apply_symplectic(sigma, SymplecticTransform(full))
                                                           : apply_linear_map(sigma, full);
    const std::array<std::size_t, 2> keep{0, mode_k_prime};
    const CovarianceMatrix reduced = partial_transpose(partial_trace(evolved, keep), 1);
    const std::vector<double> nu = symplectic_eigenvalues(reduced);
    return negativity(nu.back());
}

NegativityPipeline::NegativityPipeline(ExperimentConfig cfg)
    : cfg_(std::move(cfg)),
      h_((cfg_.validate(), h_parameter(cfg_.thruster_acceleration, cfg_.condensate))),
      spectrum_(cfg_.spectrum()),
      base_sums_(f_sums(cfg_.mode_k_prime, cfg_.condensate)) {
    if (cfg_.channel == ChannelMode::composed) {
        composed_.emplace(cfg_.condensate, h_, spectrum_, cfg_.mode_k_prime);
    }
}

Matrix NegativityPipeline::channel_matrix(double delta_tau) const {
    if (composed_) {
        return composed_->transform(delta_tau).matrix();
    }
    return phase_space_matrix(literal_coefficients(cfg_.condensate.truncation, h_, delta_tau, spectrum_));
}

NegativityResult NegativityPipeline::evaluate(const ManeuverSource& source) const {
    return evaluate(resolve_maneuver(cfg_, source));
}

NegativityResult NegativityPipeline::evaluate(const ManeuverPoint& point) const {
    if (!(point.delta_tau >= 0.0) || !std::isfinite(point.delta_tau)) {
        throw InvalidArgument("acceleration duration must be finite and non-negative");
    }
    NegativityResult out;
    out.h = h_;
    out.delta_tau = point.delta_tau;
    out.delta_phi = point.delta_phi;
    out.n0 = initial_negativity(cfg_.squeezing);

    const Matrix channel = channel_matrix(point.delta_tau);
    out.channel_residual = symplectic_residual(channel);

    const FSums sums = composed_ ? f_sums(composed_->first_order(point.delta_tau), cfg_.mode_k_prime, 4.0)
                                 : base_sums_;
    out.f_alpha = sums.alpha;
    out.f_beta = sums.beta;
    out.n_pert = perturbative_negativity(cfg_.squeezing, h_, sums.alpha, sums.beta);

    out.n_num = block_formula_negativity(cfg_.squeezing, channel, cfg_.mode_k_prime);
    out.n_full_state = full_state_negativity(cfg_.squeezing, channel, cfg_.mode_k_prime, composed_.has_value());
    if (!(std::abs(out.n_num - out.n_full_state) <= kCrossCheckTolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << "block-formula negativity " << out.n_num << " and full-state negativity " << out.n_full_state
           << " disagree";
        throw ConsistencyError(os.str());
    }
    out.degradation_pct = out.n0 > 0.0 ? 100.0 * (out.n0 - out.n_num) / out.n0 : 0.0;
    return out;
}

NegativityResult numeric_negativity(const ExperimentConfig& cfg) {
    return NegativityPipeline(cfg).evaluate(cfg.maneuver);
}

std::vector<double> sweep_grid(const SweepRange& range) {
    if (!std::isfinite(range.min) || !std::isfinite(range.max) || range.max < range.min) {
        throw InvalidArgument("sweep range must be finite with min <= max");
    }
    if (range.steps == 0) {
        throw InvalidArgument("sweep needs at least one step");
    }
    if (range.steps == 1 || range.min == range.max) {
        return {range.min};
    }
    std::vector<double> grid(range.steps);
    const double width = range.max - range.min;
    const double last = static_cast<double>(range.steps - 1);
    for (std::size_t i = 0; i < range.steps; ++i) {
        grid[i] = range.min + width * (static_cast<double>(i) / last);
    }
    grid.back() = range.max;
    return grid;
}

std::vector<NegativityResult> sweep(const ExperimentConfig& cfg, SweepAxis axis, const SweepRange& range,
                                    unsigned threads) {
    const std::vector<double> grid = sweep_grid(range);
    if (grid.front() < 0.0) {
        throw InvalidArgument("sweep values must be non-negative");
    }
    if (axis == SweepAxis::delta_phi && !(cfg.thruster_acceleration > 0.0) && grid.back() > 0.0) {
        throw InvalidArgument("a potential-difference sweep needs a positive thruster acceleration");
    }
    const NegativityPipeline pipeline(cfg);

    std::vector<NegativityResult> rows(grid.size());
    auto evaluate_at = [&](std::size_t i) {
        const ManeuverSource source = axis == SweepAxis::delta_phi ? ManeuverSource{DeltaPhi{grid[i]}}
                                                                  : ManeuverSource{DeltaTau{grid[i]}};
        rows[i] = pipeline.evaluate(source);
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            evaluate_at(i);
        }
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < grid.size(); i = next++) {
                    try {
                        evaluate_at(i);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next = grid.size();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

double coherence_time(double atom_mass, double sound_speed) {
    if (!(atom_mass > 0.0) || !(sound_speed > 0.0)) {
        throw InvalidArgument("coherence time: mass and speed of sound must be positive");
    }
    return constants::kHbar / (atom_mass * sound_speed * sound_speed);
}

std::uint64_t measurement_budget(std::uint64_t n_dots, double t_coherence, double t_modulation) {
    if (!(t_coherence > 0.0) || !(t_modulation > 0.0)) {
        throw InvalidArgument("measurement budget: times must be positive");
    }
    // Ratios such as 0.1/0.001 land a few ulps either side of an integer.
    const double cycles = std::floor(t_coherence / t_modulation * (1.0 + 1e-12));
    return n_dots * static_cast<std::uint64_t>(cycles);
}

}  // namespace phonent
