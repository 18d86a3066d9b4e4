#include "phonent/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "phonent/errors.hpp"

namespace phonent {

namespace {

constexpr double kPiSquared = constants::kPi * constants::kPi;
constexpr double kPiFourth = kPiSquared * kPiSquared;
// Symplectic drift above this means the truncated generator is unusable.
constexpr double kSymplectificationLimit = 1e-8;

bool odd_difference(std::size_t m, std::size_t n) { return ((m > n ? m - n : n - m) % 2) == 1; }

void require_mode_label(std::size_t n, const char* what) {
    if (n == 0) {
        throw InvalidArgument(std::string(what) + ": mode numbers start at 1");
    }
}

void require_h(double h) {
    if (!std::isfinite(h) || h < 0.0) {
        throw InvalidArgument("perturbative parameter h must be finite and non-negative");
    }
    if (h >= 1.0) {
        std::ostringstream os;
        os << "h = " << h << " >= 1: first-order expansion does not apply";
        throw PerturbationBreakdown(os.str());
    }
}

}  // namespace

void CondensateParams::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InvalidArgument("condensate: trap length must be positive");
    }
    if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) {
        throw InvalidArgument("condensate: speed of sound must be positive");
    }
    if (!(atom_mass > 0.0) || !std::isfinite(atom_mass)) {
        throw InvalidArgument("condensate: atom mass must be positive");
    }
    if (truncation < 2) {
        throw InvalidArgument("condensate: truncation N_max must be at least 2");
    }
    if (sound_speed / constants::kSpeedOfLight > 1e-3) {
        throw InvalidArgument("condensate: speed of sound must satisfy c_s/c <= 1e-3");
    }
}

double mode_frequency(std::size_t n, const CondensateParams& p) {
    require_mode_label(n, "mode frequency");
    p.validate();
    return constants::kTwoPi * static_cast<double>(n) * p.sound_speed / p.length;
}

double h_parameter(double acceleration, const CondensateParams& p) {
    p.validate();
    if (!(acceleration >= 0.0) || !std::isfinite(acceleration)) {
        throw InvalidArgument("acceleration must be finite and non-negative");
    }
    const double h = acceleration * p.length / (p.sound_speed * p.sound_speed);
    require_h(h);
    return h;
}

ManeuverParams::ManeuverParams(double acceleration, double delta_tau, const CondensateParams& p)
    : acceleration_(acceleration), delta_tau_(delta_tau), h_(h_parameter(acceleration, p)) {
    if (!(delta_tau >= 0.0) || !std::isfinite(delta_tau)) {
        throw InvalidArgument("acceleration duration must be finite and non-negative");
    }
}

RindlerSpectrum::RindlerSpectrum(double omega1) : omega1_(omega1) {
    if (!(omega1 > 0.0) || !std::isfinite(omega1)) {
        throw InvalidArgument("fundamental comoving frequency must be positive");
    }
}

RindlerSpectrum default_spectrum(const CondensateParams& p) { return RindlerSpectrum(mode_frequency(1, p)); }

double alpha1_base(std::size_t m, std::size_t n) {
    require_mode_label(m, "alpha1_base");
    require_mode_label(n, "alpha1_base");
    // 0/0 on the diagonal; the zeroth order carries it.
    if (m == n || !odd_difference(m, n)) {
        return 0.0;
    }
    const double diff = static_cast<double>(m) - static_cast<double>(n);
    return -2.0 * std::sqrt(static_cast<double>(m) * static_cast<double>(n)) / (kPiSquared * diff * diff * diff);
}

double beta1_base(std::size_t m, std::size_t n) {
    require_mode_label(m, "beta1_base");
    require_mode_label(n, "beta1_base");
    if (!odd_difference(m, n)) {
        return 0.0;
    }
    const double sum = static_cast<double>(m) + static_cast<double>(n);
    return 2.0 * std::sqrt(static_cast<double>(m) * static_cast<double>(n)) / (kPiSquared * sum * sum * sum);
}

LiteralCoefficients literal_total_coeffs(std::size_t m, std::size_t n, double delta_tau,
                                         const RindlerSpectrum& spectrum) {
    const double dphase = (spectrum(n) - spectrum(m)) * delta_tau;
    LiteralCoefficients c;
    c.alpha0 = (m == n) ? std::polar(1.0, -spectrum(n) * delta_tau) : Complex{};
    c.alpha1 = std::polar(1.0, -dphase) * alpha1_base(m, n);
    c.beta1 = std::polar(1.0, dphase) * beta1_base(m, n);
    return c;
}

BogoliubovSet base_coefficients(std::size_t n_max) {
    const auto n = static_cast<Eigen::Index>(n_max);
    BogoliubovSet set{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n), CoefficientOrder::first};
    for (std::size_t m = 1; m <= n_max; ++m) {
        for (std::size_t k = 1; k <= n_max; ++k) {
            const auto i = static_cast<Eigen::Index>(m - 1);
            const auto j = static_cast<Eigen::Index>(k - 1);
            set.alpha(i, j) = alpha1_base(m, k);
            set.beta(i, j) = beta1_base(m, k);
        }
    }
    return set;
}

BogoliubovSet literal_coefficients(std::size_t n_max, double h, double delta_tau,
                                   const RindlerSpectrum& spectrum) {
    require_h(h);
    const auto n = static_cast<Eigen::Index>(n_max);
    BogoliubovSet set{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n), CoefficientOrder::first};
    for (std::size_t m = 1; m <= n_max; ++m) {
        for (std::size_t k = 1; k <= n_max; ++k) {
            const auto c = literal_total_coeffs(m, k, delta_tau, spectrum);
            const auto i = static_cast<Eigen::Index>(m - 1);
            const auto j = static_cast<Eigen::Index>(k - 1);
            set.alpha(i, j) = c.alpha0 + h * c.alpha1;
            set.beta(i, j) = h * c.beta1;
        }
    }
    return set;
}

Eigen::Matrix2d m_matrix(Complex alpha, Complex beta) {
    const Complex minus = alpha - beta;
    const Complex plus = alpha + beta;
    Eigen::Matrix2d m;
    m << minus.real(), plus.imag(),
         -minus.imag(), plus.real();
    return m;
}

std::pair<Complex, Complex> coefficients_from_m_matrix(const Eigen::Matrix2d& m) {
    const Complex alpha{0.5 * (m(0, 0) + m(1, 1)), 0.5 * (m(0, 1) - m(1, 0))};
    const Complex beta{0.5 * (m(1, 1) - m(0, 0)), 0.5 * (m(0, 1) + m(1, 0))};
    return {alpha, beta};
}

Matrix phase_space_matrix(const BogoliubovSet& set) {
    const Eigen::Index n = set.alpha.rows();
    if (set.alpha.cols() != n || set.beta.rows() != n || set.beta.cols() != n || n == 0) {
        throw InvalidArgument("phase-space matrix: coefficient matrices must be square and equal-sized");
    }
    Matrix s(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            s.block<2, 2>(2 * i, 2 * j) = m_matrix(set.alpha(j, i), set.beta(j, i));
        }
    }
    return s;
}

BogoliubovSet coefficients_from_phase_space(const Matrix& s, CoefficientOrder order) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
        throw InvalidArgument("coefficients from phase space: expected a 2n x 2n matrix");
    }
    const Eigen::Index n = s.rows() / 2;
    BogoliubovSet set{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n), order};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto [alpha, beta] = coefficients_from_m_matrix(s.block<2, 2>(2 * i, 2 * j));
            set.alpha(j, i) = alpha;
            set.beta(j, i) = beta;
        }
    }
    return set;
}

double base_tail_bound(std::size_t k_prime, std::size_t n_max) {
    require_mode_label(k_prime, "f-sum tail");
    if (n_max < 2 * k_prime) {
        throw TruncationError("f-sum tail: truncation must be at least twice the mode of interest");
    }
    // For n > N >= 2k': |a|^2 + |b|^2 <= 16 k' / (pi^4 (n-k')^5), summed by the
    // integral from N - k'.
    const double gap = static_cast<double>(n_max - k_prime);
    return 4.0 * static_cast<double>(k_prime) / (kPiFourth * gap * gap * gap * gap);
}

FSums f_sums(const BogoliubovSet& first_order, std::size_t k_prime, double envelope) {
    require_mode_label(k_prime, "f-sums");
    const std::size_t n_max = first_order.modes();
    if (2 * k_prime > n_max) {
        std::ostringstream os;
        os << "f-sums: mode " << k_prime << " needs N_max >= " << 2 * k_prime << ", got " << n_max;
        throw TruncationError(os.str());
    }
    const auto row = static_cast<Eigen::Index>(k_prime - 1);
    FSums f;
    f.alpha = first_order.alpha.row(row).cwiseAbs2().sum();
    f.beta = first_order.beta.row(row).cwiseAbs2().sum();
    f.tail_bound = envelope * base_tail_bound(k_prime, n_max);
    if (f.tail_bound > kTailTolerance) {
        std::ostringstream os;
        os << "f-sums: truncation N_max = " << n_max << " leaves a tail of up to " << f.tail_bound
           << " for mode " << k_prime;
        throw TruncationError(os.str());
    }
    return f;
}

FSums f_sums(std::size_t k_prime, const CondensateParams& p) {
    p.validate();
    return f_sums(base_coefficients(p.truncation), k_prime);
}

double bogoliubov_identity_residual(const BogoliubovSet& set, std::size_t k_prime) {
    require_mode_label(k_prime, "Bogoliubov identity");
    if (k_prime > set.modes()) {
        throw InvalidArgument("Bogoliubov identity: mode outside the truncation");
    }
    const auto row = static_cast<Eigen::Index>(k_prime - 1);
    const Eigen::RowVectorXcd a = set.alpha.row(row);
    const Eigen::RowVectorXcd b = set.beta.row(row);
    Eigen::RowVectorXcd e = a * set.alpha.adjoint() - b * set.beta.adjoint();
    e(row) -= 1.0;
    return e.cwiseAbs().maxCoeff();
}

Matrix transition_generator(std::size_t n_max) {
    if (n_max == 0) {
        throw InvalidArgument("transition generator: truncation must be positive");
    }
    return phase_space_matrix(base_coefficients(n_max));
}

Matrix free_rotation(std::size_t n_max, double delta_tau, const RindlerSpectrum& spectrum) {
    const auto n = static_cast<Eigen::Index>(n_max);
    Matrix r = Matrix::Zero(2 * n, 2 * n);
    for (std::size_t m = 1; m <= n_max; ++m) {
        const auto i = static_cast<Eigen::Index>(2 * (m - 1));
        r.block<2, 2>(i, i) = m_matrix(std::polar(1.0, -spectrum(m) * delta_tau), Complex{});
    }
    return r;
}

ComposedChannel::ComposedChannel(const CondensateParams& p, double h, RindlerSpectrum spectrum,
                                 std::size_t mode_of_interest)
    : n_max_(p.truncation), h_(h), spectrum_(spectrum) {
    p.validate();
    require_h(h);
    require_mode_label(mode_of_interest, "composed channel");
    if (n_max_ < mode_of_interest + kTruncationMargin) {
        std::ostringstream os;
        os << "composed channel: N_max = " << n_max_ << " must be at least mode " << mode_of_interest
           << " + " << kTruncationMargin;
        throw TruncationError(os.str());
    }
    // Composed first-order moduli are at most twice the base ones.
    const double tail = 4.0 * base_tail_bound(mode_of_interest, n_max_);
    if (tail > kTailTolerance) {
        std::ostringstream os;
        os << "composed channel: truncation tail " << tail << " for mode " << mode_of_interest
           << " exceeds " << kTailTolerance;
        throw TruncationError(os.str());
    }
    generator_ = transition_generator(n_max_);
    const Matrix scaled = h_ * generator_;
    forward_ = scaled.exp();
    backward_ = (-scaled).exp();
}

SymplecticTransform ComposedChannel::transform(double delta_tau) const {
    if (!std::isfinite(delta_tau)) {
        throw InvalidArgument("composed channel: acceleration duration must be finite");
    }
    // R is block diagonal, so R*B is a per-mode rotation of row pairs.
    Matrix rotated = forward_;
    for (std::size_t m = 1; m <= n_max_; ++m) {
        const auto i = static_cast<Eigen::Index>(2 * (m - 1));
        const Eigen::Matrix2d rot = m_matrix(std::polar(1.0, -spectrum_(m) * delta_tau), Complex{});
        rotated.middleRows<2>(i) = rot * forward_.middleRows<2>(i);
    }
    Matrix s = backward_ * rotated;
    const double residual = symplectic_residual(s);
    if (residual > kSymplectificationLimit) {
        std::ostringstream os;
        os << "composed channel: symplectic residual " << residual << " exceeds " << kSymplectificationLimit
           << "; increase the truncation";
        throw TruncationError(os.str());
    }
    return SymplecticTransform(std::move(s));
}

BogoliubovSet ComposedChannel::first_order(double delta_tau) const {
    const Matrix r = free_rotation(n_max_, delta_tau, spectrum_);
    const Matrix commutator = r * generator_ - generator_ * r;
    return coefficients_from_phase_space(commutator, CoefficientOrder::composed);
}

SymplecticTransform compose_total_transform(const CondensateParams& p, const ManeuverParams& mv,
                                            const RindlerSpectrum& spectrum, std::size_t mode_of_interest) {
    return ComposedChannel(p, mv.h(), spectrum, mode_of_interest).transform(mv.delta_tau());
}

}  // namespace phonent
