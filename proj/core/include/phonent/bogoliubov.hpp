#pragma once

// Phonon modes of a box-trapped quasi-1D condensate and the Bogoliubov
// machinery for a finite period of uniform acceleration.
//
// Mode numbers here are one-based physical labels n = 1, 2, ..., N_max.
// Phase-space matrices built from a coefficient set cover the N_max modes of
// one condensate, mode n occupying rows/columns 2(n-1) and 2(n-1)+1.

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "phonent/constants.hpp"
#include "phonent/symplectic.hpp"

namespace phonent {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultTruncation = 100;
/// Extra modes required above the highest mode of interest.
inline constexpr std::size_t kTruncationMargin = 10;
/// Largest acceptable tail of a truncated f-sum.
inline constexpr double kTailTolerance = 1e-8;
/// h above which results are flagged as only marginally perturbative.
inline constexpr double kStrongPerturbationThreshold = 0.3;

/// h above the threshold, ignoring round-off in a L / c_s^2.
inline bool is_strongly_perturbative(double h) { return h > kStrongPerturbationThreshold * (1.0 + 1e-12); }

struct CondensateParams {
    double length = 1e-4;          ///< trap length L [m]
    double sound_speed = 1e-3;     ///< c_s [m/s]
    double atom_mass = constants::kHelium4Mass;  ///< [kg]
    std::size_t truncation = kDefaultTruncation;  ///< N_max

    /// Throws InvalidArgument on L, c_s, m <= 0, N_max < 2 or c_s/c > 1e-3.
    void validate() const;
};

/// omega_n = 2 pi n c_s / L.
double mode_frequency(std::size_t n, const CondensateParams& p);

/// h = a L / c_s^2; throws PerturbationBreakdown when h >= 1.
double h_parameter(double acceleration, const CondensateParams& p);

class ManeuverParams {
public:
    ManeuverParams(double acceleration, double delta_tau, const CondensateParams& p);

    double acceleration() const { return acceleration_; }
    double delta_tau() const { return delta_tau_; }
    double h() const { return h_; }
    bool strongly_perturbative() const { return is_strongly_perturbative(h_); }

private:
    double acceleration_;
    double delta_tau_;
    double h_;
};

/// Comoving frequencies Omega_n = n * Omega_1 during the accelerated segment.
class RindlerSpectrum {
public:
    explicit RindlerSpectrum(double omega1);

    double omega1() const { return omega1_; }
    double operator()(std::size_t n) const { return static_cast<double>(n) * omega1_; }
    /// One fundamental period 2 pi / Omega_1.
    double period() const { return constants::kTwoPi / omega1_; }

private:
    double omega1_;
};

/// Omega_1 = omega_1 = 2 pi c_s / L.
RindlerSpectrum default_spectrum(const CondensateParams& p);

/// First-order Minkowski->Rindler mixing coefficient per unit h. Zero on the
/// diagonal and whenever m - n is even; antisymmetric in (m, n).
double alpha1_base(std::size_t m, std::size_t n);

/// First-order pair-creation coefficient per unit h. Zero whenever m - n is
/// even; symmetric in (m, n).
double beta1_base(std::size_t m, std::size_t n);

/// Coefficients as printed, phases included; alpha1 and beta1 per unit h.
struct LiteralCoefficients {
    Complex alpha0;
    Complex alpha1;
    Complex beta1;
};

LiteralCoefficients literal_total_coeffs(std::size_t m, std::size_t n, double delta_tau,
                                         const RindlerSpectrum& spectrum);

enum class CoefficientOrder { zeroth, first, composed };

/// alpha(m-1, n-1) holds alpha_mn.
struct BogoliubovSet {
    Eigen::MatrixXcd alpha;
    Eigen::MatrixXcd beta;
    CoefficientOrder order = CoefficientOrder::first;

    std::size_t modes() const { return static_cast<std::size_t>(alpha.rows()); }
};

/// Real base coefficients per unit h for modes 1..n_max.
BogoliubovSet base_coefficients(std::size_t n_max);

/// alpha = alpha0 + h alpha1, beta = h beta1 with the printed phases.
BogoliubovSet literal_coefficients(std::size_t n_max, double h, double delta_tau,
                                   const RindlerSpectrum& spectrum);

/// 2x2 real phase-space block of a single (alpha, beta) pair.
Eigen::Matrix2d m_matrix(Complex alpha, Complex beta);

/// Inverse of m_matrix.
std::pair<Complex, Complex> coefficients_from_m_matrix(const Eigen::Matrix2d& m);

/// Phase-space matrix of a coefficient set: block (i, j) = M(alpha_ji, beta_ji),
/// so that output mode i collects M_ij sigma_j M_ij^T.
Matrix phase_space_matrix(const BogoliubovSet& set);

/// Inverse of phase_space_matrix.
BogoliubovSet coefficients_from_phase_space(const Matrix& s, CoefficientOrder order);

/// Row sums f^alpha = sum_n |alpha_{k'n}|^2, f^beta = sum_n |beta_{k'n}|^2.
struct FSums {
    double alpha = 0.0;
    double beta = 0.0;
    double tail_bound = 0.0;  ///< upper bound on the neglected n > N_max terms
};

/// f-sums of the base coefficients (per unit h^2). Throws TruncationError
/// when k' > N_max/2 or the tail bound exceeds 1e-8.
FSums f_sums(std::size_t k_prime, const CondensateParams& p);

/// f-sums over row k' of an arbitrary first-order set (per unit h^2). The tail
/// bound is scaled from the base-coefficient bound by `envelope`, the largest
/// possible ratio |coefficient| / |base coefficient| squared.
FSums f_sums(const BogoliubovSet& first_order, std::size_t k_prime, double envelope = 1.0);

/// Upper bound on sum_{n > N_max} of the squared base coefficients in row k'.
double base_tail_bound(std::size_t k_prime, std::size_t n_max);

/// max_j |(alpha alpha^dag - beta beta^dag - I)_{k'j}| over row k'.
double bogoliubov_identity_residual(const BogoliubovSet& set, std::size_t k_prime);

/// Real Hamiltonian generator G with B = exp(h G) the Minkowski->Rindler
/// transform; its blocks reproduce m_matrix(alpha1_base, beta1_base).
Matrix transition_generator(std::size_t n_max);

/// Free evolution of all modes over delta_tau at the comoving frequencies.
Matrix free_rotation(std::size_t n_max, double delta_tau, const RindlerSpectrum& spectrum);

/// Inertial -> accelerated (delta_tau) -> inertial channel,
/// S = B^{-1} R(delta_tau) B with B = exp(h G).
///
/// B and its inverse are computed once per (condensate, h); evaluating a new
/// delta_tau only costs a rotation and one product, so sweeps hold on to one
/// instance and call transform() per grid point.
class ComposedChannel {
public:
    /// Throws TruncationError when N_max < mode_of_interest + 10 or the f-sum
    /// tail for that mode exceeds 1e-8.
    ComposedChannel(const CondensateParams& p, double h, RindlerSpectrum spectrum,
                    std::size_t mode_of_interest = 1);

    double h() const { return h_; }
    std::size_t modes() const { return n_max_; }
    const RindlerSpectrum& spectrum() const { return spectrum_; }

    /// Throws TruncationError if the product drifts off the group by more
    /// than 1e-8.
    SymplecticTransform transform(double delta_tau) const;

    /// First-order (per unit h) coefficients of the composed channel, read off
    /// R G - G R.
    BogoliubovSet first_order(double delta_tau) const;

private:
    std::size_t n_max_;
    double h_;
    RindlerSpectrum spectrum_;
    Matrix generator_;
    Matrix forward_;
    Matrix backward_;
};

/// Convenience wrapper for a single evaluation.
SymplecticTransform compose_total_transform(const CondensateParams& p, const ManeuverParams& mv,
                                            const RindlerSpectrum& spectrum,
                                            std::size_t mode_of_interest = 1);

}  // namespace phonent
