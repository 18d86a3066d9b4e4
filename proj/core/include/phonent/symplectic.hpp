#pragma once

// Gaussian-state phase-space engine.
//
// Quadratures are ordered mode by mode, (x_1, p_1, x_2, p_2, ...), with
// x = (a + a^dag)/sqrt(2) and p = -i(a - a^dag)/sqrt(2). In this convention the
// vacuum covariance matrix is the identity. Mode indices in this header are
// zero-based.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace phonent {

using Matrix = Eigen::MatrixXd;

/// Tolerance applied when a constructed object checks its own invariant.
inline constexpr double kConstructionTolerance = 1e-10;
/// Tolerance used when two independent routes are compared.
inline constexpr double kCrossCheckTolerance = 1e-9;

class SymplecticForm {
public:
    explicit SymplecticForm(std::size_t modes);

    std::size_t modes() const { return modes_; }
    const Matrix& matrix() const { return omega_; }

private:
    std::size_t modes_;
    Matrix omega_;
};

/// Block-diagonal direct sum of `modes` copies of [[0, 1], [-1, 0]].
SymplecticForm symplectic_form(std::size_t modes);

enum class Validation {
    symmetric,  ///< only |s_ij - s_ji| <= 1e-12
    physical,   ///< additionally sigma + i*Omega >= -1e-10
};

class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Matrix entries, Validation check = Validation::symmetric);

    std::size_t modes() const { return static_cast<std::size_t>(entries_.rows() / 2); }
    const Matrix& matrix() const { return entries_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    /// 2x2 block coupling modes `a` and `b`.
    Eigen::Matrix2d block(std::size_t a, std::size_t b) const;

    /// Smallest eigenvalue of sigma + i*Omega.
    double uncertainty_margin() const;
    bool is_physical(double tolerance = kConstructionTolerance) const;

private:
    Matrix entries_;
};

class SymplecticTransform {
public:
    /// Throws ConsistencyError when ||S Omega S^T - Omega||_max > 1e-10.
    explicit SymplecticTransform(Matrix entries);

    static SymplecticTransform identity(std::size_t modes);

    std::size_t modes() const { return static_cast<std::size_t>(entries_.rows() / 2); }
    const Matrix& matrix() const { return entries_; }
    double residual() const { return residual_; }

private:
    Matrix entries_;
    double residual_ = 0.0;
};

/// ||S Omega S^T - Omega||_max for any square even-sized matrix.
double symplectic_residual(const Matrix& s);

CovarianceMatrix vacuum_covariance(std::size_t modes);

/// Reduced covariance of a two-mode squeezed vacuum with squeezing r.
CovarianceMatrix tms_covariance(double squeezing);

/// S sigma S^T.
CovarianceMatrix apply_symplectic(const CovarianceMatrix& sigma, const SymplecticTransform& s);

/// T sigma T^T for a real-linear map that need not be symplectic, e.g. a
/// truncated first-order Bogoliubov channel.
CovarianceMatrix apply_linear_map(const CovarianceMatrix& sigma, const Matrix& map);

/// Keeps the listed modes, in the order given.
CovarianceMatrix partial_trace(const CovarianceMatrix& sigma, std::span<const std::size_t> keep);

/// Flips the sign of the momentum row and column of `mode`.
CovarianceMatrix partial_transpose(const CovarianceMatrix& sigma, std::size_t mode);

struct TwoModeSpectrum {
    double nu_plus = 0.0;
    double nu_minus = 0.0;
};

/// Symplectic eigenvalues of a 4x4 covariance matrix from its block
/// invariants, Delta = det A + det B + 2 det C.
TwoModeSpectrum symplectic_eigenvalues_two_mode(const CovarianceMatrix& sigma);

/// Symplectic eigenvalues of the partial transpose of `sigma` (second mode),
/// evaluated on the untransposed blocks: Delta = det A + det B - 2 det C.
TwoModeSpectrum transposed_symplectic_eigenvalues_two_mode(const CovarianceMatrix& sigma);

/// Moduli of the eigenvalues of i*Omega*sigma, one per mode, descending.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// max[0, (1 - nu)/(2 nu)].
double negativity(double nu_minus);

/// Phase-space rotation of a single mode; identity on all the others.
SymplecticTransform single_mode_rotation(std::size_t modes, std::size_t mode, double angle);

}  // namespace phonent
