#include "phonent/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "phonent/errors.hpp"

namespace phonent {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_even_square(const Matrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols() || m.rows() % 2 != 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty 2n x 2n matrix, got " << m.rows() << 'x' << m.cols();
        throw InvalidArgument(os.str());
    }
}

void require_mode(std::size_t mode, std::size_t modes, const char* what) {
    if (mode >= modes) {
        std::ostringstream os;
        os << what << ": mode index " << mode << " out of range for " << modes << " modes";
        throw InvalidArgument(os.str());
    }
}

double det2(const Eigen::Matrix2d& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// nu_{+-} = sqrt[(Delta +- sqrt(Delta^2 - 4 det))/2], shared by both two-mode routes.
TwoModeSpectrum spectrum_from_invariants(double delta, double det) {
    double disc = delta * delta - 4.0 * det;
    const double tol = kConstructionTolerance * std::max(1.0, delta * delta);
    if (disc < 0.0) {
        if (disc < -tol) {
            std::ostringstream os;
            os << "two-mode symplectic spectrum: negative discriminant " << disc;
            throw NumericalDegeneracy(os.str());
        }
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    double plus_sq = 0.5 * (delta + root);
    double minus_sq = 0.5 * (delta - root);
    if (minus_sq < 0.0) {
        if (minus_sq < -tol) {
            std::ostringstream os;
            os << "two-mode symplectic spectrum: negative nu_-^2 = " << minus_sq;
            throw NumericalDegeneracy(os.str());
        }
        minus_sq = 0.0;
    }
    return {std::sqrt(plus_sq), std::sqrt(minus_sq)};
}

void require_two_mode(const CovarianceMatrix& sigma, const char* what) {
    if (sigma.modes() != 2) {
        throw InvalidArgument(std::string(what) + ": expected a 4x4 covariance matrix");
    }
}

}  // namespace

SymplecticForm::SymplecticForm(std::size_t modes) : modes_(modes) {
    if (modes == 0) {
        throw InvalidArgument("symplectic form: number of modes must be positive");
    }
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    omega_ = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; i += 2) {
        omega_(i, i + 1) = 1.0;
        omega_(i + 1, i) = -1.0;
    }
}

SymplecticForm symplectic_form(std::size_t modes) { return SymplecticForm(modes); }

CovarianceMatrix::CovarianceMatrix(Matrix entries, Validation check) : entries_(std::move(entries)) {
    require_even_square(entries_, "covariance matrix");
    const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= kSymmetryTolerance * std::max(1.0, entries_.cwiseAbs().maxCoeff()))) {
        std::ostringstream os;
        os << "covariance matrix is not symmetric (max asymmetry " << asym << ')';
        throw InvalidArgument(os.str());
    }
    // Store the exactly symmetric part so downstream products stay symmetric.
    entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
    if (check == Validation::physical && !is_physical()) {
        std::ostringstream os;
        os << "covariance matrix violates sigma + i*Omega >= 0 (min eigenvalue "
           << uncertainty_margin() << ')';
        throw InvalidArgument(os.str());
    }
}

Eigen::Matrix2d CovarianceMatrix::block(std::size_t a, std::size_t b) const {
    require_mode(a, modes(), "covariance block");
    require_mode(b, modes(), "covariance block");
    return entries_.block<2, 2>(static_cast<Eigen::Index>(2 * a), static_cast<Eigen::Index>(2 * b));
}

double CovarianceMatrix::uncertainty_margin() const {
    const Matrix omega = symplectic_form(modes()).matrix();
    const Eigen::MatrixXcd h =
        entries_.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalDegeneracy("physicality check: eigen-solver did not converge");
    }
    return solver.eigenvalues().minCoeff();
}

bool CovarianceMatrix::is_physical(double tolerance) const { return uncertainty_margin() >= -tolerance; }

double symplectic_residual(const Matrix& s) {
    require_even_square(s, "symplectic residual");
    const Matrix omega = symplectic_form(static_cast<std::size_t>(s.rows() / 2)).matrix();
    return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticTransform::SymplecticTransform(Matrix entries) : entries_(std::move(entries)) {
    require_even_square(entries_, "symplectic transform");
    residual_ = symplectic_residual(entries_);
    if (!(residual_ <= kConstructionTolerance)) {
        std::ostringstream os;
        os << "matrix is not symplectic: ||S Omega S^T - Omega||_max = " << residual_;
        throw ConsistencyError(os.str());
    }
}

SymplecticTransform SymplecticTransform::identity(std::size_t modes) {
    if (modes == 0) {
        throw InvalidArgument("identity transform: number of modes must be positive");
    }
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    return SymplecticTransform(Matrix::Identity(dim, dim));
}

CovarianceMatrix vacuum_covariance(std::size_t modes) {
    if (modes == 0) {
        throw InvalidArgument("vacuum covariance: number of modes must be positive");
    }
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    return CovarianceMatrix(Matrix::Identity(dim, dim));
}

CovarianceMatrix tms_covariance(double squeezing) {
    if (!std::isfinite(squeezing)) {
        throw InvalidArgument("two-mode squeezed state: squeezing parameter must be finite");
    }
    const double c = std::cosh(2.0 * squeezing);
    const double s = std::sinh(2.0 * squeezing);
    Matrix m(4, 4);
    m << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix apply_symplectic(const CovarianceMatrix& sigma, const SymplecticTransform& s) {
    return apply_linear_map(sigma, s.matrix());
}

CovarianceMatrix apply_linear_map(const CovarianceMatrix& sigma, const Matrix& map) {
    if (map.rows() != map.cols() || map.cols() != sigma.matrix().rows()) {
        std::ostringstream os;
        os << "apply transform: dimension mismatch (" << map.rows() << 'x' << map.cols() << " vs "
           << sigma.matrix().rows() << ')';
        throw InvalidArgument(os.str());
    }
    Matrix out = map * sigma.matrix() * map.transpose();
    return CovarianceMatrix(std::move(out));
}

CovarianceMatrix partial_trace(const CovarianceMatrix& sigma, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw InvalidArgument("partial trace: keep list is empty");
    }
    std::vector<std::size_t> seen(keep.begin(), keep.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw InvalidArgument("partial trace: duplicate mode index");
    }
    for (std::size_t mode : keep) {
        require_mode(mode, sigma.modes(), "partial trace");
    }
    const auto kept = static_cast<Eigen::Index>(keep.size());
    Matrix out(2 * kept, 2 * kept);
    for (Eigen::Index i = 0; i < kept; ++i) {
        for (Eigen::Index j = 0; j < kept; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = sigma.block(keep[static_cast<std::size_t>(i)],
                                                        keep[static_cast<std::size_t>(j)]);
        }
    }
    return CovarianceMatrix(std::move(out));
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& sigma, std::size_t mode) {
    require_mode(mode, sigma.modes(), "partial transpose");
    Matrix out = sigma.matrix();
    const auto p = static_cast<Eigen::Index>(2 * mode + 1);
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
    return CovarianceMatrix(std::move(out));
}

TwoModeSpectrum symplectic_eigenvalues_two_mode(const CovarianceMatrix& sigma) {
    require_two_mode(sigma, "two-mode symplectic spectrum");
    const double delta = det2(sigma.block(0, 0)) + det2(sigma.block(1, 1)) + 2.0 * det2(sigma.block(0, 1));
    return spectrum_from_invariants(delta, sigma.matrix().determinant());
}

TwoModeSpectrum transposed_symplectic_eigenvalues_two_mode(const CovarianceMatrix& sigma) {
    require_two_mode(sigma, "transposed two-mode symplectic spectrum");
    const double delta = det2(sigma.block(0, 0)) + det2(sigma.block(1, 1)) - 2.0 * det2(sigma.block(0, 1));
    return spectrum_from_invariants(delta, sigma.matrix().determinant());
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma) {
    const Matrix omega = symplectic_form(sigma.modes()).matrix();
    // Omega*sigma has eigenvalues +-i nu; i*Omega*sigma has +-nu.
    Eigen::EigenSolver<Matrix> solver(omega * sigma.matrix(), false);
    if (solver.info() != Eigen::Success) {
        throw NumericalDegeneracy("symplectic eigenvalues: eigen-solver did not converge");
    }
    std::vector<double> moduli;
    moduli.reserve(static_cast<std::size_t>(solver.eigenvalues().size()));
    for (const auto& ev : solver.eigenvalues()) {
        moduli.push_back(std::abs(ev));
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    std::vector<double> nu;
    nu.reserve(moduli.size() / 2);
    for (std::size_t i = 0; i + 1 < moduli.size(); i += 2) {
        nu.push_back(0.5 * (moduli[i] + moduli[i + 1]));
    }
    return nu;
}

double negativity(double nu_minus) {
    if (!(nu_minus > 0.0) || !std::isfinite(nu_minus)) {
        throw InvalidArgument("negativity: smallest symplectic eigenvalue must be positive");
    }
    return std::max(0.0, (1.0 - nu_minus) / (2.0 * nu_minus));
}

SymplecticTransform single_mode_rotation(std::size_t modes, std::size_t mode, double angle) {
    require_mode(mode, modes, "single-mode rotation");
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    Matrix s = Matrix::Identity(dim, dim);
    const auto i = static_cast<Eigen::Index>(2 * mode);
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    s(i, i) = c;
    s(i, i + 1) = -sn;
    s(i + 1, i) = sn;
    s(i + 1, i + 1) = c;
    return SymplecticTransform(std::move(s));
}

}  // namespace phonent
