#pragma once

// Reference computations that share no code with the library.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Direct sum of [[0, 1], [-1, 0]] blocks, built here rather than borrowed.
Eigen::MatrixXd omega(std::size_t modes);

/// Moduli of the eigenvalues of i*Omega*sigma (complex solver), one per
/// conjugate pair, descending.
std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& sigma);

/// Partial sums of the squared first-order coefficients in row k', written
/// out from the closed form of each term.
struct Sums {
    double alpha;
    double beta;
};
Sums partial_f_sums(std::size_t k_prime, std::size_t n_max);

/// N_max -> infinity limit for k' = 1 via Dirichlet lambda functions,
/// f^a = 4/pi^4 (lambda(5) + lambda(6)), f^b = 4/pi^4 (lambda(5) - lambda(6)).
Sums limit_f_sums_mode1();

}  // namespace oracle
