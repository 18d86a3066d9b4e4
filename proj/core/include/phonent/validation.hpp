#pragma once

// Self-check suite run by `phonent validate`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phonent/symplectic.hpp"

namespace phonent {

struct InvariantCheck {
    std::string name;
    double residual = 0.0;   ///< worst observed violation
    double tolerance = 0.0;  ///< pass iff residual <= tolerance
    bool pass = false;
};

struct ValidationReport {
    std::vector<InvariantCheck> checks;

    bool all_passed() const;
};

struct ValidationOptions {
    std::uint64_t seed = 20130101;
    std::size_t random_states = 200;
    /// Test hook: relative error injected into the comoving frequencies used by
    /// the periodicity checks. Anything above round-off must fail them.
    double omega_perturbation = 0.0;
};

ValidationReport run_invariant_suite(const ValidationOptions& options = {});

/// Random symplectic matrix exp(Omega H) with H symmetric, entries of H drawn
/// from N(0, scale^2).
SymplecticTransform random_symplectic(std::size_t modes, std::mt19937_64& rng, double scale = 0.5);

/// S diag(nu_1, nu_1, ..., nu_n, nu_n) S^T with nu_i in [1, max_nu) and S random.
CovarianceMatrix random_physical_covariance(std::size_t modes, std::mt19937_64& rng, double max_nu = 3.0);

}  // namespace phonent
