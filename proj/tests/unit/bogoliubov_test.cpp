#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "phonent/bogoliubov.hpp"
#include "phonent/errors.hpp"

namespace phonent {
namespace {

constexpr double kPi = std::numbers::pi;

CondensateParams reference_condensate() { return CondensateParams{}; }

TEST(ModeFrequency, LinearDispersion) {
    EXPECT_NEAR(mode_frequency(1, reference_condensate()), 2.0 * kPi * 10.0, 1e-12);
    EXPECT_DOUBLE_EQ(mode_frequency(2, reference_condensate()), 2.0 * mode_frequency(1, reference_condensate()));
    EXPECT_NEAR(mode_frequency(5, reference_condensate()), 2.0 * kPi * 50.0, 1e-11);
    EXPECT_THROW(mode_frequency(0, reference_condensate()), InvalidArgument);
}

TEST(Condensate, Validation) {
    CondensateParams p;
    EXPECT_NO_THROW(p.validate());
    p.sound_speed = 1e6;  // c_s/c > 1e-3
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = {};
    p.length = 0.0;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = {};
    p.truncation = 1;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = {};
    p.atom_mass = -1.0;
    EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(HParameter, Values) {
    EXPECT_NEAR(h_parameter(1e-3, reference_condensate()), 0.1, 1e-15);
    EXPECT_EQ(h_parameter(0.0, reference_condensate()), 0.0);
    const double h = h_parameter(3e-3, reference_condensate());
    EXPECT_NEAR(h, 0.3, 1e-15);
    EXPECT_NEAR(h * h, 0.09, 1e-15);
    EXPECT_FALSE(is_strongly_perturbative(h));
    EXPECT_TRUE(is_strongly_perturbative(0.31));
}

TEST(HParameter, BreakdownAndBadInput) {
    CondensateParams big;
    big.length = 1e-2;
    EXPECT_THROW(h_parameter(1e-2, big), PerturbationBreakdown);
    EXPECT_THROW(h_parameter(1e-2, reference_condensate()), PerturbationBreakdown);  // h = 1 exactly
    EXPECT_THROW(h_parameter(-1e-3, reference_condensate()), InvalidArgument);
    EXPECT_THROW(ManeuverParams(1e-3, -1.0, reference_condensate()), InvalidArgument);
    EXPECT_TRUE(ManeuverParams(4e-3, 0.1, reference_condensate()).strongly_perturbative());
}

TEST(RindlerSpectrum, HarmonicAndPeriod) {
    const RindlerSpectrum s(2.0 * kPi * 50.0);
    EXPECT_DOUBLE_EQ(s(3), 3.0 * s.omega1());
    EXPECT_NEAR(s.period(), 0.02, 1e-15);
    EXPECT_THROW(RindlerSpectrum(0.0), InvalidArgument);
    EXPECT_DOUBLE_EQ(default_spectrum(reference_condensate()).omega1(), mode_frequency(1, reference_condensate()));
}

TEST(BaseCoefficients, ReferenceValues) {
    EXPECT_NEAR(alpha1_base(2, 1), -2.0 * std::sqrt(2.0) / (kPi * kPi), 1e-15);
    EXPECT_NEAR(alpha1_base(2, 1), -0.28657958412537815, 1e-15);
    EXPECT_NEAR(alpha1_base(1, 2), 0.28657958412537815, 1e-15);
    EXPECT_EQ(alpha1_base(3, 1), 0.0);
    EXPECT_NEAR(beta1_base(2, 1), 2.0 * std::sqrt(2.0) / (27.0 * kPi * kPi), 1e-16);
    EXPECT_NEAR(beta1_base(2, 1), 0.010614, 1e-6);
    EXPECT_EQ(beta1_base(1, 2), beta1_base(2, 1));
    EXPECT_EQ(beta1_base(3, 1), 0.0);
    EXPECT_EQ(alpha1_base(4, 4), 0.0);
    EXPECT_THROW(alpha1_base(0, 1), InvalidArgument);
    EXPECT_THROW(beta1_base(1, 0), InvalidArgument);
}

TEST(BaseCoefficients, ParityAndSymmetryExact) {
    for (std::size_t m = 1; m <= 100; ++m) {
        for (std::size_t n = 1; n <= 100; ++n) {
            if ((m + n) % 2 == 0) {
                ASSERT_EQ(alpha1_base(m, n), 0.0);
                ASSERT_EQ(beta1_base(m, n), 0.0);
            }
            ASSERT_EQ(alpha1_base(m, n), -alpha1_base(n, m));
            ASSERT_EQ(beta1_base(m, n), beta1_base(n, m));
        }
    }
}

TEST(LiteralCoefficients, ZeroDurationIsBase) {
    const RindlerSpectrum s = default_spectrum(reference_condensate());
    for (std::size_t m = 1; m <= 6; ++m) {
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto c = literal_total_coeffs(m, n, 0.0, s);
            EXPECT_EQ(c.alpha1, std::complex<double>(alpha1_base(m, n)));
            EXPECT_EQ(c.beta1, std::complex<double>(beta1_base(m, n)));
            EXPECT_EQ(c.alpha0, std::complex<double>(m == n ? 1.0 : 0.0));
        }
    }
}

TEST(LiteralCoefficients, PhasesOnly) {
    const RindlerSpectrum s = default_spectrum(reference_condensate());
    for (double tau : {0.013, 0.2, 1.7}) {
        for (std::size_t m = 1; m <= 8; ++m) {
            for (std::size_t n = 1; n <= 8; ++n) {
                const auto c = literal_total_coeffs(m, n, tau, s);
                EXPECT_NEAR(std::abs(c.alpha1), std::abs(alpha1_base(m, n)), 1e-15);
                EXPECT_NEAR(std::abs(c.beta1), std::abs(beta1_base(m, n)), 1e-15);
            }
            const auto diag = literal_total_coeffs(m, m, tau, s);
            EXPECT_NEAR(std::abs(diag.alpha0), 1.0, 1e-15);
            EXPECT_NEAR(std::arg(diag.alpha0 * std::polar(1.0, s(m) * tau)), 0.0, 1e-12);
        }
    }
}

TEST(LiteralCoefficients, SetLayoutAndScaling) {
    const RindlerSpectrum s = default_spectrum(reference_condensate());
    const BogoliubovSet set = literal_coefficients(10, 0.1, 0.0, s);
    EXPECT_EQ(set.modes(), 10u);
    EXPECT_NEAR(set.alpha(1, 0).real(), 0.1 * alpha1_base(2, 1), 1e-16);
    EXPECT_NEAR(set.beta(1, 0).real(), 0.1 * beta1_base(2, 1), 1e-16);
    EXPECT_EQ(set.alpha(3, 3), std::complex<double>(1.0));
    EXPECT_THROW(literal_coefficients(10, 1.0, 0.0, s), PerturbationBreakdown);
}

TEST(MMatrix, Examples) {
    EXPECT_EQ(m_matrix(1.0, 0.0), Eigen::Matrix2d::Identity());

    const double theta = 0.7;
    const Eigen::Matrix2d rot = m_matrix(std::polar(1.0, -theta), 0.0);
    EXPECT_NEAR(rot(0, 0), std::cos(theta), 1e-15);
    EXPECT_NEAR(rot(0, 1), -std::sin(theta), 1e-15);
    EXPECT_NEAR(rot(1, 0), std::sin(theta), 1e-15);
    EXPECT_NEAR(rot(1, 1), std::cos(theta), 1e-15);

    const double b = 0.25;
    Eigen::Matrix2d expected;
    expected << -b, 0.0, 0.0, b;
    EXPECT_EQ(m_matrix(0.0, b), expected);
}

TEST(MMatrix, RoundTrip) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> a(n(rng), n(rng));
        const std::complex<double> b(n(rng), n(rng));
        const auto [a2, b2] = coefficients_from_m_matrix(m_matrix(a, b));
        EXPECT_NEAR(std::abs(a2 - a), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(b2 - b), 0.0, 1e-14);
    }
}

TEST(MMatrix, SymplecticForUnitNorm) {
    // |alpha|^2 - |beta|^2 = det M; symplectic 2x2 means det = 1.
    const std::complex<double> a = std::polar(std::cosh(0.4), 0.3);
    const std::complex<double> b = std::polar(std::sinh(0.4), -1.1);
    EXPECT_NEAR(m_matrix(a, b).determinant(), 1.0, 1e-14);
}

TEST(PhaseSpace, RoundTripAndLayout) {
    const RindlerSpectrum s = default_spectrum(reference_condensate());
    const BogoliubovSet set = literal_coefficients(12, 0.2, 0.37, s);
    const Matrix ps = phase_space_matrix(set);
    ASSERT_EQ(ps.rows(), 24);
    // block (i, j) carries the coefficients of output mode i from input j,
    // i.e. alpha_ji, beta_ji.
    const Eigen::Matrix2d block = ps.block<2, 2>(0, 2);
    EXPECT_EQ(block, m_matrix(set.alpha(1, 0), set.beta(1, 0)));
    const BogoliubovSet back = coefficients_from_phase_space(ps, CoefficientOrder::first);
    EXPECT_LT((back.alpha - set.alpha).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((back.beta - set.beta).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(coefficients_from_phase_space(Matrix::Zero(3, 3), CoefficientOrder::first), InvalidArgument);
}

TEST(FSums, FrozenValues) {
    const FSums f = f_sums(1, reference_condensate());
    EXPECT_NEAR(f.alpha, 0.0823730441125, 1e-12);
    EXPECT_NEAR(f.beta, 1.26340774815e-4, 1e-15);
    EXPECT_LE(f.tail_bound, kTailTolerance);
}

TEST(FSums, MatchIndependentPartialSums) {
    for (std::size_t kp : {1u, 2u, 5u}) {
        for (std::size_t n_max : {80u, 100u}) {
            CondensateParams p;
            p.truncation = n_max;
            const FSums f = f_sums(kp, p);
            const oracle::Sums ref = oracle::partial_f_sums(kp, n_max);
            EXPECT_NEAR(f.alpha, ref.alpha, 1e-14);
            EXPECT_NEAR(f.beta, ref.beta, 1e-16);
        }
    }
}

TEST(FSums, ConvergeToZetaLimit) {
    const oracle::Sums limit = oracle::limit_f_sums_mode1();
    EXPECT_NEAR(limit.alpha, 0.0823730441642602, 1e-15);
    EXPECT_NEAR(limit.beta, 1.26340821848898e-4, 1e-16);
    const FSums f = f_sums(1, reference_condensate());
    EXPECT_LE(limit.alpha + limit.beta - f.alpha - f.beta, f.tail_bound);
    EXPECT_GE(limit.alpha - f.alpha, 0.0);
}

TEST(FSums, StableWhenTruncationDoubles) {
    CondensateParams p;
    p.truncation = 50;
    const FSums coarse = f_sums(1, p);
    const FSums fine = f_sums(1, reference_condensate());
    EXPECT_LT(std::abs(fine.alpha - coarse.alpha), 1e-8);
    EXPECT_LT(std::abs(fine.beta - coarse.beta), 1e-8);
}

TEST(FSums, OnlyOddDifferencesContribute) {
    const BogoliubovSet base = base_coefficients(100);
    for (Eigen::Index n = 0; n < 100; n += 2) {  // n' - k' even for k' = 1
        EXPECT_EQ(base.alpha(0, n), 0.0);
        EXPECT_EQ(base.beta(0, n), 0.0);
    }
}

TEST(FSums, TruncationErrors) {
    CondensateParams p;
    p.truncation = 8;
    EXPECT_THROW(f_sums(5, p), TruncationError);  // 2k' > N_max
    EXPECT_THROW(f_sums(1, p), TruncationError);  // tail far above 1e-8
    EXPECT_THROW(base_tail_bound(3, 4), TruncationError);
    EXPECT_THROW(f_sums(0, reference_condensate()), InvalidArgument);
}

TEST(FSums, TailBoundDominatesTrueTail) {
    for (std::size_t n_max : {20u, 40u, 80u}) {
        const oracle::Sums part = oracle::partial_f_sums(1, n_max);
        const oracle::Sums far = oracle::partial_f_sums(1, 20000);
        const double tail = (far.alpha - part.alpha) + (far.beta - part.beta);
        EXPECT_LE(tail, base_tail_bound(1, n_max));
    }
}

TEST(BogoliubovIdentity, ZerothOrderExact) {
    const BogoliubovSet set = literal_coefficients(20, 0.0, 0.4, default_spectrum(reference_condensate()));
    EXPECT_LT(bogoliubov_identity_residual(set, 1), 1e-15);
}

TEST(BogoliubovIdentity, FirstOrderHoldsToSecondOrder) {
    const FSums f = f_sums(1, reference_condensate());
    for (double h : {0.05, 0.1, 0.2}) {
        const BogoliubovSet set = literal_coefficients(100, h, 0.0, default_spectrum(reference_condensate()));
        EXPECT_LE(bogoliubov_identity_residual(set, 1), 2.0 * (f.alpha + f.beta) * h * h);
    }
    const BogoliubovSet set = literal_coefficients(10, 0.1, 0.0, default_spectrum(reference_condensate()));
    EXPECT_THROW(bogoliubov_identity_residual(set, 11), InvalidArgument);
}

TEST(Generator, IsHamiltonian) {
    const Matrix g = transition_generator(30);
    const Matrix w = oracle::omega(30);
    EXPECT_LT((g.transpose() * w + w * g).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(Eigen::Matrix2d(g.block<2, 2>(0, 2)), m_matrix(alpha1_base(2, 1), beta1_base(2, 1)));
}

TEST(FreeRotation, BlockDiagonal) {
    const RindlerSpectrum s(3.0);
    const Matrix r = free_rotation(4, 0.5, s);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto i = static_cast<Eigen::Index>(2 * (n - 1));
        EXPECT_EQ(Eigen::Matrix2d(r.block<2, 2>(i, i)), m_matrix(std::polar(1.0, -s(n) * 0.5), 0.0));
    }
    EXPECT_EQ(Eigen::Matrix2d(r.block<2, 2>(0, 2)), Eigen::Matrix2d::Zero());
}

class ComposedChannelTest : public ::testing::Test {
protected:
    RindlerSpectrum spectrum = default_spectrum(reference_condensate());
};

TEST_F(ComposedChannelTest, ZeroDurationIsIdentity) {
    for (double h : {0.0, 0.1, 0.3}) {
        const ComposedChannel c(reference_condensate(), h, spectrum);
        EXPECT_LT((c.transform(0.0).matrix() - Matrix::Identity(200, 200)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST_F(ComposedChannelTest, NoAccelerationIsFreeRotation) {
    const ComposedChannel c(reference_condensate(), 0.0, spectrum);
    EXPECT_LT((c.transform(0.0137).matrix() - free_rotation(100, 0.0137, spectrum)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_F(ComposedChannelTest, FullPeriodReturnsToIdentity) {
    const ComposedChannel c(reference_condensate(), 0.1, spectrum);
    const Matrix s = c.transform(spectrum.period()).matrix();
    EXPECT_LT((s - Matrix::Identity(200, 200)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST_F(ComposedChannelTest, SymplecticEverywhere) {
    const ComposedChannel c(reference_condensate(), 0.3, spectrum);
    for (double x = 0.0; x <= 2.0; x += 0.125) {
        EXPECT_LE(c.transform(x * spectrum.period()).residual(), 1e-10);
    }
}

TEST_F(ComposedChannelTest, Periodic) {
    const ComposedChannel c(reference_condensate(), 0.2, spectrum);
    const double t = spectrum.period();
    for (double x : {0.1, 0.45, 0.77}) {
        const Matrix a = c.transform(x * t).matrix();
        const Matrix b = c.transform(x * t + 3.0 * t).matrix();
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST_F(ComposedChannelTest, FirstOrderMatchesFiniteDifference) {
    const double tau = 0.31 * spectrum.period();
    const double h = 1e-4;
    const Matrix s = ComposedChannel(reference_condensate(), h, spectrum).transform(tau).matrix();
    const Matrix r = free_rotation(100, tau, spectrum);
    const Matrix first = phase_space_matrix(ComposedChannel(reference_condensate(), 0.3, spectrum).first_order(tau));
    // High modes have large generator entries, so the O(h) remainder is only
    // small on the rows of the mode of interest.
    EXPECT_LT(((s - r) / h - first).topRows<2>().cwiseAbs().maxCoeff(), 1e-3);
}

TEST_F(ComposedChannelTest, FirstOrderModuli) {
    const ComposedChannel c(reference_condensate(), 0.1, spectrum);
    const double tau = 0.23 * spectrum.period();
    const BogoliubovSet set = c.first_order(tau);
    for (std::size_t m = 1; m <= 6; ++m) {
        for (std::size_t n = 1; n <= 6; ++n) {
            const double tm = spectrum(m) * tau;
            const double tn = spectrum(n) * tau;
            const double a2 = 2.0 * (1.0 - std::cos(tm - tn)) * std::pow(alpha1_base(m, n), 2);
            const double b2 = 2.0 * (1.0 - std::cos(tm + tn)) * std::pow(beta1_base(m, n), 2);
            const auto i = static_cast<Eigen::Index>(m - 1);
            const auto j = static_cast<Eigen::Index>(n - 1);
            EXPECT_NEAR(std::norm(set.alpha(i, j)), a2, 1e-14);
            EXPECT_NEAR(std::norm(set.beta(i, j)), b2, 1e-14);
        }
    }
    const FSums composed = f_sums(set, 1, 4.0);
    const FSums base = f_sums(1, reference_condensate());
    EXPECT_LE(composed.alpha, 4.0 * base.alpha);
    EXPECT_LE(composed.beta, 4.0 * base.beta);
}

TEST_F(ComposedChannelTest, TruncationGuards) {
    CondensateParams small;
    small.truncation = 10;
    EXPECT_THROW(ComposedChannel(small, 0.1, spectrum), TruncationError);  // N_max < k' + 10
    CondensateParams modest;
    modest.truncation = 20;
    EXPECT_THROW(ComposedChannel(modest, 0.1, spectrum), TruncationError);  // tail
    EXPECT_THROW(ComposedChannel(reference_condensate(), 1.2, spectrum), PerturbationBreakdown);
    const ComposedChannel c(reference_condensate(), 0.1, spectrum);
    EXPECT_THROW(c.transform(std::nan("")), InvalidArgument);
}

TEST_F(ComposedChannelTest, WrapperMatchesClass) {
    const ManeuverParams mv(2e-3, 0.041, reference_condensate());
    const Matrix a = compose_total_transform(reference_condensate(), mv, spectrum).matrix();
    const Matrix b = ComposedChannel(reference_condensate(), mv.h(), spectrum).transform(0.041).matrix();
    EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace phonent
