#include "evlab/error.hpp"
#include "evlab/spectral.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace evlab;
using oracle::pi;

TEST(BoxState, UnitNormAndShape) {
    const BoxState box(2.0);
    EXPECT_NEAR(box.k_a(), pi / 2.0, 1e-15);
    EXPECT_EQ(box.amplitude(1.5), 0.0);
    EXPECT_NEAR(oracle::simpson([&](double x) { return box.density(x); }, -1.0, 1.0, 2000), 1.0, 1e-10);
    EXPECT_THROW(BoxState(0.0), DomainError);
}

TEST(BoxSpectrum, SpecExamples) {
    EXPECT_NEAR(box_spectrum(0.0, 1.0), 2.0 * std::sqrt(pi) / (pi * pi), 1e-15);
    EXPECT_NEAR(box_spectrum(0.0, 1.0), 0.3591742, 1e-7);
    EXPECT_NEAR(box_spectrum(pi, 1.0), 1.0 / (2.0 * std::sqrt(pi)), 1e-15);
    EXPECT_NEAR(box_spectrum(-pi, 1.0), 0.2820948, 1e-7);
}

TEST(BoxSpectrum, EvenAndMatchesClosedForm) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-60.0, 60.0);
    for (int i = 0; i < 500; ++i) {
        const double k = u(rng);
        const double a = 0.5 + std::abs(u(rng)) / 30.0;
        EXPECT_EQ(box_spectrum(k, a), box_spectrum(-k, a));
        if (std::abs(std::abs(a * k) - pi) > 1e-2) {
            EXPECT_NEAR(box_spectrum(k, a), oracle::box_F(k, a), 1e-13);
        }
    }
}

TEST(BoxSpectrum, ContinuousAtRemovablePoints) {
    for (double a : {0.5, 1.0, 3.0}) {
        const double ka = pi / a;
        const double centre = box_spectrum(ka, a);
        for (double off : {-1e-10, 1e-10}) {
            EXPECT_LT(std::abs(box_spectrum(ka * (1.0 + off), a) - centre), 1e-9);
        }
        // Inside the guard band the series and the closed form agree.
        const double just_outside = ka * (1.0 + 1e-4);
        EXPECT_NEAR(box_spectrum(just_outside, a), oracle::box_F(just_outside, a), 1e-10);
    }
}

TEST(TailProbability, CoefficientAtLargeK) {
    const auto tp = tail_probability(200.0 * pi, 1.0);
    const double scaled = tp.scaled_exact;
    EXPECT_GT(scaled, 4.0 * pi / 3.0 * 0.95);
    EXPECT_LT(scaled, 4.0 * pi / 3.0 * 1.05);
    EXPECT_NEAR(tp.asymptotic_printed, (8.0 / 3.0) * pi / std::pow(200.0 * pi, 3), 1e-20);
}

TEST(TailProbability, MatchesBruteForceQuadrature) {
    // Brute force: Simpson out to a far cutoff K plus the 4 pi / (3 a^3 K^3) remainder.
    const double a = 1.0;
    for (double u : {3.0 * pi, 20.0 * pi, 60.0 * pi}) {
        const double K = 4000.0 * pi;
        const double body = oracle::simpson([&](double k) { return std::pow(oracle::box_F(k, a), 2); }, u, K, 400000);
        const double ref = 2.0 * (body + 2.0 * pi / (3.0 * std::pow(K, 3)));
        EXPECT_NEAR(tail_probability(u, a).exact, ref, 1e-8 * ref);
    }
}

TEST(TailProbability, DecreasingAndScaleCovariant) {
    double prev = 1.0;
    for (int i = 1; i <= 40; ++i) {
        const double p = tail_probability(pi * (1.0 + 0.5 * i), 1.0).exact;
        EXPECT_LT(p, prev);
        prev = p;
    }
    // P depends on a k' only.
    EXPECT_NEAR(tail_probability(10.0, 2.0).exact, tail_probability(20.0, 1.0).exact, 1e-12);
    EXPECT_THROW(tail_probability(pi * 0.9, 1.0), DomainError);
}

TEST(BoxMoments, ClosedFormsAndQuadratures) {
    for (double a : {0.5, 1.0, 2.0}) {
        const BoxMoments m = box_moments(a);
        EXPECT_NEAR(m.delta_x, oracle::box_delta_x(a), 1e-14);
        EXPECT_NEAR(m.delta_x_quadrature, m.delta_x, 1e-7 * a);
        EXPECT_NEAR(m.mean_k, 0.0, 1e-15);
        EXPECT_NEAR(m.mean_k_quadrature, 0.0, 1e-10);
        EXPECT_NEAR(m.k2_mean, pi * pi / (a * a), 1e-12);
        EXPECT_NEAR(m.k2_mean_x_quadrature, m.k2_mean, 1e-9 * m.k2_mean);
        EXPECT_NEAR(m.k2_mean_k_quadrature, m.k2_mean, 1e-4 * m.k2_mean);
        EXPECT_NEAR(m.delta_k_quadrature, pi / a, 1e-6);
        EXPECT_NEAR(m.parseval, 1.0, 1e-7);
        EXPECT_LT(m.delta_x, a);
    }
    const BoxMoments one = box_moments(1.0);
    EXPECT_NEAR(one.delta_x, 0.1807560, 1e-7);
    EXPECT_NEAR(one.delta_x * one.delta_k, 0.1807560 * pi, 1e-6);
    EXPECT_GT(one.delta_x * one.delta_k, 0.5);
}

TEST(Lorentzian, DensityNormalizationAndWidth) {
    const LineShape line(3.0, 0.4);
    EXPECT_NEAR(lorentzian_density(3.0, line), 2.0 / (pi * 0.4), 1e-14);
    EXPECT_NEAR(lorentzian_density(3.2, line), 0.5 * lorentzian_density(3.0, line), 1e-14);
    EXPECT_NEAR(lorentzian_density(2.8, line), 0.5 * lorentzian_density(3.0, line), 1e-14);
    EXPECT_NEAR(lorentzian_normalization(line), 1.0, 1e-6);
    EXPECT_NEAR(lorentzian_fwhm(line), 0.4, 1e-6);
    EXPECT_THROW(LineShape(1.0, 0.0), DomainError);
}

TEST(ReleasedEnergy, SpecExamples) {
    const EnergySpread s = released_energy_spread(1.0);
    EXPECT_NEAR(s.omega_a, pi, 1e-15);
    EXPECT_NEAR(s.delta_E, pi, 1e-15);
    EXPECT_EQ(s.delta_E / s.mean_E, 1.0);
    const EnergySpread s2 = released_energy_spread(2.0);
    EXPECT_NEAR(s2.omega_a, s.omega_a / 2.0, 1e-15);
    EXPECT_NEAR(s2.delta_E, s.delta_E / 2.0, 1e-15);
}

TEST(ReleasedEnergy, KineticEqualsEigenvalueInsideTheBox) {
    for (double m : {0.5, 1.0, 3.0}) {
        EXPECT_NEAR(box_mean_kinetic_energy(1.7, m), box_ground_energy(1.7, m), 1e-9);
    }
}

TEST(GaussianBand, FiniteDeviationUnboundedBand) {
    const auto r = gaussian_band_report(10.0, 1.0);
    EXPECT_EQ(r.band, "infinite");
    EXPECT_NEAR(r.delta_omega, 1.0, 1e-8);
    EXPECT_NEAR(r.mean_omega, 10.0, 1e-8);
    EXPECT_NEAR(r.mean_E, 10.0, 1e-8);
    EXPECT_GT(gaussian_band_density(20.0, 10.0, 1.0), 0.0);
    EXPECT_GT(gaussian_band_density(0.0, 10.0, 1.0), 0.0);
}

TEST(WindowedStdDev, SmallerThanWindow) {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    const LineShape line(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double half = u(rng);
        const double centre = u(rng) - 2.5;
        const double lo = centre - half;
        const double hi = centre + half;
        EXPECT_LT(windowed_std_dev([&](double w) { return lorentzian_density(w, line); }, lo, hi), hi - lo);
        EXPECT_LT(windowed_std_dev([&](double w) { return gaussian_band_density(w, 0.0, 0.7); }, lo, hi), hi - lo);
    }
}
