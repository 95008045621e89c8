#include "evlab/error.hpp"
#include "evlab/ttime.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace evlab;

namespace {

BarrierSpec barrier_with_kappa_d(double kappa_d, double E, double U0, double m) {
    return BarrierSpec(U0, kappa_d / decay_constant(E, U0, m), m);
}

}  // namespace

TEST(Esposito, SpecExamples) {
    EXPECT_NEAR(esposito_time(1.0, 2.0), 1.0, 1e-15);
    EXPECT_NEAR(esposito_factor(0.5, 1.0), 1.0 / (4.0 * oracle::pi * oracle::pi), 1e-15);
    EXPECT_NEAR(esposito_factor(0.5, 1.0), 0.02533030, 1e-8);
}

TEST(Esposito, SpecialEnergyLandmark) {
    const double es = esposito_special_energy(1.0);
    EXPECT_NEAR(es, 0.9752953, 1e-6);
    EXPECT_NEAR(es, 4.0 * oracle::pi * oracle::pi / (1.0 + 4.0 * oracle::pi * oracle::pi), 1e-15);
    EXPECT_NEAR(esposito_factor(es, 1.0), 1.0, 1e-9);
    EXPECT_NEAR(esposito_special_energy(2.0), 2.0 * es, 1e-15);
}

TEST(Esposito, TauTimesNuIsOneAtLandmarkForRandomHeights) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (int i = 0; i < 100; ++i) {
        const double U0 = u(rng);
        const double es = esposito_special_energy(U0);
        EXPECT_NEAR(esposito_time(es, U0) * wave_frequency(es), 1.0, 1e-9);
        EXPECT_NEAR(esposito_time(es, U0), wave_period(es), 1e-9 * wave_period(es));
    }
}

// hbar / sqrt(E (U0 - E)) times nu is sqrt(A), not A; the two agree only at A = 1.
TEST(Esposito, TauNuIsSquareRootOfFactor) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.001, 0.999);
    for (int i = 0; i < 500; ++i) {
        const double U0 = 0.1 + 10.0 * u(rng);
        const double E = u(rng) * U0;
        const double lhs = esposito_time(E, U0) * wave_frequency(E);
        EXPECT_NEAR(lhs * lhs, esposito_factor(E, U0), 1e-12 * std::max(1.0, lhs * lhs));
    }
}

TEST(Esposito, Pathologies) {
    const double es = esposito_special_energy(1.0);
    // Scale-free ratio sqrt(E_s (U0 - E_s)) / sqrt(E (U0 - E)) = 155.2 at 1 - 1e-6.
    const double ratio = esposito_time(0.999999, 1.0) / esposito_time(es, 1.0);
    EXPECT_NEAR(ratio, std::sqrt(es * (1.0 - es) / (0.999999 * 1e-6)), 1e-9 * ratio);
    EXPECT_GT(esposito_time(1.0 - 1e-12, 1.0), 1e3 * esposito_time(0.999999, 1.0));
    EXPECT_GT(esposito_time(1e-9, 1.0), esposito_time(1e-6, 1.0));
    EXPECT_THROW(esposito_time(1.5, 1.0), DomainError);
    EXPECT_THROW(esposito_time(1.0, 1.0), DomainError);
    EXPECT_THROW(esposito_time(0.0, 1.0), DomainError);
    EXPECT_THROW(esposito_factor(1.5, 1.0), DomainError);
    try {
        esposito_time(1.5, 1.0);
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("pathological regime"), std::string::npos);
    }
}

TEST(PhaseTime, MatchesClosedFormDerivative) {
    const BarrierSpec spec = barrier_with_kappa_d(1.0, 0.5, 1.0, 0.5);
    const double ref = oracle::barrier_phase_time(0.5, 1.0, spec.width(), 0.5);
    EXPECT_NEAR(phase_time(0.5, spec), ref, 1e-6);
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
        const double E = u(rng);
        const BarrierSpec s(1.0, 0.1 + 3.0 * u(rng), 1.0);
        const double r = oracle::barrier_phase_time(E, 1.0, s.width(), 1.0);
        EXPECT_NEAR(phase_time(E, s), r, 1e-6 * std::max(1.0, std::abs(r)));
    }
}

TEST(PhaseTime, CentralDifferenceIsSecondOrder) {
    const BarrierSpec spec = barrier_with_kappa_d(1.0, 0.5, 1.0, 0.5);
    const double ref = oracle::barrier_phase_time(0.5, 1.0, spec.width(), 0.5);
    const double e1 = std::abs(phase_time_central(0.5, spec, 0.02) - ref);
    const double e2 = std::abs(phase_time_central(0.5, spec, 0.01) - ref);
    EXPECT_NEAR(e1 / e2, 4.0, 0.1);
}

TEST(PhaseTime, HartmanSaturation) {
    const double E = 0.5;
    const double t10 = phase_time(E, barrier_with_kappa_d(10.0, E, 1.0, 0.5));
    const double t14 = phase_time(E, barrier_with_kappa_d(14.0, E, 1.0, 0.5));
    EXPECT_LT(std::abs(t10 - t14) / t10, 1e-3);
    EXPECT_NEAR(t14, oracle::hartman_limit(E, 1.0, 0.5), 1e-6);
    for (double kd : {8.0, 9.0, 12.0}) {
        for (double e : {0.2, 0.5, 0.8}) {
            const double a = phase_time(e, barrier_with_kappa_d(kd, e, 1.0, 1.0));
            const double b = phase_time(e, barrier_with_kappa_d(1.5 * kd, e, 1.0, 1.0));
            EXPECT_LT(std::abs(a - b) / a, 1e-2);
        }
    }
}

TEST(PhaseTime, RejectsEnergiesAtTheEdge) {
    const BarrierSpec spec(1.0, 1.0, 1.0);
    EXPECT_THROW(phase_time(1.0 - 1e-8, spec), DomainError);
    EXPECT_THROW(phase_time(1e-8, spec), DomainError);
}

TEST(DwellTime, MatchesQuadratureAndClosedForm) {
    const double E = 0.5;
    const BarrierSpec spec = barrier_with_kappa_d(1.0, E, 1.0, 0.5);
    const auto sol = barrier_solution(E, spec);
    const double integral =
        oracle::simpson([&](double x) { return std::norm(wavefunction(sol, x)); }, 0.0, spec.width(), 2000);
    const double quad = integral * spec.mass() / sol.k;
    EXPECT_NEAR(dwell_time(E, spec), quad, 1e-8);
    EXPECT_NEAR(dwell_time(E, spec), oracle::barrier_dwell_time(E, 1.0, spec.width(), 0.5), 1e-10);
}

TEST(DwellTime, PositiveAndVanishesWithWidth) {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int i = 0; i < 100; ++i) EXPECT_GT(dwell_time(u(rng), BarrierSpec(1.0, 0.01 + 5.0 * u(rng), 1.0)), 0.0);
    EXPECT_LT(dwell_time(0.5, BarrierSpec(1.0, 1e-9, 1.0)), 1e-8);
}

TEST(Report, EspositoAndPhaseTimeAreIncompatible) {
    const BarrierSpec spec(1.0, 1.0, 1.0);
    double lo = 1e300;
    double hi = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double E = 0.1 + 0.8 * i / 40.0;
        const auto r = tunneling_time_report(E, spec);
        ASSERT_TRUE(r.esposito_tau.has_value());
        ASSERT_TRUE(r.factor_A.has_value());
        EXPECT_NEAR(r.period_T, 2.0 * oracle::pi / E, 1e-12);
        const double ratio = *r.esposito_tau / r.phase_time;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    EXPECT_GT(hi / lo, 1.1);
}

TEST(UnwrapPhase, RemovesBranchJumps) {
    std::vector<double> truth;
    std::vector<double> wrapped;
    for (int i = 0; i < 200; ++i) {
        const double p = 0.2 * i - 15.0;
        truth.push_back(p);
        wrapped.push_back(std::remainder(p, 2.0 * oracle::pi));
    }
    const auto un = unwrap_phase(wrapped);
    for (std::size_t i = 0; i < un.size(); ++i) EXPECT_NEAR(un[i] - un[0], truth[i] - truth[0], 1e-12);
}
