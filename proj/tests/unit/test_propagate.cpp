#include "evlab/error.hpp"
#include "evlab/ftir.hpp"
#include "evlab/propagate.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace evlab;
using oracle::pi;

namespace {

/// Gaussian envelope cut to |x - x0| <= 5 sigma, times e^{i k0 x}.
WavePacket truncated_gaussian(const Grid1D& grid, double x0, double sigma, double k0) {
    std::vector<Complex> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        if (std::abs(x - x0) <= 5.0 * sigma) {
            const double s = (x - x0) / sigma;
            v[i] = std::exp(-0.25 * s * s) * std::exp(Complex(0.0, k0 * x));
        }
    }
    return {grid, v};
}

/// cos^8 bump of half-width w: compact support and smooth edges.
WavePacket smooth_bump(const Grid1D& grid, double x0, double w, double k0) {
    std::vector<Complex> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        if (std::abs(x - x0) <= w) v[i] = std::pow(std::cos(pi * (x - x0) / (2.0 * w)), 8) * std::exp(Complex(0.0, k0 * x));
    }
    return {grid, v};
}

struct PairedRun {
    PropagationRecord barrier;
    PropagationRecord vacuum;
};

PairedRun paired_run() {
    const Grid1D grid(-130.0, 0.05, 4801);
    const WavePacket p = truncated_gaussian(grid, -60.0, 10.0, 0.5);
    const auto v = right_moving_velocity(p);
    WaveRunOptions o;
    o.steps = 2200;
    o.snapshot_stride = 10;
    return {evolve_wave(p, v, MediumProfile::barrier(grid, 0.0, 3.0, 1.0), o),
            evolve_wave(p, v, MediumProfile::vacuum(grid), o)};
}

}  // namespace

TEST(MediumProfile, Validates) {
    const Grid1D g(0.0, 1.0, 10);
    EXPECT_THROW(MediumProfile(g, std::vector<double>(9, 0.0)), DomainError);
    EXPECT_THROW(MediumProfile(g, std::vector<double>(10, -1.0)), DomainError);
    const MediumProfile b = MediumProfile::barrier(g, 2.0, 5.0, 3.0);
    EXPECT_EQ(b.cutoff()[1], 0.0);
    EXPECT_EQ(b.cutoff()[2], 3.0);
    EXPECT_EQ(b.cutoff()[4], 3.0);
    EXPECT_EQ(b.cutoff()[5], 0.0);
}

TEST(EvolveWave, ExactTranslationAtUnitCourant) {
    const Grid1D grid(-50.0, 0.1, 1001);
    const WavePacket p = truncated_gaussian(grid, -20.0, 3.0, 2.0);
    WaveRunOptions o;
    o.steps = 300;
    o.snapshot_stride = 300;
    const auto rec = evolve_wave(p, right_moving_velocity(p), MediumProfile::vacuum(grid), o);
    const WavePacket& last = rec.snapshots.back();
    for (std::size_t i = 300; i < grid.count(); ++i) EXPECT_LT(std::abs(last.values[i] - p.values[i - 300]), 1e-12);
    EXPECT_LT(reshaping_distance(p, last), 1e-12);
}

TEST(EvolveWave, RejectsBadOptions) {
    const Grid1D grid(-10.0, 0.1, 201);
    const WavePacket p = truncated_gaussian(grid, 0.0, 1.0, 1.0);
    const auto v = right_moving_velocity(p);
    WaveRunOptions o;
    o.courant = 1.2;
    EXPECT_THROW(evolve_wave(p, v, MediumProfile::vacuum(grid), o), DomainError);
    o.courant = 1.0;
    o.steps = 0;
    EXPECT_THROW(evolve_wave(p, v, MediumProfile::vacuum(grid), o), DomainError);
}

TEST(EvolveWave, ErrorsWhenTheFieldReachesTheBoundary) {
    const Grid1D grid(-10.0, 0.1, 201);
    const WavePacket p = truncated_gaussian(grid, 0.0, 1.0, 1.0);
    WaveRunOptions o;
    o.steps = 100;
    EXPECT_THROW(evolve_wave(p, right_moving_velocity(p), MediumProfile::vacuum(grid), o), NumericalError);
}

TEST(EvolveWave, LightConeAtUnitCourant) {
    const auto run = paired_run();
    EXPECT_EQ(light_cone_violation(run.barrier, -110.0, -10.0), 0.0);
    EXPECT_EQ(light_cone_violation(run.vacuum, -110.0, -10.0), 0.0);
}

TEST(EvolveWave, LightConeBelowUnitCourantForSmoothCompactData) {
    const Grid1D grid(-250.0, 0.05, 7201);
    const WavePacket p = smooth_bump(grid, -60.0, 50.0, 0.5);
    for (double courant : {0.5, 0.9}) {
        WaveRunOptions o;
        o.courant = courant;
        o.steps = static_cast<std::size_t>(std::lround(100.0 / (0.05 * courant)));
        o.snapshot_stride = 50;
        const auto rec = evolve_wave(p, right_moving_velocity(p), MediumProfile::barrier(grid, 0.0, 3.0, 1.0), o);
        EXPECT_LT(light_cone_violation(rec, -110.0, -10.0), 1e-12) << "courant " << courant;
    }
}

TEST(EvolveWave, FrontNeverOutrunsLight) {
    const auto run = paired_run();
    for (const auto* rec : {&run.barrier, &run.vacuum}) {
        const auto speeds = front_speeds(*rec);
        EXPECT_LE(*std::max_element(speeds.begin(), speeds.end()), 1.0 + 1e-6);
        for (std::size_t i = 1; i < rec->front_positions.size(); ++i) {
            EXPECT_GE(rec->front_positions[i], rec->front_positions[i - 1]);
        }
    }
    // Same front in both runs: the barrier cannot make it arrive earlier.
    for (std::size_t i = 0; i < run.barrier.front_positions.size(); ++i) {
        EXPECT_LE(run.barrier.front_positions[i], run.vacuum.front_positions[i] + 1e-9);
    }
}

TEST(EvolveWave, PeakCrossesTheBarrierFasterThanLight) {
    const auto run = paired_run();
    const PeakTraversal tr = measure_peak_traversal(run.barrier, run.vacuum, 0.0, 3.0, 5.0);
    EXPECT_NEAR(tr.entrance_time, 60.0, 1e-9);
    EXPECT_NEAR(tr.vacuum_exit_time, 63.0, 1e-9);
    EXPECT_NEAR(tr.transmitted_slope, 1.0, 1e-6);
    EXPECT_LT(tr.exit_time, tr.vacuum_exit_time);
    EXPECT_GT(tr.effective_velocity, 1.0);
}

TEST(EvolveWave, EnergyIsConserved) {
    const Grid1D grid(-600.0, 0.05, 24001);
    const WavePacket p = smooth_bump(grid, -100.0, 30.0, 0.8);
    const auto v = right_moving_velocity(p);
    const MediumProfile medium = MediumProfile::barrier(grid, 0.0, 3.0, 1.0);
    const double courant = 0.9;
    const double dt = courant * grid.dx();
    auto level = [&](std::size_t n) {
        WaveRunOptions o;
        o.courant = courant;
        o.steps = n;
        o.snapshot_stride = n;
        return evolve_wave(p, v, medium, o).snapshots.back();
    };
    const double e0 = wave_energy(p, level(1), medium, dt);
    const double e1 = wave_energy(level(10000), level(10001), medium, dt);
    EXPECT_LT(std::abs(e1 - e0) / e0, 1e-8);
}

TEST(Fronts, PositionAndThresholdSensitivity) {
    const Grid1D grid(-1.0, 0.01, 301);
    std::vector<Complex> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        if (x >= 0.0 && x <= 1.0 + 1e-12) v[i] = 1.0 + x;
    }
    const WavePacket p(grid, v);
    EXPECT_NEAR(front_position(p, 0.5), 1.0, grid.dx());
    EXPECT_LT(std::abs(front_position(p, 1e-10) - front_position(p, 1e-11)), grid.dx());
    std::vector<Complex> zero(grid.count(), 0.0);
    EXPECT_THROW(front_position(WavePacket(grid, zero), 1e-3), DomainError);
}

TEST(Peaks, SymmetricGaussianAndTranslation) {
    const Grid1D grid(-10.0, 0.05, 401);
    for (double x0 : {0.0, 0.013, 1.37}) {
        std::vector<Complex> v(grid.count());
        for (std::size_t i = 0; i < grid.count(); ++i) v[i] = std::exp(-std::pow(grid.point(i) - x0, 2));
        EXPECT_NEAR(peak_position(WavePacket(grid, v)), x0, grid.dx() * grid.dx());
    }
    std::vector<Complex> zero(grid.count(), 0.0);
    EXPECT_THROW(peak_position(WavePacket(grid, zero)), DomainError);
}

TEST(Peaks, WindowedPeakIsEmptyOnTheEdge) {
    const Grid1D grid(-10.0, 0.05, 401);
    std::vector<Complex> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) v[i] = std::exp(-std::pow(grid.point(i) - 2.0, 2));
    const WavePacket p(grid, v);
    EXPECT_FALSE(peak_position(p, 3.0, 9.0).has_value());
    ASSERT_TRUE(peak_position(p, 0.0, 9.0).has_value());
    EXPECT_NEAR(*peak_position(p, 0.0, 9.0), 2.0, 1e-3);
}

TEST(LineFit, RecoversLine) {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
    const LineFit f = least_squares_line(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_THROW(least_squares_line(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 1.0}), DomainError);
}

TEST(Schrodinger, FreeGaussianSpreadsByTheAnalyticLaw) {
    const Grid1D grid(-60.0, 0.05, 2400);
    const double sigma0 = 1.0;
    const double m = 1.0;
    std::vector<Complex> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        v[i] = std::exp(-x * x / (4.0 * sigma0 * sigma0)) * std::exp(Complex(0.0, 0.7 * x));
    }
    WavePacket p(grid, v);
    const double n0 = std::sqrt(p.norm_squared());
    for (auto& z : p.values) z /= n0;
    std::vector<double> potential(grid.count(), 0.0);
    SchrodingerRunOptions o;
    o.dt = 1e-3;
    o.steps = 10000;
    o.snapshot_stride = 1000;
    const auto rec = evolve_schrodinger(p, potential, m, o);
    for (std::size_t n = 0; n < rec.snapshots.size(); ++n) {
        const auto density = rec.snapshots[n].abs2();
        EXPECT_NEAR(std_dev(density, grid), oracle::free_gaussian_width(sigma0, rec.times[n], m), 1e-6);
        EXPECT_NEAR(rec.snapshots[n].norm_squared(), 1.0, 1e-10);
    }
}

TEST(Schrodinger, GroundStateIsStationary) {
    const Grid1D grid(-8.0, 0.05, 320);
    const double L = 3.0;
    std::vector<double> potential(grid.count());
    std::vector<Complex> guess(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        potential[i] = 50.0 * std::pow(x / L, 20);
        guess[i] = std::exp(-x * x / 8.0);
    }
    const WavePacket ground = relax_ground_state(WavePacket(grid, guess), potential, 1.0, 5e-4, 200000);
    // Energy from the box-like well, close to the hard-wall value (pi/2L)^2 / 2.
    const double energy = 0.5 * std::pow(pi / (2.0 * L), 2);
    SchrodingerRunOptions o;
    o.dt = 5e-4;
    o.steps = static_cast<std::size_t>(2.0 * pi / energy / o.dt);
    o.snapshot_stride = o.steps;
    const auto rec = evolve_schrodinger(ground, potential, 1.0, o);
    const auto before = ground.abs2();
    const auto after = rec.snapshots.back().abs2();
    double change = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) change = std::max(change, std::abs(after[i] - before[i]));
    EXPECT_LT(change, 1e-6);
}

TEST(Schrodinger, HasNoFiniteFront) {
    const Grid1D grid(-50.0, 0.05, 2000);
    std::vector<Complex> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        if (std::abs(x) <= 1.0) v[i] = std::pow(std::cos(pi * x / 2.0), 2);
    }
    std::vector<double> potential(grid.count(), 0.0);
    SchrodingerRunOptions o;
    o.dt = 1e-3;
    o.steps = 1;
    const auto rec = evolve_schrodinger(WavePacket(grid, v), potential, 1.0, o);
    // Far outside any finite-speed cone after a single step.
    const std::size_t far = static_cast<std::size_t>((20.0 - grid.x_min()) / grid.dx());
    EXPECT_GT(std::abs(rec.snapshots.back().values[far]), 0.0);
}

TEST(Schrodinger, ErrorsOnNormDrift) {
    const Grid1D grid(-10.0, 0.1, 200);
    std::vector<Complex> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) v[i] = std::exp(-grid.point(i) * grid.point(i));
    std::vector<double> potential(grid.count(), 0.0);
    SchrodingerRunOptions o;
    o.steps = 10;
    o.max_norm_drift = -1.0;
    EXPECT_THROW(evolve_schrodinger(WavePacket(grid, v), potential, 1.0, o), NumericalError);
    EXPECT_THROW(evolve_schrodinger(WavePacket(grid, v), std::vector<double>(5, 0.0), 1.0, {}), DomainError);
}
