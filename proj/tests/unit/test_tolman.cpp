#include "evlab/error.hpp"
#include "evlab/tolman.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

using namespace evlab;

TEST(Boost, RejectsLightSpeedFrames) {
    EXPECT_THROW(Boost(1.0), DomainError);
    EXPECT_THROW(Boost(-1.5), DomainError);
    EXPECT_NEAR(Boost(0.6).gamma(), 1.25, 1e-15);
}

TEST(Lorentz, OriginAndIdentity) {
    const Event o = lorentz({0.0, 0.0}, Boost(0.7));
    EXPECT_EQ(o.t, 0.0);
    EXPECT_EQ(o.x, 0.0);
    const Event e{3.0, -2.0};
    const Event same = lorentz(e, Boost(0.0));
    EXPECT_EQ(same.t, e.t);
    EXPECT_EQ(same.x, e.x);
}

TEST(Lorentz, IntervalIsInvariant) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::uniform_real_distribution<double> v(-0.99, 0.99);
    for (int i = 0; i < 1000; ++i) {
        const Event e{u(rng), u(rng)};
        const Event p = lorentz(e, Boost(v(rng)));
        const double s = e.t * e.t - e.x * e.x;
        EXPECT_NEAR(p.t * p.t - p.x * p.x, s, 1e-10 * (e.t * e.t + e.x * e.x + 1.0));
    }
}

TEST(Lorentz, ComposesByVelocityAddition) {
    const Event e{1.3, 0.4};
    for (double v1 : {0.3, -0.8, 0.95}) {
        for (double v2 : {0.5, -0.2, 0.9}) {
            const Event twice = lorentz(lorentz(e, Boost(v1)), Boost(v2));
            const Event once = lorentz(e, Boost(velocity_addition(v1, v2)));
            EXPECT_NEAR(twice.t, once.t, 1e-10);
            EXPECT_NEAR(twice.x, once.x, 1e-10);
        }
    }
}

TEST(Lorentz, SiUnits) {
    const UnitSystem si = UnitSystem::si_photon();
    const double c = si.c();
    const Event p = lorentz({1.0, 0.0}, Boost(0.6 * c, si), si);
    EXPECT_NEAR(p.t, 1.25, 1e-12);
    EXPECT_NEAR(p.x / c, -0.75, 1e-12);
}

TEST(Interval, Classify) {
    EXPECT_EQ(classify_interval({0, 0}, {1, 0.5}), IntervalKind::timelike);
    EXPECT_EQ(classify_interval({0, 0}, {1, 2.0}), IntervalKind::spacelike);
    EXPECT_EQ(classify_interval({0, 0}, {1, 1.0}), IntervalKind::lightlike);
    EXPECT_EQ(classify_interval({0, 0}, {1, -1.0}), IntervalKind::lightlike);
    EXPECT_EQ(std::string(to_string(IntervalKind::spacelike)), "spacelike");
    EXPECT_EQ(std::string(to_string(Ordering::b_first)), "b_first");
}

TEST(Ordering, Examples) {
    const Event a{0, 0};
    EXPECT_EQ(ordering_in_frame(a, {1, 2}, Boost(0.6)), Ordering::b_first);
    EXPECT_EQ(ordering_in_frame(a, {1, 2}, Boost(0.4)), Ordering::a_first);
    EXPECT_EQ(ordering_in_frame(a, {1, 2}, Boost(0.5)), Ordering::simultaneous);
    EXPECT_EQ(ordering_in_frame(a, {1, 0.5}, Boost(0.99)), Ordering::a_first);
}

TEST(Ordering, ReversalExactlyWhenFrameTimesSignalExceedsLight) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> speed(1.01, 20.0);
    std::uniform_real_distribution<double> frame(-0.999, 0.999);
    for (int i = 0; i < 1000; ++i) {
        const double vs = speed(rng);
        const double V = frame(rng);
        if (std::abs(V * vs - 1.0) < 1e-9) continue;
        const Ordering o = ordering_in_frame({0, 0}, {1, vs}, Boost(V));
        EXPECT_EQ(o == Ordering::b_first, V * vs > 1.0) << vs << " " << V;
    }
}

TEST(Ordering, SubluminalSignalsNeverReverse) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> speed(-0.999, 0.999);
    std::uniform_real_distribution<double> frame(-0.999, 0.999);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(ordering_in_frame({0, 0}, {1, speed(rng)}, Boost(frame(rng))), Ordering::a_first);
    }
}

TEST(RoundTrip, MatchesOracle) {
    for (double u : {2.0, 5.0, 50.0}) {
        for (double V : {0.3, 0.6, 0.9}) {
            SignalLeg l1{u, {0, 0}, 0.0, 1.5};
            SignalLeg l2{u, {}, 0.0, 0.7};
            const RoundTrip rt = round_trip(l1, 0.2, l2, V);
            EXPECT_NEAR(rt.advance, oracle::round_trip_advance(u, 1.5, 0.2, u, 0.7, V), 1e-12);
            EXPECT_EQ(rt.causal_loop, rt.advance > 0.0);
        }
    }
}

TEST(RoundTrip, FastSignalsCloseALoop) {
    SignalLeg l1{1e6, {0, 0}, 0.0, 1.0};
    SignalLeg l2{1e6, {}, 0.0, 1.0};
    const RoundTrip rt = round_trip(l1, 0.0, l2, 0.5);
    EXPECT_TRUE(rt.causal_loop);
    EXPECT_GT(rt.advance, 0.0);
}

TEST(RoundTrip, LightAndSlowerSignalsNeverLoop) {
    for (double u : {1.0, 0.5}) {
        for (double V : {-0.9, 0.0, 0.9}) {
            SignalLeg l1{u, {0, 0}, 0.0, 1.0};
            SignalLeg l2{u, {}, 0.0, 1.0};
            const RoundTrip rt = round_trip(l1, 0.0, l2, V);
            EXPECT_LT(rt.advance, 0.0);
            EXPECT_FALSE(rt.causal_loop);
        }
    }
}

TEST(RoundTrip, Amplitude) {
    SignalLeg l1{10.0, {0, 0}, 1.0, 2.0};
    SignalLeg l2{10.0, {}, 2.0, 4.0};
    EXPECT_NEAR(l1.amplitude(), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(round_trip(l1, 0.0, l2, 0.9).amplitude, 4.5400e-5, 1e-9);
}

TEST(Tradeoff, FeasibilityWindow) {
    const std::vector<double> d{0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
    const TradeoffTable t = tradeoff_sweep(1.0, 10.0, 0.9, d, 1e-3);
    ASSERT_EQ(t.rows.size(), d.size());
    ASSERT_TRUE(t.feasible.has_value());
    EXPECT_EQ(t.feasible->first, 0.5);
    EXPECT_EQ(t.feasible->second, 3.0);
    for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_GE(t.rows[i].advance, t.rows[i - 1].advance);
}

TEST(Tradeoff, AmplitudeHalvesEveryLn2Over2Kappa) {
    const double kappa = 0.7;
    const double h = std::log(2.0) / (2.0 * kappa);
    const std::vector<double> d{1.0, 1.0 + h, 1.0 + 2.0 * h};
    const TradeoffTable t = tradeoff_sweep(kappa, 10.0, 0.9, d, 1e-3);
    EXPECT_NEAR(t.rows[1].amplitude / t.rows[0].amplitude, 0.5, 1e-12);
    EXPECT_NEAR(t.rows[2].amplitude / t.rows[1].amplitude, 0.5, 1e-12);
}

TEST(Tradeoff, UnitThresholdLeavesNoWindow) {
    const std::vector<double> d{0.1, 1.0, 5.0};
    EXPECT_FALSE(tradeoff_sweep(1.0, 10.0, 0.9, d, 1.0).feasible.has_value());
    EXPECT_THROW(tradeoff_sweep(1.0, 10.0, 0.9, d, 0.0), DomainError);
    EXPECT_THROW(tradeoff_sweep(1.0, 0.5, 0.9, d, 1e-3), DomainError);
}
