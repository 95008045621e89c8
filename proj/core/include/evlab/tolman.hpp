#pragma once

#include "evlab/numcore.hpp"

#include <optional>
#include <span>
#include <vector>

namespace evlab {

/// 1+1 dimensional event.
struct Event {
    double t = 0.0;
    double x = 0.0;
};

/// Frame moving at velocity V along +x.
class Boost {
public:
    Boost(double V, const UnitSystem& units = {});

    double velocity() const noexcept { return V_; }
    double gamma() const noexcept { return gamma_; }

private:
    double V_;
    double gamma_;
};

struct SignalLeg {
    double speed = 1.0;
    Event emit{};
    double barrier_kappa = 0.0;
    double barrier_width = 0.0;

    /// exp(-kappa * width).
    double amplitude() const;
};

Event lorentz(const Event& e, const Boost& b, const UnitSystem& units = {});

/// Relativistic sum of two collinear velocities.
double velocity_addition(double v1, double v2, const UnitSystem& units = {});

enum class IntervalKind { timelike, spacelike, lightlike };
enum class Ordering { a_first, b_first, simultaneous };

const char* to_string(IntervalKind kind);
const char* to_string(Ordering ordering);

/// Sign of c^2 dt^2 - dx^2, lightlike within 1e-12 of the larger term.
IntervalKind classify_interval(const Event& a, const Event& b, const UnitSystem& units = {});

/// Order of a and b seen from the boosted frame; simultaneous when
/// |t'_b - t'_a| is below 1e-12 of the magnitudes that cancel.
Ordering ordering_in_frame(const Event& a, const Event& b, const Boost& boost, const UnitSystem& units = {});

struct RoundTrip {
    /// Exit of leg 1 (lab).
    Event relay{};
    /// Emission of the reply (lab).
    Event reply{};
    /// Arrival of the reply (lab).
    Event arrival{};
    /// t_emit - t_arrival in the lab; positive when the reply comes first.
    double advance = 0.0;
    double amplitude = 1.0;
    bool causal_loop = false;
};

/// Leg 1 runs along +x in the lab from leg1.emit over leg1.barrier_width at
/// leg1.speed. The reply leaves reply_delay later as measured in the frame
/// moving at frame_V and runs along -x over leg2.barrier_width at leg2.speed,
/// both measured in that frame. leg2.emit is ignored.
RoundTrip round_trip(const SignalLeg& leg1, double reply_delay, const SignalLeg& leg2, double frame_V,
                     const UnitSystem& units = {});

struct TradeoffRow {
    double d = 0.0;
    double advance = 0.0;
    double amplitude = 0.0;
    bool detectable = false;
};

struct TradeoffTable {
    std::vector<TradeoffRow> rows;
    /// Smallest and largest d with advance > 0 and detectable; empty if none.
    std::optional<std::pair<double, double>> feasible;
};

/// Symmetric round trips: both barriers of width d and decay constant kappa,
/// both legs at v_signal, zero reply delay.
TradeoffTable tradeoff_sweep(double kappa, double v_signal, double frame_V, std::span<const double> d_range,
                             double detector_threshold, const UnitSystem& units = {});

}  // namespace evlab
