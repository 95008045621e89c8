#include "evlab/tolman.hpp"

#include "evlab/error.hpp"

#include <cmath>

namespace evlab {

namespace {

constexpr double kBand = 1e-12;

void require_finite(const Event& e, const char* where) {
    if (!std::isfinite(e.t) || !std::isfinite(e.x)) throw DomainError(std::string(where) + ": event must be finite");
}

}  // namespace

Boost::Boost(double V, const UnitSystem& units) : V_(V) {
    const double beta = V / units.c();
    if (!std::isfinite(V) || !(std::abs(beta) < 1.0)) throw DomainError("Boost: requires |V| < c");
    gamma_ = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

double SignalLeg::amplitude() const {
    if (!(barrier_kappa >= 0.0) || !(barrier_width >= 0.0)) {
        throw DomainError("SignalLeg: kappa and width must be >= 0");
    }
    return std::exp(-barrier_kappa * barrier_width);
}

Event lorentz(const Event& e, const Boost& b, const UnitSystem& units) {
    require_finite(e, "lorentz");
    const double c2 = units.c() * units.c();
    const double V = b.velocity();
    return {b.gamma() * (e.t - V * e.x / c2), b.gamma() * (e.x - V * e.t)};
}

double velocity_addition(double v1, double v2, const UnitSystem& units) {
    const double c2 = units.c() * units.c();
    const double denom = 1.0 + v1 * v2 / c2;
    if (denom == 0.0) throw DomainError("velocity_addition: undefined for v1 v2 = -c^2");
    return (v1 + v2) / denom;
}

const char* to_string(IntervalKind kind) {
    switch (kind) {
        case IntervalKind::timelike: return "timelike";
        case IntervalKind::spacelike: return "spacelike";
        case IntervalKind::lightlike: return "lightlike";
    }
    return "";
}

const char* to_string(Ordering ordering) {
    switch (ordering) {
        case Ordering::a_first: return "a_first";
        case Ordering::b_first: return "b_first";
        case Ordering::simultaneous: return "simultaneous";
    }
    return "";
}

IntervalKind classify_interval(const Event& a, const Event& b, const UnitSystem& units) {
    require_finite(a, "classify_interval");
    require_finite(b, "classify_interval");
    const double ct = units.c() * (b.t - a.t);
    const double dx = b.x - a.x;
    const double s = (ct - dx) * (ct + dx);
    const double scale = std::max(ct * ct, dx * dx);
    if (std::abs(s) <= kBand * scale) return IntervalKind::lightlike;
    return s > 0.0 ? IntervalKind::timelike : IntervalKind::spacelike;
}

Ordering ordering_in_frame(const Event& a, const Event& b, const Boost& boost, const UnitSystem& units) {
    require_finite(a, "ordering_in_frame");
    require_finite(b, "ordering_in_frame");
    const double dt = b.t - a.t;
    const double shift = boost.velocity() * (b.x - a.x) / (units.c() * units.c());
    const double dt_prime = dt - shift;
    if (std::abs(dt_prime) <= kBand * std::max(std::abs(dt), std::abs(shift))) return Ordering::simultaneous;
    return dt_prime > 0.0 ? Ordering::a_first : Ordering::b_first;
}

RoundTrip round_trip(const SignalLeg& leg1, double reply_delay, const SignalLeg& leg2, double frame_V,
                     const UnitSystem& units) {
    if (!(leg1.speed > 0.0) || !(leg2.speed > 0.0)) throw DomainError("round_trip: signal speeds must be > 0");
    if (!(reply_delay >= 0.0)) throw DomainError("round_trip: reply delay must be >= 0");
    require_finite(leg1.emit, "round_trip");
    const Boost to_s(frame_V, units);
    const Boost to_lab(-frame_V, units);

    RoundTrip out;
    out.amplitude = leg1.amplitude() * leg2.amplitude();
    out.relay = {leg1.emit.t + leg1.barrier_width / leg1.speed, leg1.emit.x + leg1.barrier_width};

    const Event relay_s = lorentz(out.relay, to_s, units);
    const Event reply_s{relay_s.t + reply_delay, relay_s.x};
    const Event arrival_s{reply_s.t + leg2.barrier_width / leg2.speed, reply_s.x - leg2.barrier_width};
    out.reply = lorentz(reply_s, to_lab, units);
    out.arrival = lorentz(arrival_s, to_lab, units);
    out.advance = leg1.emit.t - out.arrival.t;
    out.causal_loop = out.advance > 0.0;
    return out;
}

TradeoffTable tradeoff_sweep(double kappa, double v_signal, double frame_V, std::span<const double> d_range,
                             double detector_threshold, const UnitSystem& units) {
    if (d_range.empty()) throw DomainError("tradeoff_sweep: empty d range");
    if (!(kappa > 0.0)) throw DomainError("tradeoff_sweep: kappa must be > 0");
    if (!(v_signal > units.c())) throw DomainError("tradeoff_sweep: v_signal must exceed c");
    if (!(detector_threshold > 0.0 && detector_threshold <= 1.0)) {
        throw DomainError("tradeoff_sweep: threshold must lie in (0, 1]");
    }
    TradeoffTable table;
    for (double d : d_range) {
        if (!(d > 0.0)) throw DomainError("tradeoff_sweep: widths must be > 0");
        const SignalLeg leg{v_signal, {}, kappa, d};
        const RoundTrip trip = round_trip(leg, 0.0, leg, frame_V, units);
        TradeoffRow row{d, trip.advance, trip.amplitude, trip.amplitude >= detector_threshold};
        if (row.advance > 0.0 && row.detectable) {
            if (!table.feasible) table.feasible = std::pair{d, d};
            table.feasible->first = std::min(table.feasible->first, d);
            table.feasible->second = std::max(table.feasible->second, d);
        }
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace evlab
