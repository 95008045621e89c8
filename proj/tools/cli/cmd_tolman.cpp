#include "commands.hpp"

#include "evlab/tolman.hpp"

#include <memory>
#include <optional>

namespace evlab::cli {

namespace {

struct TolmanOptions {
    double v_signal = 2.0;
    double v_frame = 0.6;
    std::optional<double> dx_over_dt;
    double kappa = 1.0;
    double d = 1.0;
    double reply_delay = 0.0;
    double threshold = 1e-3;
    std::string sweep_d = "0.1:5:50";
};

Json event_json(const Event& e) { return Json{{"t", e.t}, {"x", e.x}}; }

void run_tolman(const TolmanOptions& o, Context& ctx) {
    const double c = ctx.units.c();
    const double slope = o.dx_over_dt.value_or(o.v_signal);
    const Boost frame(o.v_frame * c, ctx.units);

    // A at the origin, B one time unit later at the signal's reach.
    const Event a{0.0, 0.0};
    const Event b{1.0, slope * c};
    const Event a_prime = lorentz(a, frame, ctx.units);
    const Event b_prime = lorentz(b, frame, ctx.units);

    const SignalLeg leg{o.v_signal * c, a, o.kappa, o.d};
    const RoundTrip trip = round_trip(leg, o.reply_delay, leg, o.v_frame * c, ctx.units);

    const std::vector<double> widths = parse_sweep(o.sweep_d);
    const TradeoffTable sweep = tradeoff_sweep(o.kappa, o.v_signal * c, o.v_frame * c, widths, o.threshold, ctx.units);
    CsvTable table({"d", "advance", "amplitude", "detectable"});
    for (const auto& row : sweep.rows) table.add_row({row.d, row.advance, row.amplitude, row.detectable ? 1.0 : 0.0});
    ctx.output->add_csv("tolman.csv", table);

    Json inputs{{"units", ctx.units_name}, {"v_signal_over_c", o.v_signal}, {"v_frame_over_c", o.v_frame},
                {"dx_over_dt_over_c", slope}, {"kappa", o.kappa}, {"d", o.d}, {"reply_delay", o.reply_delay},
                {"threshold", o.threshold}, {"sweep_d", o.sweep_d}};
    Json outputs{{"interval", to_string(classify_interval(a, b, ctx.units))},
                 {"ordering", to_string(ordering_in_frame(a, b, frame, ctx.units))},
                 {"reversal_condition", o.v_frame * slope > 1.0},
                 {"gamma", frame.gamma()},
                 {"event_a_in_frame", event_json(a_prime)},
                 {"event_b_in_frame", event_json(b_prime)},
                 {"round_trip",
                  {{"relay", event_json(trip.relay)},
                   {"reply", event_json(trip.reply)},
                   {"arrival", event_json(trip.arrival)},
                   {"advance", trip.advance},
                   {"amplitude", trip.amplitude},
                   {"causal_loop", trip.causal_loop}}}};
    outputs["feasibility_window"] =
        sweep.feasible ? Json{{"d_min", sweep.feasible->first}, {"d_max", sweep.feasible->second}} : Json(nullptr);
    ctx.output->finish("tolman", inputs, outputs, {});
}

}  // namespace

Action add_tolman(CLI::App& app) {
    auto o = std::make_shared<TolmanOptions>();
    CLI::App* sub = app.add_subcommand("tolman", "Event ordering and round-trip signalling under boosts");
    sub->add_option("--v-signal", o->v_signal, "Signal speed in units of c")->capture_default_str();
    sub->add_option("--v-frame", o->v_frame, "Frame speed in units of c")->capture_default_str();
    sub->add_option("--dx-over-dt", o->dx_over_dt, "Separation dx/dt of events A and B in units of c "
                                                     "(default: the signal speed)");
    sub->add_option("--kappa", o->kappa, "Barrier decay constant")->capture_default_str();
    sub->add_option("--d", o->d, "Barrier width of each leg")->capture_default_str();
    sub->add_option("--reply-delay", o->reply_delay, "Delay before the reply, in the moving frame")
        ->capture_default_str();
    sub->add_option("--threshold", o->threshold, "Detector amplitude threshold")->capture_default_str();
    sub->add_option("--sweep-d", o->sweep_d, "Barrier width sweep start:stop:count")->capture_default_str();
    return [o](Context& ctx) { run_tolman(*o, ctx); };
}

}  // namespace evlab::cli
