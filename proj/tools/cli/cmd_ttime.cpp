#include "commands.hpp"
#include "pool.hpp"

#include "evlab/ttime.hpp"

#include <algorithm>
#include <memory>
#include <optional>

namespace evlab::cli {

namespace {

struct TtimeOptions {
    double height = 1.0;
    double width = 1.0;
    std::optional<double> mass;
    std::string sweep = "0.05:0.95:19";
    bool landmark = true;
};

void run_ttime(const TtimeOptions& o, Context& ctx) {
    const double mass = o.mass.value_or(ctx.units.default_mass());
    const BarrierSpec spec(o.height, o.width, mass);
    std::vector<double> ratios = parse_sweep(o.sweep);
    const double special = esposito_special_energy(o.height) / o.height;
    if (o.landmark && std::find(ratios.begin(), ratios.end(), special) == ratios.end()) {
        ratios.insert(std::upper_bound(ratios.begin(), ratios.end(), special), special);
    }

    // Surface the formula's own domain error for sweep points at or above the barrier top.
    for (double ratio : ratios) {
        if (!(ratio > 0.0 && ratio < 1.0)) esposito_time(ratio * o.height, o.height, ctx.units);
    }

    const auto reports = parallel_map(ratios.size(), ctx.jobs, [&](std::size_t i) {
        return tunneling_time_report(ratios[i] * o.height, spec, ctx.units);
    });

    CsvTable table({"e_over_u0", "esposito_tau", "factor_a", "phase_time", "dwell_time", "period_T"});
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const auto& r = reports[i];
        table.add_row({ratios[i], r.esposito_tau.value(), r.factor_A.value(), r.phase_time, r.dwell_time, r.period_T});
    }
    ctx.output->add_csv("ttime.csv", table);

    const double e_s = special * o.height;
    const double tau_s = esposito_time(e_s, o.height, ctx.units);
    Json inputs{{"units", ctx.units_name}, {"u0", o.height}, {"d", o.width}, {"mass", mass},
                {"sweep_e_over_u0", o.sweep}, {"landmark", o.landmark}};
    Json outputs{{"rows", ratios.size()},
                 {"special_energy_over_u0", special},
                 {"factor_a_at_special", esposito_factor(e_s, o.height)},
                 {"tau_times_nu_at_special", tau_s * wave_frequency(e_s, ctx.units)},
                 {"kappa_d_at_special", decay_constant(e_s, o.height, mass, ctx.units) * o.width}};
    ctx.output->finish("ttime", inputs, outputs, {});
}

}  // namespace

Action add_ttime(CLI::App& app) {
    auto o = std::make_shared<TtimeOptions>();
    CLI::App* sub = app.add_subcommand("ttime", "Tunneling-time definitions compared over an energy sweep");
    sub->add_option("--u0", o->height, "Barrier height U0")->capture_default_str();
    sub->add_option("--d", o->width, "Barrier width for phase and dwell times")->capture_default_str();
    sub->add_option("--mass", o->mass, "Particle mass (default: unit preset)");
    sub->add_option("--sweep-e", o->sweep, "E/U0 sweep start:stop:count, must stay inside (0, 1)")
        ->capture_default_str();
    sub->add_flag("!--no-landmark", o->landmark, "Do not insert the A = 1 energy into the sweep");
    return [o](Context& ctx) { run_ttime(*o, ctx); };
}

}  // namespace evlab::cli
