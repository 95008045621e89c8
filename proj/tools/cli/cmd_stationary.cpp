#include "commands.hpp"

#include "evlab/stationary.hpp"

#include <memory>
#include <optional>

namespace evlab::cli {

namespace {

struct StationaryOptions {
    double energy = 0.5;
    double height = 1.0;
    double width = 1.0;
    std::optional<double> mass;
    bool threshold = false;
    std::size_t samples = 401;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::optional<double> rest_mass;
};

void run_stationary(const StationaryOptions& o, Context& ctx) {
    const double mass = o.mass.value_or(ctx.units.default_mass());
    const StationarySolution sol = o.threshold
                                       ? threshold_solution(o.energy, o.height, mass, ctx.units)
                                       : barrier_solution(o.energy, BarrierSpec(o.height, o.width, mass), ctx.units);

    const double span = o.threshold ? 4.0 / sol.kappa : o.width;
    const double lo = o.x_min.value_or(-span);
    const double hi = o.x_max.value_or(2.0 * span);
    if (!(hi > lo) || o.samples < 2) throw UsageError("stationary: need x-max > x-min and samples >= 2");

    CsvTable profile({"x", "re", "im", "abs2", "flux"});
    const Grid1D grid = Grid1D::spanning(lo, hi, o.samples);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        const Complex psi = wavefunction(sol, x);
        profile.add_row({x, psi.real(), psi.imag(), std::norm(psi), probability_flux(sol, x, ctx.units)});
    }
    ctx.output->add_csv("stationary.csv", profile);

    Json inputs{{"units", ctx.units_name}, {"energy", o.energy}, {"u0", o.height}, {"mass", mass},
                {"threshold", o.threshold}, {"samples", o.samples}, {"x_min", lo}, {"x_max", hi}};
    if (!o.threshold) inputs["d"] = o.width;

    const double R = std::norm(sol.r);
    const double T = std::norm(sol.t);
    Json outputs{{"k", sol.k},
                 {"kappa", sol.kappa},
                 {"F1", complex_json(sol.F1)},
                 {"F2", complex_json(sol.F2)},
                 {"r", complex_json(sol.r)},
                 {"t", complex_json(sol.t)},
                 {"reflectance", R},
                 {"transmittance", T},
                 {"unitarity_defect", R + T - 1.0},
                 {"interior_flux", interior_flux(sol, ctx.units)},
                 {"transmitted_flux", transmitted_flux(sol, ctx.units)}};
    if (!o.threshold) outputs["kappa_d"] = sol.kappa * o.width;
    if (o.rest_mass) {
        inputs["rest_mass"] = *o.rest_mass;
        outputs["relativistic_k"] = complex_json(relativistic_wavenumber(o.energy, o.height, *o.rest_mass, ctx.units));
    }
    ctx.output->finish("stationary", inputs, outputs, {});
}

}  // namespace

Action add_stationary(CLI::App& app) {
    auto o = std::make_shared<StationaryOptions>();
    CLI::App* sub = app.add_subcommand("stationary", "Stationary scattering state of a rectangular barrier or step");
    sub->add_option("--e", o->energy, "Energy E")->capture_default_str();
    sub->add_option("--u0", o->height, "Barrier height U0")->capture_default_str();
    sub->add_option("--d", o->width, "Barrier width")->capture_default_str();
    sub->add_option("--mass", o->mass, "Particle mass (default: unit preset)");
    sub->add_flag("--threshold", o->threshold, "Semi-infinite step instead of a finite barrier");
    sub->add_option("--samples", o->samples, "Profile samples")->capture_default_str();
    sub->add_option("--x-min", o->x_min, "Profile start");
    sub->add_option("--x-max", o->x_max, "Profile end");
    sub->add_option("--rest-mass", o->rest_mass, "Also report the relativistic wavenumber for this rest mass");
    return [o](Context& ctx) { run_stationary(*o, ctx); };
}

}  // namespace evlab::cli
