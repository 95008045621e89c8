#include "commands.hpp"

#include "evlab/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>

namespace evlab::cli {

namespace {

struct PropagateOptions {
    std::string model = "wave";
    double x_min = -130.0;
    double x_max = 110.0;
    double dx = 0.05;
    double x0 = -60.0;
    double sigma = 10.0;
    double k0 = 0.5;
    double barrier_begin = 0.0;
    double barrier_width = 3.0;
    double kc = 1.0;
    double courant = 1.0;
    double u0 = 0.0;
    std::optional<double> mass;
    double dt = 1e-3;
    std::size_t steps = 2200;
    std::size_t record_stride = 10;
    std::size_t dump_every = 20;
    double margin = 5.0;
};

void dump_snapshots(const PropagationRecord& rec, std::size_t every, Context& ctx) {
    if (every == 0) return;
    for (std::size_t n = 0; n < rec.snapshots.size(); n += every) {
        const WavePacket& snap = rec.snapshots[n];
        CsvTable table({"x", "re", "im", "abs2"});
        for (std::size_t i = 0; i < snap.size(); ++i) {
            const Complex z = snap.values[i];
            table.add_row({snap.grid.point(i), z.real(), z.imag(), std::norm(z)});
        }
        char name[64];
        std::snprintf(name, sizeof name, "propagate_snapshot_%04zu.csv", n);
        ctx.output->add_csv(name, table);
    }
}

Grid1D make_grid(const PropagateOptions& o) {
    if (!(o.x_max > o.x_min) || !(o.dx > 0.0)) throw UsageError("propagate: need x-max > x-min and dx > 0");
    const auto count = static_cast<std::size_t>(std::llround((o.x_max - o.x_min) / o.dx)) + 1;
    return {o.x_min, o.dx, count};
}

Json common_inputs(const PropagateOptions& o, Context& ctx) {
    return Json{{"units", ctx.units_name}, {"model", o.model},          {"x_min", o.x_min},
                {"x_max", o.x_max},        {"dx", o.dx},                {"x0", o.x0},
                {"sigma", o.sigma},        {"k0", o.k0},                {"barrier_begin", o.barrier_begin},
                {"barrier_width", o.barrier_width}, {"steps", o.steps}, {"record_stride", o.record_stride},
                {"dump_every", o.dump_every}};
}

void run_wave(const PropagateOptions& o, Context& ctx) {
    const Grid1D grid = make_grid(o);
    // Gaussian envelope cut off at 5 sigma so the data have compact support.
    const double lo = o.x0 - 5.0 * o.sigma;
    const double hi = o.x0 + 5.0 * o.sigma;
    std::vector<Complex> u(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        if (x >= lo && x <= hi) {
            const double s = (x - o.x0) / o.sigma;
            u[i] = std::exp(-0.25 * s * s) * std::exp(Complex{0.0, o.k0 * x});
        }
    }
    const WavePacket initial(grid, std::move(u));
    const auto velocity = right_moving_velocity(initial, ctx.units);
    WaveRunOptions run;
    run.courant = o.courant;
    run.steps = o.steps;
    run.snapshot_stride = o.record_stride;

    const double x_exit = o.barrier_begin + o.barrier_width;
    const bool has_barrier = o.barrier_width > 0.0 && o.kc > 0.0;
    const MediumProfile medium = has_barrier ? MediumProfile::barrier(grid, o.barrier_begin, x_exit, o.kc)
                                             : MediumProfile::vacuum(grid);
    const PropagationRecord rec = evolve_wave(initial, velocity, medium, run, ctx.units);

    CsvTable table({"t", "front", "peak"});
    for (std::size_t n = 0; n < rec.times.size(); ++n) {
        table.add_row({rec.times[n], rec.front_positions[n], rec.peak_positions[n]});
    }
    ctx.output->add_csv("propagate.csv", table);
    dump_snapshots(rec, o.dump_every, ctx);

    const auto speeds = front_speeds(rec);
    Json inputs = common_inputs(o, ctx);
    inputs.update(Json{{"kc", o.kc}, {"courant", o.courant}, {"margin", o.margin}});
    Json outputs{{"dt", o.courant * o.dx / ctx.units.c()},
                 {"support", {lo, hi}},
                 {"light_cone_violation", light_cone_violation(rec, lo, hi, ctx.units)},
                 {"max_front_speed", speeds.empty() ? 0.0 : *std::max_element(speeds.begin(), speeds.end())},
                 {"min_front_speed", speeds.empty() ? 0.0 : *std::min_element(speeds.begin(), speeds.end())}};
    if (has_barrier) {
        const PropagationRecord vacuum =
            evolve_wave(initial, velocity, MediumProfile::vacuum(grid), run, ctx.units);
        const PeakTraversal tr = measure_peak_traversal(rec, vacuum, o.barrier_begin, x_exit, o.margin);
        outputs["traversal"] = Json{{"entrance_time", tr.entrance_time},
                                    {"exit_time", tr.exit_time},
                                    {"vacuum_exit_time", tr.vacuum_exit_time},
                                    {"effective_velocity", tr.effective_velocity},
                                    {"transmitted_slope", tr.transmitted_slope},
                                    {"peak_advance", tr.vacuum_exit_time - tr.exit_time}};
    }
    ctx.output->finish("propagate", inputs, outputs, {});
}

void run_schrodinger(const PropagateOptions& o, Context& ctx) {
    const Grid1D grid = make_grid(o);
    const double mass = o.mass.value_or(ctx.units.default_mass());
    std::vector<Complex> psi(grid.count());
    std::vector<double> potential(grid.count(), 0.0);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        const double s = (x - o.x0) / o.sigma;
        psi[i] = std::exp(-0.25 * s * s) * std::exp(Complex{0.0, o.k0 * x});
        if (x >= o.barrier_begin && x < o.barrier_begin + o.barrier_width) potential[i] = o.u0;
    }
    WavePacket initial(grid, std::move(psi));
    const double norm0 = std::sqrt(initial.norm_squared());
    for (auto& z : initial.values) z /= norm0;

    SchrodingerRunOptions run;
    run.dt = o.dt;
    run.steps = o.steps;
    run.snapshot_stride = o.record_stride;
    const PropagationRecord rec = evolve_schrodinger(initial, potential, mass, run, ctx.units);

    const bool free = o.u0 == 0.0;
    const double spread_rate = ctx.units.hbar() / (2.0 * mass * o.sigma * o.sigma);
    CsvTable table({"t", "norm", "width", "width_free_theory", "front", "peak"});
    double max_drift = 0.0;
    double max_width_error = 0.0;
    for (std::size_t n = 0; n < rec.times.size(); ++n) {
        const auto density = rec.snapshots[n].abs2();
        const double width = std_dev(density, grid);
        const double theory = o.sigma * std::sqrt(1.0 + std::pow(spread_rate * rec.times[n], 2));
        const double norm = rec.snapshots[n].norm_squared();
        max_drift = std::max(max_drift, std::abs(norm - 1.0));
        max_width_error = std::max(max_width_error, std::abs(width - theory));
        table.add_row({rec.times[n], norm, width, theory, rec.front_positions[n], rec.peak_positions[n]});
    }
    ctx.output->add_csv("propagate.csv", table);
    dump_snapshots(rec, o.dump_every, ctx);

    Json inputs = common_inputs(o, ctx);
    inputs.update(Json{{"mass", mass}, {"dt", o.dt}, {"u0", o.u0}});
    Json outputs{{"max_norm_drift", max_drift}};
    if (free) outputs["max_width_error"] = max_width_error;
    ctx.output->finish("propagate", inputs, outputs, {});
}

}  // namespace

Action add_propagate(CLI::App& app) {
    auto o = std::make_shared<PropagateOptions>();
    CLI::App* sub = app.add_subcommand("propagate", "Time-domain pulse propagation through a barrier");
    sub->add_option("--model", o->model, "Wave equation with cutoff, or Schrodinger")
        ->check(CLI::IsMember({"wave", "schrodinger"}))
        ->capture_default_str();
    sub->add_option("--x-min", o->x_min, "Grid start")->capture_default_str();
    sub->add_option("--x-max", o->x_max, "Grid end")->capture_default_str();
    sub->add_option("--dx", o->dx, "Grid spacing")->capture_default_str();
    sub->add_option("--x0", o->x0, "Initial pulse centre")->capture_default_str();
    sub->add_option("--sigma", o->sigma, "Initial |psi|^2 deviation")->capture_default_str();
    sub->add_option("--k0", o->k0, "Carrier wavenumber")->capture_default_str();
    sub->add_option("--barrier-begin", o->barrier_begin, "Barrier entrance")->capture_default_str();
    sub->add_option("--barrier-width", o->barrier_width, "Barrier width (0 for vacuum)")->capture_default_str();
    sub->add_option("--kc", o->kc, "Cutoff wavenumber inside the barrier (wave model)")->capture_default_str();
    sub->add_option("--courant", o->courant, "c dt / dx (wave model)")->capture_default_str();
    sub->add_option("--u0", o->u0, "Barrier height (Schrodinger model)")->capture_default_str();
    sub->add_option("--mass", o->mass, "Particle mass (Schrodinger model; default: unit preset)");
    sub->add_option("--dt", o->dt, "Time step (Schrodinger model)")->capture_default_str();
    sub->add_option("--steps", o->steps, "Time steps")->capture_default_str();
    sub->add_option("--record-stride", o->record_stride, "Steps between recorded snapshots")
        ->capture_default_str();
    sub->add_option("--dump-every", o->dump_every, "Write every n-th recorded snapshot (0 for none)")
        ->capture_default_str();
    sub->add_option("--margin", o->margin, "Distance past the exit before the transmitted peak is tracked")
        ->capture_default_str();
    return [o](Context& ctx) {
        if (o->model == "wave") {
            run_wave(*o, ctx);
        } else {
            run_schrodinger(*o, ctx);
        }
    };
}

}  // namespace evlab::cli
