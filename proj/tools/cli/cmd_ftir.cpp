#include "commands.hpp"
#include "pool.hpp"

#include "evlab/ftir.hpp"

#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>

namespace evlab::cli {

namespace {

// Microwave double-prism measurement the group delay is compared against.
constexpr double kReferencePeriodPs = 115.0;
constexpr double kReferenceDelayPs = 130.0;

struct FtirOptions {
    double n = 1.5;
    double theta_deg = 45.0;
    std::optional<double> gap;
    std::optional<double> nu0;
    bool report_alpha = false;
    std::string sweep_kd = "0.1:5:50";
    bool pulse = false;
    double pulse_sigma_rel = 0.2;
    std::size_t pulse_samples = 4096;
};

Json pulse_report(const GapSpec& spec, double omega0, const FtirOptions& o, Context& ctx) {
    if (!(o.pulse_sigma_rel > 0.0) || o.pulse_samples < 16) {
        throw UsageError("ftir: pulse width must be > 0 and pulse samples >= 16");
    }
    const double sigma_w = o.pulse_sigma_rel * omega0;
    const double sigma_t = 1.0 / sigma_w;
    const Grid1D grid = Grid1D::spanning(-20.0 * sigma_t, 20.0 * sigma_t, o.pulse_samples);
    std::vector<Complex> field(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double t = grid.point(i);
        field[i] = std::exp(-0.5 * t * t * sigma_w * sigma_w) * std::exp(Complex{0.0, -omega0 * t});
    }
    const WavePacket input(grid, std::move(field));
    const WavePacket output = transmit_pulse(input, spec, ctx.units);

    CsvTable table({"t", "in_re", "in_im", "in_abs2", "out_re", "out_im", "out_abs2"});
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const Complex a = input.values[i];
        const Complex b = output.values[i];
        table.add_row({grid.point(i), a.real(), a.imag(), std::norm(a), b.real(), b.imag(), std::norm(b)});
    }
    ctx.output->add_csv("ftir_pulse.csv", table);
    return Json{{"sigma_omega", sigma_w},
                {"out_of_band_fraction", out_of_band_energy_fraction(input, spec)},
                {"energy_transmission", output.norm_squared() / input.norm_squared()},
                {"reshaping_distance", reshaping_distance(input, output)},
                {"translation_residual_at_c", translation_residual(input, spec, ctx.units.c(), ctx.units)}};
}

void run_ftir(const FtirOptions& o, Context& ctx) {
    const double theta = o.theta_deg * kPi / 180.0;
    const bool si = ctx.units_name == "si-photon";
    const double nu0 = o.nu0.value_or(si ? 1.0 / (kReferencePeriodPs * 1e-12) : 1.0 / (2.0 * kPi));
    const double omega0 = 2.0 * kPi * nu0;
    const GapDecay decay = gap_decay(o.n, theta, omega0, ctx.units);

    if (o.report_alpha) {
        char line[64];
        std::snprintf(line, sizeof line, "alpha = %.7f\n", decay.alpha);
        *ctx.out << line;
        return;
    }

    const double gap = o.gap.value_or(si ? 0.01 : 1.0);
    const GapSpec spec(o.n, theta, gap);
    const GapTransfer transfer = gap_transfer(omega0, spec, ctx.units);
    const double tau_g = gap_group_delay(spec, omega0, ctx.units);

    const std::vector<double> kd = parse_sweep(o.sweep_kd);
    struct Row {
        double d, transmission, delay;
    };
    const auto rows = parallel_map(kd.size(), ctx.jobs, [&](std::size_t i) {
        const double d = kd[i] / decay.kappa_x;
        const GapSpec s = spec.with_width(d);
        return Row{d, std::norm(gap_transfer(omega0, s, ctx.units).t), gap_group_delay(s, omega0, ctx.units)};
    });
    CsvTable table({"d", "kappa_x_d", "transmission", "group_delay", "group_delay_times_nu0"});
    for (std::size_t i = 0; i < kd.size(); ++i) {
        table.add_row({rows[i].d, kd[i], rows[i].transmission, rows[i].delay, rows[i].delay * nu0});
    }
    ctx.output->add_csv("ftir.csv", table);

    Json inputs{{"units", ctx.units_name}, {"n", o.n},   {"theta_deg", o.theta_deg}, {"gap", gap},
                {"nu0", nu0},             {"sweep_kappa_d", o.sweep_kd}, {"pulse", o.pulse}};
    Json outputs{{"alpha", decay.alpha},
                 {"kappa_x", decay.kappa_x},
                 {"k_parallel", decay.k_parallel},
                 {"kappa_x_d", decay.kappa_x * gap},
                 {"goos_hanchen_estimate", goos_hanchen_estimate(decay.kappa_x)},
                 {"transmission", std::norm(transfer.t)},
                 {"reflection", std::norm(transfer.r)},
                 {"group_delay", tau_g},
                 {"nu0", nu0},
                 {"period_T", 1.0 / nu0},
                 {"group_delay_times_nu0", tau_g * nu0},
                 {"reference",
                  {{"period_T_ps", kReferencePeriodPs},
                   {"measured_delay_ps", kReferenceDelayPs},
                   {"measured_delay_over_period", kReferenceDelayPs / kReferencePeriodPs}}}};
    if (si) outputs["group_delay_ps"] = tau_g * 1e12;
    if (o.pulse) {
        inputs["pulse_sigma_rel"] = o.pulse_sigma_rel;
        inputs["pulse_samples"] = o.pulse_samples;
        outputs["pulse"] = pulse_report(spec, omega0, o, ctx);
    }
    ctx.output->finish("ftir", inputs, outputs, {});
}

}  // namespace

Action add_ftir(CLI::App& app) {
    auto o = std::make_shared<FtirOptions>();
    CLI::App* sub = app.add_subcommand("ftir", "Frustrated total internal reflection across a prism gap");
    sub->add_option("--n", o->n, "Prism refractive index")->capture_default_str();
    sub->add_option("--theta-deg", o->theta_deg, "Incidence angle in degrees")->capture_default_str();
    sub->add_option("--gap", o->gap, "Gap width (default 1, or 0.01 m with si-photon)");
    sub->add_option("--nu0", o->nu0, "Carrier frequency (default omega0 = 1, or 1/(115 ps) with si-photon)");
    sub->add_flag("--report-alpha", o->report_alpha, "Print the gap decay ratio alpha and exit");
    sub->add_option("--sweep-kd", o->sweep_kd, "kappa_x d sweep start:stop:count")->capture_default_str();
    sub->add_flag("--pulse", o->pulse, "Also transmit a Gaussian pulse and measure its reshaping");
    sub->add_option("--pulse-sigma-rel", o->pulse_sigma_rel, "Pulse spectral deviation / omega0")
        ->capture_default_str();
    sub->add_option("--pulse-samples", o->pulse_samples, "Pulse time samples")->capture_default_str();
    return [o](Context& ctx) { run_ftir(*o, ctx); };
}

}  // namespace evlab::cli
