#include "commands.hpp"
#include "pool.hpp"

#include "evlab/spectral.hpp"

#include <memory>
#include <optional>

namespace evlab::cli {

namespace {

struct SpectrumOptions {
    std::string mode = "box";
    double a = 1.0;
    double k_max_over_pi = 20.0;
    std::size_t samples = 801;
    std::string tail_sweep = "10:200:20";
    double omega0 = 10.0;
    double gamma0 = 1.0;
    double sigma = 1.0;
    std::optional<double> mass;
};

const char* const kTailWarning =
    "tail coefficient: quadrature gives (a k')^3 P(|k| > k') -> 4 pi / 3; the printed asymptote uses 8 pi / 3, "
    "a factor 2 larger";

void run_box(const SpectrumOptions& o, Context& ctx, Json& outputs) {
    const double k_max = o.k_max_over_pi * kPi / o.a;
    CsvTable table({"k", "amplitude", "density"});
    const Grid1D grid = Grid1D::spanning(-k_max, k_max, o.samples);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double k = grid.point(i);
        const double f = box_spectrum(k, o.a);
        table.add_row({k, f, f * f});
    }
    ctx.output->add_csv("spectrum.csv", table);
    const BoxMoments m = box_moments(o.a);
    outputs = Json{{"delta_x", m.delta_x},
                   {"delta_x_quadrature", m.delta_x_quadrature},
                   {"delta_x_over_a", m.delta_x_quadrature / o.a},
                   {"mean_k", m.mean_k},
                   {"mean_k_quadrature", m.mean_k_quadrature},
                   {"k2_mean", m.k2_mean},
                   {"k2_mean_x_quadrature", m.k2_mean_x_quadrature},
                   {"k2_mean_k_quadrature", m.k2_mean_k_quadrature},
                   {"delta_k", m.delta_k},
                   {"delta_k_quadrature", m.delta_k_quadrature},
                   {"parseval", m.parseval}};
}

void run_tail(const SpectrumOptions& o, Context& ctx, Json& outputs, std::vector<std::string>& warnings) {
    const std::vector<double> ak = parse_sweep(o.tail_sweep);
    const auto tails = parallel_map(ak.size(), ctx.jobs, [&](std::size_t i) {
        return tail_probability(ak[i] * kPi / o.a, o.a);
    });
    CsvTable table({"ak_prime_over_pi", "exact", "scaled_exact", "asymptotic_printed"});
    for (std::size_t i = 0; i < ak.size(); ++i) {
        table.add_row({ak[i], tails[i].exact, tails[i].scaled_exact, tails[i].asymptotic_printed});
    }
    ctx.output->add_csv("spectrum.csv", table);
    outputs = Json{{"coefficient_oracle", kTailCoefficient},
                   {"coefficient_printed", kTailCoefficientPrinted},
                   {"largest_ak_prime_over_pi", ak.back()},
                   {"scaled_exact_at_largest", tails.back().scaled_exact},
                   {"relative_gap_to_oracle", tails.back().scaled_exact / kTailCoefficient - 1.0}};
    warnings.emplace_back(kTailWarning);
}

void run_lorentzian(const SpectrumOptions& o, Context& ctx, Json& outputs) {
    const LineShape line(o.omega0, o.gamma0);
    CsvTable table({"omega", "density"});
    const Grid1D grid = Grid1D::spanning(o.omega0 - 10.0 * o.gamma0, o.omega0 + 10.0 * o.gamma0, o.samples);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        table.add_row({grid.point(i), lorentzian_density(grid.point(i), line)});
    }
    ctx.output->add_csv("spectrum.csv", table);
    outputs = Json{{"normalization", lorentzian_normalization(line)}, {"fwhm", lorentzian_fwhm(line)}};
}

void run_gaussian(const SpectrumOptions& o, Context& ctx, Json& outputs) {
    const GaussianBandReport report = gaussian_band_report(o.omega0, o.sigma, ctx.units);
    CsvTable table({"omega", "density"});
    const Grid1D grid = Grid1D::spanning(o.omega0 - 8.0 * o.sigma, o.omega0 + 8.0 * o.sigma, o.samples);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        table.add_row({grid.point(i), gaussian_band_density(grid.point(i), o.omega0, o.sigma)});
    }
    ctx.output->add_csv("spectrum.csv", table);
    outputs = Json{{"band", report.band},
                   {"delta_omega", report.delta_omega},
                   {"mean_omega", report.mean_omega},
                   {"mean_E", report.mean_E}};
}

void run_release(const SpectrumOptions& o, Context& ctx, Json& outputs) {
    const EnergySpread spread = released_energy_spread(o.a, ctx.units);
    CsvTable table({"a", "omega_a", "mean_E", "delta_E"});
    table.add_row({o.a, spread.omega_a, spread.mean_E, spread.delta_E});
    ctx.output->add_csv("spectrum.csv", table);
    outputs = Json{{"omega_a", spread.omega_a}, {"mean_E", spread.mean_E}, {"delta_E", spread.delta_E}};
    const double mass = o.mass.value_or(ctx.units.default_mass());
    outputs["box_mean_kinetic_energy"] = box_mean_kinetic_energy(o.a, mass, ctx.units);
    outputs["box_ground_energy"] = box_ground_energy(o.a, mass, ctx.units);
}

void run_spectrum(const SpectrumOptions& o, Context& ctx) {
    Json inputs{{"units", ctx.units_name}, {"mode", o.mode}};
    Json outputs;
    std::vector<std::string> warnings;
    if (o.mode == "box") {
        inputs.update(Json{{"a", o.a}, {"k_max_over_pi", o.k_max_over_pi}, {"samples", o.samples}});
        run_box(o, ctx, outputs);
    } else if (o.mode == "tail") {
        inputs.update(Json{{"a", o.a}, {"tail_sweep", o.tail_sweep}});
        run_tail(o, ctx, outputs, warnings);
    } else if (o.mode == "lorentzian") {
        inputs.update(Json{{"omega0", o.omega0}, {"gamma0", o.gamma0}, {"samples", o.samples}});
        run_lorentzian(o, ctx, outputs);
    } else if (o.mode == "gaussian") {
        inputs.update(Json{{"omega0", o.omega0}, {"sigma", o.sigma}, {"samples", o.samples}});
        run_gaussian(o, ctx, outputs);
    } else {
        inputs.update(Json{{"a", o.a}, {"mass", o.mass.value_or(ctx.units.default_mass())}});
        run_release(o, ctx, outputs);
    }
    ctx.output->finish("spectrum", inputs, outputs, warnings);
}

}  // namespace

Action add_spectrum(CLI::App& app) {
    auto o = std::make_shared<SpectrumOptions>();
    CLI::App* sub = app.add_subcommand("spectrum", "Spectra, moments and line shapes of localized states");
    sub->add_option("--mode", o->mode, "What to compute")
        ->check(CLI::IsMember({"box", "tail", "lorentzian", "gaussian", "release"}))
        ->capture_default_str();
    sub->add_option("--a", o->a, "Box width")->capture_default_str();
    sub->add_option("--k-max-over-pi", o->k_max_over_pi, "Spectrum range |k| <= value * pi / a")
        ->capture_default_str();
    sub->add_option("--samples", o->samples, "Samples in the tabulated curve")->capture_default_str();
    sub->add_option("--tail-sweep", o->tail_sweep, "a k' / pi sweep start:stop:count")->capture_default_str();
    sub->add_option("--omega0", o->omega0, "Line or band centre")->capture_default_str();
    sub->add_option("--gamma0", o->gamma0, "Lorentzian width")->capture_default_str();
    sub->add_option("--sigma", o->sigma, "Gaussian band deviation")->capture_default_str();
    sub->add_option("--mass", o->mass, "Particle mass for the release mode (default: unit preset)");
    return [o](Context& ctx) { run_spectrum(*o, ctx); };
}

}  // namespace evlab::cli
