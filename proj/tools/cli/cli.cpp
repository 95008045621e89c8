#include "cli.hpp"

#include "commands.hpp"

#include "evlab/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

namespace evlab::cli {

std::vector<double> parse_sweep(const std::string& spec) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw UsageError("sweep must look like start:stop:count, got '" + spec + "'");
    }
    double a = 0.0;
    double b = 0.0;
    std::size_t n = 0;
    try {
        std::size_t used = 0;
        a = std::stod(spec.substr(0, first), &used);
        if (used != first) throw std::invalid_argument("trailing");
        const std::string mid = spec.substr(first + 1, second - first - 1);
        b = std::stod(mid, &used);
        if (used != mid.size()) throw std::invalid_argument("trailing");
        const std::string last = spec.substr(second + 1);
        const unsigned long count = std::stoul(last, &used);
        if (used != last.size()) throw std::invalid_argument("trailing");
        n = count;
    } catch (const std::logic_error&) {
        throw UsageError("sweep must look like start:stop:count, got '" + spec + "'");
    }
    if (n == 0) throw UsageError("sweep count must be >= 1");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    if (n > 1) v.back() = b;
    return v;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"evlab: evanescent-wave and tunneling-time laboratory", "evlab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string units_name = "natural";
    std::string output_dir = "evlab-out";
    std::string format_name = "both";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool force = false;
    app.add_option("--units", units_name, "Unit preset")->check(CLI::IsMember({"natural", "si-photon"}));
    app.add_option("--output-dir", output_dir, "Directory for output files (EVLAB_OUTPUT_DIR overrides)");
    app.add_option("--format", format_name, "Output files to write")->check(CLI::IsMember({"csv", "json", "both"}));
    app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--force", force, "Replace existing output files");

    const std::map<std::string, Action> actions{
        {"stationary", add_stationary(app)}, {"ttime", add_ttime(app)},         {"spectrum", add_spectrum(app)},
        {"ftir", add_ftir(app)},             {"propagate", add_propagate(app)}, {"tolman", add_tolman(app)},
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return 2;
    }

    if (const char* env = std::getenv("EVLAB_OUTPUT_DIR"); env && *env) output_dir = env;
    const Format format = format_name == "csv" ? Format::csv : format_name == "json" ? Format::json : Format::both;

    try {
        Context ctx;
        ctx.units = units_name == "si-photon" ? UnitSystem::si_photon() : UnitSystem::natural();
        ctx.units_name = units_name;
        OutputSet output(output_dir, format, force);
        ctx.output = &output;
        ctx.jobs = jobs;
        ctx.out = &out;
        actions.at(app.get_subcommands().front()->get_name())(ctx);
        for (const auto& path : output.written()) out << "wrote " << path.string() << '\n';
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace evlab::cli
