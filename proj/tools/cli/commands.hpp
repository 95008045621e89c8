#pragma once

#include "output.hpp"

#include "evlab/numcore.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace evlab::cli {

struct Context {
    UnitSystem units;
    std::string units_name;
    OutputSet* output = nullptr;
    unsigned jobs = 1;
    std::ostream* out = nullptr;
};

using Action = std::function<void(Context&)>;

Action add_stationary(CLI::App& app);
Action add_ttime(CLI::App& app);
Action add_spectrum(CLI::App& app);
Action add_ftir(CLI::App& app);
Action add_propagate(CLI::App& app);
Action add_tolman(CLI::App& app);

/// "a:b:n" -> n evenly spaced values from a to b inclusive.
std::vector<double> parse_sweep(const std::string& spec);

Json complex_json(Complex z);

}  // namespace evlab::cli
