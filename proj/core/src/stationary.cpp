#include "evlab/stationary.hpp"

#include "evlab/error.hpp"
#include "evlab/layered.hpp"

#include <array>
#include <cmath>

namespace evlab {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_tunneling(double energy, double height, const char* where) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw DomainError(std::string(where) + ": energy must be > 0");
    }
    if (!(energy < height)) {
        throw DomainError(std::string(where) +
                          ": E >= U0 has no evanescent region; use a propagating-regime solver");
    }
}

}  // namespace

BarrierSpec::BarrierSpec(double height_u0, double width_d, double mass_m)
    : height_(height_u0), width_(width_d), mass_(mass_m) {
    if (!(height_u0 > 0.0) || !(width_d > 0.0) || !(mass_m > 0.0) || !std::isfinite(height_u0) ||
        !std::isfinite(width_d) || !std::isfinite(mass_m)) {
        throw DomainError("BarrierSpec: U0, d and m must be finite and > 0");
    }
}

double free_wavenumber(double energy, double mass, const UnitSystem& units) {
    return std::sqrt(2.0 * mass * energy) / units.hbar();
}

double decay_constant(double energy, double height, double mass, const UnitSystem& units) {
    return std::sqrt(2.0 * mass * (height - energy)) / units.hbar();
}

StationarySolution threshold_solution(double energy, double height, double mass, const UnitSystem& units) {
    require_tunneling(energy, height, "threshold_solution");
    if (!(mass > 0.0)) throw DomainError("threshold_solution: mass must be > 0");

    StationarySolution sol;
    sol.energy = energy;
    sol.mass = mass;
    sol.k = free_wavenumber(energy, mass, units);
    sol.kappa = decay_constant(energy, height, mass, units);

    const std::array<Complex, 2> q{Complex{sol.k, 0.0}, Complex{0.0, sol.kappa}};
    const std::array<double, 1> interfaces{0.0};
    const LayeredSolution layers(q, interfaces);
    sol.r = layers.reflection();
    sol.F1 = layers.regions()[1].forward;
    sol.F2 = 0.0;
    sol.t = 0.0;
    return sol;
}

StationarySolution barrier_solution(double energy, const BarrierSpec& spec, const UnitSystem& units) {
    require_tunneling(energy, spec.height(), "barrier_solution");

    StationarySolution sol;
    sol.energy = energy;
    sol.mass = spec.mass();
    sol.width = spec.width();
    sol.k = free_wavenumber(energy, spec.mass(), units);
    sol.kappa = decay_constant(energy, spec.height(), spec.mass(), units);

    const std::array<Complex, 3> q{Complex{sol.k, 0.0}, Complex{0.0, sol.kappa}, Complex{sol.k, 0.0}};
    const std::array<double, 2> interfaces{0.0, spec.width()};
    const LayeredSolution layers(q, interfaces);
    sol.r = layers.reflection();
    sol.t = layers.transmission();
    sol.F1 = layers.regions()[1].forward;
    sol.F2 = layers.regions()[1].backward;
    return sol;
}

Complex wavefunction(const StationarySolution& sol, double x) {
    if (x < 0.0) {
        return std::exp(kI * sol.k * x) + sol.r * std::exp(-kI * sol.k * x);
    }
    if (sol.is_threshold() || x <= sol.width) {
        return sol.F1 * std::exp(-sol.kappa * x) + sol.F2 * std::exp(sol.kappa * x);
    }
    return sol.t * std::exp(kI * sol.k * (x - sol.width));
}

Complex wavefunction_derivative(const StationarySolution& sol, double x) {
    if (x < 0.0) {
        return kI * sol.k * (std::exp(kI * sol.k * x) - sol.r * std::exp(-kI * sol.k * x));
    }
    if (sol.is_threshold() || x <= sol.width) {
        return sol.kappa * (-sol.F1 * std::exp(-sol.kappa * x) + sol.F2 * std::exp(sol.kappa * x));
    }
    return kI * sol.k * sol.t * std::exp(kI * sol.k * (x - sol.width));
}

Complex wavefunction(const StationarySolution& sol, double x, double time, const UnitSystem& units) {
    return wavefunction(sol, x) * std::exp(-kI * sol.energy * time / units.hbar());
}

double probability_flux(const StationarySolution& sol, double x, const UnitSystem& units) {
    const Complex psi = wavefunction(sol, x);
    const Complex dpsi = wavefunction_derivative(sol, x);
    return units.hbar() / sol.mass * std::imag(std::conj(psi) * dpsi);
}

double interior_flux(const StationarySolution& sol, const UnitSystem& units) {
    return 2.0 * units.hbar() / sol.mass * sol.kappa * std::imag(std::conj(sol.F1) * sol.F2);
}

double transmitted_flux(const StationarySolution& sol, const UnitSystem& units) {
    return std::norm(sol.t) * units.hbar() * sol.k / sol.mass;
}

Complex relativistic_wavenumber(double energy, double height, double rest_mass, const UnitSystem& units) {
    if (!(rest_mass >= 0.0)) throw DomainError("relativistic_wavenumber: rest mass must be >= 0");
    const double c = units.c();
    const double kinetic = energy - height;
    const double rest = rest_mass * c * c;
    // (E-U0)^2 - (m0 c^2)^2 factored to avoid cancellation near the threshold.
    const double disc = (kinetic - rest) * (kinetic + rest);
    return principal_sqrt(Complex{disc, 0.0}) / (units.hbar() * c);
}

}  // namespace evlab
