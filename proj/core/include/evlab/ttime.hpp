#pragma once

#include "evlab/numcore.hpp"
#include "evlab/stationary.hpp"

#include <optional>
#include <span>
#include <vector>

namespace evlab {

// Esposito-type formulas. These are reproduced as stated, pathologies
// included: they only make sense for 0 < E < U0 and throw elsewhere.

/// tau = hbar / sqrt(E (U0 - E)).
double esposito_time(double energy, double height, const UnitSystem& units = {});

/// A = E / (4 pi^2 (U0 - E)), so that tau = A / nu.
double esposito_factor(double energy, double height);

/// Energy at which A = 1, E_s = 4 pi^2 / (1 + 4 pi^2) U0.
double esposito_special_energy(double height);

/// nu = E / (2 pi hbar) and T = 1 / nu.
double wave_frequency(double energy, const UnitSystem& units = {});
double wave_period(double energy, const UnitSystem& units = {});

/// Stationary-phase delay hbar d(arg t)/dE with t referenced to the exit
/// plane. Central differences at h and h/2 combined by Richardson
/// extrapolation, h = max(1e-6 U0, 1e-9).
double phase_time(double energy, const BarrierSpec& spec, const UnitSystem& units = {});

/// Plain central difference of hbar arg t at step h (no extrapolation).
double phase_time_central(double energy, const BarrierSpec& spec, double step, const UnitSystem& units = {});

/// Dwell time (m / (hbar k)) * integral_0^d |psi|^2 dx.
double dwell_time(double energy, const BarrierSpec& spec, const UnitSystem& units = {});

struct TunnelingTimeReport {
    double energy = 0.0;
    std::optional<double> esposito_tau;
    std::optional<double> factor_A;
    double phase_time = 0.0;
    double dwell_time = 0.0;
    double period_T = 0.0;
};

TunnelingTimeReport tunneling_time_report(double energy, const BarrierSpec& spec, const UnitSystem& units = {});

/// Unwraps a sequence of principal-value phases by continuity.
std::vector<double> unwrap_phase(std::span<const double> wrapped);

}  // namespace evlab
