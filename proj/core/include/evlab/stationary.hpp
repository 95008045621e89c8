#pragma once

#include "evlab/numcore.hpp"

#include <limits>

namespace evlab {

/// Rectangular barrier of height U0 on 0 <= x <= d.
class BarrierSpec {
public:
    BarrierSpec(double height_u0, double width_d, double mass_m);

    double height() const noexcept { return height_; }
    double width() const noexcept { return width_; }
    double mass() const noexcept { return mass_; }

private:
    double height_;
    double width_;
    double mass_;
};

/// Monochromatic scattering state for a unit wave incident from x < 0.
///
/// Exterior:  psi = e^{ikx} + r e^{-ikx}            (x < 0)
///            psi = t e^{ik(x-d)}                   (x > d)
/// Interior:  psi = F1 e^{-kappa x} + F2 e^{kappa x} (0 <= x <= d)
///
/// A potential threshold is the d = infinity case with F2 = 0 and t = 0.
struct StationarySolution {
    double energy = 0.0;
    double k = 0.0;
    double kappa = 0.0;
    double width = std::numeric_limits<double>::infinity();
    double mass = 1.0;
    Complex F1;
    Complex F2;
    Complex r;
    Complex t;

    bool is_threshold() const noexcept { return width == std::numeric_limits<double>::infinity(); }
};

/// Free and under-barrier wavenumbers (non-relativistic).
double free_wavenumber(double energy, double mass, const UnitSystem& units = {});
double decay_constant(double energy, double height, double mass, const UnitSystem& units = {});

/// Potential step of height U0 at x = 0, requires 0 < E < U0.
StationarySolution threshold_solution(double energy, double height, double mass,
                                      const UnitSystem& units = {});

/// Rectangular barrier in the tunneling regime 0 < E < U0.
StationarySolution barrier_solution(double energy, const BarrierSpec& spec, const UnitSystem& units = {});

/// Time-independent wave function psi(x) and its x-derivative.
Complex wavefunction(const StationarySolution& sol, double x);
Complex wavefunction_derivative(const StationarySolution& sol, double x);

/// psi(x) e^{-iEt/hbar}.
Complex wavefunction(const StationarySolution& sol, double x, double time, const UnitSystem& units);

/// Probability current (hbar/m) Im(conj(psi) dpsi/dx) evaluated on the assembled field.
double probability_flux(const StationarySolution& sol, double x, const UnitSystem& units = {});

/// Closed form of the current under the barrier, 2 (hbar/m) kappa Im(conj(F1) F2).
/// Independent of x; zero whenever one of the two amplitudes vanishes.
double interior_flux(const StationarySolution& sol, const UnitSystem& units = {});

/// Transmitted current |t|^2 hbar k / m.
double transmitted_flux(const StationarySolution& sol, const UnitSystem& units = {});

/// k solving (E - U0)^2 = (hbar k c)^2 + (m0 c^2)^2 on the principal branch.
/// Purely imaginary exactly when |E - U0| < m0 c^2.
Complex relativistic_wavenumber(double energy, double height, double rest_mass, const UnitSystem& units = {});

}  // namespace evlab
