#include "evlab/ttime.hpp"

#include "evlab/error.hpp"

#include <cmath>

namespace evlab {

namespace {

void require_esposito_domain(double energy, double height) {
    if (!(height > 0.0)) throw DomainError("esposito: U0 must be > 0");
    if (!(energy > 0.0)) throw DomainError("esposito: E must be > 0");
    if (!(energy < height)) {
        throw DomainError(
            "esposito: pathological regime E >= U0: formula yields negative or imaginary time");
    }
}

}  // namespace

double esposito_time(double energy, double height, const UnitSystem& units) {
    require_esposito_domain(energy, height);
    return units.hbar() / std::sqrt(energy * (height - energy));
}

double esposito_factor(double energy, double height) {
    require_esposito_domain(energy, height);
    return energy / (4.0 * kPi * kPi * (height - energy));
}

double esposito_special_energy(double height) {
    if (!(height > 0.0)) throw DomainError("esposito_special_energy: U0 must be > 0");
    const double four_pi2 = 4.0 * kPi * kPi;
    return four_pi2 / (1.0 + four_pi2) * height;
}

double wave_frequency(double energy, const UnitSystem& units) {
    if (!(energy > 0.0)) throw DomainError("wave_frequency: E must be > 0");
    return energy / (2.0 * kPi * units.hbar());
}

double wave_period(double energy, const UnitSystem& units) { return 1.0 / wave_frequency(energy, units); }

double phase_time_central(double energy, const BarrierSpec& spec, double step, const UnitSystem& units) {
    if (!(step > 0.0)) throw DomainError("phase_time: step must be > 0");
    if (!(energy - step > 0.0) || !(energy + step < spec.height())) {
        throw DomainError("phase_time: finite-difference stencil leaves the tunneling regime 0 < E < U0");
    }
    const Complex t_plus = barrier_solution(energy + step, spec, units).t;
    const Complex t_minus = barrier_solution(energy - step, spec, units).t;
    // arg of the ratio is the continuous phase increment for small steps.
    const double dphase = std::arg(t_plus / t_minus);
    return units.hbar() * dphase / (2.0 * step);
}

double phase_time(double energy, const BarrierSpec& spec, const UnitSystem& units) {
    const double h = std::max(1e-6 * spec.height(), 1e-9);
    const double coarse = phase_time_central(energy, spec, h, units);
    const double fine = phase_time_central(energy, spec, 0.5 * h, units);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    if (std::abs(fine - coarse) > 1e-3 * std::abs(extrapolated) + 1e-300) {
        throw NumericalError("phase_time: Richardson check failed; arg t is not smooth at this energy");
    }
    return extrapolated;
}

double dwell_time(double energy, const BarrierSpec& spec, const UnitSystem& units) {
    const StationarySolution sol = barrier_solution(energy, spec, units);
    auto density = [&](double x) { return std::norm(wavefunction(sol, x)); };
    double peak = 0.0;
    for (int i = 0; i <= 8; ++i) peak = std::max(peak, density(spec.width() * i / 8.0));
    // Relative accuracy: scale the absolute floor by the integrand size.
    const double integral = integrate(density, 0.0, spec.width(), 1e-12 * std::min(1.0, peak * spec.width()));
    const double incident_flux = units.hbar() * sol.k / sol.mass;
    return integral / incident_flux;
}

TunnelingTimeReport tunneling_time_report(double energy, const BarrierSpec& spec, const UnitSystem& units) {
    TunnelingTimeReport report;
    report.energy = energy;
    report.period_T = wave_period(energy, units);
    if (energy > 0.0 && energy < spec.height()) {
        report.esposito_tau = esposito_time(energy, spec.height(), units);
        report.factor_A = esposito_factor(energy, spec.height());
    }
    report.phase_time = phase_time(energy, spec, units);
    report.dwell_time = dwell_time(energy, spec, units);
    return report;
}

std::vector<double> unwrap_phase(std::span<const double> wrapped) {
    std::vector<double> out(wrapped.begin(), wrapped.end());
    double offset = 0.0;
    for (std::size_t i = 1; i < out.size(); ++i) {
        double jump = wrapped[i] - wrapped[i - 1];
        while (jump > kPi) {
            offset -= 2.0 * kPi;
            jump -= 2.0 * kPi;
        }
        while (jump < -kPi) {
            offset += 2.0 * kPi;
            jump += 2.0 * kPi;
        }
        out[i] = wrapped[i] + offset;
    }
    return out;
}

}  // namespace evlab
