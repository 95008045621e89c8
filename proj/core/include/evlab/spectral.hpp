#pragma once

#include "evlab/numcore.hpp"

#include <string>

namespace evlab {

/// Ground mode of a hard-wall box centred at the origin:
/// psi(x) = sqrt(2/a) cos(pi x / a) for |x| <= a/2, zero outside.
class BoxState {
public:
    explicit BoxState(double width_a);

    double width() const noexcept { return a_; }
    double k_a() const noexcept { return kPi / a_; }
    double amplitude(double x) const;
    /// Unit-normalized on [-a/2, a/2].
    double density(double x) const;

private:
    double a_;
};

/// Fourier amplitude F(k) = (2pi)^{-1/2} integral psi(x) e^{-ikx} dx of the box state:
/// 2 sqrt(pi a) cos(ak/2) / (pi^2 - a^2 k^2), with the removable points
/// |k| = pi/a evaluated from a series.
double box_spectrum(double k, double a);

/// Probability of |k| > k', exact (quadrature plus analytic tail) and the
/// large-k' asymptote as printed in the source literature, (8/3) pi / (a k')^3.
struct TailProbability {
    double exact = 0.0;
    double asymptotic_printed = 0.0;
    /// (a k')^3 * exact; tends to 4 pi / 3.
    double scaled_exact = 0.0;
};

TailProbability tail_probability(double k_prime, double a);

/// Large-a k' coefficient from the mean of cos^2, 4 pi / 3.
inline constexpr double kTailCoefficient = 4.0 * kPi / 3.0;
/// Coefficient as printed in the literature this code examines, 8 pi / 3.
inline constexpr double kTailCoefficientPrinted = 8.0 * kPi / 3.0;

/// Moments of the box state, each from a closed form and from quadrature.
struct BoxMoments {
    double delta_x = 0.0;
    double mean_k = 0.0;
    double k2_mean = 0.0;
    double delta_k = 0.0;

    double delta_x_quadrature = 0.0;
    double mean_k_quadrature = 0.0;
    /// <k^2> from the x representation, integral |psi'|^2 dx.
    double k2_mean_x_quadrature = 0.0;
    /// <k^2> from the k representation with analytic tail beyond |ak| = 100 pi.
    double k2_mean_k_quadrature = 0.0;
    double delta_k_quadrature = 0.0;
    /// integral |F|^2 dk, should be 1.
    double parseval = 0.0;
};

BoxMoments box_moments(double a);

/// d P / d omega = (1/2pi) gamma0 / ((omega - omega0)^2 + gamma0^2 / 4).
class LineShape {
public:
    LineShape(double omega0, double gamma0);
    double omega0() const noexcept { return omega0_; }
    double gamma0() const noexcept { return gamma0_; }

private:
    double omega0_;
    double gamma0_;
};

double lorentzian_density(double omega, const LineShape& line);

/// Total probability: quadrature over omega0 +- 200 gamma0 plus arctan tails.
double lorentzian_normalization(const LineShape& line);

/// Full width at half maximum located by bisection on each flank.
double lorentzian_fwhm(const LineShape& line);

/// Photon released from a box of width a: omega_a = c pi / a and the spread
/// that follows from Delta k = pi / a.
struct EnergySpread {
    double omega_a = 0.0;
    double mean_E = 0.0;
    double delta_E = 0.0;
};

EnergySpread released_energy_spread(double a, const UnitSystem& units = {});

/// <K> = hbar^2 <k^2> / (2m) for a massive particle in the box; equals the
/// box eigenvalue because U = 0 inside.
double box_mean_kinetic_energy(double a, double mass, const UnitSystem& units = {});
double box_ground_energy(double a, double mass, const UnitSystem& units = {});

/// Gaussian frequency density exp(-(omega - omega0)^2 / (2 sigma^2)):
/// unbounded band, finite deviation and mean energy.
struct GaussianBandReport {
    std::string band = "infinite";
    double delta_omega = 0.0;
    double mean_omega = 0.0;
    double mean_E = 0.0;
};

double gaussian_band_density(double omega, double omega0, double sigma);
GaussianBandReport gaussian_band_report(double omega0, double sigma, const UnitSystem& units = {});

/// Standard deviation of a density restricted to [lo, hi], renormalized.
/// Always smaller than hi - lo.
double windowed_std_dev(const std::function<double(double)>& density, double lo, double hi);

}  // namespace evlab
