#include "evlab/spectral.hpp"

#include "evlab/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>

namespace evlab {

namespace {

constexpr double kPi2 = kPi * kPi;
constexpr double kSqrtPi = 1.7724538509055160273;
// The box spectrum is integrated numerically up to |ak| = kSpectralCut and
// analytically beyond. A multiple of 2 pi keeps the oscillatory remainder small.
constexpr double kSpectralCut = 100.0 * kPi;

/// G(u) = 2 sqrt(pi) cos(u/2) / (pi^2 - u^2), so F(k) = sqrt(a) G(ak).
double unit_box_spectrum(double u) {
    const double au = std::abs(u);
    const double denom = kPi2 - au * au;
    if (std::abs(denom) < 1e-6) {
        // With s = |u| - pi: G = sqrt(pi) sinc(s/2) / (2 pi + s).
        const double s = au - kPi;
        const double y2 = 0.25 * s * s;
        const double sinc = 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
        return kSqrtPi * sinc / (2.0 * kPi + s);
    }
    return 2.0 * kSqrtPi * std::cos(0.5 * au) / denom;
}

double unit_box_spectrum2(double u) {
    const double g = unit_box_spectrum(u);
    return g * g;
}

/// integral_U^inf 1/(u^2 - pi^2)^2 du as a series in (pi/U)^2.
double tail_inverse_quartic(double U) {
    const double x = kPi2 / (U * U);
    double term = 1.0;
    double sum = 0.0;
    for (int n = 0; n < 60; ++n) {
        const double add = (n + 1) * term / (2 * n + 3);
        sum += add;
        if (add < 1e-18 * sum) break;
        term *= x;
    }
    return sum / (U * U * U);
}

/// integral_U^inf 1/(u^2 - pi^2) du as a series.
double tail_inverse_quadratic(double U) {
    const double x = kPi2 / (U * U);
    double term = 1.0;
    double sum = 0.0;
    for (int n = 0; n < 60; ++n) {
        const double add = term / (2 * n + 1);
        sum += add;
        if (add < 1e-18 * sum) break;
        term *= x;
    }
    return sum / U;
}

/// integral_U^inf G(u)^2 du. G^2 = 2 pi (1 + cos u) h(u), h = (u^2 - pi^2)^-2;
/// the cos part is integrated by parts twice.
double spectrum_tail(double U) {
    const double q = U * U - kPi2;
    const double h = 1.0 / (q * q);
    const double dh = -4.0 * U / (q * q * q);
    const double oscillatory = -h * std::sin(U) - dh * std::cos(U);
    return 2.0 * kPi * (tail_inverse_quartic(U) + oscillatory);
}

/// integral_U^inf u^2 G(u)^2 du, same treatment with g = u^2 h.
double spectrum_k2_tail(double U) {
    const double q = U * U - kPi2;
    const double g = U * U / (q * q);
    const double dg = -2.0 * U * (U * U + kPi2) / (q * q * q);
    const double mean = tail_inverse_quadratic(U) + kPi2 * tail_inverse_quartic(U);
    const double oscillatory = -g * std::sin(U) - dg * std::cos(U);
    return 2.0 * kPi * (mean + oscillatory);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be finite and > 0");
}

}  // namespace

BoxState::BoxState(double width_a) : a_(width_a) { require_positive(width_a, "BoxState: width"); }

double BoxState::amplitude(double x) const {
    if (std::abs(x) > 0.5 * a_) return 0.0;
    return std::sqrt(2.0 / a_) * std::cos(kPi * x / a_);
}

double BoxState::density(double x) const {
    const double v = amplitude(x);
    return v * v;
}

double box_spectrum(double k, double a) {
    require_positive(a, "box_spectrum: a");
    return std::sqrt(a) * unit_box_spectrum(a * k);
}

TailProbability tail_probability(double k_prime, double a) {
    require_positive(a, "tail_probability: a");
    const double u_prime = a * k_prime;
    if (!(u_prime > kPi)) {
        throw DomainError("tail_probability: k' must exceed k_a = pi/a (asymptotic regime)");
    }
    const double cut = 2.0 * kPi * std::ceil(std::max(u_prime, kSpectralCut) / (2.0 * kPi));
    const double scale = 2.0 * kPi / (3.0 * u_prime * u_prime * u_prime);
    double near = 0.0;
    if (cut - u_prime > 1e-12 * cut) {
        near = integrate(unit_box_spectrum2, u_prime, cut, 1e-10 * std::min(1.0, scale));
    }
    TailProbability out;
    out.exact = 2.0 * (near + spectrum_tail(cut));
    out.asymptotic_printed = kTailCoefficientPrinted / (u_prime * u_prime * u_prime);
    out.scaled_exact = out.exact * u_prime * u_prime * u_prime;
    return out;
}

BoxMoments box_moments(double a) {
    require_positive(a, "box_moments: a");
    BoxMoments m;
    const double ka = kPi / a;
    m.delta_x = a * std::sqrt((1.0 / 12.0) * (1.0 - 6.0 / kPi2));
    m.mean_k = 0.0;
    m.k2_mean = ka * ka;
    m.delta_k = ka;

    // x representation on the unit box, rescaled.
    const double x2 = integrate([](double x) { return x * x * 2.0 * std::pow(std::cos(kPi * x), 2); }, -0.5,
                                0.5, 1e-14);
    m.delta_x_quadrature = a * std::sqrt(x2);

    // <k^2> = integral psi (-psi'') dx with psi'' = -k_a^2 psi.
    const double minus_psi_psi2 =
        integrate([](double x) { return 2.0 * std::cos(kPi * x) * kPi2 * std::cos(kPi * x); }, -0.5, 0.5,
                  1e-14);
    m.k2_mean_x_quadrature = minus_psi_psi2 / (a * a);

    // k representation on u = ak.
    const double body = integrate(unit_box_spectrum2, 0.0, kSpectralCut, 1e-12);
    m.parseval = 2.0 * (body + spectrum_tail(kSpectralCut));
    m.mean_k_quadrature =
        integrate([](double u) { return u * unit_box_spectrum2(u); }, -kSpectralCut, kSpectralCut, 1e-12) / a;
    const double k2_body = integrate([](double u) { return u * u * unit_box_spectrum2(u); }, 0.0,
                                     kSpectralCut, 1e-12);
    m.k2_mean_k_quadrature = 2.0 * (k2_body + spectrum_k2_tail(kSpectralCut)) / (a * a);
    m.delta_k_quadrature =
        std::sqrt(m.k2_mean_k_quadrature - m.mean_k_quadrature * m.mean_k_quadrature);
    return m;
}

LineShape::LineShape(double omega0, double gamma0) : omega0_(omega0), gamma0_(gamma0) {
    if (!std::isfinite(omega0)) throw DomainError("LineShape: omega0 must be finite");
    require_positive(gamma0, "LineShape: gamma0");
}

double lorentzian_density(double omega, const LineShape& line) {
    const double d = omega - line.omega0();
    const double g = line.gamma0();
    return g / (2.0 * kPi * (d * d + 0.25 * g * g));
}

double lorentzian_normalization(const LineShape& line) {
    const double half_span = 200.0 * line.gamma0();
    const double body = integrate([&](double w) { return lorentzian_density(w, line); },
                                  line.omega0() - half_span, line.omega0() + half_span, 1e-12);
    // Each tail is (1/pi)(pi/2 - atan(2L/gamma0)) = (1/pi) atan(gamma0 / 2L).
    const double tails = 2.0 / kPi * std::atan(line.gamma0() / (2.0 * half_span));
    return body + tails;
}

double lorentzian_fwhm(const LineShape& line) {
    const double half = 0.5 * lorentzian_density(line.omega0(), line);
    auto excess = [&](double w) { return lorentzian_density(w, line) - half; };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t iterations = 200;
    const double g = line.gamma0();
    const auto right =
        boost::math::tools::toms748_solve(excess, line.omega0(), line.omega0() + 10.0 * g, tol, iterations);
    iterations = 200;
    const auto left =
        boost::math::tools::toms748_solve(excess, line.omega0() - 10.0 * g, line.omega0(), tol, iterations);
    return 0.5 * (right.first + right.second) - 0.5 * (left.first + left.second);
}

EnergySpread released_energy_spread(double a, const UnitSystem& units) {
    require_positive(a, "released_energy_spread: a");
    EnergySpread out;
    out.omega_a = units.c() * kPi / a;
    out.mean_E = units.hbar() * out.omega_a;
    // Delta E = hbar c Delta k with Delta k = pi / a.
    out.delta_E = units.hbar() * units.c() * (kPi / a);
    return out;
}

double box_mean_kinetic_energy(double a, double mass, const UnitSystem& units) {
    require_positive(mass, "box_mean_kinetic_energy: mass");
    const double hb = units.hbar();
    return hb * hb * box_moments(a).k2_mean_x_quadrature / (2.0 * mass);
}

double box_ground_energy(double a, double mass, const UnitSystem& units) {
    require_positive(a, "box_ground_energy: a");
    require_positive(mass, "box_ground_energy: mass");
    const double hb = units.hbar();
    return hb * hb * kPi2 / (2.0 * mass * a * a);
}

double gaussian_band_density(double omega, double omega0, double sigma) {
    const double d = (omega - omega0) / sigma;
    return std::exp(-0.5 * d * d);
}

GaussianBandReport gaussian_band_report(double omega0, double sigma, const UnitSystem& units) {
    require_positive(omega0, "gaussian_band_report: omega0");
    require_positive(sigma, "gaussian_band_report: sigma");
    // Beyond 40 sigma the density is below exp(-800), i.e. zero in double.
    const double lo = omega0 - 40.0 * sigma;
    const double hi = omega0 + 40.0 * sigma;
    auto rho = [&](double w) { return gaussian_band_density(w, omega0, sigma); };
    const double tol = 1e-13;
    const double mass = integrate(rho, lo, hi, tol * sigma);
    const double mean = integrate([&](double w) { return (w - omega0) * rho(w); }, lo, hi, tol * sigma * sigma) / mass;
    const double var =
        integrate([&](double w) { return (w - omega0 - mean) * (w - omega0 - mean) * rho(w); }, lo, hi,
                  tol * sigma * sigma * sigma) /
        mass;
    GaussianBandReport out;
    out.band = "infinite";
    out.delta_omega = std::sqrt(var);
    out.mean_omega = omega0 + mean;
    out.mean_E = units.hbar() * out.mean_omega;
    return out;
}

double windowed_std_dev(const std::function<double(double)>& density, double lo, double hi) {
    if (!(hi > lo)) throw DomainError("windowed_std_dev: need hi > lo");
    const double tol = 1e-12;
    const double mass = integrate(density, lo, hi, tol);
    if (!(mass > 0.0)) throw DomainError("windowed_std_dev: zero mass in window");
    const double mean = integrate([&](double x) { return x * density(x); }, lo, hi, tol) / mass;
    const double var =
        integrate([&](double x) { return (x - mean) * (x - mean) * density(x); }, lo, hi, tol) / mass;
    return std::sqrt(std::max(0.0, var));
}

}  // namespace evlab
