#include "evlab/ftir.hpp"

#include "evlab/error.hpp"
#include "evlab/fft.hpp"
#include "evlab/layered.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace evlab {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_evanescent(double n, double theta) {
    if (!(n * std::sin(theta) > 1.0)) {
        throw DomainError("gap: n sin(theta) <= 1, propagating gap, not evanescent");
    }
}

struct SlabResult {
    double k_parallel;
    double k_normal;
    Complex q_inside;
    LayeredSolution layers;
};

/// Prism | gap | prism with the tangential wavenumber conserved. Works for
/// both evanescent and propagating gaps.
SlabResult slab(double omega, double n, double theta, double d, const UnitSystem& units) {
    const double k0 = omega / units.c();
    const double k_par = k0 * n * std::sin(theta);
    const double k_normal = k0 * n * std::cos(theta);
    const Complex q_in = principal_sqrt(Complex{k0 * k0 - k_par * k_par, 0.0});
    const std::array<Complex, 3> q{Complex{k_normal, 0.0}, q_in, Complex{k_normal, 0.0}};
    const std::array<double, 2> interfaces{0.0, d};
    return {k_par, k_normal, q_in, LayeredSolution(q, interfaces)};
}

bool in_band(double omega, const GapSpec& spec) {
    return omega > 0.0 && spec.index_at(omega) * std::sin(spec.theta()) > 1.0;
}

/// Physical angular frequency of FFT bin k under e^{-i omega t}: FFTW's
/// inverse transform carries e^{+i omega_k t}, so omega = -omega_k.
double physical_omega(std::size_t k, std::size_t n, double dt) { return -dft_angular_frequency(k, n, dt); }

std::vector<Complex> apply_filter(const WavePacket& input, const std::function<Complex(double)>& filter) {
    const std::size_t n = input.size();
    const Fft fft(n);
    auto spectrum = fft.forward(input.values);
    const double dt = input.grid.dx();
    for (std::size_t k = 0; k < n; ++k) spectrum[k] *= filter(physical_omega(k, n, dt));
    fft.inverse_inplace(spectrum);
    return spectrum;
}

void require_in_band(const WavePacket& input, const GapSpec& spec) {
    const double leak = out_of_band_energy_fraction(input, spec);
    if (leak > 1e-6) {
        throw DomainError("transmit_pulse: input spectrum leaks outside the TIR band (fraction " +
                          std::to_string(leak) + " > 1e-6)");
    }
}

}  // namespace

GapSpec::GapSpec(double refr_index_n, double incidence_theta, double gap_d)
    : n_(refr_index_n), theta_(incidence_theta), d_(gap_d) {
    if (!(refr_index_n > 1.0) || !std::isfinite(refr_index_n)) throw DomainError("GapSpec: n must be > 1");
    if (!(incidence_theta > 0.0 && incidence_theta < 0.5 * kPi)) {
        throw DomainError("GapSpec: theta must lie in (0, pi/2)");
    }
    if (!(gap_d >= 0.0) || !std::isfinite(gap_d)) throw DomainError("GapSpec: gap width must be >= 0");
    require_evanescent(refr_index_n, incidence_theta);
}

double GapSpec::index_at(double omega) const { return dispersion_ ? dispersion_(omega) : n_; }

GapSpec GapSpec::with_dispersion(IndexModel model) const {
    GapSpec copy = *this;
    copy.dispersion_ = std::move(model);
    return copy;
}

GapSpec GapSpec::with_width(double gap_d) const {
    GapSpec copy(n_, theta_, gap_d);
    copy.dispersion_ = dispersion_;
    return copy;
}

GapDecay gap_decay(double n, double theta, double omega, const UnitSystem& units) {
    require_evanescent(n, theta);
    if (!(omega > 0.0)) throw DomainError("gap_decay: omega must be > 0");
    const double s = n * std::sin(theta);
    GapDecay out;
    out.alpha = std::sqrt((s - 1.0) * (s + 1.0));
    out.k_parallel = omega / units.c() * s;
    out.kappa_x = out.alpha * omega / units.c();
    return out;
}

Complex GapTransfer::interior_field(double x) const {
    return F1 * std::exp(-kappa_x * x) + F2 * std::exp(kappa_x * x);
}

Complex GapTransfer::interior_derivative(double x) const {
    return kappa_x * (-F1 * std::exp(-kappa_x * x) + F2 * std::exp(kappa_x * x));
}

GapTransfer gap_transfer(double omega, const GapSpec& spec, const UnitSystem& units) {
    const double n = spec.index_at(omega);
    const GapDecay decay = gap_decay(n, spec.theta(), omega, units);
    const SlabResult s = slab(omega, n, spec.theta(), spec.width(), units);
    GapTransfer out;
    out.omega = omega;
    out.k_parallel = decay.k_parallel;
    out.kappa_x = decay.kappa_x;
    out.k_normal = s.k_normal;
    out.F1 = s.layers.regions()[1].forward;
    out.F2 = s.layers.regions()[1].backward;
    out.t = s.layers.transmission();
    out.r = s.layers.reflection();
    return out;
}

double gap_group_delay_central(const GapSpec& spec, double omega0, double step, const UnitSystem& units) {
    if (!(step > 0.0) || !(omega0 - step > 0.0)) throw DomainError("gap_group_delay: invalid step");
    if (!in_band(omega0 - step, spec) || !in_band(omega0 + step, spec)) {
        throw DomainError("gap_group_delay: finite-difference step crosses the TIR boundary");
    }
    const Complex t_plus = gap_transfer(omega0 + step, spec, units).t;
    const Complex t_minus = gap_transfer(omega0 - step, spec, units).t;
    return std::arg(t_plus / t_minus) / (2.0 * step);
}

double gap_group_delay(const GapSpec& spec, double omega0, const UnitSystem& units) {
    const double h = 1e-5 * omega0;
    const double coarse = gap_group_delay_central(spec, omega0, h, units);
    const double fine = gap_group_delay_central(spec, omega0, 0.5 * h, units);
    return (4.0 * fine - coarse) / 3.0;
}

double goos_hanchen_estimate(double kappa_x) {
    if (!(kappa_x > 0.0)) throw DomainError("goos_hanchen_estimate: kappa_x must be > 0");
    return 1.0 / kappa_x;
}

Complex gap_transmission_any(double omega, const GapSpec& spec, const UnitSystem& units) {
    if (omega == 0.0 || spec.width() == 0.0) return 1.0;
    const double w = std::abs(omega);
    const SlabResult s = slab(w, spec.index_at(w), spec.theta(), spec.width(), units);
    const Complex t = s.layers.transmission();
    return omega > 0.0 ? t : std::conj(t);
}

double out_of_band_energy_fraction(const WavePacket& input, const GapSpec& spec) {
    const std::size_t n = input.size();
    const Fft fft(n);
    const auto spectrum = fft.forward(input.values);
    double total = 0.0;
    double outside = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::norm(spectrum[k]);
        total += e;
        if (!in_band(physical_omega(k, n, input.grid.dx()), spec)) outside += e;
    }
    if (!(total > 0.0)) throw DomainError("transmit_pulse: input has zero energy");
    return outside / total;
}

WavePacket transmit_pulse(const WavePacket& input, const GapSpec& spec, const UnitSystem& units) {
    require_in_band(input, spec);
    auto out = apply_filter(input, [&](double w) { return gap_transmission_any(w, spec, units); });
    return {input.grid, std::move(out)};
}

WavePacket gap_interior_pulse(const WavePacket& input, const GapSpec& spec, double x, const UnitSystem& units) {
    if (!(x >= 0.0 && x <= spec.width())) throw DomainError("gap_interior_pulse: x outside [0, d]");
    require_in_band(input, spec);
    auto filter = [&](double w) -> Complex {
        if (w == 0.0) return 1.0;
        const double aw = std::abs(w);
        const SlabResult s = slab(aw, spec.index_at(aw), spec.theta(), spec.width(), units);
        const Complex v = s.layers.regions()[1].value(x);
        return w > 0.0 ? v : std::conj(v);
    };
    auto out = apply_filter(input, filter);
    return {input.grid, std::move(out)};
}

namespace {

std::vector<double> unit_magnitude(const WavePacket& p, std::size_t padded) {
    std::vector<double> out(padded, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = std::abs(p.values[i]);
        sum += out[i] * out[i];
    }
    sum *= p.grid.dx();
    if (!(sum > 0.0)) throw DomainError("reshaping_distance: zero-energy envelope");
    const double inv = 1.0 / std::sqrt(sum);
    for (auto& v : out) v *= inv;
    return out;
}

std::vector<Complex> to_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

double l2_distance(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum * dx);
}

}  // namespace

double reshaping_distance(const WavePacket& a, const WavePacket& b) {
    if (std::abs(a.grid.dx() - b.grid.dx()) > 1e-12 * a.grid.dx()) {
        throw DomainError("reshaping_distance: envelopes must share the sample spacing");
    }
    const double dx = a.grid.dx();
    const std::size_t m = a.size() + b.size();
    const auto A = unit_magnitude(a, m);
    const auto B = unit_magnitude(b, m);

    const Fft fft(m);
    const auto fa = fft.forward(to_complex(A));
    const auto fb = fft.forward(to_complex(B));
    std::vector<Complex> cross(m);
    for (std::size_t k = 0; k < m; ++k) cross[k] = std::conj(fa[k]) * fb[k];
    const auto corr = fft.inverse(cross);

    // corr[s] = sum_j A_j B_{j+s}: the lag that lines B up with A.
    std::size_t best = 0;
    for (std::size_t s = 1; s < m; ++s) {
        if (corr[s].real() > corr[best].real()) best = s;
    }
    std::vector<double> theta(m);
    for (std::size_t k = 0; k < m; ++k) theta[k] = dft_angular_frequency(k, m, 1.0);

    auto shifted_b = [&](double s) {
        std::vector<Complex> spec(m);
        for (std::size_t k = 0; k < m; ++k) spec[k] = fb[k] * std::exp(kI * theta[k] * s);
        const auto back = fft.inverse(spec);
        std::vector<double> out(m);
        for (std::size_t j = 0; j < m; ++j) out[j] = back[j].real();
        return out;
    };

    // Integer lag: exact circular shift.
    std::vector<double> b_int(m);
    for (std::size_t j = 0; j < m; ++j) b_int[j] = B[(j + best) % m];
    double result = l2_distance(A, b_int, dx);

    // Sub-sample refinement: Newton on d/ds of the band-limited correlation.
    double s = best < (m + 1) / 2 ? static_cast<double>(best) : static_cast<double>(best) - static_cast<double>(m);
    const double s0 = s;
    for (int iter = 0; iter < 60; ++iter) {
        double d1 = 0.0;
        double d2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const Complex term = cross[k] * std::exp(kI * theta[k] * s);
            d1 += std::real(kI * theta[k] * term);
            d2 -= theta[k] * theta[k] * term.real();
        }
        if (!(d2 < 0.0)) break;
        const double step = -d1 / d2;
        s += step;
        if (std::abs(s - s0) > 1.0) {
            s = s0;
            break;
        }
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(s))) break;
    }
    result = std::min(result, l2_distance(A, shifted_b(s), dx));
    return result;
}

double translation_residual(const WavePacket& input, const GapSpec& spec, double speed, const UnitSystem& units) {
    if (!(speed > 0.0)) throw DomainError("translation_residual: reference speed must be > 0");
    const WavePacket entrance = gap_interior_pulse(input, spec, 0.0, units);
    const WavePacket exit = gap_interior_pulse(input, spec, spec.width(), units);
    const double delay = spec.width() / speed;

    auto delayed = [&](const WavePacket& p) {
        return apply_filter(p, [&](double w) { return std::exp(kI * w * delay); });
    };
    auto norm = [](const std::vector<Complex>& v) {
        double s = 0.0;
        for (const auto& z : v) s += std::norm(z);
        return std::sqrt(s);
    };
    auto diff_norm = [](const std::vector<Complex>& u, const std::vector<Complex>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - v[i]);
        return std::sqrt(s);
    };
    const double reference = norm(entrance.values);
    if (!(reference > 0.0)) throw DomainError("translation_residual: zero entrance field");
    const double forward = diff_norm(exit.values, delayed(entrance));
    const double backward = diff_norm(entrance.values, delayed(exit));
    return std::min(forward, backward) / reference;
}

}  // namespace evlab
