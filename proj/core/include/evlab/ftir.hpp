#pragma once

#include "evlab/numcore.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace evlab {

/// Air gap of width d between two prisms of index n, beam incident at theta
/// (radians) from the prism side. The gap is evanescent when n sin(theta) > 1.
class GapSpec {
public:
    using IndexModel = std::function<double(double omega)>;

    GapSpec(double refr_index_n, double incidence_theta, double gap_d);

    double index() const noexcept { return n_; }
    double theta() const noexcept { return theta_; }
    double width() const noexcept { return d_; }

    /// Prism index at a frequency. Constant unless a dispersion model is set.
    double index_at(double omega) const;
    GapSpec with_dispersion(IndexModel model) const;
    GapSpec with_width(double gap_d) const;

private:
    double n_;
    double theta_;
    double d_;
    IndexModel dispersion_;
};

struct GapDecay {
    double alpha = 0.0;
    double kappa_x = 0.0;
    double k_parallel = 0.0;
};

/// alpha = sqrt(n^2 sin^2 theta - 1), kappa_x = alpha omega / c and the
/// conserved tangential wavenumber (omega / c) n sin theta.
GapDecay gap_decay(double n, double theta, double omega, const UnitSystem& units = {});

/// Scalar-field transfer through the gap at one frequency. Exterior normal
/// wavenumber k1 = (omega/c) n cos(theta); interior field
/// F1 e^{-kappa_x x} + F2 e^{kappa_x x}; t referenced to the exit face.
struct GapTransfer {
    double omega = 0.0;
    double k_parallel = 0.0;
    double kappa_x = 0.0;
    double k_normal = 0.0;
    Complex F1;
    Complex F2;
    Complex t;
    Complex r;

    /// Field at depth x inside the gap (0 <= x <= d).
    Complex interior_field(double x) const;
    Complex interior_derivative(double x) const;
};

GapTransfer gap_transfer(double omega, const GapSpec& spec, const UnitSystem& units = {});

/// d(arg t)/d omega at omega0 by central difference with Richardson
/// extrapolation; the step is omega0 * 1e-5.
double gap_group_delay(const GapSpec& spec, double omega0, const UnitSystem& units = {});
double gap_group_delay_central(const GapSpec& spec, double omega0, double step, const UnitSystem& units = {});

/// Order-of-magnitude lateral shift D ~ 1 / kappa_x.
double goos_hanchen_estimate(double kappa_x);

/// Transfer function t(omega) extended to all real frequencies of a real
/// field: t(0) = 1 and t(-omega) = conj(t(omega)).
Complex gap_transmission_any(double omega, const GapSpec& spec, const UnitSystem& units = {});

/// Output at the exit face for an input field sampled at the entrance face,
/// both on the same time grid, using e^{-i omega t} time dependence.
/// Throws if more than 1e-6 of the input energy lies outside the
/// evanescent (TIR) band.
WavePacket transmit_pulse(const WavePacket& input, const GapSpec& spec, const UnitSystem& units = {});

/// Field inside the gap at depth x as the two-wave superposition, as a
/// function of time.
WavePacket gap_interior_pulse(const WavePacket& input, const GapSpec& spec, double x,
                              const UnitSystem& units = {});

/// Fraction of input spectral energy at frequencies where the gap is not
/// evanescent (omega <= 0 or n(omega) sin theta <= 1).
double out_of_band_energy_fraction(const WavePacket& input, const GapSpec& spec);

/// Normalized L2 distance between two sampled shapes after optimal
/// relative shift. Both magnitudes are normalized to unit L2 norm; the
/// shift is found from the circular cross-correlation peak of the
/// zero-padded signals and refined to sub-sample precision by Newton
/// iteration on the band-limited correlation. 0 means pure delay and scaling.
double reshaping_distance(const WavePacket& a, const WavePacket& b);

/// Residual of the best rigid-translation model psi(x, t) = Phi(x -+ u t)
/// for the gap field: the field at the exit face compared with the field at
/// the entrance face delayed by d/u, in both directions, normalized by the
/// entrance-field norm. Zero would mean a shape-preserving pulse.
double translation_residual(const WavePacket& input, const GapSpec& spec, double speed,
                            const UnitSystem& units = {});

}  // namespace evlab
