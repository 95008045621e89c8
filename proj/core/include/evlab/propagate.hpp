#pragma once

#include "evlab/numcore.hpp"

#include <optional>
#include <span>
#include <vector>

namespace evlab {

/// Cutoff wavenumber profile for psi_tt = c^2 psi_xx - c^2 k_c(x)^2 psi.
/// Below-cutoff frequencies are evanescent where k_c > 0.
class MediumProfile {
public:
    MediumProfile(Grid1D grid, std::vector<double> cutoff_kc);

    static MediumProfile vacuum(Grid1D grid);
    /// k_c on [x_begin, x_end), zero elsewhere.
    static MediumProfile barrier(Grid1D grid, double x_begin, double x_end, double kc);

    const Grid1D& grid() const noexcept { return grid_; }
    const std::vector<double>& cutoff() const noexcept { return kc_; }

private:
    Grid1D grid_;
    std::vector<double> kc_;
};

struct PropagationRecord {
    std::vector<double> times;
    std::vector<WavePacket> snapshots;
    std::vector<double> front_positions;
    std::vector<double> peak_positions;
};

struct WaveRunOptions {
    double courant = 1.0;
    std::size_t steps = 1;
    std::size_t snapshot_stride = 1;
    /// Front threshold relative to max|psi(t=0)|.
    double front_epsilon = 1e-10;
    /// Amplitude (relative to max|psi(t=0)|) that counts as reaching the edge.
    double boundary_tolerance = 1e-13;
};

/// Leapfrog in time, three-point Laplacian in space; the cutoff term is
/// averaged over t_{n+1} and t_{n-1}, which keeps the scheme stable for
/// courant <= 1 and any k_c. One cell per step of numerical signal speed.
/// The first step uses the second-order Taylor start, so at courant = 1 in
/// vacuum with velocity from right_moving_velocity the pulse is translated
/// exactly. Throws if the field reaches the first or last cell.
PropagationRecord evolve_wave(const WavePacket& initial, std::span<const Complex> initial_velocity,
                              const MediumProfile& profile, const WaveRunOptions& options,
                              const UnitSystem& units = {});

/// Discrete initial velocity -c (psi_{i+1} - psi_{i-1}) / (2 dx) of a
/// right-moving pulse.
std::vector<Complex> right_moving_velocity(const WavePacket& packet, const UnitSystem& units = {});

/// Conserved discrete energy of the scheme between two consecutive levels.
double wave_energy(const WavePacket& previous, const WavePacket& current, const MediumProfile& profile,
                   double dt, const UnitSystem& units = {});

struct SchrodingerRunOptions {
    double dt = 1e-3;
    std::size_t steps = 1;
    std::size_t snapshot_stride = 1;
    double front_epsilon = 1e-10;
    double max_norm_drift = 1e-8;
};

/// Strang split-step Fourier evolution on a periodic grid:
/// half potential kick, exact kinetic step in k space, half kick.
PropagationRecord evolve_schrodinger(const WavePacket& initial, std::span<const double> potential, double mass,
                                     const SchrodingerRunOptions& options, const UnitSystem& units = {});

/// Lowest eigenstate of the split-step propagator by imaginary-time
/// relaxation, unit-normalized.
WavePacket relax_ground_state(const WavePacket& guess, std::span<const double> potential, double mass, double dtau,
                              std::size_t max_steps, const UnitSystem& units = {});

/// Rightmost x with |psi| >= epsilon, linearly interpolated to the
/// threshold crossing with the next sample outward.
double front_position(const WavePacket& packet, double epsilon);

/// Location of max |psi|^2 refined by a parabola through the three samples
/// around it.
double peak_position(const WavePacket& packet);

/// Peak restricted to samples in [x_lo, x_hi]; empty when the maximum sits
/// on the window edge (the peak has not entered the window yet).
std::optional<double> peak_position(const WavePacket& packet, double x_lo, double x_hi);

/// Least-squares slope and intercept of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

/// Paired barrier/vacuum comparison of the pulse peak. The incident peak
/// trajectory of the vacuum run is fitted around each barrier face; the
/// transmitted peak of the barrier run is taken from the last fit_window
/// snapshots in which it lies inside [x_exit + margin, x_max], fitted, and
/// extrapolated back to x_exit.
struct PeakTraversal {
    double entrance_time = 0.0;
    double exit_time = 0.0;
    double vacuum_exit_time = 0.0;
    /// (x_exit - x_entrance) / (exit_time - entrance_time).
    double effective_velocity = 0.0;
    double transmitted_slope = 0.0;
};

PeakTraversal measure_peak_traversal(const PropagationRecord& barrier_run, const PropagationRecord& vacuum_run,
                                     double x_entrance, double x_exit, double margin, std::size_t fit_window = 10);

/// Largest |psi| found strictly outside [support_lo - c t, support_hi + c t]
/// over all snapshots of a run started from data supported on
/// [support_lo, support_hi].
double light_cone_violation(const PropagationRecord& record, double support_lo, double support_hi,
                            const UnitSystem& units = {});

/// Front speeds from consecutive front positions.
std::vector<double> front_speeds(const PropagationRecord& record);

}  // namespace evlab
