#include "evlab/propagate.hpp"

#include "evlab/error.hpp"
#include "evlab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace evlab {

namespace {

constexpr Complex kI{0.0, 1.0};

double max_abs(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void record_snapshot(PropagationRecord& rec, double time, const Grid1D& grid, const std::vector<Complex>& field,
                     double front_eps) {
    WavePacket snap(grid, field);
    rec.times.push_back(time);
    rec.front_positions.push_back(front_position(snap, front_eps));
    rec.peak_positions.push_back(peak_position(snap));
    rec.snapshots.push_back(std::move(snap));
}

std::size_t peak_index(const WavePacket& packet, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    double best_v = -1.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double v = std::norm(packet.values[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    if (!(best_v > 0.0)) throw DomainError("peak_position: packet is identically zero");
    return best;
}

double refine_peak(const WavePacket& packet, std::size_t i) {
    const double x = packet.grid.point(i);
    if (i == 0 || i + 1 >= packet.size()) return x;
    const double ym = std::norm(packet.values[i - 1]);
    const double y0 = std::norm(packet.values[i]);
    const double yp = std::norm(packet.values[i + 1]);
    const double curvature = ym - 2.0 * y0 + yp;
    if (!(curvature < 0.0)) return x;
    return x + 0.5 * packet.grid.dx() * (ym - yp) / curvature;
}

}  // namespace

MediumProfile::MediumProfile(Grid1D grid, std::vector<double> cutoff_kc) : grid_(grid), kc_(std::move(cutoff_kc)) {
    if (kc_.size() != grid_.count()) throw DomainError("MediumProfile: cutoff size does not match grid");
    for (double k : kc_) {
        if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("MediumProfile: cutoff must be finite and >= 0");
    }
}

MediumProfile MediumProfile::vacuum(Grid1D grid) { return {grid, std::vector<double>(grid.count(), 0.0)}; }

MediumProfile MediumProfile::barrier(Grid1D grid, double x_begin, double x_end, double kc) {
    std::vector<double> kc_profile(grid.count(), 0.0);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        if (x >= x_begin && x < x_end) kc_profile[i] = kc;
    }
    return {grid, std::move(kc_profile)};
}

std::vector<Complex> right_moving_velocity(const WavePacket& packet, const UnitSystem& units) {
    const std::size_t n = packet.size();
    std::vector<Complex> v(n, 0.0);
    const double scale = -units.c() / (2.0 * packet.grid.dx());
    for (std::size_t i = 1; i + 1 < n; ++i) v[i] = scale * (packet.values[i + 1] - packet.values[i - 1]);
    return v;
}

PropagationRecord evolve_wave(const WavePacket& initial, std::span<const Complex> initial_velocity,
                              const MediumProfile& profile, const WaveRunOptions& options, const UnitSystem& units) {
    const Grid1D& grid = profile.grid();
    const std::size_t n = grid.count();
    if (initial.size() != n || initial_velocity.size() != n) {
        throw DomainError("evolve_wave: initial data must live on the profile grid");
    }
    if (!(options.courant > 0.0 && options.courant <= 1.0)) {
        throw DomainError("evolve_wave: courant number must lie in (0, 1]");
    }
    if (options.steps == 0 || options.snapshot_stride == 0) {
        throw DomainError("evolve_wave: steps and snapshot_stride must be positive");
    }
    const double c = units.c();
    const double dx = grid.dx();
    const double dt = options.courant * dx / c;
    const double c2 = options.courant * options.courant;

    const double scale = max_abs(initial.values);
    if (!(scale > 0.0)) throw DomainError("evolve_wave: initial field is identically zero");
    const double front_eps = options.front_epsilon * scale;
    const double edge_limit = options.boundary_tolerance * scale;

    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = c * dt * profile.cutoff()[i];
        mu[i] = a * a;
    }

    auto check_edges = [&](const std::vector<Complex>& u, std::size_t step) {
        const double edge = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[n - 2]), std::abs(u[n - 1])});
        if (edge > edge_limit) {
            throw NumericalError("evolve_wave: field reached the grid boundary at step " + std::to_string(step) +
                                 "; enlarge the grid (no wraparound or absorbing layer)");
        }
    };

    std::vector<Complex> prev(initial.values);
    check_edges(prev, 0);
    std::vector<Complex> cur(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Complex lap = prev[i + 1] - 2.0 * prev[i] + prev[i - 1];
        cur[i] = prev[i] + dt * initial_velocity[i] + 0.5 * (c2 * lap - mu[i] * prev[i]);
    }
    check_edges(cur, 1);

    PropagationRecord rec;
    record_snapshot(rec, 0.0, grid, prev, front_eps);
    if (options.snapshot_stride == 1) record_snapshot(rec, dt, grid, cur, front_eps);

    std::vector<Complex> next(n, 0.0);
    for (std::size_t step = 2; step <= options.steps; ++step) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double half_mu = 1.0 + 0.5 * mu[i];
            const Complex lap = cur[i + 1] - 2.0 * cur[i] + cur[i - 1];
            next[i] = (2.0 * cur[i] - half_mu * prev[i] + c2 * lap) / half_mu;
        }
        check_edges(next, step);
        std::swap(prev, cur);
        std::swap(cur, next);
        if (step % options.snapshot_stride == 0) {
            record_snapshot(rec, static_cast<double>(step) * dt, grid, cur, front_eps);
        }
    }
    return rec;
}

double wave_energy(const WavePacket& previous, const WavePacket& current, const MediumProfile& profile, double dt,
                   const UnitSystem& units) {
    const std::size_t n = profile.grid().count();
    const double dx = profile.grid().dx();
    const double c2 = units.c() * units.c();
    double kinetic = 0.0;
    double gradient = 0.0;
    double cutoff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        kinetic += std::norm(current.values[i] - previous.values[i]);
        const double kc = profile.cutoff()[i];
        cutoff += 0.5 * kc * kc * (std::norm(current.values[i]) + std::norm(previous.values[i]));
        if (i + 1 < n) {
            const Complex dp = previous.values[i + 1] - previous.values[i];
            const Complex dc = current.values[i + 1] - current.values[i];
            gradient += std::real(dp * std::conj(dc));
        }
    }
    return dx * (kinetic / (dt * dt) + c2 * gradient / (dx * dx) + c2 * cutoff);
}

namespace {

struct SplitStep {
    Fft fft;
    std::vector<Complex> kick;
    std::vector<Complex> drift;
};

SplitStep make_split_step(const Grid1D& grid, std::span<const double> potential, double mass, Complex time_step,
                          const UnitSystem& units) {
    // time_step = dt for real time, -i dtau for imaginary time.
    const std::size_t n = grid.count();
    SplitStep s{Fft(n), std::vector<Complex>(n), std::vector<Complex>(n)};
    const double hbar = units.hbar();
    for (std::size_t i = 0; i < n; ++i) s.kick[i] = std::exp(-kI * potential[i] * time_step / (2.0 * hbar));
    for (std::size_t j = 0; j < n; ++j) {
        const double k = dft_angular_frequency(j, n, grid.dx());
        s.drift[j] = std::exp(-kI * hbar * k * k * time_step / (2.0 * mass));
    }
    return s;
}

void apply_split_step(const SplitStep& s, std::vector<Complex>& psi) {
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i) psi[i] *= s.kick[i];
    s.fft.forward_inplace(psi);
    for (std::size_t j = 0; j < n; ++j) psi[j] *= s.drift[j];
    s.fft.inverse_inplace(psi);
    for (std::size_t i = 0; i < n; ++i) psi[i] *= s.kick[i];
}

double norm2(const std::vector<Complex>& psi, double dx) {
    double s = 0.0;
    for (const auto& z : psi) s += std::norm(z);
    return s * dx;
}

}  // namespace

PropagationRecord evolve_schrodinger(const WavePacket& initial, std::span<const double> potential, double mass,
                                     const SchrodingerRunOptions& options, const UnitSystem& units) {
    const Grid1D& grid = initial.grid;
    if (potential.size() != grid.count()) throw DomainError("evolve_schrodinger: potential size mismatch");
    if (!(mass > 0.0)) throw DomainError("evolve_schrodinger: mass must be > 0");
    if (!(options.dt > 0.0) || options.steps == 0 || options.snapshot_stride == 0) {
        throw DomainError("evolve_schrodinger: dt, steps and snapshot_stride must be positive");
    }
    const SplitStep step = make_split_step(grid, potential, mass, Complex{options.dt, 0.0}, units);
    std::vector<Complex> psi(initial.values);
    const double norm0 = norm2(psi, grid.dx());
    if (!(norm0 > 0.0)) throw DomainError("evolve_schrodinger: zero initial state");
    const double front_eps = options.front_epsilon * max_abs(psi);

    PropagationRecord rec;
    record_snapshot(rec, 0.0, grid, psi, front_eps);
    for (std::size_t n = 1; n <= options.steps; ++n) {
        apply_split_step(step, psi);
        if (n % options.snapshot_stride == 0 || n == options.steps) {
            const double drift = std::abs(norm2(psi, grid.dx()) / norm0 - 1.0);
            if (drift > options.max_norm_drift) {
                throw NumericalError("evolve_schrodinger: norm drift " + std::to_string(drift) +
                                     " exceeds tolerance; reduce the time step");
            }
            if (n % options.snapshot_stride == 0) {
                record_snapshot(rec, static_cast<double>(n) * options.dt, grid, psi, front_eps);
            }
        }
    }
    return rec;
}

WavePacket relax_ground_state(const WavePacket& guess, std::span<const double> potential, double mass, double dtau,
                              std::size_t max_steps, const UnitSystem& units) {
    const Grid1D& grid = guess.grid;
    if (potential.size() != grid.count()) throw DomainError("relax_ground_state: potential size mismatch");
    const SplitStep step = make_split_step(grid, potential, mass, Complex{0.0, -dtau}, units);
    std::vector<Complex> psi(guess.values);
    auto normalize = [&] {
        const double s = std::sqrt(norm2(psi, grid.dx()));
        if (!(s > 0.0)) throw DomainError("relax_ground_state: zero state");
        for (auto& z : psi) z /= s;
    };
    normalize();
    std::vector<Complex> last = psi;
    for (std::size_t n = 0; n < max_steps; ++n) {
        apply_split_step(step, psi);
        normalize();
        double change = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) change = std::max(change, std::abs(psi[i] - last[i]));
        last = psi;
        if (change < 1e-15) break;
    }
    return {grid, psi};
}

double front_position(const WavePacket& packet, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("front_position: epsilon must be > 0");
    const std::size_t n = packet.size();
    for (std::size_t j = n; j-- > 0;) {
        const double v = std::abs(packet.values[j]);
        if (v >= epsilon) {
            if (j + 1 == n) return packet.grid.point(j);
            const double outer = std::abs(packet.values[j + 1]);
            return packet.grid.point(j) + packet.grid.dx() * (v - epsilon) / (v - outer);
        }
    }
    throw DomainError("front_position: no sample reaches the threshold");
}

double peak_position(const WavePacket& packet) {
    return refine_peak(packet, peak_index(packet, 0, packet.size() - 1));
}

std::optional<double> peak_position(const WavePacket& packet, double x_lo, double x_hi) {
    const Grid1D& g = packet.grid;
    const double lo_f = std::ceil((x_lo - g.x_min()) / g.dx());
    const double hi_f = std::floor((x_hi - g.x_min()) / g.dx());
    const auto lo = static_cast<std::size_t>(std::max(0.0, lo_f));
    const auto hi = static_cast<std::size_t>(std::min(static_cast<double>(g.count() - 1), hi_f));
    if (hi <= lo + 1) return std::nullopt;
    std::size_t i = 0;
    try {
        i = peak_index(packet, lo, hi);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    if (i == lo || i == hi) return std::nullopt;
    return refine_peak(packet, i);
}

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("least_squares_line: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("least_squares_line: abscissae are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

namespace {

/// Time at which a fitted trajectory x = slope t + intercept reaches x.
double crossing_time(const LineFit& fit, double x) {
    if (!(fit.slope > 0.0)) throw NumericalError("peak traversal: trajectory is not moving right");
    return (x - fit.intercept) / fit.slope;
}

/// Fits the `window` samples whose positions are closest to `target`.
LineFit fit_near(const std::vector<double>& t, const std::vector<double>& x, double target, std::size_t window) {
    if (t.size() < window) throw NumericalError("peak traversal: too few trajectory samples");
    std::size_t centre = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (std::abs(x[i] - target) < std::abs(x[centre] - target)) centre = i;
    }
    std::size_t first = centre >= window / 2 ? centre - window / 2 : 0;
    first = std::min(first, t.size() - window);
    return least_squares_line(std::span(t).subspan(first, window), std::span(x).subspan(first, window));
}

}  // namespace

PeakTraversal measure_peak_traversal(const PropagationRecord& barrier_run, const PropagationRecord& vacuum_run,
                                     double x_entrance, double x_exit, double margin, std::size_t fit_window) {
    if (!(x_exit > x_entrance)) throw DomainError("measure_peak_traversal: need x_exit > x_entrance");
    if (fit_window < 2) throw DomainError("measure_peak_traversal: fit window must be >= 2");

    PeakTraversal out;
    const LineFit incident = fit_near(vacuum_run.times, vacuum_run.peak_positions, x_entrance, fit_window);
    out.entrance_time = crossing_time(incident, x_entrance);
    const LineFit vacuum_exit = fit_near(vacuum_run.times, vacuum_run.peak_positions, x_exit, fit_window);
    out.vacuum_exit_time = crossing_time(vacuum_exit, x_exit);

    std::vector<double> t;
    std::vector<double> x;
    for (std::size_t i = barrier_run.snapshots.size(); i-- > 0 && t.size() < fit_window;) {
        const auto& snap = barrier_run.snapshots[i];
        const auto p = peak_position(snap, x_exit + margin, snap.grid.x_max());
        if (p) {
            t.push_back(barrier_run.times[i]);
            x.push_back(*p);
        }
    }
    if (t.size() < fit_window) throw NumericalError("peak traversal: transmitted peak never cleared the exit margin");
    const LineFit transmitted = least_squares_line(t, x);
    out.transmitted_slope = transmitted.slope;
    out.exit_time = crossing_time(transmitted, x_exit);
    out.effective_velocity = (x_exit - x_entrance) / (out.exit_time - out.entrance_time);
    return out;
}

double light_cone_violation(const PropagationRecord& record, double support_lo, double support_hi,
                            const UnitSystem& units) {
    if (!(support_hi >= support_lo)) throw DomainError("light_cone_violation: empty support");
    double worst = 0.0;
    for (std::size_t n = 0; n < record.snapshots.size(); ++n) {
        const auto& snap = record.snapshots[n];
        const double reach = units.c() * record.times[n];
        // Samples sitting on the cone up to rounding count as inside.
        const double slack = 1e-9 * snap.grid.dx();
        for (std::size_t i = 0; i < snap.size(); ++i) {
            const double x = snap.grid.point(i);
            if (x < support_lo - reach - slack || x > support_hi + reach + slack) {
                worst = std::max(worst, std::abs(snap.values[i]));
            }
        }
    }
    return worst;
}

std::vector<double> front_speeds(const PropagationRecord& record) {
    std::vector<double> v;
    for (std::size_t i = 1; i < record.times.size(); ++i) {
        v.push_back((record.front_positions[i] - record.front_positions[i - 1]) /
                    (record.times[i] - record.times[i - 1]));
    }
    return v;
}

}  // namespace evlab
