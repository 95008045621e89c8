#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace evlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Physical constants used by every formula. Natural units by default.
class UnitSystem {
public:
    UnitSystem() = default;
    UnitSystem(double hbar, double c, double default_mass);

    static UnitSystem natural() { return {}; }
    /// SI values: hbar in J s, c in m/s, electron mass in kg.
    static UnitSystem si_photon();

    double hbar() const noexcept { return hbar_; }
    double c() const noexcept { return c_; }
    double default_mass() const noexcept { return default_mass_; }

private:
    double hbar_ = 1.0;
    double c_ = 1.0;
    double default_mass_ = 1.0;
};

/// Uniform grid x_i = x_min + i*dx, i in [0, count).
class Grid1D {
public:
    Grid1D(double x_min, double dx, std::size_t count);

    /// Grid with `count` points spanning [a, b] inclusive.
    static Grid1D spanning(double a, double b, std::size_t count);

    double x_min() const noexcept { return x_min_; }
    double dx() const noexcept { return dx_; }
    std::size_t count() const noexcept { return count_; }
    double x_max() const noexcept { return point(count_ - 1); }
    double point(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }
    std::vector<double> points() const;

private:
    double x_min_;
    double dx_;
    std::size_t count_;
};

/// Complex samples on a uniform grid. The grid may be spatial or temporal.
struct WavePacket {
    Grid1D grid;
    std::vector<Complex> values;

    WavePacket(Grid1D g, std::vector<Complex> v);

    std::size_t size() const noexcept { return values.size(); }
    /// Rectangle-rule sum of |psi|^2 dx.
    double norm_squared() const;
    std::vector<double> abs2() const;
};

/// Square root on the principal branch: Re >= 0, and the negative real axis
/// maps to the positive imaginary axis regardless of the sign of zero.
Complex principal_sqrt(Complex z);

struct QuadratureOptions {
    unsigned max_depth = 60;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b].
/// Guarantees |I - exact| <= tol * max(1, |I|) by its error estimate, or
/// throws ConvergenceError carrying the best estimate.
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 QuadratureOptions options = {});

/// Standard deviation of the grid variable under a non-negative density,
/// using trapezoid weights. The density need not be normalized.
double std_dev(std::span<const double> density, const Grid1D& grid);

/// Weighted mean under the same conventions as std_dev.
double weighted_mean(std::span<const double> density, const Grid1D& grid);

}  // namespace evlab
