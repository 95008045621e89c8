#include "evlab/numcore.hpp"

#include "evlab/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace evlab {

UnitSystem::UnitSystem(double hbar, double c, double default_mass)
    : hbar_(hbar), c_(c), default_mass_(default_mass) {
    if (!(hbar > 0.0) || !(c > 0.0) || !(default_mass > 0.0) || !std::isfinite(hbar) ||
        !std::isfinite(c) || !std::isfinite(default_mass)) {
        throw DomainError("UnitSystem: hbar, c and default_mass must be finite and strictly positive");
    }
}

UnitSystem UnitSystem::si_photon() {
    return {1.054571817e-34, 299792458.0, 9.1093837015e-31};
}

Grid1D::Grid1D(double x_min, double dx, std::size_t count) : x_min_(x_min), dx_(dx), count_(count) {
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x_min)) {
        throw DomainError("Grid1D: dx must be finite and > 0");
    }
    if (count < 2) {
        throw DomainError("Grid1D: count must be >= 2");
    }
}

Grid1D Grid1D::spanning(double a, double b, std::size_t count) {
    if (count < 2 || !(b > a)) {
        throw DomainError("Grid1D::spanning: need b > a and count >= 2");
    }
    return {a, (b - a) / static_cast<double>(count - 1), count};
}

std::vector<double> Grid1D::points() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = point(i);
    return out;
}

WavePacket::WavePacket(Grid1D g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.count()) {
        throw DomainError("WavePacket: sample count does not match grid");
    }
}

double WavePacket::norm_squared() const {
    double sum = 0.0;
    for (const auto& z : values) sum += std::norm(z);
    return sum * grid.dx();
}

std::vector<double> WavePacket::abs2() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](Complex z) { return std::norm(z); });
    return out;
}

Complex principal_sqrt(Complex z) {
    // std::sqrt already returns Re >= 0; only the sign of a zero imaginary
    // part on the negative real axis needs pinning.
    if (z.imag() == 0.0) {
        if (z.real() >= 0.0) return {std::sqrt(z.real()), 0.0};
        return {0.0, std::sqrt(-z.real())};
    }
    return std::sqrt(z);
}

namespace {

struct Segment {
    double a;
    double b;
    double value;
    double error;
    unsigned depth;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod_segment(const std::function<double(double)>& f, double a, double b, unsigned depth) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    static const auto& xk = Kronrod::abscissa();
    static const auto& wk = Kronrod::weights();
    static const auto& wg = Gauss::weights();

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double kronrod = wk[0] * f0;
    // Abscissae are stored ascending from the centre; the Gauss nodes are
    // the even-indexed Kronrod ones.
    double gauss = wg[0] * f0;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dxi = half * xk[i];
        const double pair = f(mid - dxi) + f(mid + dxi);
        kronrod += wk[i] * pair;
        if (i % 2 == 0) gauss += wg[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod)) {
        throw DomainError("integrate: integrand is not finite on the interval");
    }
    return {a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 QuadratureOptions options) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: need finite a < b");
    }
    if (!(tol > 0.0)) {
        throw DomainError("integrate: tol must be > 0");
    }
    constexpr std::size_t kMaxSegments = 500000;

    std::priority_queue<Segment> open;
    std::vector<Segment> frozen;  // reached max depth
    open.push(kronrod_segment(f, a, b, 0));

    auto totals = [&] {
        double value = 0.0;
        double error = 0.0;
        auto copy = open;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
        for (const auto& s : frozen) {
            value += s.value;
            error += s.error;
        }
        return std::pair{value, error};
    };

    double value = open.top().value;
    double error = open.top().error;
    std::size_t iterations = 0;
    while (true) {
        if (error <= tol * std::max(1.0, std::abs(value))) {
            // Re-sum to shed drift from incremental updates before deciding.
            std::tie(value, error) = totals();
            if (error <= tol * std::max(1.0, std::abs(value))) return value;
        }
        if (open.empty() || open.size() + frozen.size() > kMaxSegments) {
            std::tie(value, error) = totals();
            std::ostringstream msg;
            msg << "integrate: no convergence on [" << a << ", " << b << "] (estimate " << value
                << ", error " << error << ", max depth " << options.max_depth << ")";
            throw ConvergenceError(msg.str(), value, error);
        }
        Segment worst = open.top();
        open.pop();
        if (worst.depth >= options.max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = kronrod_segment(f, worst.a, mid, worst.depth + 1);
        Segment right = kronrod_segment(f, mid, worst.b, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
        if (++iterations % 4096 == 0) std::tie(value, error) = totals();
    }
}

namespace {

std::vector<double> trapezoid_weights(std::span<const double> density, const Grid1D& grid) {
    if (density.size() != grid.count()) {
        throw DomainError("std_dev: density size does not match grid");
    }
    std::vector<double> w(density.begin(), density.end());
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError("std_dev: density must be finite and non-negative");
        }
    }
    w.front() *= 0.5;
    w.back() *= 0.5;
    double total = 0.0;
    for (double v : w) total += v;
    if (!(total > 0.0)) {
        throw DomainError("std_dev: density has zero total mass");
    }
    return w;
}

}  // namespace

double weighted_mean(std::span<const double> density, const Grid1D& grid) {
    const auto w = trapezoid_weights(density, grid);
    double total = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        total += w[i];
        first += w[i] * grid.point(i);
    }
    return first / total;
}

double std_dev(std::span<const double> density, const Grid1D& grid) {
    const auto w = trapezoid_weights(density, grid);
    double total = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        total += w[i];
        first += w[i] * grid.point(i);
    }
    const double mean = first / total;
    double second = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = grid.point(i) - mean;
        second += w[i] * d * d;
    }
    return std::sqrt(std::max(0.0, second / total));
}

}  // namespace evlab
