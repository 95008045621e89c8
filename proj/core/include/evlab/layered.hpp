#pragma once

#include "evlab/numcore.hpp"

#include <span>
#include <vector>

namespace evlab {

/// Amplitudes of psi = forward * e^{iq(x - origin)} + backward * e^{-iq(x - origin)}
/// in one region of a piecewise-constant medium. With q = i*kappa the
/// forward term is the decaying e^{-kappa x} wave.
struct RegionAmplitudes {
    Complex q;
    double origin;
    Complex forward;
    Complex backward;

    Complex value(double x) const;
    Complex derivative(double x) const;
};

/// Stationary scattering state of a layered medium, unit wave incident
/// from the left and nothing incoming from the right. Region 0 and every
/// inner region take their origin at their left interface (region 0 uses
/// the first interface); the last region uses the last interface, so
/// `transmission()` is referenced to the exit plane.
class LayeredSolution {
public:
    /// `q` holds one wavenumber per region (interfaces.size() + 1 of them);
    /// interfaces must be non-decreasing.
    LayeredSolution(std::span<const Complex> q, std::span<const double> interfaces);

    Complex reflection() const { return regions_.front().backward; }
    Complex transmission() const { return regions_.back().forward; }
    const std::vector<RegionAmplitudes>& regions() const { return regions_; }
    const std::vector<double>& interfaces() const { return interfaces_; }

    std::size_t region_index(double x) const;
    Complex value(double x) const;
    Complex derivative(double x) const;

private:
    std::vector<RegionAmplitudes> regions_;
    std::vector<double> interfaces_;
};

}  // namespace evlab
