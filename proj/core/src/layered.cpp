#include "evlab/layered.hpp"

#include "evlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace evlab {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Complex RegionAmplitudes::value(double x) const {
    const Complex phase = std::exp(kI * q * (x - origin));
    return forward * phase + backward / phase;
}

Complex RegionAmplitudes::derivative(double x) const {
    const Complex phase = std::exp(kI * q * (x - origin));
    return kI * q * (forward * phase - backward / phase);
}

LayeredSolution::LayeredSolution(std::span<const Complex> q, std::span<const double> interfaces)
    : interfaces_(interfaces.begin(), interfaces.end()) {
    if (interfaces.empty() || q.size() != interfaces.size() + 1) {
        throw DomainError("LayeredSolution: need at least one interface and one wavenumber per region");
    }
    if (!std::is_sorted(interfaces.begin(), interfaces.end())) {
        throw DomainError("LayeredSolution: interfaces must be non-decreasing");
    }
    for (const auto& qi : q) {
        if (qi == Complex{0.0, 0.0}) {
            throw DomainError("LayeredSolution: zero wavenumber makes the plane-wave basis degenerate");
        }
    }

    const std::size_t n = q.size();
    regions_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        regions_[j].q = q[j];
        regions_[j].origin = j == 0 ? interfaces_.front() : interfaces_[j - 1];
    }

    // Outgoing wave only on the right, then match psi and psi' leftwards.
    regions_.back().forward = 1.0;
    regions_.back().backward = 0.0;
    for (std::size_t j = n - 1; j > 0; --j) {
        const double x0 = interfaces_[j - 1];
        const Complex v = regions_[j].value(x0);
        const Complex w = regions_[j].derivative(x0);
        auto& left = regions_[j - 1];
        const Complex e = std::exp(kI * left.q * (x0 - left.origin));
        const Complex ratio = w / (kI * left.q);
        left.forward = 0.5 * (v + ratio) / e;
        left.backward = 0.5 * (v - ratio) * e;
    }

    const Complex incident = regions_.front().forward;
    if (!std::isfinite(std::abs(incident)) || std::abs(incident) == 0.0) {
        throw NumericalError("LayeredSolution: amplitudes overflowed (barrier too opaque for double precision)");
    }
    for (auto& r : regions_) {
        r.forward /= incident;
        r.backward /= incident;
    }
}

std::size_t LayeredSolution::region_index(double x) const {
    // Region j covers [interfaces[j-1], interfaces[j]).
    return static_cast<std::size_t>(std::upper_bound(interfaces_.begin(), interfaces_.end(), x) -
                                    interfaces_.begin());
}

Complex LayeredSolution::value(double x) const { return regions_[region_index(x)].value(x); }

Complex LayeredSolution::derivative(double x) const { return regions_[region_index(x)].derivative(x); }

}  // namespace evlab
