#pragma once

// Closed-form test functions and their samples on a SampleGrid.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "opscale/dft.hpp"
#include "opscale/linalg.hpp"

namespace opscale {

enum class TestFunction { ChirpedPulse, Trapezoid };

inline std::string_view to_string(TestFunction f) {
    return f == TestFunction::ChirpedPulse ? "chirp" : "trapezoid";
}

inline std::optional<TestFunction> parse_function(std::string_view text) {
    if (text == "chirp") return TestFunction::ChirpedPulse;
    if (text == "trapezoid") return TestFunction::Trapezoid;
    return std::nullopt;
}

/// Whether a scaled reference carries the unitary M^{-1/2} amplitude.
enum class Amplitude { Unitary, Plain };

/// rect * rect, the unit triangle.
inline double tri(double u) { return std::max(0.0, 1.0 - std::abs(u)); }

inline complex evaluate(TestFunction fn, double u) {
    switch (fn) {
        case TestFunction::ChirpedPulse:
            // exp(-pi u^2 - j pi u^2)
            return std::polar(std::exp(-std::numbers::pi * u * u), -std::numbers::pi * u * u);
        case TestFunction::Trapezoid:
            return 1.5 * tri(u / 2.0) - 0.5 * tri(2.0 * u);
    }
    throw std::invalid_argument("evaluate: unknown test function");
}

inline ComplexVector sample(TestFunction fn, const SampleGrid& grid) {
    ComplexVector v(grid.n_samples);
    for (std::size_t k = 0; k < grid.n_samples; ++k) v[k] = evaluate(fn, grid.coordinates[k]);
    return v;
}

/// Samples of M^{-1/2} f(u / M) (or f(u / M) with Amplitude::Plain).
inline ComplexVector scaled_reference(TestFunction fn, const SampleGrid& grid, double m_factor,
                                      Amplitude amplitude = Amplitude::Unitary) {
    if (!(m_factor > 0.0) || !std::isfinite(m_factor))
        throw std::invalid_argument("scaled_reference: M must be positive and finite");
    if (m_factor == 1.0) return sample(fn, grid);
    const double gain = amplitude == Amplitude::Unitary ? 1.0 / std::sqrt(m_factor) : 1.0;
    ComplexVector v(grid.n_samples);
    for (std::size_t k = 0; k < grid.n_samples; ++k) v[k] = gain * evaluate(fn, grid.coordinates[k] / m_factor);
    return v;
}

}  // namespace opscale
