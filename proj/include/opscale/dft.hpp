#pragma once

// Index grids and the unitary DFT matrix for the ordinary (integer) and
// centered (half-integer) indexing schemes.
//
// Ordinary: N even -> [-N/2, N/2-1], N odd -> [-(N-1)/2, (N-1)/2].
// Centered: the ordinary set shifted by +0.5 (N even) or -0.5 (N odd), so an
// even-length centered grid is symmetric about the origin and an odd-length
// one is not.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opscale/linalg.hpp"

namespace opscale {

enum class IndexScheme { Ordinary, Centered };

inline std::string_view to_string(IndexScheme s) {
    return s == IndexScheme::Ordinary ? "ordinary" : "centered";
}

inline std::optional<IndexScheme> parse_scheme(std::string_view text) {
    if (text == "ordinary") return IndexScheme::Ordinary;
    if (text == "centered") return IndexScheme::Centered;
    return std::nullopt;
}

struct SampleGrid {
    std::size_t n_samples = 0;
    IndexScheme scheme = IndexScheme::Ordinary;
    std::vector<double> indices;             // ascending, unit spaced
    std::vector<std::int64_t> twice_indices; // 2 * indices, exact
    double spacing = 0.0;                    // h = 1/sqrt(N)
    std::vector<double> coordinates;         // u_k = indices[k] * h

    /// True when the index set is closed under negation.
    bool symmetric() const noexcept {
        return scheme == IndexScheme::Centered ? n_samples % 2 == 0 : n_samples % 2 == 1;
    }

    /// Storage position of an index value, or nullopt when it is not on the grid.
    std::optional<std::size_t> position_of(double index) const {
        const double k = index - indices.front();
        if (k < 0.0 || k > static_cast<double>(n_samples - 1) || k != std::floor(k)) return std::nullopt;
        return static_cast<std::size_t>(k);
    }
};

inline SampleGrid index_grid(std::size_t n_samples, IndexScheme scheme) {
    if (n_samples == 0) throw std::invalid_argument("index_grid: n_samples must be at least 1");
    const auto n = static_cast<std::int64_t>(n_samples);
    // First index, doubled so half integers stay exact.
    std::int64_t first2 = n % 2 == 0 ? -n : -(n - 1);
    if (scheme == IndexScheme::Centered) first2 += n % 2 == 0 ? 1 : -1;

    SampleGrid g;
    g.n_samples = n_samples;
    g.scheme = scheme;
    g.spacing = 1.0 / std::sqrt(static_cast<double>(n_samples));
    g.indices.reserve(n_samples);
    g.twice_indices.reserve(n_samples);
    g.coordinates.reserve(n_samples);
    for (std::int64_t k = 0; k < n; ++k) {
        const std::int64_t twice = first2 + 2 * k;
        const double index = static_cast<double>(twice) / 2.0;
        g.twice_indices.push_back(twice);
        g.indices.push_back(index);
        g.coordinates.push_back(index * g.spacing);
    }
    return g;
}

namespace detail {

/// exp(-j 2 pi m n / N) / sqrt(N) for doubled indices 2m, 2n. The product is
/// reduced modulo 4N in integer arithmetic before the exponential so large
/// arguments never reach std::polar.
inline complex dft_entry(std::int64_t twice_m, std::int64_t twice_n, std::int64_t n) {
    const std::int64_t period = 4 * n;
    std::int64_t r = (twice_m * twice_n) % period;
    if (r < 0) r += period;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(period);
    return std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
}

inline ComplexMatrix dft_from_twice_indices(const std::vector<std::int64_t>& twice) {
    const auto n = static_cast<std::int64_t>(twice.size());
    ComplexMatrix f(twice.size(), twice.size());
    for (std::size_t r = 0; r < twice.size(); ++r)
        for (std::size_t c = 0; c < twice.size(); ++c) f(r, c) = dft_entry(twice[r], twice[c], n);
    return f;
}

}  // namespace detail

/// Unitary DFT matrix F_mn = W_N^{mn} / sqrt(N), W_N = exp(-j 2 pi / N), with
/// rows and columns labelled by the scheme's indices in ascending order.
inline ComplexMatrix dft_matrix(const SampleGrid& grid) {
    return detail::dft_from_twice_indices(grid.twice_indices);
}

inline ComplexMatrix dft_matrix(std::size_t n_samples, IndexScheme scheme) {
    return dft_matrix(index_grid(n_samples, scheme));
}

}  // namespace opscale
