#pragma once

// Finite matrix forms of coordinate multiplication (U) and differentiation (D).
//
// The half-sample central difference
//     D_h f(u) = (f(u + h/2) - f(u - h/2)) / (i 2 pi h) = sinc(h D) D
// is symmetric but needs samples between grid points. Defining its
// coordinate-domain twin the same way, U_h = sinc(h U) U, gives a plain
// multiplication by sin(pi h u) / (pi h), which samples cleanly at u = n h:
//     U_nn = sqrt(N)/pi * sin(pi n / N).
// D is then fixed by Fourier duality, D = F^-1 U F, so U = F D F^-1 holds by
// construction and neither side is a free choice.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "opscale/dft.hpp"
#include "opscale/linalg.hpp"

namespace opscale {

struct OperatorSet {
    std::size_t n_samples = 0;
    IndexScheme scheme = IndexScheme::Ordinary;
    SampleGrid grid;
    ComplexMatrix f;          // unitary DFT
    ComplexMatrix u;          // coordinate multiplication, real diagonal
    ComplexMatrix d;          // differentiation, F^-1 U F
    ComplexMatrix generator;  // (UD + DU) / 2

    /// Odd-length centered grids are not symmetric about the origin, so the
    /// symmetry-based properties (odd U, vanishing trace) do not apply.
    bool asymmetric_grid() const noexcept { return !grid.symmetric(); }
};

inline ComplexMatrix coord_matrix(const SampleGrid& grid) {
    const double n = static_cast<double>(grid.n_samples);
    const double amplitude = std::sqrt(n) / std::numbers::pi;
    std::vector<double> diag(grid.n_samples);
    for (std::size_t k = 0; k < grid.n_samples; ++k)
        diag[k] = amplitude * std::sin(std::numbers::pi * grid.indices[k] / n);
    return ComplexMatrix::diagonal(diag);
}

inline ComplexMatrix diff_matrix(const ComplexMatrix& f, const ComplexMatrix& u) {
    if (!f.square() || !u.square() || f.rows() != u.rows())
        throw dimension_error("diff_matrix: F and U must be square and of equal size");
    if (const double r = unitarity_residual(f); r > 1e-10)
        throw std::invalid_argument("diff_matrix: F is not unitary (residual " + std::to_string(r) + ")");
    for (std::size_t i = 0; i < u.rows(); ++i) {
        if (u(i, i).imag() != 0.0) throw std::invalid_argument("diff_matrix: U must be real");
        for (std::size_t j = 0; j < u.cols(); ++j)
            if (i != j && u(i, j) != complex{}) throw std::invalid_argument("diff_matrix: U must be diagonal");
    }
    // F^-1 = F^H; scale the columns of F^H by the diagonal of U before the product.
    ComplexMatrix fh_u = adjoint(f);
    for (std::size_t i = 0; i < fh_u.rows(); ++i) {
        auto row = fh_u.row(i);
        for (std::size_t k = 0; k < row.size(); ++k) row[k] *= u(k, k).real();
    }
    return matmul(fh_u, f);
}

/// (UD + DU) / 2, re-Hermitized to remove rounding asymmetry.
inline ComplexMatrix scaling_generator(const ComplexMatrix& u, const ComplexMatrix& d) {
    if (!u.square() || !d.square() || u.rows() != d.rows())
        throw dimension_error("scaling_generator: U and D must be square and of equal size");
    ComplexMatrix g = matmul(u, d);
    g += matmul(d, u);
    g *= 0.5;
    return hermitian_part(g);
}

inline OperatorSet make_operator_set(std::size_t n_samples, IndexScheme scheme) {
    OperatorSet ops;
    ops.n_samples = n_samples;
    ops.scheme = scheme;
    ops.grid = index_grid(n_samples, scheme);
    ops.f = dft_matrix(ops.grid);
    ops.u = coord_matrix(ops.grid);
    ops.d = diff_matrix(ops.f, ops.u);
    ops.generator = scaling_generator(ops.u, ops.d);
    return ops;
}

/// max |U - F D F^-1|.
inline double duality_residual(const ComplexMatrix& f, const ComplexMatrix& u, const ComplexMatrix& d) {
    return max_abs_diff(u, matmul(matmul(f, d), adjoint(f)));
}

// Rejected alternatives, kept for contrast in the test suite.

/// diag(n h): multiplication by the bare sample coordinate.
inline ComplexMatrix naive_coord_matrix(const SampleGrid& grid) {
    return ComplexMatrix::diagonal(grid.coordinates);
}

/// One-sided difference (f[n+1] - f[n]) / (i 2 pi h) on the circulant domain.
inline ComplexMatrix forward_difference_matrix(const SampleGrid& grid) {
    const std::size_t n = grid.n_samples;
    const complex scale = 1.0 / (complex(0.0, 2.0 * std::numbers::pi) * grid.spacing);
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, k) -= scale;
        m(k, (k + 1) % n) += scale;
    }
    return m;
}

}  // namespace opscale
