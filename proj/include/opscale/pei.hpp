#pragma once

// Scaling by centered discrete dilated Hermite functions (CDDHFs).
//
// The dilated basis H_{p,M} consists of eigenvectors of M^4 D2 + U2, with
// U2 = diag((m - (N-1)/2)^2) on 0-based indices and D2 = F U2 F^-1 for the
// centered DFT on the same shifted indices. A signal is expanded in the
// undilated basis H_{p,1} and resynthesized with the same coefficients on
// H_{p,M}.
//
// Ordering. Both U2 and D2 commute with the reflection m -> N-1-m, so the
// eigenproblem is solved separately on the even and odd subspaces. Order p
// takes the (p/2)-th even vector for even p and the ((p-1)/2)-th odd vector
// for odd p, each block sorted by ascending eigenvalue.
//
// Signs. For M = 1 the entry of largest magnitude is made positive, lowest
// index first on ties. For M != 1, H_{p,M} takes the sign of H_{p,1} at the
// sample next to the centre: index N/2, or N/2 + 1 for odd p and odd N where
// the centre sample of an odd vector is zero. When that sample vanishes the
// sign of the overlap <H_{p,M}, H_{p,1}> is used instead.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opscale/dft.hpp"
#include "opscale/linalg.hpp"

namespace opscale {

struct CddhfBasis {
    std::size_t n_samples = 0;
    double m_factor = 1.0;
    std::vector<ComplexVector> vectors;  // vectors[p] = H_{p,M}
    std::vector<double> eigenvalues;     // eigenvalues[p] pairs with vectors[p]
    std::size_t near_degenerate = 0;     // within-parity eigenvalue gaps below kNearDegenerateGap

    static constexpr double kNearDegenerateGap = 1e-8;
};

inline ComplexMatrix pei_u_squared(std::size_t n_samples) {
    if (n_samples == 0) throw std::invalid_argument("pei_u_squared: n_samples must be at least 1");
    const double center = (static_cast<double>(n_samples) - 1.0) / 2.0;
    std::vector<double> diag(n_samples);
    for (std::size_t m = 0; m < n_samples; ++m) {
        const double k = static_cast<double>(m) - center;
        diag[m] = k * k;
    }
    return ComplexMatrix::diagonal(diag);
}

/// Centered DFT on the indices m - (N-1)/2, m = 0..N-1.
inline ComplexMatrix pei_centered_dft(std::size_t n_samples) {
    if (n_samples == 0) throw std::invalid_argument("pei_centered_dft: n_samples must be at least 1");
    std::vector<std::int64_t> twice(n_samples);
    const auto n = static_cast<std::int64_t>(n_samples);
    for (std::int64_t m = 0; m < n; ++m) twice[static_cast<std::size_t>(m)] = 2 * m - (n - 1);
    return detail::dft_from_twice_indices(twice);
}

inline ComplexMatrix pei_d_squared(const ComplexMatrix& u2, const ComplexMatrix& f_centered) {
    if (!u2.square() || !f_centered.square() || u2.rows() != f_centered.rows())
        throw dimension_error("pei_d_squared: U2 and F must be square and of equal size");
    if (const double r = unitarity_residual(f_centered); r > 1e-10)
        throw std::invalid_argument("pei_d_squared: F is not unitary (residual " + std::to_string(r) + ")");
    ComplexMatrix d2 = matmul(matmul(f_centered, u2), adjoint(f_centered));
    if (const double r = hermiticity_residual(d2); r > kHermitianTolerance * (1.0 + max_abs(d2)))
        throw std::runtime_error("pei_d_squared: result is not Hermitian (residual " + std::to_string(r) + ")");
    return d2;
}

namespace detail {

/// Real symmetric M^4 D2 + U2 with the imaginary rounding residue removed.
inline ComplexMatrix cddhf_operator(std::size_t n, double m_factor) {
    const ComplexMatrix u2 = pei_u_squared(n);
    const ComplexMatrix d2 = pei_d_squared(u2, pei_centered_dft(n));
    const double m4 = std::pow(m_factor, 4);
    ComplexMatrix a(n, n);
    double imag_residue = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const complex z = m4 * d2(i, j) + u2(i, j);
            imag_residue = std::max(imag_residue, std::abs(z.imag()));
            a(i, j) = z.real();
        }
    if (imag_residue > 1e-10 * (1.0 + max_abs(a)))
        throw std::runtime_error("cddhf_basis: M^4 D2 + U2 is not real (residue " + std::to_string(imag_residue) + ")");
    return hermitian_part(a);
}

struct ParityBlock {
    std::vector<double> eigenvalues;
    std::vector<ComplexVector> vectors;  // full length N
};

/// Eigenpairs of A restricted to the even (sign = +1) or odd (sign = -1)
/// reflection subspace, ascending.
inline ParityBlock solve_parity_block(const ComplexMatrix& a, int sign) {
    const std::size_t n = a.rows();
    const std::size_t half = n / 2;
    const double r = 1.0 / std::sqrt(2.0);

    // Orthonormal basis of the subspace, one column per pair (i, N-1-i) plus
    // the centre sample for odd N in the even block.
    std::vector<std::vector<std::pair<std::size_t, double>>> basis;
    for (std::size_t i = 0; i < half; ++i) basis.push_back({{i, r}, {n - 1 - i, sign * r}});
    if (n % 2 == 1 && sign > 0) basis.push_back({{half, 1.0}});

    ParityBlock out;
    const std::size_t dim = basis.size();
    if (dim == 0) return out;

    ComplexMatrix block(dim, dim);
    for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) {
            complex s{};
            for (const auto& [i, bi] : basis[x])
                for (const auto& [j, bj] : basis[y]) s += bi * a(i, j) * bj;
            block(x, y) = s;
        }

    const HermitianEigenDecomposition eig = hermitian_eig(hermitian_part(block));
    out.eigenvalues = eig.eigenvalues;
    for (std::size_t k = 0; k < dim; ++k) {
        ComplexVector v(n);
        for (std::size_t x = 0; x < dim; ++x) {
            // Real block, so the eigenvector is real up to a global phase;
            // the phase is removed below when the sign is fixed.
            for (const auto& [i, bi] : basis[x]) v[i] += bi * eig.eigenvectors(x, k);
        }
        out.vectors.push_back(std::move(v));
    }
    return out;
}

/// Rotates v by a global phase so its largest entry is real positive, lowest
/// index first among (relative) ties, and drops the remaining imaginary residue.
inline void normalize_phase_max_entry(ComplexVector& v) {
    double peak = 0.0;
    for (const auto& z : v) peak = std::max(peak, std::abs(z));
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) >= peak * (1.0 - 1e-12)) {
            pivot = i;
            break;
        }
    const complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
    for (auto& z : v) z = (z * phase).real();
}

/// Sample whose sign is preserved under dilation for order p.
inline std::size_t sign_reference_index(std::size_t n, std::size_t p) {
    return n % 2 == 1 && p % 2 == 1 ? n / 2 + 1 : n / 2;
}

/// Removes the global phase so v is real, then matches the sign of ref at the
/// order's reference sample.
inline void align_with(ComplexVector& v, const ComplexVector& ref, std::size_t p) {
    normalize_phase_max_entry(v);
    const std::size_t i = sign_reference_index(v.size(), p);
    const double a = v[i].real();
    const double b = ref[i].real();
    bool flip = false;
    if (std::abs(a) > 1e-12 && std::abs(b) > 1e-12)
        flip = (a < 0.0) != (b < 0.0);
    else
        flip = inner(v, ref).real() < 0.0;
    if (flip)
        for (auto& z : v) z = -z;
}

inline CddhfBasis build_cddhf(std::size_t n, double m_factor, const CddhfBasis* reference) {
    const ComplexMatrix a = cddhf_operator(n, m_factor);
    ParityBlock even = solve_parity_block(a, +1);
    ParityBlock odd = solve_parity_block(a, -1);

    CddhfBasis basis;
    basis.n_samples = n;
    basis.m_factor = m_factor;
    for (const ParityBlock* block : {&even, &odd})
        for (std::size_t k = 1; k < block->eigenvalues.size(); ++k)
            if (block->eigenvalues[k] - block->eigenvalues[k - 1] < CddhfBasis::kNearDegenerateGap)
                ++basis.near_degenerate;

    for (std::size_t p = 0; p < n; ++p) {
        ParityBlock& block = p % 2 == 0 ? even : odd;
        ComplexVector v = std::move(block.vectors[p / 2]);
        if (reference == nullptr)
            normalize_phase_max_entry(v);
        else
            align_with(v, reference->vectors[p], p);
        basis.vectors.push_back(std::move(v));
        basis.eigenvalues.push_back(block.eigenvalues[p / 2]);
    }
    return basis;
}

inline void validate_pei_args(std::size_t n, double m_factor) {
    if (n == 0) throw std::invalid_argument("cddhf_basis: n_samples must be at least 1");
    if (!(m_factor > 0.0) || !std::isfinite(m_factor))
        throw std::invalid_argument("cddhf_basis: M must be positive and finite");
}

}  // namespace detail

/// Sign-fixed CDDHF basis for (N, M); see the header comment for ordering.
inline CddhfBasis cddhf_basis(std::size_t n_samples, double m_factor) {
    detail::validate_pei_args(n_samples, m_factor);
    if (m_factor == 1.0) return detail::build_cddhf(n_samples, 1.0, nullptr);
    const CddhfBasis unit = detail::build_cddhf(n_samples, 1.0, nullptr);
    return detail::build_cddhf(n_samples, m_factor, &unit);
}

/// f_M = sum_p <f, H_{p,1}> H_{p,M}.
inline ComplexVector pei_scale(const ComplexVector& signal, const CddhfBasis& unit, const CddhfBasis& dilated) {
    const std::size_t n = signal.size();
    if (unit.n_samples != n || dilated.n_samples != n)
        throw dimension_error("pei_scale: basis size does not match the signal length");
    ComplexVector out(n);
    for (std::size_t p = 0; p < n; ++p) {
        const complex c = inner(signal, unit.vectors[p]);
        const ComplexVector& h = dilated.vectors[p];
        for (std::size_t i = 0; i < n; ++i) out[i] += c * h[i];
    }
    return out;
}

/// Memoizes bases per (N, M) under a read-mostly lock.
class CddhfCache {
public:
    std::shared_ptr<const CddhfBasis> basis(std::size_t n_samples, double m_factor) {
        detail::validate_pei_args(n_samples, m_factor);
        const auto key = std::make_pair(n_samples, m_factor);
        {
            std::shared_lock lock(mutex_);
            if (auto it = bases_.find(key); it != bases_.end()) return it->second;
        }
        std::shared_ptr<const CddhfBasis> fresh;
        if (m_factor == 1.0) {
            fresh = std::make_shared<const CddhfBasis>(detail::build_cddhf(n_samples, 1.0, nullptr));
        } else {
            const auto unit = basis(n_samples, 1.0);
            fresh = std::make_shared<const CddhfBasis>(detail::build_cddhf(n_samples, m_factor, unit.get()));
        }
        std::unique_lock lock(mutex_);
        return bases_.try_emplace(key, std::move(fresh)).first->second;
    }

    ComplexVector scale(const ComplexVector& signal, double m_factor) {
        const auto unit = basis(signal.size(), 1.0);
        const auto dilated = basis(signal.size(), m_factor);
        return pei_scale(signal, *unit, *dilated);
    }

private:
    std::shared_mutex mutex_;
    std::map<std::pair<std::size_t, double>, std::shared_ptr<const CddhfBasis>> bases_;
};

inline ComplexVector pei_scale(const ComplexVector& signal, double m_factor) {
    detail::validate_pei_args(signal.size(), m_factor);
    const CddhfBasis unit = cddhf_basis(signal.size(), 1.0);
    if (m_factor == 1.0) return pei_scale(signal, unit, unit);
    const CddhfBasis dilated = detail::build_cddhf(signal.size(), m_factor, &unit);
    return pei_scale(signal, unit, dilated);
}

}  // namespace opscale
