#pragma once

// Dense complex linear algebra used by every other opscale module: a row-major
// complex matrix, a signal vector, a cyclic Jacobi eigensolver for Hermitian
// matrices and the spectral matrix function exp(-i*theta*G).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opscale {

using complex = std::complex<double>;

/// Thrown when operand shapes do not conform.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative solver exhausts its sweep budget.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n, complex fill = {}) : data_(n, fill) {}
    ComplexVector(std::initializer_list<complex> values) : data_(values) {}
    explicit ComplexVector(std::vector<complex> values) : data_(std::move(values)) {}

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    complex& operator[](std::size_t i) { return data_[i]; }
    const complex& operator[](std::size_t i) const { return data_[i]; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    std::span<complex> span() noexcept { return data_; }
    std::span<const complex> span() const noexcept { return data_; }

    double squared_norm() const noexcept {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return s;
    }
    double norm() const noexcept { return std::sqrt(squared_norm()); }

    bool operator==(const ComplexVector&) const = default;

private:
    std::vector<complex> data_;
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, complex fill = {})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    /// Row-major nested initializer, e.g. {{1, 2}, {3, 4}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw dimension_error("ComplexMatrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<complex> data() noexcept { return data_; }
    std::span<const complex> data() const noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

    bool operator==(const ComplexMatrix&) const = default;

private:
    void require_same_shape(const ComplexMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw dimension_error(std::string("ComplexMatrix::") + op + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw dimension_error("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows()) + ")");
    ComplexMatrix c(a.rows(), b.cols());
    // i-k-j order keeps the inner loop on contiguous rows of b and c.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex aik = a(i, k);
            if (aik == complex{}) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

inline ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols() != x.size())
        throw dimension_error("matvec: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                              std::to_string(x.size()) + " entries");
    ComplexVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        complex s{};
        auto arow = a.row(i);
        for (std::size_t k = 0; k < arow.size(); ++k) s += arow[k] * x[k];
        y[i] = s;
    }
    return y;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

inline complex trace(const ComplexMatrix& a) {
    if (!a.square()) throw dimension_error("trace: matrix is not square");
    complex s{};
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

/// Inner product <x, y> = sum x_k conj(y_k).
inline complex inner(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) throw dimension_error("inner: length mismatch");
    complex s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw dimension_error("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

/// max |a - a^H|; zero exactly for a Hermitian matrix.
inline double hermiticity_residual(const ComplexMatrix& a) {
    if (!a.square()) throw dimension_error("hermiticity_residual: matrix is not square");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

/// max |a^H a - I|.
inline double unitarity_residual(const ComplexMatrix& a) {
    return max_abs_diff(matmul(adjoint(a), a), ComplexMatrix::identity(a.cols()));
}

/// (a + a^H) / 2.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    if (!a.square()) throw dimension_error("hermitian_part: matrix is not square");
    ComplexMatrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

struct HermitianEigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
    int sweeps = 0;

    std::size_t size() const noexcept { return eigenvalues.size(); }

    ComplexVector eigenvector(std::size_t k) const {
        ComplexVector v(eigenvectors.rows());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
        return v;
    }
};

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kHermitianTolerance = 1e-10;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Sweeps run until the off-diagonal Frobenius norm drops below
/// tol * ||a||_F, with a hard cap of kJacobiMaxSweeps. Eigenvalues come back
/// ascending; ties keep the order in which the sweeps left them.
inline HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& a, double tol = 1e-14) {
    if (!a.square()) throw dimension_error("hermitian_eig: matrix is not square");
    if (!(tol > 0.0)) throw std::invalid_argument("hermitian_eig: tolerance must be positive");
    const std::size_t n = a.rows();
    if (n == 0) throw dimension_error("hermitian_eig: empty matrix");
    const double herm = hermiticity_residual(a);
    if (herm >= kHermitianTolerance * (1.0 + max_abs(a)))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian (residual " + std::to_string(herm) + ")");

    ComplexMatrix w = hermitian_part(a);
    for (std::size_t i = 0; i < n; ++i) w(i, i) = w(i, i).real();

    // vt holds the columns of V as rows.
    ComplexMatrix vt = ComplexMatrix::identity(n);

    const double scale = frobenius_norm(w);
    const double target = tol * scale;
    // Entries below this cannot push the off-diagonal norm above 0.1 * target.
    const double skip = 0.1 * target / static_cast<double>(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(w(i, j));
        return std::sqrt(2.0 * s);
    };

    int sweep = 0;
    double off = off_norm();
    while (off > target && scale > 0.0) {
        if (sweep == kJacobiMaxSweeps)
            throw convergence_error("hermitian_eig: no convergence after " + std::to_string(kJacobiMaxSweeps) +
                                        " sweeps (off-diagonal norm " + std::to_string(off) + ")",
                                    off);
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex apq = w(p, q);
                const double mag = std::abs(apq);
                if (mag <= skip) continue;

                const complex phase = apq / mag;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Rotation J: J_pp = J_qq = c, J_pq = s*phase, J_qp = -s*conj(phase).
                // New rows p and q of J^H W J, then mirror them into the columns.
                const complex s_ph = s * phase;
                const complex s_cph = s * std::conj(phase);
                auto rp = w.row(p);
                auto rq = w.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const complex xp = rp[k];
                    const complex xq = rq[k];
                    rp[k] = c * xp - s_ph * xq;
                    rq[k] = s_cph * xp + c * xq;
                    w(k, p) = std::conj(rp[k]);
                    w(k, q) = std::conj(rq[k]);
                }
                w(p, p) = app - t * mag;
                w(q, q) = aqq + t * mag;
                w(p, q) = 0.0;
                w(q, p) = 0.0;

                auto vp = vt.row(p);
                auto vq = vt.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    const complex xp = vp[k];
                    const complex xq = vq[k];
                    vp[k] = c * xp - s_cph * xq;
                    vq[k] = s_ph * xp + c * xq;
                }
            }
        }
        off = off_norm();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

    HermitianEigenDecomposition out;
    out.sweeps = sweep;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = w(order[k], order[k]).real();
        auto src = vt.row(order[k]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = src[i];
    }
    return out;
}

/// V diag(exp(-i theta lambda_k)) V^H from an existing decomposition.
inline ComplexMatrix unitary_function(const HermitianEigenDecomposition& eig, double theta) {
    const std::size_t n = eig.size();
    const ComplexMatrix& v = eig.eigenvectors;
    std::vector<complex> phase(n);
    for (std::size_t k = 0; k < n; ++k) phase[k] = std::polar(1.0, -theta * eig.eigenvalues[k]);

    // scaled = diag(phase) V^H, stored row-wise so the product below streams rows.
    ComplexMatrix scaled(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        auto row = scaled.row(k);
        for (std::size_t j = 0; j < n; ++j) row[j] = phase[k] * std::conj(v(j, k));
    }
    return matmul(v, scaled);
}

/// exp(-i theta G) applied to x without forming the matrix: V diag(...) V^H x.
inline ComplexVector apply_unitary_function(const HermitianEigenDecomposition& eig, double theta,
                                            const ComplexVector& x) {
    const std::size_t n = eig.size();
    if (x.size() != n) throw dimension_error("apply_unitary_function: length mismatch");
    const ComplexMatrix& v = eig.eigenvectors;
    std::vector<complex> coeff(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = v.row(i);
        for (std::size_t k = 0; k < n; ++k) coeff[k] += std::conj(row[k]) * x[i];
    }
    for (std::size_t k = 0; k < n; ++k) coeff[k] *= std::polar(1.0, -theta * eig.eigenvalues[k]);
    ComplexVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = v.row(i);
        complex s{};
        for (std::size_t k = 0; k < n; ++k) s += row[k] * coeff[k];
        y[i] = s;
    }
    return y;
}

/// exp(-i theta g) for Hermitian g, via the spectral decomposition of g.
inline ComplexMatrix unitary_function_of_hermitian(const ComplexMatrix& g, double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("unitary_function_of_hermitian: theta must be finite");
    return unitary_function(hermitian_eig(g), theta);
}

}  // namespace opscale
