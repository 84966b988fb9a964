#pragma once

// Unitary discrete scaling: M_M = exp(-i 2 pi ln(M) (UD + DU) / 2).
//
// The continuous operator takes f(u) to M^{-1/2} f(u / M); the matrix keeps
// the same hyperdifferential form with U and D replaced by their finite
// duals, so it is unitary and M_a M_b = M_{ab} exactly in exact arithmetic.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "opscale/linalg.hpp"
#include "opscale/operators.hpp"

namespace opscale {

struct ScalingSpec {
    double m_factor = 1.0;
    std::size_t n_samples = 1;
    IndexScheme scheme = IndexScheme::Centered;

    void validate() const {
        if (!(m_factor > 0.0) || !std::isfinite(m_factor))
            throw std::invalid_argument("scaling factor M must be positive and finite, got " +
                                        std::to_string(m_factor));
        if (n_samples == 0) throw std::invalid_argument("n_samples must be at least 1");
    }

    /// Rotation angle 2 pi ln M applied to the generator.
    double theta() const { return 2.0 * std::numbers::pi * std::log(m_factor); }
};

namespace detail {
inline void require_matching(const ScalingSpec& spec, const OperatorSet& ops) {
    spec.validate();
    if (ops.n_samples != spec.n_samples || ops.scheme != spec.scheme)
        throw std::invalid_argument("operator set was built for N=" + std::to_string(ops.n_samples) + " " +
                                    std::string(to_string(ops.scheme)) + ", scaling spec asks for N=" +
                                    std::to_string(spec.n_samples) + " " + std::string(to_string(spec.scheme)));
}
}  // namespace detail

inline ComplexMatrix scaling_matrix(const ScalingSpec& spec, const OperatorSet& ops) {
    detail::require_matching(spec, ops);
    return unitary_function_of_hermitian(ops.generator, spec.theta());
}

inline ComplexVector scale_signal(const ComplexVector& signal, const ScalingSpec& spec, const OperatorSet& ops) {
    detail::require_matching(spec, ops);
    if (signal.size() != spec.n_samples)
        throw dimension_error("scale_signal: signal has " + std::to_string(signal.size()) + " samples, expected " +
                              std::to_string(spec.n_samples));
    return matvec(scaling_matrix(spec, ops), signal);
}

/// Memoizes operator sets and generator spectra per (N, scheme) and scaling
/// matrices per (M, N, scheme). Lookups take a shared lock; inserts take the
/// unique lock, and a value computed concurrently by two threads is stored
/// once (the computations are deterministic, so either copy is the same).
class ScalingCache {
public:
    struct Entry {
        OperatorSet ops;
        HermitianEigenDecomposition spectrum;  // of ops.generator
    };

    std::shared_ptr<const Entry> entry(std::size_t n_samples, IndexScheme scheme) {
        const auto key = std::make_pair(n_samples, scheme);
        {
            std::shared_lock lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        auto fresh = std::make_shared<Entry>();
        fresh->ops = make_operator_set(n_samples, scheme);
        fresh->spectrum = hermitian_eig(fresh->ops.generator);
        std::unique_lock lock(mutex_);
        return entries_.try_emplace(key, std::move(fresh)).first->second;
    }

    std::shared_ptr<const ComplexMatrix> matrix(const ScalingSpec& spec) {
        spec.validate();
        const auto key = std::make_tuple(spec.m_factor, spec.n_samples, spec.scheme);
        {
            std::shared_lock lock(mutex_);
            if (auto it = matrices_.find(key); it != matrices_.end()) return it->second;
        }
        auto e = entry(spec.n_samples, spec.scheme);
        auto fresh = std::make_shared<const ComplexMatrix>(unitary_function(e->spectrum, spec.theta()));
        std::unique_lock lock(mutex_);
        return matrices_.try_emplace(key, std::move(fresh)).first->second;
    }

    ComplexVector scale(const ComplexVector& signal, const ScalingSpec& spec) {
        if (signal.size() != spec.n_samples)
            throw dimension_error("ScalingCache::scale: signal length does not match N");
        return matvec(*matrix(spec), signal);
    }

private:
    std::shared_mutex mutex_;
    std::map<std::pair<std::size_t, IndexScheme>, std::shared_ptr<const Entry>> entries_;
    std::map<std::tuple<double, std::size_t, IndexScheme>, std::shared_ptr<const ComplexMatrix>> matrices_;
};

}  // namespace opscale
