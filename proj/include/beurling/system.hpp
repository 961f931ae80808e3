#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ball.hpp"
#include "config.hpp"
#include "metric.hpp"
#include "sequence.hpp"

namespace beurling {

/// C_delta = 1 / (1 + 2 log(1/delta)) for 0 < delta <= 1.
inline double C_delta_of(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("C_delta_of: delta must lie in (0, 1]");
    return 1.0 / (1.0 + 2.0 * -std::log(delta));
}

/// Upper bound 128 / (e delta C_delta) on sum_j |F_j(x)|, hence on the
/// constant of interpolation.
inline double theoretical_bound(double delta) {
    return 128.0 / (std::numbers::e * delta * C_delta_of(delta));
}

/// Stable sort by norm. Returns the sorted sequence and `order`, where
/// sorted[s] is input[order[s]].
inline std::pair<PointSequence, std::vector<std::size_t>> sort_by_norm(const PointSequence& seq) {
    std::vector<std::size_t> order(seq.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return seq[a].norm_sq() < seq[b].norm_sq();
    });
    std::vector<BallPoint> sorted;
    sorted.reserve(seq.size());
    for (auto i : order) sorted.push_back(seq[i]);
    return {PointSequence(seq.dim(), std::move(sorted), seq.label()), std::move(order)};
}

/// Inner products <x, x_k> against every node, shared by all evaluations at x.
struct PointTerms {
    std::vector<complex> w;
};

/// Beurling functions F_j of a finite sequence. Nodes are held sorted by
/// non-decreasing norm and every index taken by the evaluation functions is
/// a sorted index; perm()/position() translate to and from input order.
/// Immutable after construction.
class BeurlingSystem {
public:
    static BeurlingSystem build(const PointSequence& seq, const Tolerances& tol = {}) {
        if (seq.empty()) throw DomainError("build_system: empty sequence");
        auto [sorted, order] = sort_by_norm(seq);
        BeurlingSystem sys(std::move(sorted), std::move(order));
        sys.delta_ = carleson_delta(sys.points_, tol.delta_min).delta;
        if (!(sys.delta_ > 0.0))
            throw DomainError("build_system: Carleson constant zero (repeated point?)");
        sys.finish(tol);
        return sys;
    }

    /// Rebuilds a system from nodes already in sorted order plus the input
    /// order they came from. Used when reading system files.
    static BeurlingSystem restore(PointSequence sorted, std::vector<std::size_t> order,
                                  const Tolerances& tol = {}) {
        if (sorted.empty()) throw DomainError("restore: empty sequence");
        if (order.size() != sorted.size()) throw DomainError("restore: perm length mismatch");
        std::vector<bool> seen(order.size(), false);
        for (auto i : order) {
            if (i >= order.size() || seen[i]) throw DomainError("restore: perm is not a permutation");
            seen[i] = true;
        }
        for (std::size_t s = 0; s + 1 < sorted.size(); ++s)
            if (sorted[s].norm_sq() > sorted[s + 1].norm_sq())
                throw DomainError("restore: nodes are not sorted by norm");
        BeurlingSystem sys(std::move(sorted), std::move(order));
        sys.delta_ = carleson_delta(sys.points_, tol.delta_min).delta;
        if (!(sys.delta_ > 0.0)) throw DomainError("restore: Carleson constant zero");
        sys.finish(tol);
        return sys;
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return points_.dim(); }
    const PointSequence& points() const noexcept { return points_; }
    const BallPoint& node(std::size_t j) const { return points_[j]; }
    /// perm()[s] is the input index of sorted node s.
    const std::vector<std::size_t>& perm() const noexcept { return perm_; }
    /// position()[i] is the sorted index of input node i.
    const std::vector<std::size_t>& position() const noexcept { return position_; }
    double delta() const noexcept { return delta_; }
    double C_delta() const noexcept { return C_delta_; }
    double bound() const noexcept { return bound_; }
    const std::vector<complex>& B_diag() const noexcept { return B_diag_; }
    const std::vector<complex>& A_diag() const noexcept { return A_diag_; }

    complex gram(std::size_t k, std::size_t j) const { return gram_[k * size() + j]; }
    double node_norm_sq(std::size_t k) const { return points_[k].norm_sq(); }

    PointTerms terms_at(const BallPoint& x) const {
        if (x.dim() != dim())
            throw DomainError("evaluation point has dimension " + std::to_string(x.dim()) +
                              ", system has " + std::to_string(dim()));
        PointTerms t;
        t.w.resize(size());
        for (std::size_t k = 0; k < size(); ++k) t.w[k] = inner(x, points_[k]);
        return t;
    }

    /// g_{k,j}(x) = <phi_{x_k}(x), phi_{x_k}(x_j)> through the closed form.
    complex g(std::size_t k, std::size_t j, const PointTerms& t) const {
        return phi_inner_closed_form(t.w[j], node_norm_sq(k), t.w[k], gram(k, j));
    }

    /// B_j(x) = prod_{k != j} g_{k,j}(x), in index order.
    complex B(std::size_t j, const PointTerms& t) const {
        complex acc = 1.0;
        for (std::size_t k = 0; k < size(); ++k)
            if (k != j) acc *= g(k, j, t);
        return acc;
    }

    /// q_j(x) = ((1 - ||x_j||^2) / (1 - <x, x_j>))^2.
    complex q(std::size_t j, const PointTerms& t) const {
        const complex base = (1.0 - node_norm_sq(j)) / (1.0 - t.w[j]);
        return base * base;
    }

    /// b_k(x) = (1 - ||x_k||^2) / (1 - |<x_k, x>|^2).
    double b(std::size_t k, const PointTerms& t) const {
        return (1.0 - node_norm_sq(k)) / (1.0 - abs2(t.w[k]));
    }

    /// A_j(x) = sum_{k >= j} W_{kj} (1 + <x_k, x>) / (1 - <x_k, x>) with
    /// W_{kj} = (1 - ||x_k||^2)(1 - ||x_j||^2) / (1 - |<x_k, x_j>|^2).
    complex A(std::size_t j, const PointTerms& t) const {
        complex acc = 0.0;
        for (std::size_t k = j; k < size(); ++k) {
            const complex ck = std::conj(t.w[k]);
            acc += weight_[k * size() + j] * ((1.0 + ck) / (1.0 - ck));
        }
        return acc;
    }

    /// F_j(x) = B_j(x)/B_j(x_j) q_j(x)^2 exp(-C_delta (A_j(x) - A_j(x_j))).
    complex F(std::size_t j, const PointTerms& t) const {
        const complex qj = q(j, t);
        const complex dA = A(j, t) - A_diag_[j];
        const complex damp = std::polar(std::exp(-C_delta_ * dA.real()), -C_delta_ * dA.imag());
        return (B(j, t) / B_diag_[j]) * (qj * qj) * damp;
    }

    /// All F_j(x), j in sorted order.
    std::vector<complex> F_all(const BallPoint& x) const {
        const PointTerms t = terms_at(x);
        std::vector<complex> out(size());
        for (std::size_t j = 0; j < size(); ++j) out[j] = F(j, t);
        return out;
    }

    /// sum_j |F_j(x)|, summed in index order.
    double F_abs_sum(const BallPoint& x) const {
        const PointTerms t = terms_at(x);
        double s = 0.0;
        for (std::size_t j = 0; j < size(); ++j) s += std::abs(F(j, t));
        return s;
    }

private:
    BeurlingSystem(PointSequence sorted, std::vector<std::size_t> order)
        : points_(std::move(sorted)), perm_(std::move(order)) {}

    void finish(const Tolerances& tol) {
        const std::size_t n = size();
        position_.assign(n, 0);
        for (std::size_t s = 0; s < n; ++s) position_[perm_[s]] = s;

        C_delta_ = C_delta_of(delta_);
        bound_ = theoretical_bound(delta_);

        gram_.resize(n * n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) gram_[k * n + j] = inner(points_[k], points_[j]);

        weight_.assign(n * n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j; k < n; ++k)
                weight_[k * n + j] = (1.0 - node_norm_sq(k)) * (1.0 - node_norm_sq(j)) /
                                     (1.0 - abs2(gram(k, j)));

        B_diag_.resize(n);
        A_diag_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const PointTerms t = terms_at(points_[j]);
            B_diag_[j] = B(j, t);
            A_diag_[j] = A(j, t);
        }

        const double floor_B = delta_ * delta_ * (1.0 - tol.conditioning);
        const double ceil_A = 1.0 + 2.0 * -std::log(delta_) + tol.invariant;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(std::abs(B_diag_[j]) >= floor_B))
                throw ConditioningError("build_system: |B_" + std::to_string(j) +
                                        "(x_j)| fell below delta^2");
            if (!(A_diag_[j].real() <= ceil_A))
                throw ConditioningError("build_system: Re A_" + std::to_string(j) +
                                        "(x_j) exceeds 1 + 2 log(1/delta)");
        }
    }

    PointSequence points_;
    std::vector<std::size_t> perm_;
    std::vector<std::size_t> position_;
    double delta_ = 0.0;
    double C_delta_ = 0.0;
    double bound_ = 0.0;
    std::vector<complex> gram_;   // gram_[k*n + j] = <x_k, x_j>
    std::vector<double> weight_;  // weight_[k*n + j], k >= j
    std::vector<complex> B_diag_;
    std::vector<complex> A_diag_;
};

inline BeurlingSystem build_system(const PointSequence& seq, const Tolerances& tol = {}) {
    return BeurlingSystem::build(seq, tol);
}

// Single-index entry points. Indices are sorted indices.

namespace detail {
inline void check_index(std::size_t i, const BeurlingSystem& sys) {
    if (i >= sys.size())
        throw DomainError("index " + std::to_string(i) + " out of range for " +
                          std::to_string(sys.size()) + " nodes");
}
} // namespace detail

inline complex g_factor(std::size_t k, std::size_t j, const BallPoint& x, const BeurlingSystem& sys) {
    detail::check_index(k, sys);
    detail::check_index(j, sys);
    if (k == j) throw DomainError("g_factor: k must differ from j");
    return sys.g(k, j, sys.terms_at(x));
}

inline complex B_product(std::size_t j, const BallPoint& x, const BeurlingSystem& sys) {
    detail::check_index(j, sys);
    return sys.B(j, sys.terms_at(x));
}

inline complex q_func(std::size_t j, const BallPoint& x, const BeurlingSystem& sys) {
    detail::check_index(j, sys);
    return sys.q(j, sys.terms_at(x));
}

inline double b_func(std::size_t k, const BallPoint& x, const BeurlingSystem& sys) {
    detail::check_index(k, sys);
    return sys.b(k, sys.terms_at(x));
}

inline complex A_series(std::size_t j, const BallPoint& x, const BeurlingSystem& sys) {
    detail::check_index(j, sys);
    return sys.A(j, sys.terms_at(x));
}

inline complex F_beurling(std::size_t j, const BallPoint& x, const BeurlingSystem& sys) {
    detail::check_index(j, sys);
    return sys.F(j, sys.terms_at(x));
}

} // namespace beurling
