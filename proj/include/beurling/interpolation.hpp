#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ball.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "system.hpp"

namespace beurling {

/// Deterministic sample of the open ball. The first
/// n_samples - round(n_samples * boundary_fraction) points are uniform in the
/// ball (radius u^{1/(2 dim)} on a uniform complex direction); the remainder
/// have radii in [0.99, 0.999999] with 1 - r log-uniform.
inline std::vector<BallPoint> sample_ball(std::size_t dim, std::size_t n_samples, std::uint64_t seed,
                                          double boundary_fraction) {
    if (dim == 0) throw DomainError("sample_ball: dim must be at least 1");
    if (!(boundary_fraction >= 0.0 && boundary_fraction <= 1.0))
        throw DomainError("sample_ball: boundary_fraction must lie in [0, 1]");
    const auto n_boundary =
        static_cast<std::size_t>(std::llround(static_cast<double>(n_samples) * boundary_fraction));
    const std::size_t n_uniform = n_samples - n_boundary;

    Rng rng(seed);
    std::vector<BallPoint> out;
    out.reserve(n_samples);
    while (out.size() < n_samples) {
        CVector v(dim);
        double len2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            v[i] = complex(re, im);
            len2 += re * re + im * im;
        }
        if (len2 == 0.0) continue;
        const double r = out.size() < n_uniform
                             ? std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(dim)))
                             : 1.0 - std::pow(10.0, rng.uniform(-6.0, -2.0));
        CVector p = (r / std::sqrt(len2)) * v;
        if (!(norm_sq(p) < 1.0)) continue;  // r rounded onto the sphere
        out.emplace_back(std::move(p));
    }
    return out;
}

/// f = sum_j alpha_j F_j for targets alpha given in input order.
class Interpolant {
public:
    Interpolant(BeurlingSystem sys, std::vector<complex> alpha)
        : sys_(std::move(sys)), alpha_(std::move(alpha)) {
        if (alpha_.size() != sys_.size())
            throw DomainError("make_interpolant: " + std::to_string(alpha_.size()) +
                              " values for " + std::to_string(sys_.size()) + " nodes");
        for (const auto& a : alpha_)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw DomainError("make_interpolant: non-finite target value");
        sorted_alpha_.resize(alpha_.size());
        for (std::size_t s = 0; s < sys_.size(); ++s) sorted_alpha_[s] = alpha_[sys_.perm()[s]];
    }

    const BeurlingSystem& system() const noexcept { return sys_; }
    /// Targets in input order.
    const std::vector<complex>& alpha() const noexcept { return alpha_; }

    double alpha_sup() const {
        double m = 0.0;
        for (const auto& a : alpha_) m = std::max(m, std::abs(a));
        return m;
    }

    complex operator()(const BallPoint& x) const {
        const PointTerms t = sys_.terms_at(x);
        complex acc = 0.0;
        for (std::size_t s = 0; s < sys_.size(); ++s)
            if (sorted_alpha_[s] != 0.0) acc += sorted_alpha_[s] * sys_.F(s, t);
        return acc;
    }

private:
    BeurlingSystem sys_;
    std::vector<complex> alpha_;
    std::vector<complex> sorted_alpha_;
};

inline Interpolant make_interpolant(BeurlingSystem sys, std::vector<complex> alpha) {
    return Interpolant(std::move(sys), std::move(alpha));
}

inline complex evaluate(const Interpolant& f, const BallPoint& x) { return f(x); }

/// |f(x_i) - alpha_i| for every node, in input order.
inline std::vector<double> node_residuals(const Interpolant& f) {
    const auto& sys = f.system();
    std::vector<double> res(sys.size());
    for (std::size_t s = 0; s < sys.size(); ++s) {
        const std::size_t i = sys.perm()[s];
        res[i] = std::abs(f(sys.node(s)) - f.alpha()[i]);
    }
    return res;
}

inline double verify_nodes(const Interpolant& f) {
    const auto res = node_residuals(f);
    return *std::max_element(res.begin(), res.end());
}

struct NormEstimate {
    double empirical_sup = 0.0;  // max over samples of sum_j |F_j(x)|
    std::size_t samples_used = 0;
    double theoretical_bound = 0.0;
    BallPoint argmax_point = BallPoint::origin(1);
    std::uint64_t seed = 0;
    double boundary_fraction = 0.0;
};

/// Sampled lower estimate of sup_x sum_j |F_j(x)|. That sum is the largest
/// |T(alpha)(x)| over |alpha|_inf <= 1, so the estimate bounds |T| from below.
/// Ties in the maximum resolve to the earliest sample.
inline NormEstimate estimate_constant(const BeurlingSystem& sys, std::size_t n_samples,
                                      std::uint64_t seed, double boundary_fraction = 0.5) {
    if (n_samples == 0) throw DomainError("estimate_constant: need at least one sample");
    const auto samples = sample_ball(sys.dim(), n_samples, seed, boundary_fraction);

    constexpr std::size_t chunk = 256;
    const std::size_t n_chunks = (n_samples + chunk - 1) / chunk;
    std::vector<std::pair<double, std::size_t>> best(n_chunks, {-1.0, 0});
    for_each_chunk(n_chunks, [&](std::size_t c) {
        const std::size_t hi = std::min(n_samples, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < hi; ++i) {
            const double v = sys.F_abs_sum(samples[i]);
            if (v > best[c].first) best[c] = {v, i};
        }
    });
    auto winner = best.front();
    for (const auto& b : best)
        if (b.first > winner.first) winner = b;

    NormEstimate est;
    est.empirical_sup = winner.first;
    est.samples_used = n_samples;
    est.theoretical_bound = sys.bound();
    est.argmax_point = samples[winner.second];
    est.seed = seed;
    est.boundary_fraction = boundary_fraction;
    return est;
}

} // namespace beurling
