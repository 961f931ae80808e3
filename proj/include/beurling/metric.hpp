#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ball.hpp"
#include "config.hpp"
#include "sequence.hpp"

namespace beurling {

/// |z|^2 as re^2 + im^2.
inline double abs2(complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

/// Pseudohyperbolic distance from the closed form
///   rho^2 = 1 - (1 - ||x||^2)(1 - ||y||^2) / |1 - <x, y>|^2,
/// with rho^2 clamped to [0, 1] before the square root.
inline double rho_formula(const BallPoint& x, const BallPoint& y) {
    require_same_dim(x.vec(), y.vec());
    const double num = (1.0 - x.norm_sq()) * (1.0 - y.norm_sq());
    const double den = abs2(1.0 - inner(x, y));
    const double rho2 = std::clamp(1.0 - num / den, 0.0, 1.0);
    return std::sqrt(rho2);
}

/// Pseudohyperbolic distance as ||phi_y(x)||.
inline double rho_automorphism(const BallPoint& x, const BallPoint& y) {
    require_same_dim(x.vec(), y.vec());
    return norm(automorphism_vec(y, x));
}

/// <phi_y(x), phi_y(z)> from the inner products alone:
///   1 - (1 - <x,z>)(1 - <y,y>) / ((1 - <x,y>)(1 - <y,z>)).
inline complex phi_inner_closed_form(complex xz, double yy, complex xy, complex yz) {
    return 1.0 - ((1.0 - xz) * (1.0 - yy)) / ((1.0 - xy) * (1.0 - yz));
}

inline complex phi_inner_identity(const BallPoint& y, const BallPoint& x, const BallPoint& z) {
    require_same_dim(x.vec(), y.vec());
    require_same_dim(x.vec(), z.vec());
    return phi_inner_closed_form(inner(x, z), y.norm_sq(), inner(x, y), inner(y, z));
}

struct CarlesonReport {
    double delta = 0.0;
    std::vector<double> per_index_products;  // prod_{k != j} rho(x_k, x_j), input order
    bool satisfied = false;                   // delta > threshold
    double threshold = 0.0;
};

/// Products longer than this are accumulated as exp(sum log rho).
inline constexpr std::size_t kLogProductThreshold = 256;

/// Carleson constant of a finite sequence. A one-point sequence has delta = 1
/// (empty product); a repeated point forces delta = 0.
inline CarlesonReport carleson_delta(const PointSequence& seq, double threshold) {
    const std::size_t n = seq.size();
    if (n == 0) throw DomainError("carleson_delta: empty sequence");

    std::vector<double> rho(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            rho[a * n + b] = rho[b * n + a] = rho_formula(seq[a], seq[b]);

    CarlesonReport report;
    report.threshold = threshold;
    report.per_index_products.resize(n);
    const bool use_logs = n > kLogProductThreshold;
    for (std::size_t j = 0; j < n; ++j) {
        double acc = use_logs ? 0.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            if (use_logs)
                acc += std::log(rho[k * n + j]);
            else
                acc *= rho[k * n + j];
        }
        report.per_index_products[j] = use_logs ? std::exp(acc) : acc;
    }
    report.delta = *std::min_element(report.per_index_products.begin(),
                                     report.per_index_products.end());
    report.satisfied = report.delta > threshold;
    return report;
}

inline CarlesonReport carleson_delta(const PointSequence& seq) {
    return carleson_delta(seq, Tolerances{}.delta_min);
}

/// True iff 1 - ||x_{k+1}|| < c (1 - ||x_k||) for every consecutive pair, in
/// the given order.
inline bool hayman_newman_check(const PointSequence& seq, double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("hayman_newman_check: c must lie in (0, 1)");
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
        if (!(1.0 - seq[k + 1].norm() < c * (1.0 - seq[k].norm()))) return false;
    return true;
}

/// max_k (1 - ||x_{k+1}||) / (1 - ||x_k||); 0 for fewer than two points.
/// The check passes for exactly those c in (0, 1) above this ratio.
inline double hayman_newman_ratio(const PointSequence& seq) {
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
        worst = std::max(worst, (1.0 - seq[k + 1].norm()) / (1.0 - seq[k].norm()));
    return worst;
}

} // namespace beurling
