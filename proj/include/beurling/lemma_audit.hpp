#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "ball.hpp"
#include "config.hpp"
#include "error.hpp"
#include "metric.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "sequence.hpp"

namespace beurling {

enum class AuditKind {
    Inequality,  // margin = (rhs - lhs) / scale, fails below -tolerance
    Identity,    // gap = |lhs - rhs| / scale, fails above tolerance
};

/// Outcome of a randomized falsification run. For inequalities worst_margin
/// is the smallest normalized margin seen; for identities it is the largest
/// normalized gap. Margins and gaps are divided by max(1, |lhs|, |rhs|).
struct AuditReport {
    std::string lemma_id;
    AuditKind kind = AuditKind::Inequality;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    nlohmann::json worst_case_input;

    bool passed() const noexcept { return failures == 0; }
};

namespace audit_detail {

using nlohmann::json;

inline json cjson(complex z) { return json::array({z.real(), z.imag()}); }

inline json vjson(const CVector& v) {
    json a = json::array();
    for (const auto& z : v.coords()) a.push_back(cjson(z));
    return a;
}

inline double scale_of(double lhs, double rhs) {
    return std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

inline double margin_of(double lhs, double rhs) { return (rhs - lhs) / scale_of(lhs, rhs); }

struct Trial {
    double value;  // margin or gap
    json input;
};

inline constexpr std::size_t kChunk = 4096;

/// Runs `trial(rng)` `trials` times on per-chunk streams derived from `seed`
/// and merges chunk results in order.
template <class TrialFn>
AuditReport run(std::string id, AuditKind kind, std::size_t trials, std::uint64_t seed,
                double tolerance, TrialFn trial) {
    if (trials == 0) throw DomainError("audit: trials must be at least 1");
    struct Partial {
        std::size_t failures = 0;
        bool have = false;
        double worst = 0.0;
        json input;
    };
    const std::size_t n_chunks = (trials + kChunk - 1) / kChunk;
    std::vector<Partial> parts(n_chunks);
    const bool inequality = kind == AuditKind::Inequality;
    // NaN ranks worst of all.
    auto badness = [inequality](double v) {
        if (std::isnan(v)) return std::numeric_limits<double>::infinity();
        return inequality ? -v : v;
    };
    for_each_chunk(n_chunks, [&](std::size_t c) {
        Rng rng = Rng::stream(seed, c);
        Partial& p = parts[c];
        const std::size_t hi = std::min(trials, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < hi; ++i) {
            Trial t = trial(rng);
            const bool fail = inequality ? !(t.value >= -tolerance) : !(t.value <= tolerance);
            if (fail) ++p.failures;
            if (!p.have || badness(t.value) > badness(p.worst)) {
                p.have = true;
                p.worst = t.value;
                p.input = std::move(t.input);
            }
        }
    });
    AuditReport r;
    r.lemma_id = std::move(id);
    r.kind = kind;
    r.trials = trials;
    r.tolerance = tolerance;
    bool have = false;
    for (auto& p : parts) {
        r.failures += p.failures;
        if (p.have && (!have || badness(p.worst) > badness(r.worst_margin))) {
            have = true;
            r.worst_margin = p.worst;
            r.worst_case_input = std::move(p.input);
        }
    }
    return r;
}

/// Ball point, half uniform and half close to the sphere (1 - r down to 1e-8).
inline CVector draw_point(Rng& rng, std::size_t dim) {
    for (;;) {
        CVector v(dim);
        double len2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = complex(rng.normal(), rng.normal());
            len2 += std::norm(v[i]);
        }
        if (len2 == 0.0) continue;
        const double r = rng.uniform() < 0.5
                             ? std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(dim)))
                             : 1.0 - std::pow(10.0, rng.uniform(-8.0, 0.0));
        CVector p = (r / std::sqrt(len2)) * v;
        if (norm_sq(p) < 1.0) return p;
    }
}

/// A point near `a` (relative offset down to 1e-8), kept inside the ball.
inline CVector draw_near(Rng& rng, const CVector& a) {
    const double eps = std::pow(10.0, rng.uniform(-8.0, -1.0));
    for (;;) {
        CVector p = a;
        for (std::size_t i = 0; i < a.dim(); ++i) p[i] += eps * complex(rng.normal(), rng.normal());
        if (norm_sq(p) < 1.0) return p;
        const double n = norm(p);
        p = ((1.0 - eps) / n) * p;
        if (norm_sq(p) < 1.0) return p;
    }
}

/// Three points, occasionally clustered to probe equality cases.
inline std::array<CVector, 3> draw_triple(Rng& rng, std::size_t dim) {
    CVector a = draw_point(rng, dim);
    const double mode = rng.uniform();
    if (mode < 0.6) return {a, draw_point(rng, dim), draw_point(rng, dim)};
    if (mode < 0.7) return {a, a, draw_point(rng, dim)};
    if (mode < 0.8) return {a, draw_near(rng, a), draw_point(rng, dim)};
    if (mode < 0.9) return {a, draw_point(rng, dim), draw_near(rng, a)};
    CVector b = draw_near(rng, a);
    return {a, b, draw_near(rng, b)};
}

inline double h_function(double t) {
    constexpr double e2 = std::numbers::e * std::numbers::e;
    return std::min(1.0, 256.0 / (e2 * t * t));
}

} // namespace audit_detail

/// h(t) = min{1, 256 / (e^2 t^2)}.
inline double h_function(double t) { return audit_detail::h_function(t); }

/// Closed form of the integral of h over (0, inf): h = 1 up to t = 16/e and
/// the tail integrates to 256 / (e^2 (16/e)) = 16/e.
inline double h_integral() {
    constexpr double knee = 16.0 / std::numbers::e;
    return knee + 256.0 / (std::numbers::e * std::numbers::e * knee);
}

// Per-trial margins. Inequality margins are (rhs - lhs) / max(1, |lhs|, |rhs|).

/// 1 - x <= -log x on (0, 1].
inline double log_inequality_margin(double x) {
    return audit_detail::margin_of(1.0 - x, -std::log(x));
}

/// Re((1 + a z) / (1 - a z)) = (1 - |a|^2 |z|^2) / |1 - a z|^2 for |a| <= 1,
/// |z| < 1. The gap is normalized by max(1, |(1 + a z) / (1 - a z)|).
inline double re_identity_gap(complex alpha, complex z) {
    const complex az = alpha * z;
    const complex ratio = (1.0 + az) / (1.0 - az);
    const double rhs = (1.0 - abs2(alpha) * abs2(z)) / abs2(1.0 - az);
    return std::abs(ratio.real() - rhs) / std::max(1.0, std::abs(ratio));
}

/// u^2 exp(-u t / 8) <= h(t) for 0 <= u <= 1, t > 0.
inline double min_bound_margin(double u, double t) {
    return audit_detail::margin_of(u * u * std::exp(-u * t / 8.0), h_function(t));
}

/// sum_j c_j h(sum_{k >= j} c_k) <= integral of h.
inline double sum_integral_margin(const std::vector<double>& c) {
    double tail = 0.0;
    double lhs = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) {
        tail += c[j];
        lhs += c[j] * h_function(tail);
    }
    return audit_detail::margin_of(lhs, h_integral());
}

/// |1 - <a,b>| <= (sqrt|1 - <a,c>| + sqrt|1 - <b,c>|)^2.
inline double rudin_margin(const CVector& a, const CVector& b, const CVector& c) {
    const double s = std::sqrt(std::abs(1.0 - inner(a, c))) + std::sqrt(std::abs(1.0 - inner(b, c)));
    return audit_detail::margin_of(std::abs(1.0 - inner(a, b)), s * s);
}

/// The smaller margin of
///   |1 - <x1,x2>| <= 2(|1 - <x1,x3>| + |1 - <x2,x3>|),
///   1 - |<x1,x2>| <= 2(1 - |<x1,x3>| + 1 - |<x2,x3>|).
inline double factor2_margin(const CVector& x1, const CVector& x2, const CVector& x3) {
    const complex p12 = inner(x1, x2), p13 = inner(x1, x3), p23 = inner(x2, x3);
    const double m1 = audit_detail::margin_of(std::abs(1.0 - p12),
                                              2.0 * (std::abs(1.0 - p13) + std::abs(1.0 - p23)));
    const double m2 = audit_detail::margin_of(1.0 - std::abs(p12),
                                              2.0 * ((1.0 - std::abs(p13)) + (1.0 - std::abs(p23))));
    return std::min(m1, m2);
}

/// For ||x_k|| >= ||x_j||:
///   (1 - |<x_k,x>|^2) / (1 - |<x_k,x_j>|^2) >= (1/8)(1 - ||x_k||^2) / (1 - |<x_j,x>|^2).
inline double eighth_margin(const CVector& xk, const CVector& xj, const CVector& x) {
    const double big = (1.0 - abs2(inner(xk, x))) / (1.0 - abs2(inner(xk, xj)));
    const double small = (1.0 - norm_sq(xk)) / (8.0 * (1.0 - abs2(inner(xj, x))));
    return audit_detail::margin_of(small, big);
}

inline AuditReport audit_log_inequality(std::size_t trials, std::uint64_t seed,
                                        const Tolerances& tol = {}) {
    return audit_detail::run(
        "log-inequality", AuditKind::Inequality, trials, seed, tol.margin, [](Rng& rng) {
            const double x = rng.uniform() < 0.5 ? rng.uniform_open0()
                                                 : std::pow(10.0, -rng.uniform(0.0, 300.0));
            return audit_detail::Trial{log_inequality_margin(x), {{"x", x}}};
        });
}

inline AuditReport audit_re_identity(std::size_t trials, std::uint64_t seed,
                                     const Tolerances& tol = {}) {
    return audit_detail::run(
        "re-identity", AuditKind::Identity, trials, seed, tol.identity, [](Rng& rng) {
            const double ra = rng.uniform() < 0.1 ? 1.0 : std::sqrt(rng.uniform());
            const complex alpha = std::polar(ra, 2.0 * std::numbers::pi * rng.uniform());
            double rz = std::sqrt(rng.uniform());
            if (rng.uniform() < 0.25) rz = 1.0 - std::pow(10.0, rng.uniform(-8.0, 0.0));
            const complex z = std::polar(rz, 2.0 * std::numbers::pi * rng.uniform());
            return audit_detail::Trial{re_identity_gap(alpha, z),
                                       {{"alpha", audit_detail::cjson(alpha)},
                                        {"z", audit_detail::cjson(z)}}};
        });
}

/// t ranges over (0, 1e3]; a fifth of the trials sit on the maximizer u = 16/t.
inline AuditReport audit_min_bound(std::size_t trials, std::uint64_t seed,
                                   const Tolerances& tol = {}) {
    return audit_detail::run(
        "min-bound", AuditKind::Inequality, trials, seed, tol.margin, [](Rng& rng) {
            const double t = rng.uniform() < 0.5 ? 1e3 * rng.uniform_open0()
                                                 : std::pow(10.0, rng.uniform(-6.0, 3.0));
            double u = rng.uniform();
            if (rng.uniform() < 0.2) u = std::min(1.0, 16.0 / t);
            return audit_detail::Trial{min_bound_margin(u, t), {{"u", u}, {"t", t}}};
        });
}

/// Random sequences of 1 to 100 terms in (0, 1).
inline AuditReport audit_sum_integral(std::size_t trials, std::uint64_t seed,
                                      const Tolerances& tol = {}) {
    return audit_detail::run(
        "sum-integral", AuditKind::Inequality, trials, seed, tol.margin, [](Rng& rng) {
            const std::size_t len = 1 + rng.below(100);
            const double power = std::pow(10.0, rng.uniform(-1.0, 1.0));
            std::vector<double> c(len);
            for (auto& ck : c) {
                do ck = std::pow(rng.uniform(), power);
                while (!(ck > 0.0 && ck < 1.0));
            }
            const double m = sum_integral_margin(c);
            return audit_detail::Trial{m, {{"c", std::move(c)}}};
        });
}

inline AuditReport audit_rudin_inequality(std::size_t trials, std::uint64_t seed, std::size_t dim,
                                          const Tolerances& tol = {}) {
    if (dim == 0) throw DomainError("audit: dim must be at least 1");
    return audit_detail::run(
        "rudin", AuditKind::Inequality, trials, seed, tol.margin, [dim](Rng& rng) {
            const auto [a, b, c] = audit_detail::draw_triple(rng, dim);
            return audit_detail::Trial{rudin_margin(a, b, c), {{"a", audit_detail::vjson(a)},
                                                               {"b", audit_detail::vjson(b)},
                                                               {"c", audit_detail::vjson(c)}}};
        });
}

inline AuditReport audit_factor2_inequalities(std::size_t trials, std::uint64_t seed,
                                              std::size_t dim, const Tolerances& tol = {}) {
    if (dim == 0) throw DomainError("audit: dim must be at least 1");
    return audit_detail::run(
        "factor2", AuditKind::Inequality, trials, seed, tol.margin, [dim](Rng& rng) {
            const auto [x1, x2, x3] = audit_detail::draw_triple(rng, dim);
            return audit_detail::Trial{factor2_margin(x1, x2, x3),
                                       {{"x1", audit_detail::vjson(x1)},
                                        {"x2", audit_detail::vjson(x2)},
                                        {"x3", audit_detail::vjson(x3)}}};
        });
}

/// The larger-norm point of each sampled pair plays x_k.
inline AuditReport audit_eighth_comparison(std::size_t trials, std::uint64_t seed, std::size_t dim,
                                           const Tolerances& tol = {}) {
    if (dim == 0) throw DomainError("audit: dim must be at least 1");
    return audit_detail::run(
        "eighth", AuditKind::Inequality, trials, seed, tol.margin, [dim](Rng& rng) {
            auto [xk, xj, x] = audit_detail::draw_triple(rng, dim);
            if (norm_sq(xk) < norm_sq(xj)) std::swap(xk, xj);
            return audit_detail::Trial{eighth_margin(xk, xj, x), {{"x_k", audit_detail::vjson(xk)},
                                                                  {"x_j", audit_detail::vjson(xj)},
                                                                  {"x", audit_detail::vjson(x)}}};
        });
}

/// For every j of a sequence with Carleson constant delta > 0:
///   sum_{k != j} (1 - ||x_k||^2) <= 2 log(1/delta) (1 + ||x_j||) / (1 - ||x_j||)
///   sum_k (1 - ||x_k||^2) <= (1 + 2 log(1/delta)) (1 + ||x_j||) / (1 - ||x_j||).
/// One trial per index j.
inline AuditReport audit_carleson_sums(const PointSequence& seq, const Tolerances& tol = {}) {
    const double delta = carleson_delta(seq, tol.delta_min).delta;
    if (!(delta > 0.0)) throw DomainError("audit_carleson_sums: Carleson constant zero");
    const double log_inv = -std::log(delta);
    double total = 0.0;
    for (const auto& p : seq.points()) total += 1.0 - p.norm_sq();

    AuditReport r;
    r.lemma_id = "carleson-sums";
    r.kind = AuditKind::Inequality;
    r.trials = seq.size();
    r.tolerance = tol.margin;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        double others = 0.0;
        for (std::size_t k = 0; k < seq.size(); ++k)
            if (k != j) others += 1.0 - seq[k].norm_sq();
        const double rj = seq[j].norm();
        const double ratio = (1.0 + rj) / (1.0 - rj);
        const double m = std::min(audit_detail::margin_of(others, 2.0 * log_inv * ratio),
                                  audit_detail::margin_of(total, (1.0 + 2.0 * log_inv) * ratio));
        if (!(m >= -tol.margin)) ++r.failures;
        if (j == 0 || m < r.worst_margin) {
            r.worst_margin = m;
            r.worst_case_input = {{"j", j}, {"delta", delta}, {"norm_j", rj}};
        }
    }
    return r;
}

/// Audit identifiers accepted by run_audit.
inline const std::vector<std::string>& audit_ids() {
    static const std::vector<std::string> ids = {"log-inequality", "re-identity", "min-bound",
                                                 "sum-integral",   "rudin",       "factor2",
                                                 "eighth"};
    return ids;
}

inline std::string canonical_audit_id(const std::string& id) {
    if (id == "eq10") return "log-inequality";
    if (id == "eq11") return "re-identity";
    return id;
}

/// Dispatches a randomized audit by id. Throws DomainError for unknown ids.
inline AuditReport run_audit(const std::string& id, std::size_t trials, std::uint64_t seed,
                             std::size_t dim, const Tolerances& tol = {}) {
    const std::string key = canonical_audit_id(id);
    if (key == "log-inequality") return audit_log_inequality(trials, seed, tol);
    if (key == "re-identity") return audit_re_identity(trials, seed, tol);
    if (key == "min-bound") return audit_min_bound(trials, seed, tol);
    if (key == "sum-integral") return audit_sum_integral(trials, seed, tol);
    if (key == "rudin") return audit_rudin_inequality(trials, seed, dim, tol);
    if (key == "factor2") return audit_factor2_inequalities(trials, seed, dim, tol);
    if (key == "eighth") return audit_eighth_comparison(trials, seed, dim, tol);
    throw DomainError("unknown audit id '" + id + "'");
}

} // namespace beurling
