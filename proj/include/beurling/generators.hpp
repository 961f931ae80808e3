#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ball.hpp"
#include "error.hpp"
#include "interpolation.hpp"
#include "sequence.hpp"

namespace beurling {

enum class GeneratorKind { RadialGeometric, OrthogonalDirections, RandomBall };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::RadialGeometric;
    std::size_t n = 1;
    std::size_t dim = 1;
    double c = 0.5;   // 1 - r_{k+1} = c (1 - r_k)
    double r0 = 0.0;  // first radius
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_spec(const GeneratorSpec& spec) {
    if (spec.n == 0) throw DomainError("generator: n must be at least 1");
    if (spec.dim == 0) throw DomainError("generator: dim must be at least 1");
    if (spec.kind != GeneratorKind::RandomBall) {
        if (!(spec.c > 0.0 && spec.c < 1.0)) throw DomainError("generator: c must lie in (0, 1)");
        if (!(spec.r0 >= 0.0 && spec.r0 < 1.0)) throw DomainError("generator: r0 must lie in [0, 1)");
    }
}

/// r_k = 1 - (1 - r0) c^k for k = 0..n-1.
inline std::vector<double> geometric_radii(const GeneratorSpec& spec) {
    std::vector<double> radii(spec.n);
    double gap = 1.0 - spec.r0;
    for (std::size_t k = 0; k < spec.n; ++k) {
        const double r = 1.0 - gap;
        if (!(gap > 0.0) || !(r < 1.0))
            throw DomainError("generator: radius " + std::to_string(k) +
                              " rounds to the unit sphere; reduce n or raise c");
        radii[k] = r;
        gap *= spec.c;
    }
    return radii;
}

} // namespace detail

/// Points r_k e_1 on one ray with 1 - r_k = (1 - r0) c^k.
inline PointSequence gen_radial_geometric(const GeneratorSpec& spec) {
    detail::check_spec(spec);
    std::vector<BallPoint> pts;
    for (double r : detail::geometric_radii(spec)) pts.emplace_back(r * CVector::basis(spec.dim, 0));
    return PointSequence(spec.dim, std::move(pts), "radial-geometric");
}

/// Points r_k e_k on distinct basis directions, radii as in the radial kind.
inline PointSequence gen_orthogonal_directions(const GeneratorSpec& spec) {
    detail::check_spec(spec);
    if (spec.n > spec.dim)
        throw DomainError("orthogonal-directions: n = " + std::to_string(spec.n) +
                          " exceeds dim = " + std::to_string(spec.dim));
    const auto radii = detail::geometric_radii(spec);
    std::vector<BallPoint> pts;
    for (std::size_t k = 0; k < spec.n; ++k) pts.emplace_back(radii[k] * CVector::basis(spec.dim, k));
    return PointSequence(spec.dim, std::move(pts), "orthogonal-directions");
}

/// Uniform points in the ball.
inline PointSequence gen_random_ball(const GeneratorSpec& spec) {
    detail::check_spec(spec);
    return PointSequence(spec.dim, sample_ball(spec.dim, spec.n, spec.seed, 0.0), "random-ball");
}

inline PointSequence generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
    case GeneratorKind::RadialGeometric: return gen_radial_geometric(spec);
    case GeneratorKind::OrthogonalDirections: return gen_orthogonal_directions(spec);
    case GeneratorKind::RandomBall: return gen_random_ball(spec);
    }
    throw DomainError("generator: unknown kind");
}

} // namespace beurling
