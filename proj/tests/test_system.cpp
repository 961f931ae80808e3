#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "beurling.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace beurling;
using testing_support::random_point;

namespace {

BallPoint pt(std::initializer_list<complex> c) { return BallPoint(CVector(c)); }

PointSequence radial_1d(std::vector<double> radii) {
    std::vector<BallPoint> pts;
    for (double r : radii) pts.push_back(pt({r}));
    return PointSequence(1, std::move(pts));
}

oracle::cvec coords(const BallPoint& p) { return {p.vec().coords().begin(), p.vec().coords().end()}; }

/// Random sequence whose Carleson constant is at least 0.2.
PointSequence random_sequence(std::uint64_t seed, std::size_t n, std::size_t dim) {
    for (std::uint64_t s = seed;; ++s) {
        Rng rng(s);
        std::vector<BallPoint> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, dim, 0.99));
        PointSequence seq(dim, pts);
        if (carleson_delta(seq).delta >= 0.2) return seq;
    }
}

const PointSequence& mixed_sequence() {
    static const PointSequence seq = [] {
        // Unsorted, two equal norms, several directions.
        return PointSequence(3, {pt({0.0, 0.9, 0.0}), pt({0.3, complex(0.0, 0.2), 0.0}),
                                 pt({0.0, 0.0, -0.6}), pt({complex(0.5, 0.5), 0.0, 0.0}),
                                 pt({0.0, complex(0.0, -0.9), 0.0}), pt({0.1, 0.0, 0.05})});
    }();
    return seq;
}

} // namespace

TEST(SortByNorm, IdentityReversalAndStability) {
    auto [s1, p1] = sort_by_norm(radial_1d({0.1, 0.2, 0.3}));
    EXPECT_EQ(p1, (std::vector<std::size_t>{0, 1, 2}));
    auto [s2, p2] = sort_by_norm(radial_1d({0.3, 0.2, 0.1}));
    EXPECT_EQ(p2, (std::vector<std::size_t>{2, 1, 0}));
    EXPECT_EQ(s2[0].vec()[0], complex(0.1));

    const PointSequence ties(1, {pt({0.5}), pt({-0.5}), pt({0.1}), pt({complex(0.0, 0.5)})});
    auto [s3, p3] = sort_by_norm(ties);
    EXPECT_EQ(p3, (std::vector<std::size_t>{2, 0, 1, 3}));
}

TEST(SortByNorm, PermutationIsBijectionAndSorted) {
    auto [sorted, perm] = sort_by_norm(mixed_sequence());
    std::vector<bool> seen(perm.size());
    for (auto i : perm) seen.at(i) = true;
    for (bool b : seen) EXPECT_TRUE(b);
    for (std::size_t s = 0; s + 1 < sorted.size(); ++s) EXPECT_LE(sorted[s].norm(), sorted[s + 1].norm());
    EXPECT_EQ(perm[4], 0u);  // 0.9 e2 precedes -0.9i e2, input order kept
    EXPECT_EQ(perm[5], 4u);
}

TEST(CDelta, ClosedFormValues) {
    EXPECT_EQ(C_delta_of(1.0), 1.0);
    EXPECT_NEAR(C_delta_of(std::exp(-0.5)), 0.5, 1e-15);
    EXPECT_NEAR(C_delta_of(std::exp(-2.0)), 0.2, 1e-15);
    EXPECT_THROW(C_delta_of(0.0), DomainError);
    EXPECT_THROW(C_delta_of(-0.1), DomainError);
    EXPECT_THROW(C_delta_of(1.5), DomainError);
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double c = C_delta_of(i / 100.0);
        EXPECT_GT(c, prev);
        EXPECT_LE(c, 1.0);
        prev = c;
    }
}

TEST(TheoreticalBound, ClosedFormValues) {
    EXPECT_NEAR(theoretical_bound(1.0), 128.0 / std::numbers::e, 1e-12);
    EXPECT_NEAR(theoretical_bound(1.0), 47.08857, 1e-5);
    EXPECT_NEAR(theoretical_bound(std::exp(-0.5)), 256.0 / std::sqrt(std::numbers::e), 1e-11);
    EXPECT_NEAR(theoretical_bound(std::exp(-0.5)), 155.27, 0.01);
    EXPECT_GT(theoretical_bound(0.5), theoretical_bound(0.9));
    EXPECT_THROW(theoretical_bound(0.0), DomainError);
}

TEST(BuildSystem, RadialThreePoints) {
    const auto sys = build_system(radial_1d({0.1, 0.5, 0.9}));
    const auto products = oracle::disc_products({0.1, 0.5, 0.9});
    EXPECT_NEAR(sys.delta(), *std::min_element(products.begin(), products.end()), 1e-15);
    EXPECT_EQ(sys.bound(), theoretical_bound(sys.delta()));
    EXPECT_EQ(sys.C_delta(), C_delta_of(sys.delta()));
}

TEST(BuildSystem, RepeatedPointIsRejected) {
    const PointSequence seq(1, {pt({0.1}), pt({0.5}), pt({0.1})});
    EXPECT_THROW(build_system(seq), DomainError);
    EXPECT_THROW(build_system(PointSequence(1, {})), DomainError);
}

TEST(BuildSystem, DiagonalInvariants) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto sys = build_system(random_sequence(seed, 8, 3));
        const double d = sys.delta();
        for (std::size_t j = 0; j < sys.size(); ++j) {
            EXPECT_GE(std::abs(sys.B_diag()[j]), d * d - 1e-12);
            EXPECT_LE(sys.A_diag()[j].real(), 1.0 + 2.0 * std::log(1.0 / d) + 1e-9);
        }
        EXPECT_GT(sys.C_delta(), 0.0);
        EXPECT_LE(sys.C_delta(), 1.0);
    }
}

TEST(BuildSystem, ConditioningGuardrailRaises) {
    Tolerances strict;
    strict.conditioning = -1.0;  // demands |B_j(x_j)| >= 2 delta^2, impossible at the minimizer
    EXPECT_THROW(build_system(radial_1d({0.1, 0.5, 0.9}), strict), ConditioningError);
}

TEST(BuildSystem, SinglePoint) {
    const BallPoint x1 = pt({complex(0.3, -0.2), 0.4});
    const auto sys = build_system(PointSequence(2, {x1}));
    EXPECT_EQ(sys.delta(), 1.0);
    EXPECT_EQ(sys.C_delta(), 1.0);
    EXPECT_NEAR(sys.bound(), 128.0 / std::numbers::e, 1e-12);
    EXPECT_EQ(sys.B_diag()[0], complex(1.0));

    // F_1(x) = q_1(x)^2 exp(-(A_1(x) - A_1(x_1))) with A_1(x_1) = 1.
    Rng rng(47);
    const auto c1 = coords(x1);
    const double n1 = std::real(oracle::dot(c1, c1));
    for (int t = 0; t < 100; ++t) {
        const BallPoint x = random_point(rng, 2);
        const auto cx = coords(x);
        const std::complex<double> q = std::pow((1 - n1) / (1.0 - oracle::dot(cx, c1)), 2);
        const std::complex<double> w = oracle::dot(c1, cx);
        const std::complex<double> A = (1 - n1) * (1 - n1) / (1 - n1 * n1) * (1.0 + w) / (1.0 - w);
        const std::complex<double> expect = q * q * std::exp(-(A - 1.0));
        EXPECT_LE(std::abs(F_beurling(0, x, sys) - expect), 1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST(GFactor, ValuesAtNodes) {
    const auto sys = build_system(mixed_sequence());
    for (std::size_t j = 0; j < sys.size(); ++j)
        for (std::size_t k = 0; k < sys.size(); ++k) {
            if (k == j) continue;
            EXPECT_LT(std::abs(g_factor(k, j, sys.node(k), sys)), 1e-15);
            const double rho = rho_formula(sys.node(k), sys.node(j));
            EXPECT_NEAR(std::real(g_factor(k, j, sys.node(j), sys)), rho * rho, 1e-14);
        }
    EXPECT_THROW(g_factor(1, 1, sys.node(0), sys), DomainError);
    EXPECT_THROW(g_factor(0, 99, sys.node(0), sys), DomainError);
}

TEST(GFactor, BoundedAndMatchesExplicitAutomorphisms) {
    const auto sys = build_system(random_sequence(5, 6, 4));
    Rng rng(53);
    for (int t = 0; t < 300; ++t) {
        const BallPoint x = random_point(rng, 4);
        for (std::size_t j = 0; j < sys.size(); ++j)
            for (std::size_t k = 0; k < sys.size(); ++k) {
                if (k == j) continue;
                const complex g = g_factor(k, j, x, sys);
                EXPECT_LE(std::abs(g), 1.0 + 1e-12);
                const auto a = automorphism_phi(sys.node(k), x);
                const auto b = automorphism_phi(sys.node(k), sys.node(j));
                EXPECT_LE(std::abs(g - oracle::dot(coords(a), coords(b))), 1e-12);
            }
    }
}

TEST(BProduct, NodesAndDiscEnumeration) {
    const std::vector<std::complex<double>> z = {0.2, std::complex<double>(0.0, 0.6), -0.75};
    std::vector<BallPoint> pts;
    for (auto v : z) pts.push_back(pt({v}));
    const auto sys = build_system(PointSequence(1, pts));

    // 1-dim: phi_a(x) = (a - x) / (1 - x conj(a)), so g_{k,j}(x) = phi_k(x) conj(phi_k(x_j)).
    auto phi = [](std::complex<double> a, std::complex<double> x) { return (a - x) / (1.0 - x * std::conj(a)); };
    Rng rng(59);
    for (int t = 0; t < 200; ++t) {
        const BallPoint x = random_point(rng, 1);
        for (std::size_t j = 0; j < 3; ++j) {
            const auto zj = sys.node(j).vec()[0];
            std::complex<double> expect = 1.0;
            for (std::size_t k = 0; k < 3; ++k) {
                if (k == j) continue;
                const auto zk = sys.node(k).vec()[0];
                expect *= phi(zk, x.vec()[0]) * std::conj(phi(zk, zj));
            }
            EXPECT_LE(std::abs(B_product(j, x, sys) - expect), 1e-13);
        }
    }
    for (std::size_t j = 0; j < 3; ++j) {
        double prod = 1.0;
        for (std::size_t k = 0; k < 3; ++k) {
            if (k == j) continue;
            prod *= std::pow(oracle::disc_rho(sys.node(k).vec()[0], sys.node(j).vec()[0]), 2);
            EXPECT_LT(std::abs(B_product(j, sys.node(k), sys)), 1e-15);
        }
        EXPECT_NEAR(B_product(j, sys.node(j), sys).real(), prod, 1e-14);
    }
}

TEST(BProduct, TwoPointsIsSingleFactor) {
    const auto sys = build_system(PointSequence(2, {pt({0.1, 0.2}), pt({-0.4, complex(0.0, 0.3)})}));
    Rng rng(61);
    for (int t = 0; t < 50; ++t) {
        const BallPoint x = random_point(rng, 2);
        EXPECT_EQ(B_product(0, x, sys), g_factor(1, 0, x, sys));
        EXPECT_EQ(B_product(1, x, sys), g_factor(0, 1, x, sys));
    }
}

TEST(QFunc, NodeOriginAndBound) {
    const auto sys = build_system(random_sequence(7, 5, 4));
    for (std::size_t j = 0; j < sys.size(); ++j) {
        EXPECT_EQ(q_func(j, sys.node(j), sys), complex(1.0));
        const double s = 1.0 - sys.node(j).norm_sq();
        EXPECT_NEAR(q_func(j, BallPoint::origin(4), sys).real(), s * s, 1e-15);
    }
    Rng rng(67);
    for (int t = 0; t < 1000; ++t) {
        const BallPoint x = random_point(rng, 4);
        for (std::size_t j = 0; j < sys.size(); ++j) {
            const double b = b_func(j, x, sys);
            EXPECT_LE(std::abs(q_func(j, x, sys)), 4.0 * b * b + 1e-12);
        }
    }
}

TEST(BFunc, ValuesAndRange) {
    const auto sys = build_system(random_sequence(11, 5, 3));
    for (std::size_t k = 0; k < sys.size(); ++k) {
        const double nk = sys.node(k).norm_sq();
        EXPECT_NEAR(b_func(k, BallPoint::origin(3), sys), 1.0 - nk, 1e-15);
        EXPECT_NEAR(b_func(k, sys.node(k), sys), 1.0 / (1.0 + nk), 1e-14);
    }
    Rng rng(71);
    for (int t = 0; t < 1000; ++t) {
        const BallPoint x = random_point(rng, 3);
        for (std::size_t k = 0; k < sys.size(); ++k) {
            const double b = b_func(k, x, sys);
            EXPECT_GT(b, 0.0);
            EXPECT_LE(b, 1.0);
        }
    }
}

TEST(ASeries, LastIndexHasOneTerm) {
    const auto sys = build_system(random_sequence(13, 5, 2));
    const std::size_t last = sys.size() - 1;
    const auto xl = coords(sys.node(last));
    const double nl = std::real(oracle::dot(xl, xl));
    Rng rng(73);
    for (int t = 0; t < 50; ++t) {
        const BallPoint x = random_point(rng, 2);
        const auto w = oracle::dot(xl, coords(x));
        const std::complex<double> expect = (1 - nl) / (1 + nl) * (1.0 + w) / (1.0 - w);
        EXPECT_LE(std::abs(A_series(last, x, sys) - expect), 1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST(ASeries, RealPartAtNodeIsSumOfComplementaryDistances) {
    const auto sys = build_system(mixed_sequence());
    for (std::size_t j = 0; j < sys.size(); ++j) {
        double expect = 0.0;
        for (std::size_t k = j; k < sys.size(); ++k) {
            const double r = rho_formula(sys.node(k), sys.node(j));
            expect += 1.0 - r * r;
        }
        EXPECT_NEAR(A_series(j, sys.node(j), sys).real(), expect, 1e-13);
    }
}

TEST(ASeries, RealPartMatchesModulusForm) {
    const auto sys = build_system(random_sequence(17, 7, 4));
    Rng rng(79);
    for (int t = 0; t < 300; ++t) {
        const BallPoint x = random_point(rng, 4);
        const auto cx = coords(x);
        for (std::size_t j = 0; j < sys.size(); ++j) {
            const auto cj = coords(sys.node(j));
            double expect = 0.0;
            for (std::size_t k = j; k < sys.size(); ++k) {
                const auto ck = coords(sys.node(k));
                const double nk = std::real(oracle::dot(ck, ck)), nj = std::real(oracle::dot(cj, cj));
                const auto wkx = oracle::dot(ck, cx);
                expect += (1 - nk) * (1 - nj) * (1 - std::norm(wkx)) /
                          ((1 - std::norm(oracle::dot(ck, cj))) * std::norm(1.0 - wkx));
            }
            const double got = A_series(j, x, sys).real();
            EXPECT_GT(got, 0.0);
            EXPECT_LE(std::abs(got - expect), 1e-12 * std::max(1.0, expect));
        }
    }
}

TEST(FBeurling, KroneckerAtNodes) {
    const auto sys = build_system(mixed_sequence());
    for (std::size_t j = 0; j < sys.size(); ++j)
        for (std::size_t k = 0; k < sys.size(); ++k) {
            const complex v = F_beurling(j, sys.node(k), sys);
            if (j == k)
                EXPECT_LE(std::abs(v - 1.0), 1e-15);
            else
                EXPECT_LE(std::abs(v), 1e-12);
        }
}

TEST(FBeurling, ExactlyOneOnOwnNode) {
    const auto sys = build_system(random_sequence(19, 10, 6));
    for (std::size_t j = 0; j < sys.size(); ++j) EXPECT_EQ(F_beurling(j, sys.node(j), sys).real(), 1.0);
}

TEST(FBeurling, InputOrderThroughPosition) {
    const PointSequence& input = mixed_sequence();
    const auto sys = build_system(input);
    for (std::size_t a = 0; a < input.size(); ++a)
        for (std::size_t b = 0; b < input.size(); ++b) {
            const complex v = F_beurling(sys.position()[a], input[b], sys);
            EXPECT_LE(std::abs(v - (a == b ? 1.0 : 0.0)), 1e-12);
        }
    for (std::size_t s = 0; s < sys.size(); ++s) EXPECT_EQ(sys.position()[sys.perm()[s]], s);
}

TEST(FBeurling, ProofStepInequalitiesOnSamples) {
    const auto sys = build_system(random_sequence(23, 8, 3));
    const double d = sys.delta();
    const auto xs = sample_ball(3, 2000, 5, 0.5);
    for (const auto& x : xs) {
        double abs_sum = 0.0;
        for (std::size_t j = 0; j < sys.size(); ++j) {
            EXPECT_LE(std::abs(B_product(j, x, sys)), 1.0 + 1e-12);
            const double reA = A_series(j, x, sys).real();
            EXPECT_GT(reA, 0.0);
            double tail = 0.0;
            for (std::size_t k = j; k < sys.size(); ++k) tail += std::abs(q_func(k, x, sys));
            EXPECT_GE(reA, b_func(j, x, sys) * tail / 8.0 - 1e-9);
            abs_sum += std::abs(F_beurling(j, x, sys));
        }
        EXPECT_LE(abs_sum, theoretical_bound(d) * (1 + 1e-6));
    }
}

TEST(BeurlingSystem, BatchMatchesSingleIndex) {
    const auto sys = build_system(random_sequence(29, 6, 2));
    Rng rng(83);
    for (int t = 0; t < 50; ++t) {
        const BallPoint x = random_point(rng, 2);
        const auto all = sys.F_all(x);
        double s = 0.0;
        for (std::size_t j = 0; j < sys.size(); ++j) {
            EXPECT_EQ(all[j], F_beurling(j, x, sys));
            s += std::abs(all[j]);
        }
        EXPECT_EQ(s, sys.F_abs_sum(x));
    }
    EXPECT_THROW(sys.F_all(BallPoint::origin(3)), DomainError);
}
