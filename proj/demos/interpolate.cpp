// Builds the Beurling functions of a small radial sequence, interpolates
// alternating signs and compares the sampled norm with the guaranteed bound.

#include <complex>
#include <iostream>
#include <vector>

#include "beurling.hpp"

int main() {
    using namespace beurling;

    const PointSequence seq = generate({GeneratorKind::RadialGeometric, 6, 3, 0.3, 0.1, 0});
    const BeurlingSystem sys = build_system(seq);
    std::cout << "delta = " << sys.delta() << ", C_delta = " << sys.C_delta() << ", bound = " << sys.bound()
              << "\n";

    std::vector<complex> alpha;
    for (std::size_t i = 0; i < seq.size(); ++i) alpha.emplace_back(i % 2 ? -1.0 : 1.0);
    const Interpolant f = make_interpolant(sys, alpha);
    std::cout << "max node residual = " << verify_nodes(f) << "\n";

    const BallPoint x(CVector{0.2, complex(0.0, 0.3), -0.1});
    std::cout << "f(x) = " << f(x) << "\n";

    const NormEstimate est = estimate_constant(sys, 5000, 1);
    std::cout << "sampled sup of sum |F_j| = " << est.empirical_sup << " (bound " << est.theoretical_bound
              << ")\n";
}
