#include <doctest.h>

#include <cmath>
#include <vector>

#include "cogsim/rng.hpp"
#include "cogsim/semantic_network.hpp"
#include "cogsim/simd/kernels.hpp"
#include "helpers.hpp"

using namespace cogsim;
using testutil::tag;

TEST_SUITE("forgetting") {

TEST_CASE("weight is one at activation and follows the decay law") {
    EdgeState e{100.0, 1};
    CHECK(edge_weight(e, 100.0, 0.01) == 1.0);
    CHECK(edge_weight(e, 250.0, 0.01) == doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
    EdgeState p4{0.0, 4};
    // popularity stretches the curve: four uses over 400 s equal one use over 100 s
    CHECK(edge_weight(p4, 400.0, 0.01) == doctest::Approx(edge_weight({0.0, 1}, 100.0, 0.01)));
}

TEST_CASE("threshold boundary drops ties") {
    EdgeState e{0.0, 4};
    CHECK_FALSE(is_forgotten(e, 599.0, 150.0));
    CHECK(is_forgotten(e, 600.0, 150.0));
    CHECK_FALSE(is_forgotten(e, 1e12, INFINITY));
}

TEST_CASE("random tuples match the closed-form rule") {
    Rng rng(20240611);
    constexpr int trials = 10000;
    std::vector<double> last;
    std::vector<std::uint32_t> pop;
    std::vector<std::uint8_t> expect;
    SemanticNetwork net;
    const double now = 1e6;
    const double f_min = 150.0;
    int mismatches = 0;
    double worst_ulp = 0.0;
    for (int i = 0; i < trials; ++i) {
        const std::uint32_t p = 1 + static_cast<std::uint32_t>(rng.below(40));
        const double fm = rng.uniform(1.0, 1000.0);
        // a quarter of the tuples sit exactly on the boundary
        const double dt = rng.below(4) == 0 ? p * fm : std::floor(rng.uniform(0.0, 2.0 * p * fm));
        const bool rule = dt >= p * fm;
        if (is_forgotten(EdgeState{0.0, p}, dt, fm) != rule) ++mismatches;

        const double gamma = rng.uniform(1e-4, 0.1);
        // exponent formed in double, exponential taken in extended precision
        const double x = -((gamma / p) * dt);
        const long double ref = std::exp(static_cast<long double>(x));
        worst_ulp = std::max(worst_ulp, testutil::ulps(edge_weight(EdgeState{0.0, p}, dt, gamma),
                                                       static_cast<double>(ref)));

        // same tuple laid out for a bulk prune at a common f_min
        const std::uint32_t a = static_cast<std::uint32_t>(2 * i), b = a + 1;
        const double idle = std::floor(rng.uniform(0.0, 2.0 * p * f_min));
        net.add_edge(tag(a), tag(b), EdgeState{now - idle, p});
        last.push_back(now - idle);
        pop.push_back(p);
        expect.push_back(idle >= p * f_min ? 1 : 0);
    }
    CHECK(mismatches == 0);
    CHECK(worst_ulp <= 1.0);

    std::size_t doomed = 0;
    for (auto x : expect) doomed += x;
    for (auto isa : {simd::Isa::scalar, simd::Isa::avx2}) {
        if (!simd::isa_supported(isa)) continue;
        std::vector<std::uint8_t> out(last.size());
        const std::size_t n = simd::kernels_for(isa).expired(now, f_min, last.data(), pop.data(),
                                                            last.size(), out.data());
        CHECK(n == doomed);
        CHECK(out == expect);
    }

    SemanticNetwork pruned = net;
    CHECK(pruned.prune_forgotten(now, f_min) == doomed);
    CHECK(pruned.edge_count() == trials - doomed);
    for (int i = 0; i < trials; ++i) {
        const bool kept = pruned.has_edge(tag(2 * i), tag(2 * i + 1));
        CHECK(kept == (expect[static_cast<std::size_t>(i)] == 0));
        // isolated vertices go with their only edge
        CHECK(pruned.has_vertex(tag(2 * i)) == kept);
    }
}

TEST_CASE("infinite threshold never prunes") {
    SemanticNetwork net;
    net.add_edge(tag(0), tag(1), {0.0, 1});
    CHECK(net.prune_forgotten(1e15, INFINITY) == 0);
    CHECK(net.edge_count() == 1);
}

}
