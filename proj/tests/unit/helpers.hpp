#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cogsim/catalog.hpp"
#include "cogsim/rng.hpp"
#include "cogsim/semantic_network.hpp"

namespace testutil {

inline cogsim::TagId tag(std::uint32_t k) { return static_cast<cogsim::TagId>(k); }

inline std::vector<cogsim::TagId> tags(std::initializer_list<std::uint32_t> ks) {
    std::vector<cogsim::TagId> out;
    for (auto k : ks) out.push_back(tag(k));
    return out;
}

// Distance between two doubles in units in the last place.
inline double ulps(double a, double b) {
    if (a == b) return 0.0;
    const double scale = std::nextafter(std::fabs(b), INFINITY) - std::fabs(b);
    return std::fabs(a - b) / scale;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Fresh, empty scratch directory under the test working directory.
inline std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::current_path() / "scratch" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Random graph on vertices 0..n-1 with edge density `density`; states drawn
// with t* in [0, now] and popularity in [1, max_pop].
inline cogsim::SemanticNetwork random_network(cogsim::Rng& rng, std::uint32_t n, double density,
                                              double now, std::uint32_t max_pop) {
    cogsim::SemanticNetwork net;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (!rng.bernoulli(density)) continue;
            cogsim::EdgeState s;
            s.last_activation = std::floor(rng.uniform(0.0, now));
            s.popularity = 1 + static_cast<std::uint32_t>(rng.below(max_pop));
            net.add_edge(tag(a), tag(b), s);
        }
    }
    return net;
}

}  // namespace testutil
