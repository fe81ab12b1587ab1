#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

#include "cogsim/error.hpp"
#include "cogsim/mobility.hpp"
#include "helpers.hpp"

using namespace cogsim;

namespace {

MobilityConfig small_config() {
    MobilityConfig m;
    m.num_nodes = 30;
    m.duration = 2000;
    m.area_width = 300;
    m.area_height = 300;
    return m;
}

}  // namespace

TEST_SUITE("mobility") {

TEST_CASE("static pairs: in range for the whole run, or never") {
    for (double gap : {10.0, 20.0, 25.0}) {
        ContactTracker tr(2, 20.0);
        const std::vector<double> xs{0.0, gap}, ys{0.0, 0.0};
        for (int t = 0; t < 100; ++t) tr.observe(t, xs, ys);
        const auto ev = tr.finish(100.0);
        if (gap <= 20.0) {
            REQUIRE(ev.size() == 1);
            CHECK(ev[0] == ContactEvent{0, 1, 0.0, 100.0});
        } else {
            CHECK(ev.empty());
        }
    }
}

TEST_CASE("tracker matches a pairwise scan of random positions") {
    Rng rng(12);
    const std::size_t n = 9;
    ContactTracker tr(n, 20.0);
    std::vector<double> xs(n), ys(n);
    std::vector<std::vector<double>> since(n, std::vector<double>(n, -1));
    std::vector<ContactEvent> oracle;
    for (int t = 0; t < 400; ++t) {
        for (std::size_t i = 0; i < n; ++i) xs[i] = rng.uniform(0, 60), ys[i] = rng.uniform(0, 60);
        tr.observe(t, xs, ys);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool in = std::hypot(xs[i] - xs[j], ys[i] - ys[j]) <= 20.0;
                if (in && since[i][j] < 0) since[i][j] = t;
                if (!in && since[i][j] >= 0) {
                    oracle.push_back({NodeId(i), NodeId(j), since[i][j], double(t)});
                    since[i][j] = -1;
                }
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (since[i][j] >= 0) oracle.push_back({NodeId(i), NodeId(j), since[i][j], 400.0});
    std::sort(oracle.begin(), oracle.end(), [](const ContactEvent& a, const ContactEvent& b) {
        return std::tie(a.start, a.node_a, a.node_b) < std::tie(b.start, b.node_a, b.node_b);
    });
    CHECK(tr.finish(400.0) == oracle);
}

TEST_CASE("separated communities without travellers never meet") {
    MobilityConfig m = small_config();
    m.area_width = m.area_height = 600;
    m.grid = 6;
    m.num_communities = 3;
    m.travellers_per_community = 0;
    double worst = 0;
    std::vector<std::pair<double, double>> lo(m.num_nodes, {1e9, 1e9}), hi(m.num_nodes, {-1e9, -1e9});
    const auto trace = generate_trace(m, [&](double, NodeId i, double x, double y) {
        lo[i] = {std::min(lo[i].first, x), std::min(lo[i].second, y)};
        hi[i] = {std::max(hi[i].first, x), std::max(hi[i].second, y)};
    });
    for (const auto& e : trace.contacts) CHECK(trace.community[e.node_a] == trace.community[e.node_b]);
    const double cell = 600.0 / 6;
    for (NodeId i = 0; i < m.num_nodes; ++i) {
        const GridCell c = trace.community_cells[trace.community[i]];
        CHECK(lo[i].first >= c.col * cell);
        CHECK(hi[i].first <= (c.col + 1) * cell);
        CHECK(lo[i].second >= c.row * cell);
        CHECK(hi[i].second <= (c.row + 1) * cell);
        worst = std::max(worst, hi[i].first - lo[i].first);
    }
    CHECK(worst > 0);
    for (std::size_t a = 0; a < trace.community_cells.size(); ++a)
        for (std::size_t b = a + 1; b < trace.community_cells.size(); ++b) {
            const auto& p = trace.community_cells[a];
            const auto& q = trace.community_cells[b];
            CHECK(std::max(std::abs(int(p.col) - int(q.col)), std::abs(int(p.row) - int(q.row))) >= 2);
        }
}

TEST_CASE("travellers bridge communities") {
    MobilityConfig m = small_config();
    m.area_width = m.area_height = 600;
    m.grid = 6;
    m.num_communities = 3;
    m.travellers_per_community = 2;
    m.travel_probability = 0.5;
    m.duration = 20000;
    const auto trace = generate_trace(m);
    CHECK(std::count(trace.traveller.begin(), trace.traveller.end(), true) == 6);
    std::size_t cross = 0;
    for (const auto& e : trace.contacts) {
        if (trace.community[e.node_a] == trace.community[e.node_b]) continue;
        ++cross;
        CHECK((trace.traveller[e.node_a] || trace.traveller[e.node_b]));
    }
    CHECK(cross > 0);
}

TEST_CASE("impossible placements are rejected") {
    MobilityConfig m;
    m.grid = 3;
    m.num_communities = 5;
    Rng rng(1);
    CHECK_THROWS_AS(place_communities(m, rng), ConfigError);
    m.num_communities = 4;
    CHECK(place_communities(m, rng).size() == 4);
}

TEST_CASE("speeds are uniform on [min, max]") {
    MobilityConfig m;
    Rng rng(21);
    std::vector<double> s(20000);
    for (auto& v : s) v = sample_speed(m, rng);
    std::sort(s.begin(), s.end());
    double d = 0;
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double cdf = (s[i] - m.speed_min) / (m.speed_max - m.speed_min);
        d = std::max({d, std::abs((i + 1) / n - cdf), std::abs(cdf - i / n)});
    }
    // Kolmogorov-Smirnov critical value at the 1% level
    CHECK(d < 1.628 / std::sqrt(n));
    CHECK(s.front() >= m.speed_min);
    CHECK(s.back() <= m.speed_max);
}

TEST_CASE("communities are contiguous id blocks") {
    CHECK(assign_communities(7, 3) == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 2, 2});
}

TEST_CASE("generation is deterministic in the seed") {
    MobilityConfig m = small_config();
    const auto a = generate_trace(m);
    const auto b = generate_trace(m);
    CHECK(a.contacts == b.contacts);
    CHECK_FALSE(a.contacts.empty());
    m.seed = 2;
    CHECK(generate_trace(m).contacts != a.contacts);
    validate_contacts(a.contacts);
}

TEST_CASE("trace files round-trip exactly") {
    const std::vector<ContactEvent> ev{{0, 1, 0.5, 10.125}, {2, 3, 1.0 / 3.0, 7.0}, {0, 1, 11, 20}};
    std::stringstream s;
    save_trace(s, ev);
    auto back = load_trace(s);
    auto sorted = ev;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.start < b.start; });
    CHECK(back == sorted);
}

TEST_CASE("malformed and inconsistent traces") {
    {
        std::istringstream s("# header\n0 1 0 5\n0 x 1 2\n");
        try {
            load_trace(s);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    {
        std::istringstream s("0 1 0 5\n0 1 4 8\n");
        CHECK_THROWS_AS(load_trace(s), ValidationError);
    }
    {
        std::istringstream s("1 1 0 5\n");
        CHECK_THROWS_AS(load_trace(s), ValidationError);
    }
    {
        std::istringstream s("0 1 5 5\n");
        CHECK_THROWS_AS(load_trace(s), ValidationError);
    }
    // touching intervals do not overlap
    std::istringstream ok("0 1 0 5\n0 1 5 8\n");
    CHECK(load_trace(ok).size() == 2);
}

TEST_CASE("config validation names the field") {
    MobilityConfig m;
    m.speed_min = 3;
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("speed_min"), ConfigError);
    m = {};
    m.tx_range = 0;
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("tx_range"), ConfigError);
}

}
