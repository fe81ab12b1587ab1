#include <doctest.h>

#include <map>
#include <vector>

#include "cogsim/benchmark.hpp"
#include "helpers.hpp"

using namespace cogsim;
using testutil::tag;

TEST_SUITE("benchmark") {

TEST_CASE("one step from a degree-k key is uniform over neighbors") {
    SemanticNetwork star;
    const std::uint32_t k = 7;
    for (std::uint32_t i = 1; i <= k; ++i) star.add_edge(tag(0), tag(i), {0.0, 1});
    SemanticNetwork recipient;
    recipient.add_vertex(tag(0));
    ExchangeParams p;
    p.tag_limit = 2;
    Rng rng(1);
    std::map<std::uint32_t, int> hits;
    constexpr int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        const auto c = compute_contributed_network_ba(star, recipient, 10.0, p, rng);
        REQUIRE(c.vertex_count() == 2);
        ++hits[index_of(c.vertices()[1])];
    }
    CHECK(hits.size() == k);
    for (const auto& [v, n] : hits) CHECK(std::abs(n / double(trials) - 1.0 / k) <= 0.01);
}

TEST_CASE("walk activates traversed edges and restarts at dead ends") {
    SemanticNetwork d;
    d.add_edge(tag(0), tag(1), {0.0, 1});
    d.add_edge(tag(5), tag(6), {0.0, 1});
    SemanticNetwork r;
    r.add_vertex(tag(0));
    r.add_vertex(tag(5));
    Rng rng(3);
    const auto c = compute_contributed_network_ba(d, r, 50.0, ExchangeParams{}, rng);
    CHECK(c.vertex_count() == 4);
    CHECK(c.edge_count() == 2);
    CHECK(d.edge(tag(0), tag(1)) == EdgeState{50.0, 2});
    CHECK(d.edge(tag(5), tag(6)) == EdgeState{50.0, 2});
}

TEST_CASE("walk stops at the tag limit") {
    Rng rng(8);
    SemanticNetwork d = testutil::random_network(rng, 30, 0.3, 0.0, 1);
    SemanticNetwork r = d;
    ExchangeParams p;
    p.tag_limit = 5;
    for (int i = 0; i < 50; ++i) CHECK(compute_contributed_network_ba(d, r, 1.0, p, rng).vertex_count() == 5);
    CHECK(compute_contributed_network_ba(d, SemanticNetwork{}, 1.0, p, rng).empty());
}

TEST_CASE("random selection is uniform over sharing items") {
    const std::vector<RawItem> raw{{1, {"a"}}, {2, {"a", "b"}}, {3, {"b"}}, {4, {"c"}},
                                   {5, {"b", "z"}}, {6, {"z"}}};
    const Catalog cat(raw);
    std::vector<const TaggedItem*> sender;
    for (const auto& it : cat.items()) sender.push_back(&it);
    const std::unordered_set<ItemId> receiver{3};
    ContributedNetwork c;
    c.add_vertex(cat.vocabulary().id("a"));
    c.add_vertex(cat.vocabulary().id("b"));
    c.add_vertex(cat.vocabulary().id("c"));
    Rng rng(11);
    std::map<ItemId, int> hits;
    constexpr int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        const auto s = random_select(sender, receiver, c, 1, rng);
        REQUIRE(s.size() == 1);
        ++hits[s[0]->id()];
    }
    // candidates 1, 2, 4, 5
    CHECK(hits.size() == 4);
    for (const auto& [id, n] : hits) CHECK(std::abs(n / double(trials) - 0.25) <= 0.01);
    const auto all = random_select(sender, receiver, c, 10, rng);
    CHECK(all.size() == 4);
}

}
