#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cogsim/dataset.hpp"
#include "cogsim/error.hpp"
#include "cogsim/mobility.hpp"
#include "helpers.hpp"

using namespace cogsim;

namespace {

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("d1 items carry one main concept plus tags of its cluster") {
    DatasetConfig cfg;
    const auto comm = assign_communities(50, 1);
    const Dataset data = generate_dataset(cfg, comm);
    const Vocabulary& vocab = data.catalog.vocabulary();
    std::set<std::string> concepts;
    for (const auto& item : data.catalog.items()) {
        const auto ts = item.tags();
        CHECK(ts.size() >= cfg.tags_per_item_lo);
        CHECK(ts.size() <= cfg.tags_per_item_hi);
        std::string main_tag;
        for (TagId t : ts)
            if (starts_with(vocab.label(t), "concept-")) {
                CHECK(main_tag.empty());
                main_tag = vocab.label(t);
            }
        REQUIRE_FALSE(main_tag.empty());
        concepts.insert(main_tag);
        const std::string local = "c" + main_tag.substr(8) + "-";
        for (TagId t : ts) {
            const auto& l = vocab.label(t);
            CHECK((l == main_tag || starts_with(l, local) || starts_with(l, "x-")));
        }
    }
    // a single community draws from every cluster
    CHECK(concepts.size() == cfg.num_main_concepts);

    std::set<ItemId> dealt;
    for (const auto& hand : data.assignment) {
        CHECK(hand.size() == cfg.items_per_node);
        for (ItemId id : hand) CHECK(dealt.insert(id).second);
    }
    CHECK(dealt.size() == data.catalog.size());
}

TEST_CASE("communities map onto clusters") {
    CHECK(clusters_of(0, 1, 3) == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(clusters_of(1, 2, 5) == std::vector<std::uint32_t>{1, 3});
    CHECK(clusters_of(2, 3, 3) == std::vector<std::uint32_t>{2});
    CHECK(clusters_of(4, 6, 3) == std::vector<std::uint32_t>{1});

    DatasetConfig cfg;
    const auto comm = assign_communities(99, 3);
    const Dataset data = generate_dataset(cfg, comm);
    const Vocabulary& vocab = data.catalog.vocabulary();
    for (std::size_t n = 0; n < comm.size(); ++n)
        for (ItemId id : data.assignment[n]) {
            const std::string want = main_concept_label(comm[n]);
            const auto& item = data.catalog.by_id(id);
            CHECK(item.has_tag(vocab.id(want)));
        }
}

TEST_CASE("global graph is the union of item cliques") {
    DatasetConfig cfg;
    const auto comm = assign_communities(40, 1);
    const Dataset data = generate_dataset(cfg, comm);
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::set<std::uint32_t> verts;
    for (const auto& hand : data.assignment)
        for (ItemId id : hand) {
            const auto ts = data.catalog.by_id(id).tags();
            for (TagId a : ts) {
                verts.insert(index_of(a));
                for (TagId b : ts)
                    if (a < b) pairs.insert({index_of(a), index_of(b)});
            }
        }
    const auto nets = initial_networks(data, 0.0);
    const GlobalGraph g = global_graph(nets, 0.0);
    CHECK(g.vertex_count == verts.size());
    CHECK(g.edge_count == pairs.size());
    for (const auto& [k, s] : g.graph.edges()) CHECK(pairs.contains({index_of(k.lo), index_of(k.hi)}));
    for (const auto& net : nets)
        for (TagId v : net.vertices()) CHECK(g.graph.has_vertex(v));
    CHECK(g.diameter == diameter(g.graph));

    const ClusterReport r = cluster_report(data, g.graph);
    CHECK(r.cross_edges == 0);
    CHECK(r.bridging_edges <= r.bridging_bound);
}

TEST_CASE("d2 items are tag-heavy and may be shared") {
    DatasetConfig cfg = DatasetConfig::defaults(Regime::d2);
    const auto comm = assign_communities(20, 1);
    const Dataset data = generate_dataset(cfg, comm);
    for (const auto& item : data.catalog.items()) {
        CHECK(item.tags().size() >= 10);
        CHECK(item.tags().size() <= 15);
    }
    std::size_t dealt = 0;
    for (const auto& hand : data.assignment) {
        CHECK(std::set<ItemId>(hand.begin(), hand.end()).size() == hand.size());
        dealt += hand.size();
    }
    CHECK(dealt > data.catalog.size());
    CHECK(cfg.duplicates());
}

TEST_CASE("generation is deterministic in the seed") {
    DatasetConfig cfg;
    const auto comm = assign_communities(30, 1);
    const Dataset a = generate_dataset(cfg, comm);
    const Dataset b = generate_dataset(cfg, comm);
    CHECK(a.assignment == b.assignment);
    std::ostringstream sa, sb;
    save_items(sa, a.catalog);
    save_items(sb, b.catalog);
    CHECK(sa.str() == sb.str());
    cfg.seed = 9;
    std::ostringstream sc;
    save_items(sc, generate_dataset(cfg, comm).catalog);
    CHECK(sc.str() != sa.str());
}

TEST_CASE("zipf sampler follows the power law") {
    const ZipfSampler z(10, 1.0);
    double h = 0;
    for (int r = 1; r <= 10; ++r) h += 1.0 / r;
    for (std::uint32_t r = 0; r < 10; ++r) CHECK(z.probability(r) == doctest::Approx(1.0 / (r + 1) / h));
    Rng rng(2);
    std::vector<int> hits(10);
    constexpr int trials = 200000;
    for (int i = 0; i < trials; ++i) ++hits[z(rng)];
    for (std::uint32_t r = 0; r < 10; ++r) CHECK(std::abs(hits[r] / double(trials) - z.probability(r)) < 0.005);
    CHECK(z.draw(0.0) == 0);
    CHECK(z.draw(0.999999999) == 9);
}

TEST_CASE("files round-trip and are checked") {
    DatasetConfig cfg;
    const auto comm = assign_communities(12, 1);
    const Dataset data = generate_dataset(cfg, comm);
    const auto dir = testutil::scratch("dataset_io");
    save_dataset(data, dir / "items.txt", dir / "assign.txt");
    const Dataset back = load_dataset(dir / "items.txt", dir / "assign.txt");
    CHECK(back.assignment == data.assignment);
    CHECK(back.catalog.size() == data.catalog.size());
    for (const auto& item : data.catalog.items()) {
        const auto& b = back.catalog.by_id(item.id());
        REQUIRE(b.tags().size() == item.tags().size());
        for (std::size_t i = 0; i < b.tags().size(); ++i)
            CHECK(back.catalog.vocabulary().label(b.tags()[i]) == data.catalog.vocabulary().label(item.tags()[i]));
    }

    std::ofstream(dir / "bad_assign.txt") << "0 1\n1 999999\n";
    CHECK_THROWS_AS(load_dataset(dir / "items.txt", dir / "bad_assign.txt"), ValidationError);
    std::istringstream twice("0 1\n0 2\n");
    CHECK_THROWS_AS(load_assignment(twice), ParseError);
    std::istringstream tagless("5\n");
    CHECK_THROWS_AS(load_items(tagless), ParseError);
}

TEST_CASE("invalid configs name the field") {
    DatasetConfig cfg;
    cfg.tags_per_item_lo = 1;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("tags_per_item"), ConfigError);
    cfg = {};
    cfg.tag_pool_sizes = {2};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(parse_regime("d3"), ConfigError);
    CHECK(parse_regime("d2-like") == Regime::d2);
}

}
