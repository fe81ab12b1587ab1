#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "cogsim/engine.hpp"
#include "cogsim/error.hpp"
#include "helpers.hpp"

using namespace cogsim;
namespace fs = std::filesystem;

namespace {

SimConfig small() {
    SimConfig cfg;
    cfg.mobility.num_nodes = 12;
    cfg.mobility.area_width = cfg.mobility.area_height = 150;
    cfg.duration = 3000;
    cfg.snapshot_interval = 50;
    return cfg;
}

RunInputs scripted() {
    RunInputs in;
    const std::vector<RawItem> raw{{1, {"a", "b"}}, {2, {"b", "c"}}, {3, {"b", "d"}}};
    in.dataset.catalog = Catalog(raw);
    in.dataset.assignment = {{1, 3}, {2}};
    in.community = {0, 0};
    in.contacts = {{0, 1, 10, 20}};
    return in;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("single contact matches a direct exchange") {
    SimConfig cfg;
    cfg.duration = 100;
    cfg.snapshot_interval = 10;
    cfg.f_min = INFINITY;
    const RunInputs in = scripted();

    std::vector<NodeState> manual;
    for (NodeId i = 0; i < 2; ++i) {
        manual.emplace_back(i, 0, in.dataset.catalog);
        std::vector<const TaggedItem*> ptrs;
        for (ItemId id : in.dataset.assignment[i]) {
            manual.back().receive_id(id);
            ptrs.push_back(&in.dataset.catalog.by_id(id));
        }
        manual.back().network() = build_initial(ptrs, 0.0);
    }
    run_contact_ca(manual[0], manual[1], in.contacts[0], cfg.exchange);

    bool checked = false;
    const RunResult r = simulate(cfg, in, [&](double t, std::span<const NodeState> nodes) {
        if (t != 20) return;
        checked = true;
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(nodes[i].network() == manual[i].network());
            CHECK(nodes[i].item_ids() == manual[i].item_ids());
        }
    });
    CHECK(checked);
    CHECK(r.summary.contacts == 1);
    CHECK(r.records.size() == 11);
}

TEST_CASE("without contacts or forgetting only the weights move") {
    SimConfig cfg = small();
    cfg.mobility.tx_range = 1e-9;
    cfg.f_min = INFINITY;
    const RunInputs in = prepare_inputs(cfg);
    REQUIRE(in.contacts.empty());
    const RunResult r = simulate(cfg, in);
    for (const auto& rec : r.records) {
        CHECK(rec.kd == r.records.front().kd);
        CHECK(rec.cvg == r.records.front().cvg);
        CHECK(rec.mean_edge_weight == doctest::Approx(std::exp(-0.01 * rec.time)).epsilon(1e-13));
    }
}

TEST_CASE("isolated nodes forget everything at f_min") {
    SimConfig cfg = small();
    cfg.mobility.tx_range = 1e-9;
    const RunResult r = simulate(cfg, prepare_inputs(cfg));
    for (const auto& rec : r.records) {
        if (rec.time < 150) CHECK(rec.kd > 0);
        else CHECK(rec.kd == 0);
    }
    CHECK_FALSE(r.summary.cvm.has_value());
}

TEST_CASE("runs are byte-identical and analyze reproduces the metrics") {
    SimConfig cfg = small();
    cfg.write_snapshots = true;
    const fs::path a = testutil::scratch("det_a"), b = testutil::scratch("det_b");
    const RunResult ra = run(cfg, a);
    run(cfg, b);
    CHECK(testutil::slurp(a / "metrics.csv") == testutil::slurp(b / "metrics.csv"));
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(a / "snapshots")) {
        if (!e.is_regular_file()) continue;
        ++files;
        const fs::path rel = fs::relative(e.path(), a);
        CHECK(testutil::slurp(e.path()) == testutil::slurp(b / rel));
    }
    CHECK(files == ra.records.size() * cfg.mobility.num_nodes);
    CHECK(ra.summary.contacts > 0);

    const auto again = analyze_snapshots(a, cfg.exchange.gamma);
    CHECK(again == ra.records);
}

TEST_CASE("sweeps do not depend on the worker count") {
    SimConfig cfg = small();
    cfg.duration = 1500;
    const std::vector<double> values{5, 20};
    const std::vector<std::uint64_t> seeds{1, 2};
    const auto one = sweep(cfg, SweepAxis::tag_limit, values, seeds, {1});
    const auto two = sweep(cfg, SweepAxis::tag_limit, values, seeds, {2});
    REQUIRE(one.size() == 2);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].mean_series == two[i].mean_series);
        CHECK(one[i].mean_final == two[i].mean_final);
    }
    SimConfig direct = with_axis(cfg, SweepAxis::tag_limit, 20);
    direct.seed = 2;
    const RunResult r = simulate(direct, prepare_inputs(direct));
    CHECK(one[1].runs[1].final_metrics == r.summary.final_metrics);
}

TEST_CASE("axes parse and reject bad values") {
    CHECK(parse_axis("f-min") == SweepAxis::f_min);
    CHECK(parse_axis("w_min") == SweepAxis::w_min);
    CHECK_THROWS_AS(parse_axis("speed"), ConfigError);
    CHECK_THROWS_AS(with_axis(SimConfig{}, SweepAxis::tag_limit, 2.5), ConfigError);
    CHECK(with_axis(SimConfig{}, SweepAxis::w_min, 70).exchange.w_min_seconds == 70);
}

TEST_CASE("inputs must agree on the node set") {
    RunInputs in = scripted();
    in.contacts = {{0, 5, 1, 2}};
    CHECK_THROWS_AS(simulate(SimConfig{}, in), ValidationError);
}

}
