#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cogsim/cli.hpp"
#include "helpers.hpp"

using namespace cogsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "cogsim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::vector<std::string> quick{"--nodes", "8", "--duration", "600", "--snapshot-interval", "60"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and usage errors") {
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"run", "--tag-limit", "many"}).code == 1);
    CHECK(cli({"--simd", "neon", "validate"}).code == 1);
}

TEST_CASE("invalid configurations exit with 1") {
    const fs::path dir = testutil::scratch("cli_config");
    std::ofstream(dir / "bad.json") << R"({"exchange": {"theta_rec": 0}})";
    std::ofstream(dir / "typo.json") << R"({"engine": {"fmin": 3}})";
    std::ofstream(dir / "broken.json") << "{ not json";
    for (const char* f : {"bad.json", "typo.json", "broken.json"}) {
        const auto r = cli({"validate", "--config", (dir / f).string()});
        CHECK(r.code == 1);
        CHECK_FALSE(r.err.empty());
    }
    CHECK(cli({"run", "--scenario", "7"}).code == 1);
    CHECK(cli({"validate", "--tag-limit", "0"}).code == 1);
    CHECK(cli({"validate"}).code == 0);
}

TEST_CASE("bad trace files exit with 1") {
    const fs::path dir = testutil::scratch("cli_trace");
    std::ofstream(dir / "overlap.txt") << "0 1 0 10\n0 1 5 12\n";
    std::ofstream(dir / "garbled.txt") << "0 1 zero 10\n";
    CHECK(cli({"validate", "--trace", (dir / "overlap.txt").string()}).code == 1);
    const auto r = cli({"validate", "--trace", (dir / "garbled.txt").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 1") != std::string::npos);
}

TEST_CASE("run, generate and analyze") {
    const fs::path dir = testutil::scratch("cli_run");
    const auto run = cli(with({"run", "--out-dir", (dir / "run").string(), "--snapshots"}, quick));
    CHECK(run.code == 0);
    for (const char* f : {"metrics.csv", "summary.json", "trace.txt", "dataset.txt", "assignment.txt"})
        CHECK(fs::exists(dir / "run" / f));

    const auto an = cli({"analyze", "--run-dir", (dir / "run").string(), "--out", (dir / "again.csv").string()});
    CHECK(an.code == 0);
    CHECK(testutil::slurp(dir / "again.csv") == testutil::slurp(dir / "run" / "metrics.csv"));
    CHECK(cli({"analyze", "--run-dir", (dir / "nowhere").string()}).code != 0);

    CHECK(cli(with({"gen-trace", "--out", (dir / "t.txt").string()}, quick)).code == 0);
    CHECK(cli(with({"gen-dataset", "--out-dir", (dir / "ds").string()}, quick)).code == 0);
    const auto replay = cli(with({"run", "--out-dir", (dir / "replay").string(), "--trace", (dir / "t.txt").string(),
                                  "--items", (dir / "ds" / "dataset.txt").string(), "--assignment",
                                  (dir / "ds" / "assignment.txt").string()},
                                 quick));
    CHECK(replay.code == 0);
    CHECK(testutil::slurp(dir / "replay" / "metrics.csv") == testutil::slurp(dir / "run" / "metrics.csv"));
}

TEST_CASE("forced kernels give identical output") {
    const fs::path dir = testutil::scratch("cli_simd");
    CHECK(cli(with({"--simd", "scalar", "run", "--out-dir", (dir / "s").string()}, quick)).code == 0);
    const auto v = cli(with({"--simd", "avx2", "run", "--out-dir", (dir / "v").string()}, quick));
    if (v.code == 0) {
        CHECK(testutil::slurp(dir / "s" / "metrics.csv") == testutil::slurp(dir / "v" / "metrics.csv"));
    } else {
        CHECK(v.code == 1);
    }
    CHECK(cli({"--simd", "scalar", "validate"}).code == 0);
}

TEST_CASE("sweep writes one file per value") {
    const fs::path dir = testutil::scratch("cli_sweep");
    const auto r = cli(with({"sweep", "--out-dir", dir.string(), "--axis", "data-limit", "--values", "5,10",
                             "--seeds", "1..2", "--workers", "1"},
                            quick));
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "aggregate.csv"));
    CHECK(cli({"sweep", "--axis", "colour", "--values", "1"}).code == 1);
}

}
