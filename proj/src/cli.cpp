#include "cogsim/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cogsim/config.hpp"
#include "cogsim/error.hpp"
#include "cogsim/simd/kernels.hpp"
#include "cogsim/text.hpp"

namespace cogsim {

namespace {

namespace fs = std::filesystem;

// Flags shared by every simulation subcommand. Strings are kept raw and
// applied after the config file so flags win.
struct SimFlags {
    std::string config;
    std::string scenario;
    std::string algorithm;
    std::string f_min;
    std::string w_min;
    std::string tag_limit;
    std::string data_limit;
    std::string theta_rec;
    std::string duration;
    std::string seed;
    std::string snapshot_interval;
    std::string nodes;
    std::string trace;
    std::string items;
    std::string assignment;
    bool snapshots = false;
    bool node_detail = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", config, "JSON config file");
        cmd.add_option("--scenario", scenario, "Scenario preset: 1, 2, 3 or desk");
        cmd.add_option("--algorithm", algorithm, "ca or ba");
        cmd.add_option("--f-min", f_min, "Forget threshold, seconds (inf disables forgetting)");
        cmd.add_option("--w-min", w_min, "Retrieval threshold reference time, seconds");
        cmd.add_option("--tag-limit", tag_limit, "Max vertices per contributed network");
        cmd.add_option("--data-limit", data_limit, "Max items per transfer");
        cmd.add_option("--theta-rec", theta_rec, "Recognition threshold (popularity)");
        cmd.add_option("--duration", duration, "Simulated seconds");
        cmd.add_option("--seed", seed, "Root seed");
        cmd.add_option("--snapshot-interval", snapshot_interval, "Seconds between metric samples");
        cmd.add_option("--nodes", nodes, "Override the number of nodes");
        cmd.add_option("--trace", trace, "Contact trace file instead of generated mobility");
        cmd.add_option("--items", items, "Dataset file instead of the generator (needs --assignment)");
        cmd.add_option("--assignment", assignment, "Assignment file (needs --items)");
        cmd.add_flag("--snapshots", snapshots, "Write per-node snapshots at every sample");
        cmd.add_flag("--node-detail", node_detail, "Write node_metrics.csv");
    }

    SimConfig build() const {
        SimConfig cfg = scenario.empty() ? SimConfig{} : scenario_preset(scenario);
        if (!config.empty()) apply_config_file(cfg, config);
        if (!algorithm.empty()) cfg.algorithm = parse_algorithm(algorithm);
        if (!f_min.empty()) cfg.f_min = number("--f-min", f_min);
        if (!w_min.empty()) cfg.exchange.w_min_seconds = number("--w-min", w_min);
        if (!tag_limit.empty()) cfg.exchange.tag_limit = count("--tag-limit", tag_limit);
        if (!data_limit.empty()) cfg.exchange.data_limit = count("--data-limit", data_limit);
        if (!theta_rec.empty()) cfg.exchange.theta_rec = count("--theta-rec", theta_rec);
        if (!duration.empty()) cfg.duration = number("--duration", duration);
        if (!seed.empty()) cfg.seed = count64("--seed", seed);
        if (!snapshot_interval.empty()) cfg.snapshot_interval = number("--snapshot-interval", snapshot_interval);
        if (!nodes.empty()) cfg.mobility.num_nodes = count("--nodes", nodes);
        if (!trace.empty()) cfg.trace_path = trace;
        if (!items.empty()) cfg.items_path = items;
        if (!assignment.empty()) cfg.assignment_path = assignment;
        if (snapshots) cfg.write_snapshots = true;
        if (node_detail) cfg.node_detail = true;
        cfg.validate();
        return cfg;
    }

    static double number(const char* flag, const std::string& v) {
        double x = 0.0;
        if (!text::parse_number(v, x)) throw ConfigError(std::string(flag) + ": expected a number, got '" + v + "'");
        return x;
    }

    static std::uint64_t count64(const char* flag, const std::string& v) {
        unsigned long long x = 0;
        if (!text::parse_unsigned(v, x)) {
            throw ConfigError(std::string(flag) + ": expected a non-negative integer, got '" + v + "'");
        }
        return x;
    }

    static std::uint32_t count(const char* flag, const std::string& v) {
        const std::uint64_t x = count64(flag, v);
        if (x > UINT32_MAX) throw ConfigError(std::string(flag) + ": value too large");
        return static_cast<std::uint32_t>(x);
    }
};

// "1..10" or "1,2,5".
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const auto lo = SimFlags::count64("--seeds", spec.substr(0, dots));
        const auto hi = SimFlags::count64("--seeds", spec.substr(dots + 2));
        if (hi < lo || hi - lo > 100000) throw ConfigError("--seeds: bad range '" + spec + "'");
        std::vector<std::uint64_t> out;
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    std::vector<std::uint64_t> out;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(SimFlags::count64("--seeds", part));
    if (out.empty()) throw ConfigError("--seeds: empty list");
    return out;
}

std::vector<double> parse_values(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(SimFlags::number("--values", part));
    if (out.empty()) throw ConfigError("--values: empty list");
    return out;
}

void print_summary(std::ostream& out, const RunResult& r, const fs::path& dir) {
    const RunSummary& s = r.summary;
    fmt::print(out, "final kd={:.6g} cvg={:.6g} f={:.6g} mean_weight={:.6g}\n", s.final_metrics.kd,
               s.final_metrics.cvg, s.final_metrics.f_measure, s.final_metrics.mean_edge_weight);
    fmt::print(out, "coverage converged to {:.6g} at t={}\n", s.convergence.value, s.convergence.time);
    fmt::print(out, "wrote {}\n", dir.string());
}

int cmd_run(const SimFlags& flags, const std::string& out_dir, std::ostream& out) {
    const SimConfig cfg = flags.build();
    const RunResult r = run(cfg, out_dir);
    print_summary(out, r, out_dir);
    return exit_ok;
}

int cmd_sweep(const SimFlags& flags, const std::string& out_dir, const std::string& axis,
              const std::string& values, const std::string& seeds, unsigned workers, std::ostream& out) {
    const SimConfig base = flags.build();
    const SweepAxis a = parse_axis(axis);
    const auto vs = parse_values(values);
    const auto ss = parse_seeds(seeds);
    const auto cells = sweep(base, a, vs, ss, SweepOptions{workers});
    write_sweep(out_dir, a, cells);
    for (const SweepCell& c : cells) {
        fmt::print(out, "{}={} seeds={} kd={:.6g} cvg={:.6g} f={:.6g} converged_at={:.6g}\n", axis_name(a),
                   text::format_number(c.value), c.seeds.size(), c.mean_final.kd, c.mean_final.cvg,
                   c.mean_final.f_measure, c.mean_convergence_time);
    }
    fmt::print(out, "wrote {}\n", (fs::path(out_dir) / "aggregate.csv").string());
    return exit_ok;
}

int cmd_gen_trace(const SimFlags& flags, const std::string& out_path, const std::string& positions,
                  std::ostream& out) {
    const SimConfig cfg = flags.build();
    MobilityConfig m = cfg.mobility;
    m.duration = cfg.duration;
    m.seed = cfg.seed;
    std::ofstream pos;
    PositionSink sink;
    if (!positions.empty()) {
        pos.open(positions);
        if (!pos) throw Error("cannot write " + positions);
        pos << "# t node x y\n";
        sink = [&](double t, NodeId node, double x, double y) {
            pos << text::format_number(t) << ' ' << node << ' ' << text::format_number(x) << ' '
                << text::format_number(y) << '\n';
        };
    }
    const MobilityTrace trace = generate_trace(m, sink);
    if (const fs::path parent = fs::path(out_path).parent_path(); !parent.empty()) fs::create_directories(parent);
    save_trace(fs::path(out_path), trace.contacts);
    fmt::print(out, "{} contacts among {} nodes -> {}\n", trace.contacts.size(), m.num_nodes, out_path);
    return exit_ok;
}

int cmd_gen_dataset(const SimFlags& flags, const std::string& out_dir, std::ostream& out) {
    const SimConfig cfg = flags.build();
    DatasetConfig d = cfg.dataset;
    d.seed = cfg.seed;
    const auto community = assign_communities(cfg.mobility.num_nodes, cfg.mobility.num_communities);
    const Dataset data = generate_dataset(d, community);
    fs::create_directories(out_dir);
    save_dataset(data, fs::path(out_dir) / "dataset.txt", fs::path(out_dir) / "assignment.txt");
    const GlobalGraph g = global_graph(initial_networks(data, 0.0), 0.0);
    fmt::print(out, "items={} tags={} global_vertices={} global_edges={} diameter={}\n", data.catalog.size(),
               data.catalog.vocabulary().size(), g.vertex_count, g.edge_count,
               g.diameter ? std::to_string(*g.diameter) : "undefined");
    if (d.regime == Regime::d1) {
        const ClusterReport r = cluster_report(data, g.graph);
        fmt::print(out, "cross_cluster_edges={} bridging_edges={} bridging_bound={}\n", r.cross_edges,
                   r.bridging_edges, r.bridging_bound);
    }
    return exit_ok;
}

int cmd_analyze(const std::string& run_dir, const std::string& out_path, std::optional<double> gamma,
                std::ostream& out) {
    if (!gamma) {
        SimConfig cfg;
        const fs::path summary = fs::path(run_dir) / "summary.json";
        std::ifstream in(summary);
        if (!in) throw ValidationError("no summary.json in " + run_dir + "; pass --gamma");
        const auto doc = nlohmann::json::parse(in);
        if (!doc.contains("config")) throw ValidationError(summary.string() + ": missing config");
        apply_config(cfg, doc["config"]);
        gamma = cfg.exchange.gamma;
    }
    const auto records = analyze_snapshots(run_dir, *gamma);
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw Error("cannot write " + out_path);
    }
    std::ostream& dst = out_path.empty() ? out : file;
    write_metrics_header(dst);
    for (const MetricsRecord& r : records) write_metrics_row(dst, r);
    return exit_ok;
}

int cmd_validate(const SimFlags& flags, std::ostream& out) {
    const SimConfig cfg = flags.build();
    if (cfg.trace_path) {
        const auto events = load_trace(*cfg.trace_path);
        fmt::print(out, "trace ok: {} contacts\n", events.size());
    }
    if (cfg.items_path) {
        const Dataset data = load_dataset(*cfg.items_path, *cfg.assignment_path);
        fmt::print(out, "dataset ok: {} items, {} nodes assigned\n", data.catalog.size(), data.assignment.size());
    }
    fmt::print(out, "config ok\n");
    return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Semantic knowledge and content dissemination simulator", "cogsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cogsim 1.0");
    std::string simd;
    app.add_option("--simd", simd, "Force kernel variant: scalar or avx2");

    SimFlags run_flags, sweep_flags, trace_flags, dataset_flags, validate_flags;
    std::string run_out = "out", sweep_out = "sweep-out", trace_out = "trace.txt", dataset_out = "dataset-out";
    std::string axis, values, seeds = "1..10", positions, analyze_dir, analyze_out;
    unsigned workers = 0;
    std::optional<double> gamma;

    auto* run_cmd = app.add_subcommand("run", "Run one simulation");
    run_flags.attach(*run_cmd);
    run_cmd->add_option("--out-dir", run_out, "Output directory");

    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over seeds");
    sweep_flags.attach(*sweep_cmd);
    sweep_cmd->add_option("--out-dir", sweep_out, "Output directory");
    sweep_cmd->add_option("--axis", axis, "f-min, w-min, tag-limit, data-limit or theta-rec")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated axis values")->required();
    sweep_cmd->add_option("--seeds", seeds, "Seed range a..b or comma list");
    sweep_cmd->add_option("--workers", workers, "Worker threads (0: all cores)");

    auto* trace_cmd = app.add_subcommand("gen-trace", "Generate a contact trace");
    trace_flags.attach(*trace_cmd);
    trace_cmd->add_option("--out", trace_out, "Trace file");
    trace_cmd->add_option("--positions", positions, "Also dump sampled positions here");

    auto* dataset_cmd = app.add_subcommand("gen-dataset", "Generate a dataset and assignment");
    dataset_flags.attach(*dataset_cmd);
    dataset_cmd->add_option("--out-dir", dataset_out, "Output directory");

    auto* analyze_cmd = app.add_subcommand("analyze", "Recompute metrics from a run's snapshots");
    analyze_cmd->add_option("--run-dir", analyze_dir, "Directory of a run made with --snapshots")->required();
    analyze_cmd->add_option("--out", analyze_out, "CSV file (default: stdout)");
    analyze_cmd->add_option("--gamma", gamma, "Decay coefficient (default: from summary.json)");

    auto* validate_cmd = app.add_subcommand("validate", "Check config, trace and dataset files");
    validate_flags.attach(*validate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (simd == "scalar" || simd == "avx2") {
            const auto isa = simd == "scalar" ? simd::Isa::scalar : simd::Isa::avx2;
            if (!simd::select_isa(isa)) throw ConfigError("--simd " + simd + ": not supported by this CPU");
        } else if (!simd.empty()) {
            throw ConfigError("--simd must be scalar or avx2");
        }
        if (run_cmd->parsed()) return cmd_run(run_flags, run_out, out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags, sweep_out, axis, values, seeds, workers, out);
        if (trace_cmd->parsed()) return cmd_gen_trace(trace_flags, trace_out, positions, out);
        if (dataset_cmd->parsed()) return cmd_gen_dataset(dataset_flags, dataset_out, out);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_dir, analyze_out, gamma, out);
        if (validate_cmd->parsed()) return cmd_validate(validate_flags, out);
    } catch (const ConfigError& e) {
        fmt::print(err, "invalid configuration: {}\n", e.what());
        return exit_invalid;
    } catch (const ValidationError& e) {
        fmt::print(err, "validation error: {}\n", e.what());
        return exit_invalid;
    } catch (const ParseError& e) {
        fmt::print(err, "parse error: {}\n", e.what());
        return exit_invalid;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return exit_runtime;
    }
    return exit_runtime;
}

}  // namespace cogsim
