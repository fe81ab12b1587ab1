#include "cogsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "cogsim/benchmark.hpp"
#include "cogsim/config.hpp"
#include "cogsim/error.hpp"
#include "cogsim/snapshot_io.hpp"
#include "cogsim/text.hpp"

namespace cogsim {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view algorithm_name(Algorithm a) noexcept { return a == Algorithm::ca ? "ca" : "ba"; }

Algorithm parse_algorithm(std::string_view text) {
    std::string lower(text);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "ca") return Algorithm::ca;
    if (lower == "ba") return Algorithm::ba;
    throw ConfigError("algorithm must be ca or ba, got '" + std::string(text) + "'");
}

namespace {

MobilityConfig effective_mobility(const SimConfig& cfg) {
    MobilityConfig m = cfg.mobility;
    m.duration = cfg.duration;
    m.seed = cfg.seed;
    return m;
}

DatasetConfig effective_dataset(const SimConfig& cfg) {
    DatasetConfig d = cfg.dataset;
    d.seed = cfg.seed;
    return d;
}

}  // namespace

void SimConfig::validate() const {
    exchange.validate();
    if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("engine.duration must be > 0");
    if (!(snapshot_interval > 0.0) || !std::isfinite(snapshot_interval)) {
        throw ConfigError("engine.snapshot_interval must be > 0");
    }
    if (!(f_min > 0.0)) throw ConfigError("engine.f_min must be > 0");
    effective_mobility(*this).validate();
    if (items_path.has_value() != assignment_path.has_value()) {
        throw ConfigError("dataset.items and dataset.assignment must be given together");
    }
    if (!items_path) dataset.validate();
    if (tagged_node >= mobility.num_nodes) {
        throw ConfigError("engine.tagged_node must be < mobility.num_nodes");
    }
}

RunInputs prepare_inputs(const SimConfig& cfg) {
    cfg.validate();
    const MobilityConfig m = effective_mobility(cfg);
    RunInputs in;
    if (cfg.trace_path) {
        in.contacts = load_trace(*cfg.trace_path);
        in.community = assign_communities(m.num_nodes, m.num_communities);
        for (const ContactEvent& c : in.contacts) {
            if (c.node_b >= m.num_nodes) {
                throw ValidationError("trace names node " + std::to_string(c.node_b) + " but the scenario has " +
                                      std::to_string(m.num_nodes) + " nodes");
            }
        }
    } else {
        MobilityTrace trace = generate_trace(m);
        in.contacts = std::move(trace.contacts);
        in.community = std::move(trace.community);
    }

    if (cfg.items_path) {
        in.dataset = load_dataset(*cfg.items_path, *cfg.assignment_path);
        if (in.dataset.assignment.size() > m.num_nodes) {
            throw ValidationError("assignment names node " + std::to_string(in.dataset.assignment.size() - 1) +
                                  " but the scenario has " + std::to_string(m.num_nodes) + " nodes");
        }
        in.dataset.assignment.resize(m.num_nodes);
    } else {
        in.dataset = generate_dataset(effective_dataset(cfg), in.community);
    }
    return in;
}

namespace {

std::vector<double> sample_times(double duration, double interval) {
    std::vector<double> times;
    const auto steps = static_cast<std::uint64_t>(std::floor(duration / interval + 1e-9));
    for (std::uint64_t k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * interval);
    if (times.back() < duration) times.push_back(duration);
    return times;
}

std::vector<double> as_doubles(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

RunResult simulate(const SimConfig& cfg, const RunInputs& inputs, const SampleObserver& observer) {
    cfg.validate();
    const std::size_t n = inputs.community.size();
    const Catalog& catalog = inputs.dataset.catalog;
    if (inputs.dataset.assignment.size() != n) {
        throw ValidationError("dataset assignment covers " + std::to_string(inputs.dataset.assignment.size()) +
                              " nodes, trace covers " + std::to_string(n));
    }

    std::vector<SemanticNetwork> initial = initial_networks(inputs.dataset, 0.0);
    const GlobalGraph global = global_graph(initial, 0.0);
    std::vector<NodeState> nodes;
    nodes.reserve(n);
    for (NodeId id = 0; id < n; ++id) {
        nodes.emplace_back(id, inputs.community[id], catalog);
        for (ItemId item : inputs.dataset.assignment[id]) nodes.back().receive_id(item);
        nodes.back().network() = std::move(initial[id]);
    }

    // Exchanges run at contact end; simultaneous ends go in (a, b) order.
    std::vector<ContactEvent> contacts;
    for (const ContactEvent& c : inputs.contacts) {
        if (c.node_b >= n) throw ValidationError("contact names unknown node " + std::to_string(c.node_b));
        if (c.end <= cfg.duration) contacts.push_back(c);
    }
    std::sort(contacts.begin(), contacts.end(), [](const ContactEvent& x, const ContactEvent& y) {
        if (x.end != y.end) return x.end < y.end;
        if (x.node_a != y.node_a) return x.node_a < y.node_a;
        return x.node_b < y.node_b;
    });

    Rng walk_rng(cfg.seed, "ba-walk");
    RunResult result;
    std::size_t next = 0;
    for (double t : sample_times(cfg.duration, cfg.snapshot_interval)) {
        for (; next < contacts.size() && contacts[next].end <= t; ++next) {
            const ContactEvent& c = contacts[next];
            NodeState& a = nodes[c.node_a];
            NodeState& b = nodes[c.node_b];
            a.network().prune_forgotten(c.end, cfg.f_min);
            b.network().prune_forgotten(c.end, cfg.f_min);
            if (cfg.algorithm == Algorithm::ca) {
                run_contact_ca(a, b, c, cfg.exchange);
            } else {
                run_contact_ba(a, b, c, cfg.exchange, walk_rng);
            }
        }
        for (NodeState& node : nodes) node.network().prune_forgotten(t, cfg.f_min);
        result.records.push_back(sample_metrics(nodes, global.vertex_count, t, cfg.exchange.gamma));
        if (observer) observer(t, nodes);
    }

    RunSummary& s = result.summary;
    s.final_metrics = result.records.back();
    s.convergence = coverage_convergence(result.records);
    const SemanticNetwork& tagged = nodes[cfg.tagged_node].network();
    s.structure = structure_report(tagged, global.graph);
    if (!tagged.empty() && !global.graph.empty()) {
        const auto a = as_doubles(degree_sequence(tagged));
        const auto b = as_doubles(degree_sequence(global.graph));
        s.cvm = cvm_two_sample(a, b);
    }
    s.global_vertices = global.vertex_count;
    s.global_edges = global.edge_count;
    s.contacts = next;
    return result;
}

namespace {

json optional_size(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string summary_json(const SimConfig& cfg, const RunSummary& s) {
    json doc;
    doc["config"] = config_to_json(cfg);
    doc["final_metrics"] = {
        {"time", s.final_metrics.time},
        {"kd", s.final_metrics.kd},
        {"cvg", s.final_metrics.cvg},
        {"f_measure", s.final_metrics.f_measure},
        {"mean_edge_weight", s.final_metrics.mean_edge_weight},
    };
    doc["convergence"] = {{"cvg", s.convergence.value}, {"time", s.convergence.time}};
    doc["structure"] = {
        {"pct_vertices", s.structure.pct_vertices},
        {"pct_edges", s.structure.pct_edges},
        {"diameter", optional_size(s.structure.diameter)},
        {"global_diameter", optional_size(s.structure.global_diameter)},
    };
    if (s.cvm) {
        doc["cvm"] = {{"statistic", s.cvm->statistic}, {"p_value", s.cvm->p_value}, {"reject", s.cvm->reject}};
    } else {
        doc["cvm"] = nullptr;
    }
    doc["global_graph"] = {{"vertices", s.global_vertices}, {"edges", s.global_edges}};
    doc["contacts"] = s.contacts;
    return doc.dump(2) + "\n";
}

RunResult run(const SimConfig& cfg, const fs::path& out_dir) {
    const RunInputs inputs = prepare_inputs(cfg);
    fs::create_directories(out_dir);
    {
        auto out = open_out(out_dir / "trace.txt");
        save_trace(out, inputs.contacts);
    }
    save_dataset(inputs.dataset, out_dir / "dataset.txt", out_dir / "assignment.txt");

    std::ofstream detail;
    if (cfg.node_detail) {
        detail = open_out(out_dir / "node_metrics.csv");
        write_node_detail_header(detail);
    }
    const fs::path snap_root = out_dir / "snapshots";
    if (cfg.write_snapshots) fs::remove_all(snap_root);
    const Vocabulary& vocab = inputs.dataset.catalog.vocabulary();
    const std::size_t global_vertices =
        global_graph(initial_networks(inputs.dataset, 0.0), 0.0).vertex_count;

    SampleObserver observer;
    if (cfg.write_snapshots || cfg.node_detail) {
        observer = [&](double t, std::span<const NodeState> nodes) {
            if (cfg.node_detail) {
                for (const NodeState& node : nodes) write_node_detail_row(detail, t, node_metrics(node, global_vertices));
            }
            if (!cfg.write_snapshots) return;
            const fs::path dir = snap_root / text::format_number(t);
            fs::create_directories(dir);
            for (const NodeState& node : nodes) {
                auto out = open_out(dir / (std::to_string(node.id()) + ".sn"));
                std::vector<ItemId> items(node.item_ids().begin(), node.item_ids().end());
                std::sort(items.begin(), items.end());
                write_snapshot(out, node.id(), t, node.network(), vocab, items);
            }
        };
    }

    RunResult result = simulate(cfg, inputs, observer);
    {
        auto out = open_out(out_dir / "metrics.csv");
        write_metrics_header(out);
        for (const MetricsRecord& r : result.records) write_metrics_row(out, r);
    }
    auto out = open_out(out_dir / "summary.json");
    out << summary_json(cfg, result.summary);
    return result;
}

std::vector<MetricsRecord> analyze_snapshots(const fs::path& run_dir, double gamma) {
    const Dataset data = load_dataset(run_dir / "dataset.txt", run_dir / "assignment.txt");
    const std::size_t global_vertices = global_graph(initial_networks(data, 0.0), 0.0).vertex_count;
    const std::size_t n = data.assignment.size();

    const fs::path root = run_dir / "snapshots";
    if (!fs::is_directory(root)) throw ValidationError("no snapshots directory in " + run_dir.string());
    std::vector<std::pair<double, fs::path>> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        double t = 0.0;
        if (entry.is_directory() && text::parse_number(entry.path().filename().string(), t)) {
            dirs.emplace_back(t, entry.path());
        }
    }
    std::sort(dirs.begin(), dirs.end());

    std::vector<MetricsRecord> records;
    for (const auto& [t, dir] : dirs) {
        std::vector<NodeState> nodes;
        nodes.reserve(n);
        for (NodeId id = 0; id < n; ++id) {
            const fs::path file = dir / (std::to_string(id) + ".sn");
            std::ifstream in(file);
            if (!in) throw ValidationError("missing snapshot " + file.string());
            NodeSnapshot snap = read_snapshot(in, data.catalog.vocabulary());
            nodes.emplace_back(id, 0, data.catalog);
            for (ItemId item : snap.items) nodes.back().receive_id(item);
            nodes.back().network() = std::move(snap.network);
        }
        records.push_back(sample_metrics(nodes, global_vertices, t, gamma));
    }
    return records;
}

std::string_view axis_name(SweepAxis a) noexcept {
    switch (a) {
    case SweepAxis::f_min: return "f_min";
    case SweepAxis::w_min: return "w_min";
    case SweepAxis::tag_limit: return "tag_limit";
    case SweepAxis::data_limit: return "data_limit";
    case SweepAxis::theta_rec: return "theta_rec";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view text) {
    std::string key(text);
    std::replace(key.begin(), key.end(), '-', '_');
    for (SweepAxis a : {SweepAxis::f_min, SweepAxis::w_min, SweepAxis::tag_limit, SweepAxis::data_limit,
                        SweepAxis::theta_rec}) {
        if (key == axis_name(a)) return a;
    }
    throw ConfigError("sweep axis must be one of f-min, w-min, tag-limit, data-limit, theta-rec; got '" +
                      std::string(text) + "'");
}

SimConfig with_axis(const SimConfig& base, SweepAxis axis, double value) {
    auto count = [&](std::uint32_t& field) {
        if (!(value >= 0.0) || value != std::floor(value) || value > 4e9) {
            throw ConfigError(std::string(axis_name(axis)) + " values must be non-negative integers");
        }
        field = static_cast<std::uint32_t>(value);
    };
    SimConfig cfg = base;
    switch (axis) {
    case SweepAxis::f_min: cfg.f_min = value; break;
    case SweepAxis::w_min: cfg.exchange.w_min_seconds = value; break;
    case SweepAxis::tag_limit: count(cfg.exchange.tag_limit); break;
    case SweepAxis::data_limit: count(cfg.exchange.data_limit); break;
    case SweepAxis::theta_rec: count(cfg.exchange.theta_rec); break;
    }
    return cfg;
}

namespace {

// Runs task(i) for i in [0, count) on `workers` threads; rethrows the first
// failure after all threads finish.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task task) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto loop = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    if (workers <= 1) {
        loop();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(loop);
    }
    if (failure) std::rethrow_exception(failure);
}

MetricsRecord mean_of(std::span<const MetricsRecord> rs) {
    MetricsRecord m;
    m.time = rs.front().time;
    for (const MetricsRecord& r : rs) {
        m.kd += r.kd;
        m.cvg += r.cvg;
        m.f_measure += r.f_measure;
        m.mean_edge_weight += r.mean_edge_weight;
    }
    const auto k = static_cast<double>(rs.size());
    m.kd /= k;
    m.cvg /= k;
    m.f_measure /= k;
    m.mean_edge_weight /= k;
    return m;
}

}  // namespace

std::vector<SweepCell> sweep(const SimConfig& base, SweepAxis axis, std::span<const double> values,
                             std::span<const std::uint64_t> seeds, const SweepOptions& options) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
    std::vector<SimConfig> configs;
    for (double v : values) {
        configs.push_back(with_axis(base, axis, v));
        configs.back().validate();
    }

    // The axis never touches mobility or dataset, so inputs are shared per seed.
    std::vector<RunInputs> inputs(seeds.size());
    parallel_for(seeds.size(), options.workers, [&](std::size_t i) {
        SimConfig cfg = base;
        cfg.seed = seeds[i];
        inputs[i] = prepare_inputs(cfg);
    });

    std::vector<RunResult> results(values.size() * seeds.size());
    parallel_for(results.size(), options.workers, [&](std::size_t k) {
        SimConfig cfg = configs[k / seeds.size()];
        cfg.seed = seeds[k % seeds.size()];
        results[k] = simulate(cfg, inputs[k % seeds.size()]);
    });

    std::vector<SweepCell> cells;
    for (std::size_t v = 0; v < values.size(); ++v) {
        SweepCell cell;
        cell.value = values[v];
        cell.seeds.assign(seeds.begin(), seeds.end());
        std::vector<MetricsRecord> finals;
        std::size_t rejects = 0;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            const RunResult& r = results[v * seeds.size() + s];
            cell.runs.push_back(r.summary);
            finals.push_back(r.summary.final_metrics);
            cell.mean_convergence_time += r.summary.convergence.time;
            cell.mean_convergence_cvg += r.summary.convergence.value;
            rejects += r.summary.cvm && r.summary.cvm->reject ? 1 : 0;
        }
        const auto k = static_cast<double>(seeds.size());
        cell.mean_final = mean_of(finals);
        cell.mean_convergence_time /= k;
        cell.mean_convergence_cvg /= k;
        cell.reject_fraction = static_cast<double>(rejects) / k;
        const std::size_t samples = results[v * seeds.size()].records.size();
        for (std::size_t i = 0; i < samples; ++i) {
            std::vector<MetricsRecord> at;
            for (std::size_t s = 0; s < seeds.size(); ++s) at.push_back(results[v * seeds.size() + s].records[i]);
            cell.mean_series.push_back(mean_of(at));
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

void write_sweep(const fs::path& out_dir, SweepAxis axis, std::span<const SweepCell> cells) {
    using text::format_number;
    fs::create_directories(out_dir);
    auto agg = open_out(out_dir / "aggregate.csv");
    agg << "axis,value,seeds,kd,cvg,f_measure,mean_edge_weight,convergence_cvg,convergence_time,"
           "cvm_reject_fraction\n";
    for (const SweepCell& cell : cells) {
        auto out = open_out(out_dir / (std::string(axis_name(axis)) + "_" + format_number(cell.value) + ".csv"));
        write_metrics_header(out);
        for (const MetricsRecord& r : cell.mean_series) write_metrics_row(out, r);
        const MetricsRecord& m = cell.mean_final;
        agg << axis_name(axis) << ',' << format_number(cell.value) << ',' << cell.seeds.size() << ','
            << format_number(m.kd) << ',' << format_number(m.cvg) << ',' << format_number(m.f_measure) << ','
            << format_number(m.mean_edge_weight) << ',' << format_number(cell.mean_convergence_cvg) << ','
            << format_number(cell.mean_convergence_time) << ',' << format_number(cell.reject_fraction) << '\n';
    }
}

}  // namespace cogsim
