#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogsim/dataset.hpp"
#include "cogsim/exchange.hpp"
#include "cogsim/metrics.hpp"
#include "cogsim/mobility.hpp"

namespace cogsim {

enum class Algorithm { ca, ba };

std::string_view algorithm_name(Algorithm a) noexcept;
/// "ca" or "ba", case-insensitive. Throws ConfigError.
Algorithm parse_algorithm(std::string_view text);

struct SimConfig {
    Algorithm algorithm = Algorithm::ca;
    MobilityConfig mobility;
    /// Replaces the mobility generator when set.
    std::optional<std::filesystem::path> trace_path;
    DatasetConfig dataset;
    /// Replace the dataset generator when both are set.
    std::optional<std::filesystem::path> items_path;
    std::optional<std::filesystem::path> assignment_path;
    ExchangeParams exchange;
    double f_min = 150.0;  ///< forget threshold, seconds; inf disables forgetting
    double snapshot_interval = 5.0;
    double duration = 25000.0;
    std::uint64_t seed = 1;

    /// Node whose network feeds the structure report and the CvM test.
    NodeId tagged_node = 0;
    /// Write snapshots/<time>/<node>.sn at every metrics sample.
    bool write_snapshots = false;
    /// Write node_metrics.csv with one row per node and sample.
    bool node_detail = false;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Trace, communities and dataset of one run. Depends only on the mobility
/// and dataset parts of the config plus the seed, so runs that differ in
/// exchange parameters can share it.
struct RunInputs {
    std::vector<ContactEvent> contacts;
    std::vector<std::uint32_t> community;  ///< per node
    Dataset dataset;
};

/// Generates or loads the inputs. Throws ValidationError when trace and
/// dataset disagree on the node set.
RunInputs prepare_inputs(const SimConfig& cfg);

struct RunSummary {
    MetricsRecord final_metrics;
    Convergence convergence;
    StructureReport structure;
    std::optional<CvmResult> cvm;  ///< empty when the tagged node forgot everything
    std::size_t global_vertices = 0;
    std::size_t global_edges = 0;
    std::size_t contacts = 0;  ///< contacts processed
};

struct RunResult {
    std::vector<MetricsRecord> records;
    RunSummary summary;
};

/// Called at every metrics sample, after pruning, with the nodes' state.
using SampleObserver = std::function<void(double time, std::span<const NodeState> nodes)>;

/// Runs the simulation in memory.
RunResult simulate(const SimConfig& cfg, const RunInputs& inputs, const SampleObserver& observer = {});

/// Full run writing the out-dir layout: metrics.csv, summary.json, trace.txt,
/// dataset.txt, assignment.txt, and optionally snapshots/ and node_metrics.csv.
RunResult run(const SimConfig& cfg, const std::filesystem::path& out_dir);

std::string summary_json(const SimConfig& cfg, const RunSummary& summary);

/// Recomputes metrics.csv rows from the snapshots of a completed run.
std::vector<MetricsRecord> analyze_snapshots(const std::filesystem::path& run_dir, double gamma);

enum class SweepAxis { f_min, w_min, tag_limit, data_limit, theta_rec };

std::string_view axis_name(SweepAxis a) noexcept;
/// Accepts f-min / f_min, w-min, tag-limit, data-limit, theta-rec. Throws
/// ConfigError.
SweepAxis parse_axis(std::string_view text);

/// Copy of `base` with the axis set to `value`. Throws ConfigError for
/// non-integral counts.
SimConfig with_axis(const SimConfig& base, SweepAxis axis, double value);

struct SweepCell {
    double value = 0.0;
    std::vector<std::uint64_t> seeds;
    std::vector<RunSummary> runs;           ///< per seed
    std::vector<MetricsRecord> mean_series;  ///< seed-averaged samples
    MetricsRecord mean_final;
    double mean_convergence_time = 0.0;
    double mean_convergence_cvg = 0.0;
    double reject_fraction = 0.0;  ///< CvM rejections over seeds
};

struct SweepOptions {
    unsigned workers = 0;  ///< 0: hardware concurrency
};

/// Cross product of values and seeds. Runs execute on a worker pool; results
/// do not depend on the number of workers.
std::vector<SweepCell> sweep(const SimConfig& base, SweepAxis axis, std::span<const double> values,
                             std::span<const std::uint64_t> seeds, const SweepOptions& options = {});

/// Writes one CSV per cell (seed-averaged series) and aggregate.csv.
void write_sweep(const std::filesystem::path& out_dir, SweepAxis axis, std::span<const SweepCell> cells);

}  // namespace cogsim
