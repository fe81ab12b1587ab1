#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cogsim/catalog.hpp"
#include "cogsim/node.hpp"
#include "cogsim/semantic_network.hpp"

namespace cogsim {

/// One sampled row of the evaluation indexes.
struct MetricsRecord {
    double time = 0.0;
    double kd = 0.0;
    double cvg = 0.0;
    double f_measure = 0.0;
    double mean_edge_weight = 0.0;

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

/// Per-node terms of the averaged indexes.
struct NodeMetrics {
    NodeId node = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t items = 0;
    double kd = 0.0;
    double cvg = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

/// |V_n| / |V_G|. Throws MetricError when the global graph is empty.
double node_knowledge(const NodeState& node, std::size_t global_vertices);

/// (1/|V_n|) sum over v in V_n of (owned items tagged v) / |D_v|; 0 for an
/// empty network.
double node_coverage(const NodeState& node);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

/// With T = union of the tags of owned items: p = |T ∩ V_n| / |T|,
/// r = |T ∩ V_n| / |V_n|, F their harmonic mean (0 when p + r = 0 or either
/// set is empty).
PrecisionRecall node_precision_recall(const NodeState& node);

NodeMetrics node_metrics(const NodeState& node, std::size_t global_vertices);

/// Averages over nodes. Throw MetricError for an empty node list (and, for
/// KD, for an empty global graph).
double knowledge_dissemination(std::span<const NodeState> nodes, std::size_t global_vertices);
double coverage(std::span<const NodeState> nodes);
double f_measure(std::span<const NodeState> nodes);

/// Mean of f(e, now) over every edge of every node; 0 when no edge exists.
double mean_edge_weight(std::span<const NodeState> nodes, double now, double gamma);

MetricsRecord sample_metrics(std::span<const NodeState> nodes, std::size_t global_vertices,
                             double now, double gamma);

struct Convergence {
    double value = 0.0;
    double time = 0.0;
};

/// Earliest time from which the coverage stays exactly constant to the end of
/// the series. Throws MetricError for an empty series.
Convergence coverage_convergence(std::span<const std::pair<double, double>> series);
Convergence coverage_convergence(std::span<const MetricsRecord> records);

struct CvmResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;  ///< p < 0.05
    bool permutation = false;  ///< p-value from the permutation fallback
};

struct CvmOptions {
    /// Below this size (either sample) the p-value comes from a permutation
    /// test instead of the asymptotic law.
    std::size_t asymptotic_min_size = 20;
    std::uint32_t permutations = 10000;
    std::uint64_t seed = 0x5eed;
};

/// Two-sample Cramér-von Mises statistic T (Anderson's form, mid-ranks for
/// ties).
double cvm_statistic(std::span<const double> a, std::span<const double> b);

/// 1 - F(T) under the limiting distribution of T.
double cvm_asymptotic_pvalue(double statistic);

/// Throws MetricError for an empty sample. Symmetric in its arguments.
CvmResult cvm_two_sample(std::span<const double> a, std::span<const double> b,
                         const CvmOptions& options = {});

/// (d, P[deg >= d]) over the distinct degrees, ascending.
std::vector<std::pair<std::size_t, double>> degree_ccdf(const SemanticNetwork& net);

/// A node's network compared with the global graph.
struct StructureReport {
    double pct_vertices = 0.0;
    double pct_edges = 0.0;
    std::optional<std::size_t> diameter;
    std::optional<std::size_t> global_diameter;
};

StructureReport structure_report(const SemanticNetwork& node, const SemanticNetwork& global);

// CSV: `time,kd,cvg,f_measure,mean_edge_weight`, shortest round-trip numbers.

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const MetricsRecord& r);
void write_node_detail_header(std::ostream& out);
void write_node_detail_row(std::ostream& out, double time, const NodeMetrics& m);

}  // namespace cogsim
