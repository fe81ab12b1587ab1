#include "cogsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "cogsim/error.hpp"
#include "cogsim/rng.hpp"
#include "cogsim/text.hpp"

namespace cogsim {

double node_knowledge(const NodeState& node, std::size_t global_vertices) {
    if (global_vertices == 0) throw MetricError("knowledge dissemination undefined: empty global graph");
    return static_cast<double>(node.network().vertex_count()) / static_cast<double>(global_vertices);
}

double node_coverage(const NodeState& node) {
    const SemanticNetwork& net = node.network();
    if (net.empty()) return 0.0;
    const Catalog& catalog = node.catalog();
    double sum = 0.0;
    for (TagId v : net.vertices()) {
        // Vertices come from item tags, so |D_v| >= 1.
        sum += static_cast<double>(node.owned_with_tag(v)) / catalog.items_with_tag(v);
    }
    return sum / static_cast<double>(net.vertex_count());
}

PrecisionRecall node_precision_recall(const NodeState& node) {
    const SemanticNetwork& net = node.network();
    const std::size_t owned_tags = node.owned_tag_count();
    if (net.empty() || owned_tags == 0) return {};
    std::size_t common = 0;
    for (TagId v : net.vertices()) common += node.owned_with_tag(v) > 0 ? 1 : 0;
    PrecisionRecall pr;
    pr.precision = static_cast<double>(common) / static_cast<double>(owned_tags);
    pr.recall = static_cast<double>(common) / static_cast<double>(net.vertex_count());
    if (pr.precision + pr.recall > 0.0) {
        pr.f_measure = 2.0 * pr.precision * pr.recall / (pr.precision + pr.recall);
    }
    return pr;
}

NodeMetrics node_metrics(const NodeState& node, std::size_t global_vertices) {
    NodeMetrics m;
    m.node = node.id();
    m.vertices = node.network().vertex_count();
    m.edges = node.network().edge_count();
    m.items = node.item_count();
    m.kd = node_knowledge(node, global_vertices);
    m.cvg = node_coverage(node);
    const PrecisionRecall pr = node_precision_recall(node);
    m.precision = pr.precision;
    m.recall = pr.recall;
    m.f_measure = pr.f_measure;
    return m;
}

namespace {

template <class F>
double average(std::span<const NodeState> nodes, const char* name, F per_node) {
    if (nodes.empty()) throw MetricError(std::string(name) + " undefined: no nodes");
    double sum = 0.0;
    for (const NodeState& n : nodes) sum += per_node(n);
    return sum / static_cast<double>(nodes.size());
}

}  // namespace

double knowledge_dissemination(std::span<const NodeState> nodes, std::size_t global_vertices) {
    return average(nodes, "knowledge dissemination",
                   [&](const NodeState& n) { return node_knowledge(n, global_vertices); });
}

double coverage(std::span<const NodeState> nodes) {
    return average(nodes, "coverage", [](const NodeState& n) { return node_coverage(n); });
}

double f_measure(std::span<const NodeState> nodes) {
    return average(nodes, "f-measure",
                   [](const NodeState& n) { return node_precision_recall(n).f_measure; });
}

double mean_edge_weight(std::span<const NodeState> nodes, double now, double gamma) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const NodeState& n : nodes) {
        sum += n.network().total_edge_weight(now, gamma);
        count += n.network().edge_count();
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

MetricsRecord sample_metrics(std::span<const NodeState> nodes, std::size_t global_vertices,
                             double now, double gamma) {
    MetricsRecord r;
    r.time = now;
    r.kd = knowledge_dissemination(nodes, global_vertices);
    r.cvg = coverage(nodes);
    r.f_measure = f_measure(nodes);
    r.mean_edge_weight = mean_edge_weight(nodes, now, gamma);
    return r;
}

Convergence coverage_convergence(std::span<const std::pair<double, double>> series) {
    if (series.empty()) throw MetricError("convergence undefined: empty series");
    std::size_t i = series.size() - 1;
    while (i > 0 && series[i - 1].second == series.back().second) --i;
    return {series.back().second, series[i].first};
}

Convergence coverage_convergence(std::span<const MetricsRecord> records) {
    std::vector<std::pair<double, double>> series;
    series.reserve(records.size());
    for (const MetricsRecord& r : records) series.emplace_back(r.time, r.cvg);
    return coverage_convergence(series);
}

namespace {

// Anderson's U from the pooled mid-ranks of each sample. Exact, since ranks
// are multiples of 1/2.
double cvm_u(std::span<const double> ranks_a, std::span<const double> ranks_b) {
    auto part = [](std::span<const double> ranks) {
        std::vector<double> r(ranks.begin(), ranks.end());
        std::sort(r.begin(), r.end());
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double d = r[i] - static_cast<double>(i + 1);
            s += d * d;
        }
        return s;
    };
    const auto n = static_cast<double>(ranks_a.size());
    const auto m = static_cast<double>(ranks_b.size());
    return n * part(ranks_a) + m * part(ranks_b);
}

double cvm_from_u(double u, std::size_t n, std::size_t m) {
    const auto nm = static_cast<double>(n) * static_cast<double>(m);
    const auto total = static_cast<double>(n + m);
    return u / (nm * total) - (4.0 * nm - 1.0) / (6.0 * total);
}

// Mid-ranks of the pooled sample, in pooled order.
std::vector<double> midranks(std::span<const double> pooled) {
    std::vector<std::size_t> order(pooled.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
    std::vector<double> rank(pooled.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }
    return rank;
}

void require_samples(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw MetricError("Cramér-von Mises test needs two non-empty samples");
}

}  // namespace

double cvm_statistic(std::span<const double> a, std::span<const double> b) {
    require_samples(a, b);
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> rank = midranks(pooled);
    const std::span<const double> r(rank);
    return cvm_from_u(cvm_u(r.first(a.size()), r.subspan(a.size())), a.size(), b.size());
}

double cvm_asymptotic_pvalue(double statistic) {
    if (!(statistic > 0.0)) return 1.0;
    // Limiting CDF as a series of modified Bessel functions of the second
    // kind (Anderson & Darling, 1952).
    const double x = statistic;
    double cdf = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double y = 4.0 * k + 1.0;
        const double q = y * y / (16.0 * x);
        if (q > 700.0) break;
        const double u = std::exp(std::lgamma(k + 0.5) - std::lgamma(k + 1.0)) /
                         (std::pow(std::numbers::pi, 1.5) * std::sqrt(x));
        const double term = u * std::sqrt(y) * std::exp(-q) * std::cyl_bessel_k(0.25, q);
        cdf += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

CvmResult cvm_two_sample(std::span<const double> a, std::span<const double> b, const CvmOptions& options) {
    require_samples(a, b);
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> rank = midranks(pooled);
    const std::size_t n = a.size();
    const double u_obs = cvm_u(std::span<const double>(rank).first(n), std::span<const double>(rank).subspan(n));

    CvmResult res;
    res.statistic = cvm_from_u(u_obs, a.size(), b.size());
    if (std::min(a.size(), b.size()) >= options.asymptotic_min_size) {
        res.p_value = cvm_asymptotic_pvalue(res.statistic);
    } else {
        // Shuffle group labels; U is exact, so compare it directly.
        Rng rng(options.seed, "cvm-permutation");
        std::uint64_t extreme = 0;
        for (std::uint32_t p = 0; p < options.permutations; ++p) {
            for (std::size_t i = rank.size(); i > 1; --i) {
                std::swap(rank[i - 1], rank[static_cast<std::size_t>(rng.below(i))]);
            }
            const double u = cvm_u(std::span<const double>(rank).first(n), std::span<const double>(rank).subspan(n));
            extreme += u >= u_obs ? 1 : 0;
        }
        res.p_value = static_cast<double>(extreme + 1) / static_cast<double>(options.permutations + 1);
        res.permutation = true;
    }
    res.reject = res.p_value < 0.05;
    return res;
}

std::vector<std::pair<std::size_t, double>> degree_ccdf(const SemanticNetwork& net) {
    std::vector<std::size_t> degrees = degree_sequence(net);
    std::sort(degrees.begin(), degrees.end());
    std::vector<std::pair<std::size_t, double>> out;
    const auto total = static_cast<double>(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (i == 0 || degrees[i] != degrees[i - 1]) {
            out.emplace_back(degrees[i], static_cast<double>(degrees.size() - i) / total);
        }
    }
    return out;
}

StructureReport structure_report(const SemanticNetwork& node, const SemanticNetwork& global) {
    StructureReport r;
    if (global.vertex_count() > 0) {
        r.pct_vertices = 100.0 * static_cast<double>(node.vertex_count()) / static_cast<double>(global.vertex_count());
    }
    if (global.edge_count() > 0) {
        r.pct_edges = 100.0 * static_cast<double>(node.edge_count()) / static_cast<double>(global.edge_count());
    }
    r.diameter = diameter(node);
    r.global_diameter = diameter(global);
    return r;
}

void write_metrics_header(std::ostream& out) { out << "time,kd,cvg,f_measure,mean_edge_weight\n"; }

void write_metrics_row(std::ostream& out, const MetricsRecord& r) {
    using text::format_number;
    out << format_number(r.time) << ',' << format_number(r.kd) << ',' << format_number(r.cvg) << ','
        << format_number(r.f_measure) << ',' << format_number(r.mean_edge_weight) << '\n';
}

void write_node_detail_header(std::ostream& out) {
    out << "time,node,vertices,edges,items,kd,cvg,precision,recall,f_measure\n";
}

void write_node_detail_row(std::ostream& out, double time, const NodeMetrics& m) {
    using text::format_number;
    out << format_number(time) << ',' << m.node << ',' << m.vertices << ',' << m.edges << ',' << m.items
        << ',' << format_number(m.kd) << ',' << format_number(m.cvg) << ',' << format_number(m.precision)
        << ',' << format_number(m.recall) << ',' << format_number(m.f_measure) << '\n';
}

}  // namespace cogsim
