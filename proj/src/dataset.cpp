#include "cogsim/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <fmt/format.h>

#include "cogsim/error.hpp"
#include "cogsim/rng.hpp"
#include "cogsim/text.hpp"

namespace cogsim {

std::string_view regime_name(Regime r) noexcept { return r == Regime::d1 ? "d1" : "d2"; }

Regime parse_regime(std::string_view text) {
    if (text == "d1" || text == "d1-like" || text == "D1") return Regime::d1;
    if (text == "d2" || text == "d2-like" || text == "D2") return Regime::d2;
    throw ConfigError("dataset.regime must be d1 or d2, got '" + std::string(text) + "'");
}

void DatasetConfig::validate() const {
    if (items_per_node < 1) throw ConfigError("dataset.items_per_node must be >= 1");
    if (tags_per_item_lo < 1) throw ConfigError("dataset.tags_per_item lower bound must be >= 1");
    if (regime == Regime::d1 && tags_per_item_lo < 2) {
        throw ConfigError("dataset.tags_per_item lower bound must be >= 2 for d1");
    }
    if (tags_per_item_hi < tags_per_item_lo) {
        throw ConfigError("dataset.tags_per_item upper bound must be >= lower bound");
    }
    if (num_main_concepts < 1) throw ConfigError("dataset.num_main_concepts must be >= 1");
    if (tag_pool_sizes.empty()) throw ConfigError("dataset.tag_pool_sizes must not be empty");
    // A d1 item holds one main concept plus hi-1 distinct local tags.
    const std::uint32_t needed = regime == Regime::d1 ? tags_per_item_hi - 1 : tags_per_item_hi;
    for (std::uint32_t size : tag_pool_sizes) {
        if (size < needed) {
            throw ConfigError("dataset.tag_pool_sizes: vocabulary of " + std::to_string(size) +
                              " tags cannot supply " + std::to_string(needed) +
                              " distinct tags per item");
        }
    }
    if (!(cross_cluster_tag_fraction >= 0.0 && cross_cluster_tag_fraction <= 1.0)) {
        throw ConfigError("dataset.cross_cluster_tag_fraction must be in [0, 1]");
    }
    if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent)) {
        throw ConfigError("dataset.zipf_exponent must be >= 0");
    }
}

DatasetConfig DatasetConfig::defaults(Regime regime) {
    DatasetConfig cfg;
    if (regime == Regime::d2) {
        cfg.regime = Regime::d2;
        cfg.items_per_node = 10;
        cfg.tags_per_item_lo = 10;
        cfg.tags_per_item_hi = 15;
        cfg.tag_pool_sizes = {5000};
    }
    return cfg;
}

std::uint32_t DatasetConfig::items_for(std::size_t num_nodes) const {
    if (num_items > 0) return num_items;
    const auto full = static_cast<std::uint32_t>(num_nodes * items_per_node);
    return regime == Regime::d2 ? std::max(items_per_node, full / 4) : full;
}

std::vector<std::uint32_t> clusters_of(std::uint32_t community, std::uint32_t num_communities,
                                       std::uint32_t num_main_concepts) {
    if (num_communities >= num_main_concepts) return {community % num_main_concepts};
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = community; c < num_main_concepts; c += num_communities) out.push_back(c);
    return out;
}

std::string main_concept_label(std::uint32_t c) { return fmt::format("concept-{}", c); }
std::string local_tag_label(std::uint32_t c, std::uint32_t k) { return fmt::format("c{}-t{:03}", c, k); }
std::string shared_tag_label(std::uint32_t k) { return fmt::format("x-t{:03}", k); }
std::string global_tag_label(std::uint32_t k) { return fmt::format("t{:04}", k); }

ZipfSampler::ZipfSampler(std::uint32_t n, double exponent) : cdf_(n) {
    double acc = 0.0;
    for (std::uint32_t r = 0; r < n; ++r) {
        acc += std::pow(static_cast<double>(r + 1), -exponent);
        cdf_[r] = acc;
    }
}

std::uint32_t ZipfSampler::draw(double u) const {
    const double target = u * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    return static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                               static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

double ZipfSampler::probability(std::uint32_t rank) const {
    const double lo = rank == 0 ? 0.0 : cdf_[rank - 1];
    return (cdf_.at(rank) - lo) / cdf_.back();
}

namespace {

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
    }
}

// Draws `count` distinct entries of `vocab` with Zipf rank weights.
std::vector<std::string> draw_distinct(const std::vector<std::string>& vocab, const ZipfSampler& zipf,
                                       std::uint32_t count, Rng& rng) {
    std::set<std::uint32_t> picked;
    while (picked.size() < count) picked.insert(zipf(rng));
    std::vector<std::string> out;
    out.reserve(count);
    for (std::uint32_t r : picked) out.push_back(vocab[r]);
    return out;
}

std::uint32_t tags_in_item(const DatasetConfig& cfg, Rng& rng) {
    return cfg.tags_per_item_lo +
           static_cast<std::uint32_t>(rng.below(cfg.tags_per_item_hi - cfg.tags_per_item_lo + 1));
}

// Splits `total` proportionally to `weights` (largest remainder, ties to the
// lower index).
std::vector<std::uint32_t> apportion(std::uint32_t total, const std::vector<std::uint32_t>& weights) {
    const std::uint64_t sum = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    std::vector<std::uint32_t> out(weights.size(), 0);
    if (sum == 0) return out;
    std::vector<std::pair<std::uint64_t, std::size_t>> rest;
    std::uint32_t given = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const std::uint64_t scaled = std::uint64_t{total} * weights[i];
        out[i] = static_cast<std::uint32_t>(scaled / sum);
        given += out[i];
        rest.emplace_back(scaled % sum, i);
    }
    std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; given < total; ++k, ++given) ++out[rest[k % rest.size()].second];
    return out;
}

// Deals items of a pool to its nodes: disjoint hands when duplicates are off,
// independent draws without replacement otherwise.
void deal(const std::vector<ItemId>& pool, const std::vector<NodeId>& nodes, const DatasetConfig& cfg,
          Rng& rng, std::vector<std::vector<ItemId>>& assignment) {
    const std::uint32_t k = cfg.items_per_node;
    if (!cfg.duplicates()) {
        std::vector<ItemId> order = pool;
        shuffle(order, rng);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            auto& hand = assignment[nodes[i]];
            hand.assign(order.begin() + static_cast<std::ptrdiff_t>(i * k),
                        order.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
            std::sort(hand.begin(), hand.end());
        }
        return;
    }
    for (NodeId n : nodes) {
        std::vector<ItemId> order = pool;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::swap(order[i], order[i + static_cast<std::size_t>(rng.below(order.size() - i))]);
        }
        auto& hand = assignment[n];
        hand.assign(order.begin(), order.begin() + k);
        std::sort(hand.begin(), hand.end());
    }
}

void check_pool(std::size_t pool, std::size_t nodes, const DatasetConfig& cfg, std::uint32_t cluster) {
    const std::size_t need = cfg.duplicates() ? cfg.items_per_node : nodes * cfg.items_per_node;
    if (nodes > 0 && pool < need) {
        throw ConfigError(fmt::format(
            "dataset.num_items too small: cluster {} has {} items for {} nodes x {} items_per_node{}",
            cluster, pool, nodes, cfg.items_per_node, cfg.duplicates() ? "" : " without duplicates"));
    }
}

Dataset finish(std::vector<RawItem> raw, std::vector<std::vector<ItemId>> assignment) {
    std::set<ItemId> used;
    for (const auto& hand : assignment) used.insert(hand.begin(), hand.end());
    std::erase_if(raw, [&](const RawItem& item) { return !used.contains(item.id); });
    return Dataset{Catalog(raw), std::move(assignment)};
}

Dataset generate_d1(const DatasetConfig& cfg, std::span<const std::uint32_t> node_community, Rng& rng) {
    const std::uint32_t clusters = cfg.num_main_concepts;
    const std::uint32_t communities =
        node_community.empty() ? 1 : *std::max_element(node_community.begin(), node_community.end()) + 1;

    // Cluster vocabularies: exclusive tags in a random popularity order, with
    // a slice of the shared pool dropped into the more popular half so that
    // the bridges actually show up in the data.
    std::vector<std::vector<std::string>> vocab(clusters);
    for (std::uint32_t c = 0; c < clusters; ++c) {
        const std::uint32_t size = cfg.tag_pool_sizes[c % cfg.tag_pool_sizes.size()];
        const auto shared = static_cast<std::uint32_t>(std::lround(cfg.cross_cluster_tag_fraction * size));
        for (std::uint32_t k = 0; k < size - shared; ++k) vocab[c].push_back(local_tag_label(c, k));
        shuffle(vocab[c], rng);
        for (std::uint32_t k = 0; k < shared; ++k) {
            const auto at = static_cast<std::ptrdiff_t>(rng.below(vocab[c].size() / 2 + 1));
            vocab[c].insert(vocab[c].begin() + at, shared_tag_label(k));
        }
    }

    // Nodes drawing from the same set of clusters share one item pool.
    std::map<std::vector<std::uint32_t>, std::vector<NodeId>> groups;
    for (NodeId n = 0; n < node_community.size(); ++n) {
        groups[clusters_of(node_community[n], communities, clusters)].push_back(n);
    }
    std::vector<std::uint32_t> weights;
    for (const auto& [owned, members] : groups) weights.push_back(static_cast<std::uint32_t>(members.size()));
    const std::vector<std::uint32_t> per_group = apportion(cfg.items_for(node_community.size()), weights);

    std::vector<ZipfSampler> zipf;
    for (const auto& v : vocab) zipf.emplace_back(static_cast<std::uint32_t>(v.size()), cfg.zipf_exponent);

    std::vector<RawItem> raw;
    std::vector<std::vector<ItemId>> assignment(node_community.size());
    ItemId next_id = 1;
    std::size_t g = 0;
    for (const auto& [owned, members] : groups) {
        check_pool(per_group[g], members.size(), cfg, owned.front());
        std::vector<ItemId> pool;
        for (std::uint32_t i = 0; i < per_group[g]; ++i) {
            const std::uint32_t c = owned[i % owned.size()];
            RawItem item{next_id++, draw_distinct(vocab[c], zipf[c], tags_in_item(cfg, rng) - 1, rng)};
            item.tags.push_back(main_concept_label(c));
            pool.push_back(item.id);
            raw.push_back(std::move(item));
        }
        deal(pool, members, cfg, rng, assignment);
        ++g;
    }
    return finish(std::move(raw), std::move(assignment));
}

Dataset generate_d2(const DatasetConfig& cfg, std::span<const std::uint32_t> node_community, Rng& rng) {
    const std::uint32_t size = cfg.tag_pool_sizes.front();
    std::vector<std::string> vocab;
    for (std::uint32_t k = 0; k < size; ++k) vocab.push_back(global_tag_label(k));
    const ZipfSampler zipf(size, cfg.zipf_exponent);

    std::vector<RawItem> raw;
    std::vector<ItemId> pool;
    for (std::uint32_t i = 0, n = cfg.items_for(node_community.size()); i < n; ++i) {
        raw.push_back({i + 1, draw_distinct(vocab, zipf, tags_in_item(cfg, rng), rng)});
        pool.push_back(i + 1);
    }
    std::vector<NodeId> nodes(node_community.size());
    std::iota(nodes.begin(), nodes.end(), NodeId{0});
    check_pool(pool.size(), nodes.size(), cfg, 0);
    std::vector<std::vector<ItemId>> assignment(nodes.size());
    deal(pool, nodes, cfg, rng, assignment);
    return finish(std::move(raw), std::move(assignment));
}

}  // namespace

Dataset generate_dataset(const DatasetConfig& cfg, std::span<const std::uint32_t> node_community) {
    cfg.validate();
    if (node_community.empty()) throw ConfigError("dataset needs at least one node");
    Rng rng(cfg.seed, "dataset");
    if (cfg.regime == Regime::d2) return generate_d2(cfg, node_community, rng);

    Dataset data = generate_d1(cfg, node_community, rng);
    const GlobalGraph g = global_graph(initial_networks(data, 0.0), 0.0);
    const ClusterReport report = cluster_report(data, g.graph);
    if (report.cross_edges != 0 || report.bridging_edges > report.bridging_bound) {
        throw Error(fmt::format("d1 generator broke cluster separation ({} cross edges, {} > {} bridging)",
                                report.cross_edges, report.bridging_edges, report.bridging_bound));
    }
    return data;
}

std::vector<SemanticNetwork> initial_networks(const Dataset& data, double t0) {
    std::vector<SemanticNetwork> out;
    out.reserve(data.assignment.size());
    for (const auto& hand : data.assignment) {
        std::vector<const TaggedItem*> items;
        for (ItemId id : hand) items.push_back(&data.catalog.by_id(id));
        out.push_back(items.empty() ? SemanticNetwork{} : build_initial(items, t0));
    }
    return out;
}

GlobalGraph global_graph(std::span<const SemanticNetwork> initial, double t0) {
    GlobalGraph g;
    g.graph = union_of(initial, t0);
    g.vertex_count = g.graph.vertex_count();
    g.edge_count = g.graph.edge_count();
    g.diameter = diameter(g.graph);
    return g;
}

namespace {

constexpr int kShared = -1;
constexpr int kUnknown = -2;

// Cluster of a d1 label, kShared for shared tags, kUnknown otherwise.
int label_cluster(std::string_view label) {
    auto number = [](std::string_view s) {
        int v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc{} ? v : kUnknown;
    };
    if (label.starts_with("concept-")) return number(label.substr(8));
    if (label.starts_with("x-t")) return kShared;
    if (label.starts_with("c")) {
        const auto dash = label.find("-t");
        if (dash != std::string_view::npos) return number(label.substr(1, dash - 1));
    }
    return kUnknown;
}

}  // namespace

ClusterReport cluster_report(const Dataset& data, const SemanticNetwork& global) {
    const Vocabulary& vocab = data.catalog.vocabulary();
    ClusterReport r;
    for (const auto& [key, state] : global.edges()) {
        const int a = label_cluster(vocab.label(key.lo));
        const int b = label_cluster(vocab.label(key.hi));
        if (a == kShared || b == kShared) {
            ++r.bridging_edges;
        } else if (a != b) {
            ++r.cross_edges;
        }
    }
    for (const TaggedItem& item : data.catalog.items()) {
        std::size_t shared = 0;
        for (TagId t : item.tags()) shared += label_cluster(vocab.label(t)) == kShared ? 1 : 0;
        // Pairs of the item's clique that touch a shared tag.
        const std::size_t k = item.tags().size();
        r.bridging_bound += shared * (k - 1) - shared * (shared - 1) / 2;
    }
    return r;
}

void save_items(std::ostream& out, const Catalog& catalog) {
    out << "# item_id tag tag ...\n";
    for (const TaggedItem& item : catalog.items()) {
        out << item.id();
        for (TagId t : item.tags()) out << ' ' << text::quote(catalog.vocabulary().label(t));
        out << '\n';
    }
}

void save_assignment(std::ostream& out, const std::vector<std::vector<ItemId>>& assignment) {
    out << "# node_id item_id ...\n";
    for (std::size_t n = 0; n < assignment.size(); ++n) {
        out << n;
        for (ItemId id : assignment[n]) out << ' ' << id;
        out << '\n';
    }
}

std::vector<RawItem> load_items(std::istream& in) {
    std::vector<RawItem> items;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::strip_comment(line);
        if (body.empty()) continue;
        const auto fields = text::split_fields(body, line_no);
        unsigned long long id = 0;
        if (!text::parse_unsigned(fields[0], id)) throw ParseError("bad item id '" + fields[0] + "'", line_no);
        if (fields.size() < 2) throw ParseError("item without tags", line_no);
        RawItem item{id, {fields.begin() + 1, fields.end()}};
        for (const std::string& tag : item.tags) {
            try {
                normalize_label(tag);
            } catch (const ConfigError& e) {
                throw ParseError(e.what(), line_no);
            }
        }
        items.push_back(std::move(item));
    }
    return items;
}

std::vector<std::vector<ItemId>> load_assignment(std::istream& in) {
    std::vector<std::vector<ItemId>> assignment;
    std::vector<bool> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::strip_comment(line);
        if (body.empty()) continue;
        const auto fields = text::split_fields(body, line_no);
        unsigned long long node = 0;
        if (!text::parse_unsigned(fields[0], node) || node > 1'000'000) {
            throw ParseError("bad node id '" + fields[0] + "'", line_no);
        }
        if (node >= assignment.size()) {
            assignment.resize(node + 1);
            seen.resize(node + 1, false);
        }
        if (seen[node]) throw ParseError("node " + fields[0] + " listed twice", line_no);
        seen[node] = true;
        std::set<ItemId> hand;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            unsigned long long id = 0;
            if (!text::parse_unsigned(fields[i], id)) throw ParseError("bad item id '" + fields[i] + "'", line_no);
            hand.insert(id);
        }
        assignment[node].assign(hand.begin(), hand.end());
    }
    return assignment;
}

Dataset load_dataset(const std::filesystem::path& items_path, const std::filesystem::path& assignment_path) {
    std::ifstream items_in(items_path);
    if (!items_in) throw Error("cannot read " + items_path.string());
    std::ifstream assign_in(assignment_path);
    if (!assign_in) throw Error("cannot read " + assignment_path.string());
    const std::vector<RawItem> raw = load_items(items_in);
    Dataset data{Catalog(raw), load_assignment(assign_in)};
    for (std::size_t n = 0; n < data.assignment.size(); ++n) {
        for (ItemId id : data.assignment[n]) {
            if (!data.catalog.index_of_id(id)) {
                throw ValidationError("node " + std::to_string(n) + " is assigned unknown item " +
                                      std::to_string(id));
            }
        }
    }
    return data;
}

void save_dataset(const Dataset& data, const std::filesystem::path& items,
                  const std::filesystem::path& assignment) {
    std::ofstream items_out(items);
    if (!items_out) throw Error("cannot write " + items.string());
    save_items(items_out, data.catalog);
    std::ofstream assign_out(assignment);
    if (!assign_out) throw Error("cannot write " + assignment.string());
    save_assignment(assign_out, data.assignment);
}

}  // namespace cogsim
