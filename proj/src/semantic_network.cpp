#include "cogsim/semantic_network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "cogsim/error.hpp"
#include "cogsim/exchange.hpp"
#include "cogsim/simd/kernels.hpp"

namespace cogsim {

double edge_weight(const EdgeState& edge, double now, double gamma) noexcept {
    const double beta = gamma / static_cast<double>(edge.popularity);
    return std::exp(-(beta * (now - edge.last_activation)));
}

bool is_forgotten(const EdgeState& edge, double now, double f_min) noexcept {
    return (now - edge.last_activation) >= static_cast<double>(edge.popularity) * f_min;
}

namespace {

std::string edge_name(TagId a, TagId b) {
    return "(" + std::to_string(index_of(a)) + ", " + std::to_string(index_of(b)) + ")";
}

void insert_sorted(std::vector<TagId>& list, TagId v) {
    list.insert(std::lower_bound(list.begin(), list.end(), v), v);
}

void erase_sorted(std::vector<TagId>& list, TagId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v) list.erase(it);
}

}  // namespace

std::vector<TagId> SemanticNetwork::vertices() const {
    std::vector<TagId> out;
    out.reserve(adjacency_.size());
    for (const auto& [v, _] : adjacency_) out.push_back(v);
    return out;
}

std::span<const TagId> SemanticNetwork::neighbors(TagId v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end()) {
        throw LookupError("unknown vertex " + std::to_string(index_of(v)));
    }
    return it->second;
}

std::size_t SemanticNetwork::slot_of(TagId a, TagId b) const {
    auto it = slot_.find(EdgeKey{a, b}.packed());
    if (it == slot_.end()) throw LookupError("unknown edge " + edge_name(a, b));
    return it->second;
}

EdgeState SemanticNetwork::edge(TagId a, TagId b) const {
    const std::size_t s = slot_of(a, b);
    return EdgeState{last_[s], popularity_[s]};
}

std::optional<EdgeState> SemanticNetwork::find_edge(TagId a, TagId b) const {
    auto it = slot_.find(EdgeKey{a, b}.packed());
    if (it == slot_.end()) return std::nullopt;
    return EdgeState{last_[it->second], popularity_[it->second]};
}

std::vector<std::pair<EdgeKey, EdgeState>> SemanticNetwork::edges_in_storage_order() const {
    std::vector<std::pair<EdgeKey, EdgeState>> out;
    out.reserve(keys_.size());
    for (std::size_t s = 0; s < keys_.size(); ++s) {
        out.emplace_back(keys_[s], EdgeState{last_[s], popularity_[s]});
    }
    return out;
}

std::vector<std::pair<EdgeKey, EdgeState>> SemanticNetwork::edges() const {
    auto out = edges_in_storage_order();
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

void SemanticNetwork::add_vertex(TagId v) { adjacency_.try_emplace(v); }

bool SemanticNetwork::add_edge(TagId a, TagId b, EdgeState state) {
    if (a == b) throw ConfigError("self-loop on vertex " + std::to_string(index_of(a)));
    if (state.popularity == 0) throw ConfigError("edge popularity must be >= 1");
    const EdgeKey key{a, b};
    if (slot_.contains(key.packed())) return false;
    slot_.emplace(key.packed(), static_cast<std::uint32_t>(keys_.size()));
    keys_.push_back(key);
    last_.push_back(state.last_activation);
    popularity_.push_back(state.popularity);
    insert_sorted(adjacency_[key.lo], key.hi);
    insert_sorted(adjacency_[key.hi], key.lo);
    return true;
}

double SemanticNetwork::weight(TagId a, TagId b, double now, double gamma) const {
    const std::size_t s = slot_of(a, b);
    return edge_weight(EdgeState{last_[s], popularity_[s]}, now, gamma);
}

void SemanticNetwork::activate_edge(TagId a, TagId b, double now) {
    const std::size_t s = slot_of(a, b);
    last_[s] = now;
    ++popularity_[s];
}

void SemanticNetwork::boost_popularity(TagId a, TagId b, std::uint32_t by) {
    popularity_[slot_of(a, b)] += by;
}

void SemanticNetwork::remove_edges(std::span<const std::uint8_t> doomed) {
    std::size_t write = 0;
    for (std::size_t read = 0; read < keys_.size(); ++read) {
        const EdgeKey key = keys_[read];
        if (doomed[read]) {
            slot_.erase(key.packed());
            erase_sorted(adjacency_[key.lo], key.hi);
            erase_sorted(adjacency_[key.hi], key.lo);
            continue;
        }
        if (write != read) {
            keys_[write] = key;
            last_[write] = last_[read];
            popularity_[write] = popularity_[read];
            slot_[key.packed()] = static_cast<std::uint32_t>(write);
        }
        ++write;
    }
    keys_.resize(write);
    last_.resize(write);
    popularity_.resize(write);
}

std::size_t SemanticNetwork::prune_forgotten(double now, double f_min) {
    std::size_t removed = 0;
    if (!keys_.empty()) {
        std::vector<std::uint8_t> doomed(keys_.size());
        removed = simd::expired(now, f_min, last_, popularity_, doomed);
        if (removed > 0) remove_edges(doomed);
    }
    std::erase_if(adjacency_, [](const auto& entry) { return entry.second.empty(); });
    return removed;
}

void SemanticNetwork::merge(const ContributedNetwork& contrib, double now) {
    for (TagId v : contrib.vertices()) add_vertex(v);
    for (const EdgeKey& e : contrib.edges()) {
        add_edge(e.lo, e.hi, EdgeState{now, 1});
        activate_edge(e.lo, e.hi, now);
    }
}

double SemanticNetwork::total_edge_weight(double now, double gamma) const {
    return simd::decay_sum(now, gamma, last_, popularity_);
}

double SemanticNetwork::mean_edge_weight(double now, double gamma) const {
    if (keys_.empty()) return 0.0;
    return total_edge_weight(now, gamma) / static_cast<double>(keys_.size());
}

bool operator==(const SemanticNetwork& a, const SemanticNetwork& b) {
    return a.adjacency_ == b.adjacency_ && a.edges() == b.edges();
}

namespace {

template <class ItemRange, class Deref>
SemanticNetwork build_from(const ItemRange& items, double t0, Deref deref) {
    if (items.empty()) throw ConfigError("cannot build a semantic network from zero items");
    SemanticNetwork net;
    for (const auto& entry : items) {
        const TaggedItem& item = deref(entry);
        const auto tags = item.tags();
        for (std::size_t i = 0; i < tags.size(); ++i) {
            net.add_vertex(tags[i]);
            for (std::size_t j = i + 1; j < tags.size(); ++j) {
                net.add_edge(tags[i], tags[j], EdgeState{t0, 1});
            }
        }
    }
    return net;
}

}  // namespace

SemanticNetwork build_initial(std::span<const TaggedItem> items, double t0) {
    return build_from(items, t0, [](const TaggedItem& i) -> const TaggedItem& { return i; });
}

SemanticNetwork build_initial(std::span<const TaggedItem* const> items, double t0) {
    return build_from(items, t0, [](const TaggedItem* i) -> const TaggedItem& { return *i; });
}

SemanticNetwork union_of(std::span<const SemanticNetwork> networks, double t0) {
    SemanticNetwork out;
    for (const auto& net : networks) {
        for (TagId v : net.vertices()) out.add_vertex(v);
        for (const auto& [key, _] : net.edges()) out.add_edge(key.lo, key.hi, EdgeState{t0, 1});
    }
    return out;
}

std::vector<std::size_t> degree_sequence(const SemanticNetwork& net) {
    std::vector<std::size_t> out;
    out.reserve(net.vertex_count());
    for (TagId v : net.vertices()) out.push_back(net.degree(v));
    return out;
}

std::optional<std::size_t> diameter(const SemanticNetwork& net) {
    if (net.empty()) return std::nullopt;
    const std::vector<TagId> verts = net.vertices();
    const std::size_t n = verts.size();
    auto dense = [&](TagId v) {
        return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (TagId u : net.neighbors(verts[i])) adj[i].push_back(static_cast<std::uint32_t>(dense(u)));
    }

    // Components; vertices are scanned in ascending order, so on a size tie the
    // first component found holds the smallest TagId.
    std::vector<std::int32_t> comp(n, -1);
    std::vector<std::size_t> comp_size;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        const auto c = static_cast<std::int32_t>(comp_size.size());
        std::size_t size = 0;
        std::deque<std::size_t> queue{s};
        comp[s] = c;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            ++size;
            for (auto u : adj[v]) {
                if (comp[u] < 0) {
                    comp[u] = c;
                    queue.push_back(u);
                }
            }
        }
        comp_size.push_back(size);
    }
    const auto largest = static_cast<std::int32_t>(
        std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());

    std::size_t best = 0;
    std::vector<std::int64_t> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != largest) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            best = std::max(best, static_cast<std::size_t>(dist[v]));
            for (auto u : adj[v]) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    return best;
}

NetworkStats snapshot_stats(const SemanticNetwork& net, double now, double gamma) {
    NetworkStats stats;
    stats.vertex_count = net.vertex_count();
    stats.edge_count = net.edge_count();
    stats.mean_edge_weight = net.mean_edge_weight(now, gamma);
    for (std::size_t d : degree_sequence(net)) ++stats.degree_histogram[d];
    stats.diameter = diameter(net);
    return stats;
}

}  // namespace cogsim
