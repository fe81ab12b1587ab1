#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cogsim/exchange.hpp"
#include "cogsim/rng.hpp"
#include "cogsim/semantic_network.hpp"

namespace reference {

using namespace cogsim;

// Straightforward transcription of key selection + fluency visit over an
// adjacency matrix, kept free of the library's data structures.
struct Reference {
    int n = 0;
    std::vector<std::vector<std::optional<EdgeState>>> adj;
    std::vector<bool> donor_has, recipient_has;
    ExchangeParams params;
    double now = 0, duration = 0, omega = 0;

    std::vector<int> order;
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> in;

    double f(const EdgeState& e) const {
        return std::exp(-((params.gamma / e.popularity) * (now - e.last_activation)));
    }

    void visit(int v, int hops) {
        std::vector<std::pair<double, int>> cand;
        for (int u = 0; u < n; ++u) {
            if (!adj[v][u] || adj[v][u]->popularity < params.theta_rec) continue;
            cand.push_back({f(*adj[v][u]) * -std::expm1(-params.tau * duration) / hops, u});
        }
        std::sort(cand.begin(), cand.end(), [](auto a, auto b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (auto [w, u] : cand) {
            if (w < omega) break;
            const auto key = std::minmax(u, v);
            if (std::find(edges.begin(), edges.end(), std::pair{key.first, key.second}) != edges.end())
                continue;
            const bool fresh = !in[u];
            if (fresh && order.size() >= params.tag_limit) continue;
            if (fresh) in[u] = true, order.push_back(u);
            edges.push_back({key.first, key.second});
            auto& e = *adj[v][u];
            e.last_activation = now;
            e.popularity += 1;
            adj[u][v] = e;
            if (fresh) visit(u, hops + 1);
        }
    }

    void run() {
        omega = std::exp(-params.gamma * params.w_min_seconds) * -std::expm1(-params.tau * 2.0);
        in.assign(n, false);
        std::vector<std::pair<double, int>> keys;
        for (int k = 0; k < n; ++k) {
            if (!donor_has[k] || !recipient_has[k]) continue;
            double rel = 0;
            for (int u = 0; u < n; ++u) {
                if (!adj[k][u]) continue;
                adj[k][u]->popularity += 1;
                adj[u][k] = adj[k][u];
            }
            for (int u = 0; u < n; ++u)
                if (adj[k][u]) rel += f(*adj[k][u]);
            keys.push_back({rel, k});
        }
        std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (auto [rel, k] : keys) {
            if (in[k] || order.size() >= params.tag_limit) continue;
            in[k] = true;
            order.push_back(k);
            visit(k, 1);
        }
    }
};

inline Reference reference_from(const SemanticNetwork& donor, const SemanticNetwork& recipient, int n) {
    Reference r;
    r.n = n;
    r.adj.assign(n, std::vector<std::optional<EdgeState>>(n));
    r.donor_has.assign(n, false);
    r.recipient_has.assign(n, false);
    for (TagId v : donor.vertices()) r.donor_has[index_of(v)] = true;
    for (TagId v : recipient.vertices()) r.recipient_has[index_of(v)] = true;
    for (const auto& [k, s] : donor.edges()) {
        r.adj[index_of(k.lo)][index_of(k.hi)] = s;
        r.adj[index_of(k.hi)][index_of(k.lo)] = s;
    }
    return r;
}

// Random donor/recipient pair of at most 12 vertices; true when the library's
// contributed network (vertices, edges, order) and the donor's edge states
// after the exchange equal the reference.
inline bool fluency_trial(Rng& rng) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const double now = 1000.0;
    SemanticNetwork donor;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.bernoulli(0.5)) {
                // idle times straddle the retrieval threshold
                const double idle = static_cast<double>(rng.below(120));
                const auto p = 1 + static_cast<std::uint32_t>(rng.below(4));
                donor.add_edge(TagId(a), TagId(b), {now - idle, p});
            }
    for (int v = 0; v < n; ++v)
        if (rng.bernoulli(0.1)) donor.add_vertex(TagId(v));
    SemanticNetwork recipient;
    for (int v = 0; v < n; ++v)
        if (rng.bernoulli(0.4)) recipient.add_vertex(TagId(v));

    ExchangeParams p;
    p.tag_limit = 1 + static_cast<std::uint32_t>(rng.below(12));
    p.theta_rec = 1 + static_cast<std::uint32_t>(rng.below(4));
    p.w_min_seconds = rng.uniform(10.0, 100.0);
    const double duration = 1.0 + static_cast<double>(rng.below(30));

    Reference ref = reference_from(donor, recipient, n);
    ref.params = p;
    ref.now = now;
    ref.duration = duration;
    ref.run();

    const auto got = compute_contributed_network(donor, recipient, now - duration, now, p);
    std::vector<int> got_v;
    for (TagId v : got.vertices()) got_v.push_back(static_cast<int>(index_of(v)));
    std::vector<std::pair<int, int>> got_e;
    for (const EdgeKey& e : got.edges())
        got_e.push_back({static_cast<int>(index_of(e.lo)), static_cast<int>(index_of(e.hi))});
    if (got_v != ref.order || got_e != ref.edges) return false;
    for (const auto& [k, s] : donor.edges()) {
        const auto& r = ref.adj[index_of(k.lo)][index_of(k.hi)];
        if (!r || !(s == *r)) return false;
    }
    return true;
}

// Random item pool; true when tally_select equals sort-by-(tally desc, id asc)
// with zero tallies dropped and the list cut at the data limit.
inline bool tally_trial(Rng& rng) {
    std::vector<RawItem> raw;
    std::set<ItemId> ids;
    const int count = 1 + static_cast<int>(rng.below(40));
    for (int i = 0; i < count; ++i) {
        RawItem it;
        it.id = 1000 + static_cast<ItemId>(rng.below(100000));
        std::set<std::string> ts;
        const int k = 1 + static_cast<int>(rng.below(5));
        while (static_cast<int>(ts.size()) < k) ts.insert("t" + std::to_string(rng.below(20)));
        it.tags.assign(ts.begin(), ts.end());
        if (ids.insert(it.id).second) raw.push_back(it);
    }
    const Catalog cat(raw);
    std::vector<const TaggedItem*> sender;
    for (const auto& it : cat.items()) sender.push_back(&it);
    std::reverse(sender.begin(), sender.end());
    std::unordered_set<ItemId> receiver;
    for (const auto& it : cat.items())
        if (rng.bernoulli(0.2)) receiver.insert(it.id());
    ContributedNetwork contrib;
    for (std::uint32_t t = 0; t < cat.vocabulary().size(); ++t)
        if (rng.bernoulli(0.3)) contrib.add_vertex(TagId(t));
    const auto limit = static_cast<std::uint32_t>(rng.below(15));

    std::vector<std::pair<int, ItemId>> oracle;
    for (const auto* it : sender) {
        if (receiver.contains(it->id())) continue;
        int tally = 0;
        for (TagId t : it->tags()) tally += contrib.has_vertex(t);
        if (tally > 0) oracle.push_back({-tally, it->id()});
    }
    std::sort(oracle.begin(), oracle.end());
    if (oracle.size() > limit) oracle.resize(limit);

    const auto got = tally_select(sender, receiver, contrib, limit);
    if (got.size() != oracle.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (got[i]->id() != oracle[i].second) return false;
    return true;
}

}  // namespace reference
