#include "cogsim/exchange.hpp"

#include <algorithm>
#include <cmath>

#include "cogsim/error.hpp"

namespace cogsim {

bool ContributedNetwork::add_vertex(TagId v) {
    if (!vertex_set_.insert(index_of(v)).second) return false;
    vertices_.push_back(v);
    return true;
}

bool ContributedNetwork::add_edge(TagId a, TagId b) {
    if (!has_vertex(a) || !has_vertex(b)) {
        throw ConfigError("contributed edge endpoint outside the contributed vertex set");
    }
    const EdgeKey key{a, b};
    if (!edge_set_.insert(key.packed()).second) return false;
    edges_.push_back(key);
    return true;
}

void ExchangeParams::validate() const {
    if (tag_limit < 1) throw ConfigError("exchange.tag_limit must be >= 1");
    if (theta_rec < 1) throw ConfigError("exchange.theta_rec must be >= 1");
    if (!(w_min_seconds > 0.0)) throw ConfigError("exchange.w_min must be > 0");
    if (!(tau > 0.0)) throw ConfigError("exchange.tau must be > 0");
    if (!(gamma > 0.0)) throw ConfigError("exchange.gamma must be > 0");
}

std::vector<TagId> key_vertices(const SemanticNetwork& donor, const SemanticNetwork& recipient) {
    std::vector<TagId> keys;
    for (TagId v : donor.vertices()) {
        if (recipient.has_vertex(v)) keys.push_back(v);
    }
    return keys;
}

void boost_key_popularity(SemanticNetwork& donor, std::span<const TagId> keys) {
    for (TagId k : keys) {
        for (TagId u : donor.neighbors(k)) donor.boost_popularity(k, u);
    }
}

double key_relevance(const SemanticNetwork& donor, TagId key, double now, double gamma) {
    double sum = 0.0;
    for (TagId u : donor.neighbors(key)) sum += donor.weight(key, u, now, gamma);
    return sum;
}

namespace {

// 1 - exp(-tau * D), evaluated the same way for edges and for the threshold.
double duration_factor(double tau, double duration) { return -std::expm1(-tau * duration); }

}  // namespace

double retrieval_weight(const EdgeState& edge, std::uint32_t hops, double contact_duration,
                        double now, const ExchangeParams& params) {
    if (hops < 1) throw ConfigError("retrieval weight needs hops >= 1");
    return edge_weight(edge, now, params.gamma) * duration_factor(params.tau, contact_duration) /
           static_cast<double>(hops);
}

double omega_min(const ExchangeParams& params) {
    return std::exp(-params.gamma * params.w_min_seconds) * duration_factor(params.tau, 2.0);
}

namespace {

class FluencyVisit {
public:
    FluencyVisit(SemanticNetwork& donor, double now, double duration, const ExchangeParams& params)
        : donor_(donor), now_(now), duration_(duration), params_(params),
          threshold_(omega_min(params)) {}

    void start_from(TagId key) {
        if (contrib_.has_vertex(key) || full()) return;
        contrib_.add_vertex(key);
        expand(key, 1);
    }

    ContributedNetwork take() { return std::move(contrib_); }

private:
    struct Candidate {
        double weight;
        TagId to;
    };

    bool full() const { return contrib_.vertex_count() >= params_.tag_limit; }

    // Depth-first expansion of an admitted vertex. Each vertex is expanded once
    // (on admission); an edge is taken only if its far end is already in the
    // contributed network or can still be admitted.
    void expand(TagId from, std::uint32_t hops) {
        std::vector<Candidate> recognized;
        for (TagId to : donor_.neighbors(from)) {
            const EdgeState e = donor_.edge(from, to);
            if (e.popularity < params_.theta_rec) continue;
            recognized.push_back({retrieval_weight(e, hops, duration_, now_, params_), to});
        }
        std::sort(recognized.begin(), recognized.end(), [](const Candidate& a, const Candidate& b) {
            if (a.weight != b.weight) return a.weight > b.weight;
            return a.to < b.to;
        });

        for (const Candidate& c : recognized) {
            if (c.weight < threshold_) break;
            if (contrib_.has_edge(from, c.to)) continue;
            const bool fresh = !contrib_.has_vertex(c.to);
            if (fresh) {
                if (full()) continue;
                contrib_.add_vertex(c.to);
            }
            contrib_.add_edge(from, c.to);
            donor_.activate_edge(from, c.to, now_);
            if (fresh) expand(c.to, hops + 1);
        }
    }

    SemanticNetwork& donor_;
    double now_;
    double duration_;
    const ExchangeParams& params_;
    double threshold_;
    ContributedNetwork contrib_;
};

}  // namespace

ContributedNetwork compute_contributed_network(SemanticNetwork& donor,
                                               const SemanticNetwork& recipient,
                                               double contact_start, double contact_end,
                                               const ExchangeParams& params) {
    if (contact_end < contact_start) throw ConfigError("contact ends before it starts");
    const std::vector<TagId> keys = key_vertices(donor, recipient);
    if (keys.empty()) return {};

    const double now = contact_end;
    // Boost a key's edges, then read its relevance, one key at a time: an edge
    // between two keys is seen once boosted by the first and twice by the second.
    std::vector<std::pair<double, TagId>> ranked;
    ranked.reserve(keys.size());
    for (TagId k : keys) {
        for (TagId u : donor.neighbors(k)) donor.boost_popularity(k, u);
        ranked.emplace_back(key_relevance(donor, k, now, params.gamma), k);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    FluencyVisit visit(donor, now, contact_end - contact_start, params);
    for (const auto& [relevance, key] : ranked) visit.start_from(key);
    return visit.take();
}

std::vector<const TaggedItem*> tally_select(std::span<const TaggedItem* const> sender_items,
                                            const std::unordered_set<ItemId>& receiver_item_ids,
                                            const ContributedNetwork& contrib,
                                            std::uint32_t data_limit) {
    std::vector<std::pair<std::size_t, const TaggedItem*>> tallied;
    for (const TaggedItem* item : sender_items) {
        if (receiver_item_ids.contains(item->id())) continue;
        std::size_t tally = 0;
        for (TagId t : item->tags()) tally += contrib.has_vertex(t) ? 1 : 0;
        if (tally > 0) tallied.emplace_back(tally, item);
    }
    std::sort(tallied.begin(), tallied.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->id() < b.second->id();
    });
    std::vector<const TaggedItem*> out;
    const std::size_t n = std::min<std::size_t>(data_limit, tallied.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(tallied[i].second);
    return out;
}

namespace {

Transfer donate_ca(NodeState& donor, NodeState& recipient, const ContactEvent& contact,
                   const ExchangeParams& params) {
    Transfer t;
    t.donor = donor.id();
    t.recipient = recipient.id();
    t.contrib = compute_contributed_network(donor.network(), recipient.network(), contact.start,
                                            contact.end, params);
    recipient.network().merge(t.contrib, contact.end);
    for (const TaggedItem* item :
         tally_select(donor.items(), recipient.item_ids(), t.contrib, params.data_limit)) {
        recipient.receive_id(item->id());
        t.items.push_back(item->id());
    }
    return t;
}

}  // namespace

ContactOutcome run_contact_ca(NodeState& a, NodeState& b, const ContactEvent& contact,
                              const ExchangeParams& params) {
    NodeState& low = a.id() < b.id() ? a : b;
    NodeState& high = a.id() < b.id() ? b : a;
    ContactOutcome out;
    out.first = donate_ca(low, high, contact, params);
    out.second = donate_ca(high, low, contact, params);
    return out;
}

}  // namespace cogsim
