#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "cogsim/catalog.hpp"
#include "cogsim/contact.hpp"
#include "cogsim/node.hpp"
#include "cogsim/semantic_network.hpp"

namespace cogsim {

/// Subgraph of a donor network selected for transfer in one contact.
/// Vertices and edges keep insertion order.
class ContributedNetwork {
public:
    std::span<const TagId> vertices() const noexcept { return vertices_; }
    std::span<const EdgeKey> edges() const noexcept { return edges_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }

    bool has_vertex(TagId v) const { return vertex_set_.contains(index_of(v)); }
    bool has_edge(TagId a, TagId b) const { return edge_set_.contains(EdgeKey{a, b}.packed()); }

    /// Returns false if already present.
    bool add_vertex(TagId v);
    /// Both endpoints must already be present (ConfigError otherwise).
    /// Returns false if already present.
    bool add_edge(TagId a, TagId b);

private:
    std::vector<TagId> vertices_;
    std::vector<EdgeKey> edges_;
    std::unordered_set<std::uint32_t> vertex_set_;
    std::unordered_set<std::uint64_t> edge_set_;
};

/// Knobs shared by the cognitive and benchmark exchanges.
struct ExchangeParams {
    std::uint32_t tag_limit = 25;   ///< max vertices per contributed network
    std::uint32_t data_limit = 10;  ///< max items per transfer
    std::uint32_t theta_rec = 2;    ///< recognition threshold on popularity
    double w_min_seconds = 35.0;    ///< retrieval threshold as reference idle time
    double tau = 0.1;               ///< contact-duration saturation, 1/s
    double gamma = 0.01;            ///< forgetting speed coefficient, 1/s

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Vertices of `donor` also present in `recipient`, ascending.
std::vector<TagId> key_vertices(const SemanticNetwork& donor, const SemanticNetwork& recipient);

/// Increments the popularity of every edge incident to each key, one key at a
/// time; an edge joining two keys is incremented twice.
void boost_key_popularity(SemanticNetwork& donor, std::span<const TagId> keys);

/// Sum of f(e, now) over the edges incident to `key`. Throws LookupError.
double key_relevance(const SemanticNetwork& donor, TagId key, double now, double gamma);

/// w(e, n, D) = f(e, now) * (1 - exp(-tau * D)) / n.
double retrieval_weight(const EdgeState& edge, std::uint32_t hops, double contact_duration,
                        double now, const ExchangeParams& params);

/// Inclusion threshold: the retrieval weight of a popularity-1 edge at one
/// hop, idle for W_min seconds, during a 2-second reference contact.
double omega_min(const ExchangeParams& params);

/// Fluency-guided contributed network (cognitive approach). Mutates the donor:
/// key-incident popularity boost and activation of every traversed edge.
ContributedNetwork compute_contributed_network(SemanticNetwork& donor,
                                               const SemanticNetwork& recipient,
                                               double contact_start, double contact_end,
                                               const ExchangeParams& params);

/// Tallying selection: items not owned by the receiver, ranked by the number
/// of tags inside the contributed network (ties: ascending id), zero-tally
/// items dropped, first `data_limit` returned.
std::vector<const TaggedItem*> tally_select(std::span<const TaggedItem* const> sender_items,
                                            const std::unordered_set<ItemId>& receiver_item_ids,
                                            const ContributedNetwork& contrib,
                                            std::uint32_t data_limit);

/// What one donor sent in one direction of a contact.
struct Transfer {
    NodeId donor = 0;
    NodeId recipient = 0;
    ContributedNetwork contrib;
    std::vector<ItemId> items;
};

/// Both directions of a contact; the lower node id donates first.
struct ContactOutcome {
    Transfer first;
    Transfer second;
};

/// Runs the cognitive exchange for a contact, at its end time, in both
/// directions. Items are copied, never removed from the sender.
ContactOutcome run_contact_ca(NodeState& a, NodeState& b, const ContactEvent& contact,
                              const ExchangeParams& params);

}  // namespace cogsim
