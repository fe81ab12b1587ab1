#include "cogsim/benchmark.hpp"

#include <algorithm>

namespace cogsim {

ContributedNetwork compute_contributed_network_ba(SemanticNetwork& donor,
                                                  const SemanticNetwork& recipient,
                                                  double now, const ExchangeParams& params,
                                                  Rng& rng) {
    ContributedNetwork contrib;
    std::vector<TagId> fresh_keys = key_vertices(donor, recipient);

    // Draws a key not yet in the contributed network; false when none is left.
    auto restart = [&](TagId& at) {
        std::erase_if(fresh_keys, [&](TagId k) { return contrib.has_vertex(k); });
        if (fresh_keys.empty()) return false;
        const auto pick = static_cast<std::size_t>(rng.below(fresh_keys.size()));
        at = fresh_keys[pick];
        fresh_keys.erase(fresh_keys.begin() + static_cast<std::ptrdiff_t>(pick));
        contrib.add_vertex(at);
        return true;
    };

    TagId current{};
    if (!restart(current)) return contrib;
    while (contrib.vertex_count() < params.tag_limit) {
        const auto nbrs = donor.neighbors(current);
        const bool dead_end = std::all_of(nbrs.begin(), nbrs.end(),
                                          [&](TagId u) { return contrib.has_vertex(u); });
        if (dead_end) {
            if (!restart(current)) break;
            continue;
        }
        const TagId next = nbrs[static_cast<std::size_t>(rng.below(nbrs.size()))];
        contrib.add_vertex(next);
        if (contrib.add_edge(current, next)) donor.activate_edge(current, next, now);
        current = next;
    }
    return contrib;
}

std::vector<const TaggedItem*> random_select(std::span<const TaggedItem* const> sender_items,
                                             const std::unordered_set<ItemId>& receiver_item_ids,
                                             const ContributedNetwork& contrib,
                                             std::uint32_t data_limit, Rng& rng) {
    std::vector<const TaggedItem*> pool;
    for (const TaggedItem* item : sender_items) {
        if (receiver_item_ids.contains(item->id())) continue;
        const auto tags = item->tags();
        if (std::any_of(tags.begin(), tags.end(), [&](TagId t) { return contrib.has_vertex(t); })) {
            pool.push_back(item);
        }
    }
    // Partial Fisher-Yates over the candidate pool.
    const std::size_t n = std::min<std::size_t>(data_limit, pool.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n);
    return pool;
}

namespace {

Transfer donate_ba(NodeState& donor, NodeState& recipient, const ContactEvent& contact,
                   const ExchangeParams& params, Rng& rng) {
    Transfer t;
    t.donor = donor.id();
    t.recipient = recipient.id();
    t.contrib = compute_contributed_network_ba(donor.network(), recipient.network(), contact.end,
                                               params, rng);
    recipient.network().merge(t.contrib, contact.end);
    for (const TaggedItem* item :
         random_select(donor.items(), recipient.item_ids(), t.contrib, params.data_limit, rng)) {
        recipient.receive_id(item->id());
        t.items.push_back(item->id());
    }
    return t;
}

}  // namespace

ContactOutcome run_contact_ba(NodeState& a, NodeState& b, const ContactEvent& contact,
                              const ExchangeParams& params, Rng& rng) {
    NodeState& low = a.id() < b.id() ? a : b;
    NodeState& high = a.id() < b.id() ? b : a;
    ContactOutcome out;
    out.first = donate_ba(low, high, contact, params, rng);
    out.second = donate_ba(high, low, contact, params, rng);
    return out;
}

}  // namespace cogsim
