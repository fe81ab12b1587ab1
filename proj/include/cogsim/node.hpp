#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "cogsim/catalog.hpp"
#include "cogsim/contact.hpp"
#include "cogsim/semantic_network.hpp"

namespace cogsim {

/// Per-node simulation state: semantic network plus the append-only set of
/// owned items. Keeps the per-tag ownership counters the metrics need.
class NodeState {
public:
    NodeState(NodeId id, std::uint32_t community, const Catalog& catalog);

    NodeId id() const noexcept { return id_; }
    std::uint32_t community() const noexcept { return community_; }
    const Catalog& catalog() const noexcept { return *catalog_; }

    SemanticNetwork& network() noexcept { return network_; }
    const SemanticNetwork& network() const noexcept { return network_; }

    /// Adds an item by catalog index. Returns false if already owned.
    bool receive(std::size_t item_index);
    bool receive_id(ItemId id);

    bool owns_id(ItemId id) const { return item_ids_.contains(id); }
    std::size_t item_count() const noexcept { return items_.size(); }
    /// Owned items in acquisition order.
    std::span<const TaggedItem* const> items() const noexcept { return items_; }
    const std::unordered_set<ItemId>& item_ids() const noexcept { return item_ids_; }

    /// Number of owned items tagged with t.
    std::uint32_t owned_with_tag(TagId t) const { return tag_counts_.at(index_of(t)); }
    /// |union of T_c over owned items|.
    std::size_t owned_tag_count() const noexcept { return owned_tags_; }

private:
    NodeId id_;
    std::uint32_t community_;
    const Catalog* catalog_;
    SemanticNetwork network_;
    std::vector<const TaggedItem*> items_;
    std::unordered_set<ItemId> item_ids_;
    std::vector<std::uint32_t> tag_counts_;
    std::size_t owned_tags_ = 0;
};

}  // namespace cogsim
