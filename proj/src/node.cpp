#include "cogsim/node.hpp"

#include "cogsim/error.hpp"

namespace cogsim {

NodeState::NodeState(NodeId id, std::uint32_t community, const Catalog& catalog)
    : id_(id), community_(community), catalog_(&catalog),
      tag_counts_(catalog.vocabulary().size(), 0) {}

bool NodeState::receive(std::size_t item_index) {
    const TaggedItem& item = catalog_->at(item_index);
    if (!item_ids_.insert(item.id()).second) return false;
    items_.push_back(&item);
    for (TagId t : item.tags()) {
        if (tag_counts_[index_of(t)]++ == 0) ++owned_tags_;
    }
    return true;
}

bool NodeState::receive_id(ItemId id) {
    const auto index = catalog_->index_of_id(id);
    if (!index) throw LookupError("unknown item id " + std::to_string(id));
    return receive(*index);
}

}  // namespace cogsim
