#pragma once

#include <span>
#include <unordered_set>
#include <vector>

#include "cogsim/exchange.hpp"
#include "cogsim/rng.hpp"

namespace cogsim {

/// Random-walk contributed network (benchmark approach). Starts at a
/// uniformly chosen key vertex; each step follows one of the k incident edges
/// with probability 1/k. Traversed edges are activated in the donor. Dead
/// ends (no unvisited neighbor) restart from a fresh key; stops at tag_limit
/// vertices or when no fresh key remains.
ContributedNetwork compute_contributed_network_ba(SemanticNetwork& donor,
                                                  const SemanticNetwork& recipient,
                                                  double now, const ExchangeParams& params,
                                                  Rng& rng);

/// Uniform sample without replacement, of size min(data_limit, |candidates|),
/// among sender items the receiver lacks that share at least one tag with the
/// contributed network.
std::vector<const TaggedItem*> random_select(std::span<const TaggedItem* const> sender_items,
                                             const std::unordered_set<ItemId>& receiver_item_ids,
                                             const ContributedNetwork& contrib,
                                             std::uint32_t data_limit, Rng& rng);

ContactOutcome run_contact_ba(NodeState& a, NodeState& b, const ContactEvent& contact,
                              const ExchangeParams& params, Rng& rng);

}  // namespace cogsim
