#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "cogsim/catalog.hpp"
#include "cogsim/contact.hpp"
#include "cogsim/exchange.hpp"
#include "cogsim/semantic_network.hpp"

namespace cogsim {

// Line-oriented snapshot format:
//
//     SN <node_id> <time>
//     V <label>                                  one per vertex, ascending
//     E <label_a> <label_b> <t*> <popularity>    one per edge, storage order
//     I <item_id>                                owned items (node snapshots)
//
// Labels containing whitespace, '"', '\' or '#' are double-quoted with
// backslash escapes. Numbers use the shortest round-trip decimal form, so a
// snapshot reloads bit-exactly. Contributed networks use the header
// `CN <donor_id> <time>` and bare `E <label_a> <label_b>` lines in insertion
// order.

struct NodeSnapshot {
    NodeId node = 0;
    double time = 0.0;
    SemanticNetwork network;
    std::vector<ItemId> items;  ///< ascending
};

void write_snapshot(std::ostream& out, NodeId node, double time, const SemanticNetwork& net,
                    const Vocabulary& vocab, std::span<const ItemId> items = {});

/// Throws ParseError (with line number) on malformed input and LookupError on
/// labels outside the vocabulary.
NodeSnapshot read_snapshot(std::istream& in, const Vocabulary& vocab);

void write_contributed(std::ostream& out, NodeId donor, double time,
                       const ContributedNetwork& contrib, const Vocabulary& vocab);

}  // namespace cogsim
