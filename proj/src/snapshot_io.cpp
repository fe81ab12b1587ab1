#include "cogsim/snapshot_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "cogsim/error.hpp"
#include "cogsim/text.hpp"

namespace cogsim {

void write_snapshot(std::ostream& out, NodeId node, double time, const SemanticNetwork& net,
                    const Vocabulary& vocab, std::span<const ItemId> items) {
    out << "SN " << node << ' ' << text::format_number(time) << '\n';
    for (TagId v : net.vertices()) out << "V " << text::quote(vocab.label(v)) << '\n';
    for (const auto& [key, state] : net.edges_in_storage_order()) {
        out << "E " << text::quote(vocab.label(key.lo)) << ' ' << text::quote(vocab.label(key.hi))
            << ' ' << text::format_number(state.last_activation) << ' ' << state.popularity
            << '\n';
    }
    std::vector<ItemId> sorted(items.begin(), items.end());
    std::sort(sorted.begin(), sorted.end());
    for (ItemId id : sorted) out << "I " << id << '\n';
}

NodeSnapshot read_snapshot(std::istream& in, const Vocabulary& vocab) {
    NodeSnapshot snap;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = text::split_fields(line, line_no);
        if (fields.empty()) continue;
        const std::string& tag = fields[0];
        if (!have_header) {
            unsigned long long node = 0;
            if (tag != "SN" || fields.size() != 3 || !text::parse_unsigned(fields[1], node) ||
                !text::parse_number(fields[2], snap.time)) {
                throw ParseError("expected 'SN <node_id> <time>' header", line_no);
            }
            snap.node = static_cast<NodeId>(node);
            have_header = true;
        } else if (tag == "V") {
            if (fields.size() != 2) throw ParseError("expected 'V <label>'", line_no);
            snap.network.add_vertex(vocab.id(fields[1]));
        } else if (tag == "E") {
            double last = 0.0;
            unsigned long long pop = 0;
            if (fields.size() != 5 || !text::parse_number(fields[3], last) ||
                !text::parse_unsigned(fields[4], pop) || pop == 0) {
                throw ParseError("expected 'E <label_a> <label_b> <t*> <popularity>'", line_no);
            }
            const TagId a = vocab.id(fields[1]);
            const TagId b = vocab.id(fields[2]);
            if (a == b) throw ParseError("self-loop edge", line_no);
            if (!snap.network.add_edge(a, b, EdgeState{last, static_cast<std::uint32_t>(pop)})) {
                throw ParseError("duplicate edge", line_no);
            }
        } else if (tag == "I") {
            unsigned long long id = 0;
            if (fields.size() != 2 || !text::parse_unsigned(fields[1], id)) {
                throw ParseError("expected 'I <item_id>'", line_no);
            }
            snap.items.push_back(id);
        } else {
            throw ParseError("unknown record '" + tag + "'", line_no);
        }
    }
    if (!have_header) throw ParseError("missing SN header", 0);
    std::sort(snap.items.begin(), snap.items.end());
    return snap;
}

void write_contributed(std::ostream& out, NodeId donor, double time,
                       const ContributedNetwork& contrib, const Vocabulary& vocab) {
    out << "CN " << donor << ' ' << text::format_number(time) << '\n';
    for (TagId v : contrib.vertices()) out << "V " << text::quote(vocab.label(v)) << '\n';
    for (const EdgeKey& e : contrib.edges()) {
        out << "E " << text::quote(vocab.label(e.lo)) << ' ' << text::quote(vocab.label(e.hi))
            << '\n';
    }
}

}  // namespace cogsim
