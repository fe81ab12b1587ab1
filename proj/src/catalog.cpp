#include "cogsim/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "cogsim/error.hpp"

namespace cogsim {

std::string normalize_label(std::string_view raw) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!raw.empty() && is_space(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
    while (!raw.empty() && is_space(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    if (raw.empty()) throw ConfigError("tag label is empty after normalization");
    std::string out(raw);
    for (char& c : out) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x80) c = static_cast<char>(std::tolower(u));
    }
    return out;
}

Vocabulary::Vocabulary(std::vector<std::string> labels) {
    for (auto& l : labels) l = normalize_label(l);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    labels_ = std::move(labels);
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        index_.emplace(labels_[i], TagId{static_cast<std::uint32_t>(i)});
    }
}

std::optional<TagId> Vocabulary::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

TagId Vocabulary::id(std::string_view label) const {
    if (auto t = find(label)) return *t;
    throw LookupError("unknown tag '" + std::string(label) + "'");
}

TaggedItem::TaggedItem(ItemId id, std::vector<TagId> tags) : id_(id), tags_(std::move(tags)) {
    std::sort(tags_.begin(), tags_.end());
    tags_.erase(std::unique(tags_.begin(), tags_.end()), tags_.end());
    if (tags_.empty()) throw ConfigError("item " + std::to_string(id) + " has no tags");
}

bool TaggedItem::has_tag(TagId t) const { return std::binary_search(tags_.begin(), tags_.end(), t); }

Catalog::Catalog(std::span<const RawItem> raw) {
    std::vector<std::string> all;
    for (const auto& item : raw) {
        if (item.tags.empty()) throw ConfigError("item " + std::to_string(item.id) + " has no tags");
        all.insert(all.end(), item.tags.begin(), item.tags.end());
    }
    vocab_ = std::make_shared<Vocabulary>(std::move(all));

    items_.reserve(raw.size());
    for (const auto& item : raw) {
        std::vector<TagId> ids;
        ids.reserve(item.tags.size());
        for (const auto& t : item.tags) ids.push_back(vocab_->id(normalize_label(t)));
        items_.emplace_back(item.id, std::move(ids));
    }
    std::sort(items_.begin(), items_.end(),
              [](const TaggedItem& a, const TaggedItem& b) { return a.id() < b.id(); });
    by_id_.reserve(items_.size());
    tag_frequency_.assign(vocab_->size(), 0);
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (!by_id_.emplace(items_[i].id(), i).second) {
            throw ConfigError("duplicate item id " + std::to_string(items_[i].id()));
        }
        for (TagId t : items_[i].tags()) ++tag_frequency_[index_of(t)];
    }
}

std::optional<std::size_t> Catalog::index_of_id(ItemId id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const TaggedItem& Catalog::by_id(ItemId id) const {
    if (auto i = index_of_id(id)) return items_[*i];
    throw LookupError("unknown item id " + std::to_string(id));
}

std::vector<RawItem> Catalog::to_raw() const {
    std::vector<RawItem> out;
    out.reserve(items_.size());
    for (const auto& item : items_) {
        RawItem r{item.id(), {}};
        for (TagId t : item.tags()) r.tags.push_back(vocab_->label(t));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace cogsim
