#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cogsim {

/// Interned tag. Ids are ranks in the sorted label list of a Vocabulary, so
/// comparing ids compares labels.
enum class TagId : std::uint32_t {};

constexpr std::uint32_t index_of(TagId t) noexcept { return static_cast<std::uint32_t>(t); }

/// Opaque, globally unique content identifier.
using ItemId = std::uint64_t;

/// Case-folds (ASCII) and trims a raw tag. Throws ConfigError when the result
/// is empty.
std::string normalize_label(std::string_view raw);

/// Closed, sorted set of tag labels. The set of concepts in a run is fixed at
/// t0 (tags only originate from items), so the vocabulary is built once.
class Vocabulary {
public:
    Vocabulary() = default;
    /// Labels are normalized and de-duplicated.
    explicit Vocabulary(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    std::optional<TagId> find(std::string_view label) const;
    /// Throws LookupError for unknown labels.
    TagId id(std::string_view label) const;
    const std::string& label(TagId t) const { return labels_.at(index_of(t)); }
    std::span<const std::string> labels() const noexcept { return labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, TagId> index_;
};

/// A content item. Immutable; tags are sorted and duplicate-free.
class TaggedItem {
public:
    /// Throws ConfigError when `tags` is empty.
    TaggedItem(ItemId id, std::vector<TagId> tags);

    ItemId id() const noexcept { return id_; }
    std::span<const TagId> tags() const noexcept { return tags_; }
    bool has_tag(TagId t) const;

private:
    ItemId id_;
    std::vector<TagId> tags_;
};

/// Item description with textual tags, as read from or written to disk.
struct RawItem {
    ItemId id = 0;
    std::vector<std::string> tags;
};

/// All items in a run plus the vocabulary they induce. Items are stored in
/// ascending id order; an item's position is its dense index.
class Catalog {
public:
    Catalog() : vocab_(std::make_shared<Vocabulary>()) {}
    /// Throws ConfigError on duplicate ids or items without tags.
    explicit Catalog(std::span<const RawItem> raw);

    const Vocabulary& vocabulary() const noexcept { return *vocab_; }
    std::shared_ptr<const Vocabulary> shared_vocabulary() const noexcept { return vocab_; }

    std::size_t size() const noexcept { return items_.size(); }
    std::span<const TaggedItem> items() const noexcept { return items_; }
    const TaggedItem& at(std::size_t index) const { return items_.at(index); }

    std::optional<std::size_t> index_of_id(ItemId id) const;
    /// Throws LookupError.
    const TaggedItem& by_id(ItemId id) const;

    /// |D_v|: number of items carrying tag v.
    std::uint32_t items_with_tag(TagId t) const { return tag_frequency_.at(index_of(t)); }

    std::vector<RawItem> to_raw() const;

private:
    std::shared_ptr<Vocabulary> vocab_;
    std::vector<TaggedItem> items_;
    std::unordered_map<ItemId, std::size_t> by_id_;
    std::vector<std::uint32_t> tag_frequency_;
};

}  // namespace cogsim
