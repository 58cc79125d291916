#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace corefeval {

using MentionId = std::string;

struct Span {
  std::string document;
  std::int64_t start = 0;
  std::int64_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

/// An identified referring expression.
struct Mention {
  MentionId id;
  std::optional<std::string> surface;
  std::optional<Span> span;

  friend bool operator==(const Mention&, const Mention&) = default;
};

enum class Side { Key, Response };

constexpr Side opposite(Side side) {
  return side == Side::Key ? Side::Response : Side::Key;
}

/// A division of a mention set into disjoint, non-empty classes.
///
/// Mentions are stored as indices into the lexicographically sorted
/// universe. Classes are kept in normalized order: descending size, ties
/// broken by the smallest contained id. Each class also remembers its
/// ordinal in the original listing, which is what labels like K_3 refer to.
class Partition {
 public:
  using MemberIndex = std::uint32_t;
  using Class = std::vector<MemberIndex>;

  Partition() = default;

  const std::vector<MentionId>& universe() const { return universe_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t mention_count() const { return universe_.size(); }
  const std::vector<Class>& classes() const { return classes_; }
  const Class& at(std::size_t class_index) const;

  /// Position of the class in the source listing (0-based); singleton
  /// completions follow the listed classes in universe order.
  std::size_t ordinal(std::size_t class_index) const;

  std::vector<MentionId> member_ids(std::size_t class_index) const;
  std::optional<MemberIndex> index_of(const MentionId& id) const;
  std::optional<std::size_t> class_of(const MentionId& id) const;

  /// Class index owning each universe member.
  const std::vector<std::size_t>& owner() const { return owner_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  friend Partition build_partition(std::vector<MentionId>,
                                   const std::vector<std::vector<MentionId>>&);
  friend class PartitionBuilder;

  Partition(std::vector<MentionId> universe, std::vector<Class> classes,
            std::vector<std::size_t> ordinals);

  std::vector<MentionId> universe_;
  std::vector<Class> classes_;
  std::vector<std::size_t> ordinals_;
  std::vector<std::size_t> owner_;
};

/// Builds a partition of `universe` from the listed classes, completing it
/// with one singleton per unlisted mention.
///
/// Throws Error with DuplicateMention, UnknownMention or EmptyClass.
Partition build_partition(std::vector<MentionId> universe,
                          const std::vector<std::vector<MentionId>>& listed);

/// K_i ∩ R_j, never empty.
struct IntersectionCell {
  std::size_t key_class = 0;
  std::size_t response_class = 0;
  Partition::Class members;

  std::size_t size() const { return members.size(); }
  std::size_t class_on(Side side) const {
    return side == Side::Key ? key_class : response_class;
  }

  friend bool operator==(const IntersectionCell&,
                         const IntersectionCell&) = default;
};

/// All non-empty intersections between the classes of two partitions of the
/// same universe, ordered by key class then response class.
class IntersectionTable {
 public:
  const Partition& key() const { return key_; }
  const Partition& response() const { return response_; }
  const Partition& partition(Side side) const {
    return side == Side::Key ? key_ : response_;
  }

  std::span<const IntersectionCell> cells() const { return cells_; }

  /// Indices into cells() for one class, in ascending opposite-class order.
  std::span<const std::size_t> cells_of(Side side,
                                        std::size_t class_index) const;

  std::size_t mention_count() const { return key_.mention_count(); }

 private:
  friend IntersectionTable intersection_table(Partition, Partition);

  Partition key_;
  Partition response_;
  std::vector<IntersectionCell> cells_;
  std::vector<std::vector<std::size_t>> by_key_;
  std::vector<std::vector<std::size_t>> by_response_;
};

/// Throws UniverseMismatch unless both partitions cover the same mentions.
IntersectionTable intersection_table(Partition key, Partition response);

/// π(K) or σ(R): the cells of one class, largest first, ties by smallest
/// contained mention.
std::vector<IntersectionCell> projection(const IntersectionTable& table,
                                         Side side, std::size_t class_index);

/// π*(K) or σ*(R): opposite-side class indices touched by the class, sorted.
std::vector<std::size_t> extended_projection(const IntersectionTable& table,
                                             Side side,
                                             std::size_t class_index);

struct ProjectionPick {
  std::size_t cell = 0;  // index into table.cells()
  std::size_t opposite_class = 0;
  std::size_t size = 0;

  friend bool operator==(const ProjectionPick&,
                         const ProjectionPick&) = default;
};

/// The largest cell of a class whose opposite class is not excluded. Ties go
/// to the smallest opposite-class index.
std::optional<ProjectionPick> largest_projection(
    const IntersectionTable& table, Side side, std::size_t class_index,
    const std::set<std::size_t>& excluded = {});

struct ExtensionStats {
  std::size_t key_mentions = 0;       // |M_key| before extension
  std::size_t response_mentions = 0;  // |M_resp| before extension
  std::size_t added_to_key = 0;
  std::size_t added_to_response = 0;
  // Sorted ids of the singletons added to each side.
  std::vector<MentionId> added_key_ids;
  std::vector<MentionId> added_response_ids;

  friend bool operator==(const ExtensionStats&,
                         const ExtensionStats&) = default;
};

struct AlignedPair {
  Partition key;
  Partition response;
  ExtensionStats stats;
};

/// Extends each side with the other side's missing mentions as singleton
/// classes so both partition the same universe.
AlignedPair align_and_extend(const Partition& key, const Partition& response);

}  // namespace corefeval
