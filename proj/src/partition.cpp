#include "corefeval/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "corefeval/error.hpp"

namespace corefeval {

class PartitionBuilder {
 public:
  static Partition make(std::vector<MentionId> universe,
                        std::vector<Partition::Class> classes,
                        std::vector<std::size_t> ordinals) {
    return Partition(std::move(universe), std::move(classes),
                     std::move(ordinals));
  }
};

Partition::Partition(std::vector<MentionId> universe, std::vector<Class> classes,
                     std::vector<std::size_t> ordinals)
    : universe_(std::move(universe)) {
  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  for (auto& members : classes) std::sort(members.begin(), members.end());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (classes[a].size() != classes[b].size())
      return classes[a].size() > classes[b].size();
    return classes[a].front() < classes[b].front();
  });

  classes_.reserve(classes.size());
  ordinals_.reserve(classes.size());
  for (std::size_t i : order) {
    classes_.push_back(std::move(classes[i]));
    ordinals_.push_back(ordinals[i]);
  }

  owner_.assign(universe_.size(), 0);
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (MemberIndex m : classes_[c]) owner_[m] = c;
}

const Partition::Class& Partition::at(std::size_t class_index) const {
  if (class_index >= classes_.size())
    throw Error(ErrorKind::IndexOutOfRange,
                "class index " + std::to_string(class_index) + " >= " +
                    std::to_string(classes_.size()));
  return classes_[class_index];
}

std::size_t Partition::ordinal(std::size_t class_index) const {
  at(class_index);
  return ordinals_[class_index];
}

std::vector<MentionId> Partition::member_ids(std::size_t class_index) const {
  std::vector<MentionId> ids;
  for (MemberIndex m : at(class_index)) ids.push_back(universe_[m]);
  return ids;
}

std::optional<Partition::MemberIndex> Partition::index_of(
    const MentionId& id) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), id);
  if (it == universe_.end() || *it != id) return std::nullopt;
  return static_cast<MemberIndex>(it - universe_.begin());
}

std::optional<std::size_t> Partition::class_of(const MentionId& id) const {
  if (auto m = index_of(id)) return owner_[*m];
  return std::nullopt;
}

Partition build_partition(std::vector<MentionId> universe,
                          const std::vector<std::vector<MentionId>>& listed) {
  std::sort(universe.begin(), universe.end());
  if (auto dup = std::adjacent_find(universe.begin(), universe.end());
      dup != universe.end())
    throw Error(ErrorKind::DuplicateMention,
                "mention '" + *dup + "' declared twice");

  auto lookup = [&](const MentionId& id) -> Partition::MemberIndex {
    auto it = std::lower_bound(universe.begin(), universe.end(), id);
    if (it == universe.end() || *it != id)
      throw Error(ErrorKind::UnknownMention,
                  "class member '" + id + "' is not a declared mention");
    return static_cast<Partition::MemberIndex>(it - universe.begin());
  };

  std::vector<bool> seen(universe.size(), false);
  std::vector<Partition::Class> classes;
  std::vector<std::size_t> ordinals;
  for (std::size_t c = 0; c < listed.size(); ++c) {
    if (listed[c].empty())
      throw Error(ErrorKind::EmptyClass,
                  "class " + std::to_string(c + 1) + " has no members");
    Partition::Class members;
    for (const auto& id : listed[c]) {
      auto m = lookup(id);
      if (seen[m])
        throw Error(ErrorKind::DuplicateMention,
                    "mention '" + id + "' appears in more than one class");
      seen[m] = true;
      members.push_back(m);
    }
    classes.push_back(std::move(members));
    ordinals.push_back(c);
  }

  for (Partition::MemberIndex m = 0; m < universe.size(); ++m) {
    if (seen[m]) continue;
    classes.push_back({m});
    ordinals.push_back(ordinals.size());
  }
  return PartitionBuilder::make(std::move(universe), std::move(classes),
                                std::move(ordinals));
}

std::span<const std::size_t> IntersectionTable::cells_of(
    Side side, std::size_t class_index) const {
  const auto& lists = side == Side::Key ? by_key_ : by_response_;
  if (class_index >= lists.size())
    throw Error(ErrorKind::IndexOutOfRange,
                std::string(side == Side::Key ? "key" : "response") +
                    " class index " + std::to_string(class_index) + " >= " +
                    std::to_string(lists.size()));
  return lists[class_index];
}

IntersectionTable intersection_table(Partition key, Partition response) {
  if (key.universe() != response.universe())
    throw Error(ErrorKind::UniverseMismatch,
                "key has " + std::to_string(key.mention_count()) +
                    " mentions, response has " +
                    std::to_string(response.mention_count()) +
                    " and the sets differ; align the partitions first");

  IntersectionTable table;
  table.by_key_.resize(key.class_count());
  table.by_response_.resize(response.class_count());

  const auto& response_owner = response.owner();
  for (std::size_t k = 0; k < key.class_count(); ++k) {
    std::map<std::size_t, Partition::Class> groups;
    for (auto m : key.at(k)) groups[response_owner[m]].push_back(m);
    for (auto& [r, members] : groups) {
      table.by_key_[k].push_back(table.cells_.size());
      table.by_response_[r].push_back(table.cells_.size());
      table.cells_.push_back({k, r, std::move(members)});
    }
  }
  table.key_ = std::move(key);
  table.response_ = std::move(response);
  return table;
}

std::vector<IntersectionCell> projection(const IntersectionTable& table,
                                         Side side, std::size_t class_index) {
  std::vector<IntersectionCell> result;
  for (std::size_t c : table.cells_of(side, class_index))
    result.push_back(table.cells()[c]);
  std::stable_sort(result.begin(), result.end(),
                   [](const IntersectionCell& a, const IntersectionCell& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.members.front() < b.members.front();
                   });
  return result;
}

std::vector<std::size_t> extended_projection(const IntersectionTable& table,
                                             Side side,
                                             std::size_t class_index) {
  std::vector<std::size_t> result;
  for (std::size_t c : table.cells_of(side, class_index))
    result.push_back(table.cells()[c].class_on(opposite(side)));
  std::sort(result.begin(), result.end());
  return result;
}

std::optional<ProjectionPick> largest_projection(
    const IntersectionTable& table, Side side, std::size_t class_index,
    const std::set<std::size_t>& excluded) {
  std::optional<ProjectionPick> best;
  // cells_of lists opposite classes in ascending order, so a strict
  // comparison keeps the smallest opposite index among equal sizes.
  for (std::size_t c : table.cells_of(side, class_index)) {
    const auto& cell = table.cells()[c];
    std::size_t other = cell.class_on(opposite(side));
    if (excluded.contains(other)) continue;
    if (!best || cell.size() > best->size)
      best = ProjectionPick{c, other, cell.size()};
  }
  return best;
}

namespace {

// Re-indexes `p` into `universe` (a superset of p's universe) and appends a
// singleton for every mention p does not cover.
Partition extend_to(const Partition& p, const std::vector<MentionId>& universe,
                    std::vector<MentionId>& added) {
  std::vector<Partition::MemberIndex> remap(p.mention_count());
  std::vector<bool> covered(universe.size(), false);
  std::size_t j = 0;
  for (std::size_t i = 0; i < p.mention_count(); ++i) {
    while (universe[j] != p.universe()[i]) ++j;
    remap[i] = static_cast<Partition::MemberIndex>(j);
    covered[j] = true;
  }

  std::vector<Partition::Class> classes;
  std::vector<std::size_t> ordinals;
  std::size_t next_ordinal = 0;
  for (std::size_t c = 0; c < p.class_count(); ++c) {
    Partition::Class members;
    for (auto m : p.at(c)) members.push_back(remap[m]);
    classes.push_back(std::move(members));
    ordinals.push_back(p.ordinal(c));
    next_ordinal = std::max(next_ordinal, p.ordinal(c) + 1);
  }
  added.clear();
  for (Partition::MemberIndex m = 0; m < universe.size(); ++m) {
    if (covered[m]) continue;
    classes.push_back({m});
    ordinals.push_back(next_ordinal++);
    added.push_back(universe[m]);
  }
  return PartitionBuilder::make(universe, std::move(classes),
                                std::move(ordinals));
}

}  // namespace

AlignedPair align_and_extend(const Partition& key, const Partition& response) {
  AlignedPair out;
  out.stats.key_mentions = key.mention_count();
  out.stats.response_mentions = response.mention_count();
  if (key.universe() == response.universe()) {
    out.key = key;
    out.response = response;
    return out;
  }

  std::vector<MentionId> universe;
  std::set_union(key.universe().begin(), key.universe().end(),
                 response.universe().begin(), response.universe().end(),
                 std::back_inserter(universe));
  out.key = extend_to(key, universe, out.stats.added_key_ids);
  out.response = extend_to(response, universe, out.stats.added_response_ids);
  out.stats.added_to_key = out.stats.added_key_ids.size();
  out.stats.added_to_response = out.stats.added_response_ids.size();
  return out;
}

}  // namespace corefeval
