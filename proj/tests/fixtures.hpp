#pragma once

#include <set>
#include <string>
#include <vector>

#include "corefeval/partition.hpp"

namespace fixtures {

using corefeval::MentionId;
using Classes = std::vector<std::vector<MentionId>>;

inline std::vector<MentionId> range(int first, int last) {
  std::vector<MentionId> out;
  for (int i = first; i <= last; ++i) out.push_back(std::to_string(i));
  return out;
}

inline std::vector<MentionId> join(std::initializer_list<std::vector<MentionId>> parts) {
  std::vector<MentionId> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline corefeval::Partition make(int n, const Classes& classes) {
  return corefeval::build_partition(range(1, n), classes);
}

// The 17-mention example: four key referents, three response classes.
inline corefeval::Partition toy17_key() {
  return make(17, {range(1, 2), range(3, 5), range(6, 12), range(13, 17)});
}

inline corefeval::Partition toy17_response() {
  return make(17, {join({range(1, 2), range(6, 10)}),
                   join({range(3, 5), range(11, 16)}), {"17"}});
}

inline std::set<MentionId> ids(const corefeval::Partition& p,
                               const corefeval::Partition::Class& members) {
  std::set<MentionId> out;
  for (auto m : members) out.insert(p.universe()[m]);
  return out;
}

inline std::set<MentionId> id_set(const std::vector<MentionId>& v) {
  return {v.begin(), v.end()};
}

}  // namespace fixtures
