#include "corefeval/bundle.hpp"

#include <algorithm>
#include <map>

#include "corefeval/error.hpp"

namespace corefeval {
namespace {

using ojson = nlohmann::ordered_json;

std::string label(Side side, const Partition& p, std::size_t index) {
  return (side == Side::Key ? "K_" : "R_") + std::to_string(p.ordinal(index) + 1);
}

std::vector<BundleClass> classes_of(
    const IntersectionTable& table, Side side,
    const ExclusiveAssignment& assignment,
    const std::map<MentionId, std::optional<std::string>>& surfaces) {
  const auto& p = table.partition(side);
  const auto& other = table.partition(opposite(side));

  // Exclusive bindings seen from either side.
  std::vector<std::optional<ExclusiveBinding>> bound(p.class_count());
  if (side == Side::Key) {
    bound = assignment.by_key;
  } else {
    for (std::size_t k = 0; k < assignment.by_key.size(); ++k)
      if (const auto& b = assignment.by_key[k])
        bound[b->response_class] = ExclusiveBinding{k, b->cell};
  }

  std::vector<BundleClass> out;
  for (std::size_t i = 0; i < p.class_count(); ++i) {
    BundleClass c;
    c.index = i;
    c.label = label(side, p, i);
    for (const auto& id : p.member_ids(i)) c.members.push_back({id, surfaces.at(id)});
    c.projections = extended_projection(table, side, i);
    std::sort(c.projections.begin(), c.projections.end(),
              [&](auto a, auto b) { return other.ordinal(a) < other.ordinal(b); });
    for (auto j : c.projections) c.projection_labels.push_back(label(opposite(side), other, j));
    auto cells = table.cells_of(side, i);
    c.cells.assign(cells.begin(), cells.end());

    for (const auto& cell : projection(table, side, i))
      c.contribution.projection_sizes.push_back(cell.size());
    auto core = largest_projection(table, side, i);
    c.contribution.core_size = core->size;
    c.contribution.core_class = core->opposite_class;
    if (bound[i]) {
      c.contribution.exclusive_class = bound[i]->response_class;
      c.contribution.exclusive_size = table.cells()[bound[i]->cell].size();
    }
    out.push_back(std::move(c));
  }
  return out;
}

ojson class_json(const BundleClass& c) {
  ojson members = ojson::array();
  for (const auto& m : c.members) {
    ojson entry{{"id", m.id}};
    entry["surface"] = m.surface ? ojson(*m.surface) : ojson(nullptr);
    members.push_back(std::move(entry));
  }
  const auto& k = c.contribution;
  return {{"index", c.index},
          {"label", c.label},
          {"members", members},
          {"projections", c.projections},
          {"projection_labels", c.projection_labels},
          {"cells", c.cells},
          {"contribution",
           {{"projection_sizes", k.projection_sizes},
            {"core_size", k.core_size},
            {"core_class", k.core_class},
            {"exclusive_class",
             k.exclusive_class ? ojson(*k.exclusive_class) : ojson(nullptr)},
            {"exclusive_size", k.exclusive_size}}}};
}

template <typename T>
T get(const ojson& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::SchemaError, std::string("bundle: missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError,
                std::string("bundle: field \"") + key + "\": " + e.what());
  }
}

BundleClass class_from(const ojson& j) {
  BundleClass c;
  c.index = get<std::size_t>(j, "index");
  c.label = get<std::string>(j, "label");
  for (const auto& m : get<ojson>(j, "members")) {
    BundleMember member{get<std::string>(m, "id"), std::nullopt};
    if (auto s = get<ojson>(m, "surface"); !s.is_null())
      member.surface = get<std::string>(m, "surface");
    c.members.push_back(std::move(member));
  }
  c.projections = get<std::vector<std::size_t>>(j, "projections");
  c.projection_labels = get<std::vector<std::string>>(j, "projection_labels");
  c.cells = get<std::vector<std::size_t>>(j, "cells");
  auto k = get<ojson>(j, "contribution");
  c.contribution.projection_sizes = get<std::vector<std::size_t>>(k, "projection_sizes");
  c.contribution.core_size = get<std::size_t>(k, "core_size");
  c.contribution.core_class = get<std::size_t>(k, "core_class");
  if (!get<ojson>(k, "exclusive_class").is_null())
    c.contribution.exclusive_class = get<std::size_t>(k, "exclusive_class");
  c.contribution.exclusive_size = get<std::size_t>(k, "exclusive_size");
  return c;
}

}  // namespace

InspectorBundle build_inspector_bundle(const PartitionDocument& key,
                                       const PartitionDocument& response,
                                       XpsMode mode) {
  auto aligned = align_and_extend(to_partition(key), to_partition(response));
  auto table = intersection_table(aligned.key, aligned.response);

  // Surfaces come from whichever side declared the mention, key first.
  std::map<MentionId, std::optional<std::string>> surfaces;
  for (const auto* doc : {&key, &response})
    for (const auto& m : doc->mentions) {
      auto [it, fresh] = surfaces.emplace(m.id, m.surface);
      if (!fresh && !it->second) it->second = m.surface;
    }

  InspectorBundle b;
  b.doc_id = key.doc_id;
  b.report = evaluate(table, aligned.stats, mode);
  b.report.doc_id = key.doc_id;
  auto assignment = exclusive_assignment(table);
  b.key_classes = classes_of(table, Side::Key, assignment, surfaces);
  b.response_classes = classes_of(table, Side::Response, assignment, surfaces);
  for (const auto& cell : table.cells()) {
    BundleCell c{cell.key_class, cell.response_class, {}};
    for (auto m : cell.members) c.members.push_back(table.key().universe()[m]);
    b.cells.push_back(std::move(c));
  }
  return b;
}

std::string export_inspector_bundle(const InspectorBundle& b) {
  ojson j;
  j["v"] = b.v;
  j["doc_id"] = b.doc_id;
  j["key_classes"] = ojson::array();
  for (const auto& c : b.key_classes) j["key_classes"].push_back(class_json(c));
  j["response_classes"] = ojson::array();
  for (const auto& c : b.response_classes)
    j["response_classes"].push_back(class_json(c));
  j["cells"] = ojson::array();
  for (const auto& c : b.cells)
    j["cells"].push_back({{"key_class", c.key_class},
                          {"response_class", c.response_class},
                          {"members", c.members}});
  j["report"] = report_to_json(b.report);
  return j.dump(2) + "\n";
}

InspectorBundle read_inspector_bundle(std::string_view bytes) {
  ojson j;
  try {
    j = ojson::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError,
                "bundle: invalid JSON at byte " + std::to_string(e.byte));
  }
  InspectorBundle b;
  b.v = get<std::string>(j, "v");
  if (b.v != kBundleVersion)
    throw Error(ErrorKind::UnsupportedVersion, "bundle version \"" + b.v + "\"");
  b.doc_id = get<std::string>(j, "doc_id");
  for (const auto& c : get<ojson>(j, "key_classes")) b.key_classes.push_back(class_from(c));
  for (const auto& c : get<ojson>(j, "response_classes"))
    b.response_classes.push_back(class_from(c));
  for (const auto& c : get<ojson>(j, "cells"))
    b.cells.push_back({get<std::size_t>(c, "key_class"),
                       get<std::size_t>(c, "response_class"),
                       get<std::vector<std::string>>(c, "members")});
  b.report = report_from_json(get<ojson>(j, "report"));
  return b;
}

}  // namespace corefeval
