#include "corefeval/error.hpp"
#include "corefeval/formats.hpp"

namespace corefeval {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema(const std::string& what) {
  throw Error(ErrorKind::SchemaError, what);
}

const json& field(const json& object, const char* name, const std::string& where) {
  auto it = object.find(name);
  if (it == object.end()) schema(where + ": missing field \"" + name + "\"");
  return *it;
}

std::string as_string(const json& value, const std::string& where) {
  if (!value.is_string()) schema(where + " must be a string");
  return value.get<std::string>();
}

Mention parse_mention(const json& entry, std::size_t i, const std::string& doc_id) {
  const std::string where = "mentions[" + std::to_string(i) + "]";
  if (!entry.is_object()) schema(where + " must be an object");
  Mention m;
  m.id = as_string(field(entry, "id", where), where + ".id");
  if (auto it = entry.find("surface"); it != entry.end() && !it->is_null())
    m.surface = as_string(*it, where + ".surface");
  if (auto it = entry.find("span"); it != entry.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
        !(*it)[1].is_number_integer())
      schema(where + ".span must be [start, end] integers");
    Span span{doc_id, (*it)[0].get<std::int64_t>(), (*it)[1].get<std::int64_t>()};
    if (span.start > span.end) schema(where + ".span has start > end");
    m.span = span;
  }
  return m;
}

}  // namespace

PartitionDocument parse_partition_json(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError,
                "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!root.is_object()) schema("top level must be an object");

  PartitionDocument doc;
  doc.source_format = SourceFormat::NativeJson;
  doc.doc_id = as_string(field(root, "doc_id", "document"), "doc_id");

  const auto& mentions = field(root, "mentions", "document");
  if (!mentions.is_array()) schema("mentions must be an array");
  for (std::size_t i = 0; i < mentions.size(); ++i)
    doc.mentions.push_back(parse_mention(mentions[i], i, doc.doc_id));

  const auto& classes = field(root, "classes", "document");
  if (!classes.is_array()) schema("classes must be an array");
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const std::string where = "classes[" + std::to_string(c) + "]";
    if (!classes[c].is_array()) schema(where + " must be an array");
    std::vector<MentionId> members;
    for (std::size_t j = 0; j < classes[c].size(); ++j)
      members.push_back(
          as_string(classes[c][j], where + "[" + std::to_string(j) + "]"));
    doc.classes.push_back(std::move(members));
  }

  to_partition(doc);  // surfaces duplicate/unknown/empty errors now
  return doc;
}

std::string write_partition_json(const PartitionDocument& doc) {
  nlohmann::ordered_json root;
  root["doc_id"] = doc.doc_id;
  root["mentions"] = nlohmann::ordered_json::array();
  for (const auto& m : doc.mentions) {
    nlohmann::ordered_json entry;
    entry["id"] = m.id;
    if (m.surface) entry["surface"] = *m.surface;
    if (m.span) entry["span"] = {m.span->start, m.span->end};
    root["mentions"].push_back(std::move(entry));
  }
  root["classes"] = doc.classes;
  return root.dump(2) + "\n";
}

Partition to_partition(const PartitionDocument& doc) {
  std::vector<MentionId> universe;
  universe.reserve(doc.mentions.size());
  for (const auto& m : doc.mentions) universe.push_back(m.id);
  return build_partition(std::move(universe), doc.classes);
}

}  // namespace corefeval
