#include <algorithm>
#include <numeric>
#include <random>

#include "corefeval/bundle.hpp"
#include "corefeval/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace corefeval;

namespace {

PartitionDocument document(const Partition& p, std::string doc_id) {
  PartitionDocument doc;
  doc.doc_id = std::move(doc_id);
  for (const auto& id : p.universe()) doc.mentions.push_back({id, "s" + id, std::nullopt});
  // list classes in their original order so labels survive
  std::vector<std::size_t> order(p.class_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return p.ordinal(a) < p.ordinal(b); });
  for (auto c : order)
    if (p.at(c).size() > 1) doc.classes.push_back(p.member_ids(c));
  return doc;
}

const BundleClass& by_label(const std::vector<BundleClass>& classes,
                            const std::string& label) {
  for (const auto& c : classes)
    if (c.label == label) return c;
  FAIL("no class labelled " << label);
  return classes.front();
}

InspectorBundle toy17_bundle() {
  return build_inspector_bundle(document(fixtures::toy17_key(), "toy17"),
                                document(fixtures::toy17_response(), "toy17"));
}

}  // namespace

TEST_CASE("toy bundle: projections of K_3 and R_1") {
  auto b = toy17_bundle();
  CHECK(b.v == "1");
  CHECK(b.doc_id == "toy17");
  CHECK(b.key_classes.size() == 4);
  CHECK(b.response_classes.size() == 3);
  CHECK(b.cells.size() == 6);
  const auto& k3 = by_label(b.key_classes, "K_3");
  CHECK(k3.projection_labels == std::vector<std::string>{"R_1", "R_2"});
  CHECK(k3.members.size() == 7);
  const auto& r1 = by_label(b.response_classes, "R_1");
  CHECK(r1.projection_labels == std::vector<std::string>{"K_1", "K_3"});
}

TEST_CASE("toy bundle: per-class contributions") {
  auto b = toy17_bundle();
  const auto& k3 = by_label(b.key_classes, "K_3");
  CHECK(k3.contribution.projection_sizes == std::vector<std::size_t>{5, 2});
  CHECK(k3.contribution.core_size == 5);
  CHECK(b.response_classes[k3.contribution.core_class].label == "R_1");
  std::size_t cores = 0, exclusive = 0;
  for (const auto& k : b.key_classes) {
    cores += k.contribution.core_size;
    exclusive += k.contribution.exclusive_size;
  }
  // CRS = (Σ|c(K)| - |P_K|) / (|R| - |P_K|) = 10/13 and XRS = Σ|xc(K)| / |R| = 9/17
  CHECK(cores - 4 == 10);
  CHECK(exclusive == 9);
  CHECK(b.report.core.recall.str() == "10/13");
  CHECK(b.report.exclusive.recall.str() == "9/17");
  // K_3 takes R_1 and K_4 takes R_2; K_1 and K_2 find nothing left
  CHECK_FALSE(by_label(b.key_classes, "K_1").contribution.exclusive_class);
  CHECK_FALSE(by_label(b.key_classes, "K_2").contribution.exclusive_class);
  CHECK(by_label(b.key_classes, "K_4").contribution.exclusive_size == 4);
  // bindings agree from both sides
  for (const auto& k : b.key_classes)
    if (auto r = k.contribution.exclusive_class)
      CHECK(b.response_classes[*r].contribution.exclusive_class == k.index);
}

TEST_CASE("identity bundles project every class onto one class") {
  auto key = fixtures::toy17_key();
  auto b = build_inspector_bundle(document(key, "same"), document(key, "same"));
  for (const auto* side : {&b.key_classes, &b.response_classes})
    for (const auto& c : *side) {
      CHECK(c.projections.size() == 1);
      CHECK(c.contribution.exclusive_size == c.members.size());
    }
}

TEST_CASE("bundle projections and cells agree with set intersections") {
  std::mt19937 rng(31);
  for (int t = 0; t < 200; ++t) {
    auto [ks, rs] = oracle::random_pair(rng, 60);
    auto key = oracle::to_partition(ks), resp = oracle::to_partition(rs);
    auto b = build_inspector_bundle(document(key, "d"), document(resp, "d"));
    for (const auto& k : b.key_classes) {
      std::set<std::string> kids;
      for (const auto& m : k.members) kids.insert(m.id);
      std::set<std::size_t> expected;
      for (const auto& r : b.response_classes) {
        bool touches = false;
        for (const auto& m : r.members) touches = touches || kids.count(m.id);
        if (touches) expected.insert(r.index);
      }
      CHECK(std::set<std::size_t>(k.projections.begin(), k.projections.end()) == expected);
      CHECK(k.projections.size() == expected.size());
      for (auto c : k.cells) {
        CHECK(b.cells[c].key_class == k.index);
        for (const auto& id : b.cells[c].members) CHECK(kids.count(id) == 1);
      }
    }
  }
}

TEST_CASE("bundle of documents with different mention sets") {
  auto key = build_partition({"a", "b", "c"}, {{"a", "b"}});
  auto resp = build_partition({"a", "b", "d"}, {{"a", "b", "d"}});
  auto b = build_inspector_bundle(document(key, "k"), document(resp, "r"));
  CHECK(b.report.counts.universe == 4);
  CHECK(b.report.counts.added_to_key == 1);
  CHECK(b.report.counts.added_to_response == 1);
  std::set<std::string> seen;
  for (const auto& k : b.key_classes)
    for (const auto& m : k.members) {
      seen.insert(m.id);
      CHECK(m.surface == "s" + m.id);
    }
  CHECK(seen == std::set<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("bundle round trip") {
  auto b = toy17_bundle();
  auto text = export_inspector_bundle(b);
  CHECK(text.find("\"v\": \"1\"") != std::string::npos);
  auto back = read_inspector_bundle(text);
  CHECK(back == b);
  CHECK(export_inspector_bundle(back) == text);
}

TEST_CASE("bundle reader errors") {
  auto text = export_inspector_bundle(toy17_bundle());
  auto v999 = text;
  v999.replace(v999.find("\"v\": \"1\""), 8, "\"v\": \"999\"");
  auto kind = [](const std::string& s) -> std::optional<ErrorKind> {
    try {
      read_inspector_bundle(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return std::nullopt;
  };
  CHECK(kind(v999) == ErrorKind::UnsupportedVersion);
  CHECK(kind(text.substr(0, text.size() / 2)) == ErrorKind::SyntaxError);
  CHECK(kind(R"({"v":"1"})") == ErrorKind::SchemaError);
}
