#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefeval/formats.hpp"
#include "corefeval/metrics.hpp"

namespace corefeval {

inline constexpr std::string_view kBundleVersion = "1";

struct BundleMember {
  MentionId id;
  std::optional<std::string> surface;

  friend bool operator==(const BundleMember&, const BundleMember&) = default;
};

/// What one class adds to the scores: its projection sizes, its core cell
/// and its exclusive binding.
struct ClassContribution {
  std::vector<std::size_t> projection_sizes;  // largest first
  std::size_t core_size = 0;
  std::size_t core_class = 0;  // opposite class holding the core
  std::optional<std::size_t> exclusive_class;
  std::size_t exclusive_size = 0;

  friend bool operator==(const ClassContribution&,
                         const ClassContribution&) = default;
};

struct BundleClass {
  std::size_t index = 0;  // position in the normalized class order
  std::string label;      // K_n or R_n, numbered in listing order
  std::vector<BundleMember> members;
  std::vector<std::size_t> projections;  // opposite class indices, by label
  std::vector<std::string> projection_labels;
  std::vector<std::size_t> cells;  // indices into InspectorBundle::cells
  ClassContribution contribution;

  friend bool operator==(const BundleClass&, const BundleClass&) = default;
};

struct BundleCell {
  std::size_t key_class = 0;
  std::size_t response_class = 0;
  std::vector<MentionId> members;

  friend bool operator==(const BundleCell&, const BundleCell&) = default;
};

/// Everything the inspector needs to draw both columns and answer every
/// selection without calling back into the scorer.
struct InspectorBundle {
  std::string v{kBundleVersion};
  std::string doc_id;
  std::vector<BundleClass> key_classes;
  std::vector<BundleClass> response_classes;
  std::vector<BundleCell> cells;
  EvaluationReport report;

  friend bool operator==(const InspectorBundle&,
                         const InspectorBundle&) = default;
};

/// Aligns the two documents, scores them and records every projection.
InspectorBundle build_inspector_bundle(const PartitionDocument& key,
                                       const PartitionDocument& response,
                                       XpsMode mode = XpsMode::Reconstructed);

std::string export_inspector_bundle(const InspectorBundle& bundle);

/// Throws SyntaxError, SchemaError or UnsupportedVersion.
InspectorBundle read_inspector_bundle(std::string_view bytes);

}  // namespace corefeval
