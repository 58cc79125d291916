#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corefeval/partition.hpp"
#include "corefeval/score.hpp"

namespace corefeval {

/// MUC link-based recall and precision. A zero recall denominator scores 0,
/// a zero precision denominator scores 1.
ScoreTriple muc_scores(const IntersectionTable& table);

/// Core-class recall and precision: every mention outside the largest
/// projection of its class counts as one error. Same zero-denominator
/// conventions as muc_scores.
ScoreTriple core_scores(const IntersectionTable& table);

struct ExclusiveBinding {
  std::size_t response_class = 0;
  std::size_t cell = 0;  // index into table.cells()

  friend bool operator==(const ExclusiveBinding&,
                         const ExclusiveBinding&) = default;
};

/// Injective key -> response binding built greedily, largest remaining
/// projection first.
struct ExclusiveAssignment {
  std::vector<std::optional<ExclusiveBinding>> by_key;
  std::set<std::size_t> unassigned_response_classes;
  std::vector<std::size_t> binding_order;  // key classes, in binding order

  friend bool operator==(const ExclusiveAssignment&,
                         const ExclusiveAssignment&) = default;
};

ExclusiveAssignment exclusive_assignment(const IntersectionTable& table);

enum class XpsMode { Reconstructed, Printed };

std::string_view to_string(XpsMode mode);
/// Throws UnknownMode.
XpsMode parse_xps_mode(std::string_view text);

/// Exclusive-core recall and precision. Denominators are the original
/// (pre-extension) mention counts of each side.
///
/// Reconstructed precision counts response mentions that sit in the
/// exclusive core of their own key class. Printed precision is
/// 1 - Σ|xc*(K) \ K| / |M_resp|.
ScoreTriple exclusive_scores(const IntersectionTable& table,
                             const ExtensionStats& stats,
                             XpsMode mode = XpsMode::Reconstructed);
ScoreTriple exclusive_scores(const IntersectionTable& table,
                             const ExclusiveAssignment& assignment,
                             const ExtensionStats& stats, XpsMode mode);

struct SizeDistribution {
  std::vector<std::size_t> sizes;  // non-increasing
  std::size_t total = 0;

  friend bool operator==(const SizeDistribution&,
                         const SizeDistribution&) = default;
};

SizeDistribution size_distribution(const Partition& p);
SizeDistribution size_distribution(std::vector<std::size_t> sizes);
SizeDistribution merge(const SizeDistribution& a, const SizeDistribution& b);

/// Positionwise min-sum of the zero-padded distributions over the larger
/// total. 1 when both are empty.
Fraction overlapping(const SizeDistribution& key,
                     const SizeDistribution& response);

enum class DErrorLabel { Recall, Precision, Balanced };

std::string_view to_string(DErrorLabel label);
DErrorLabel parse_derror_label(std::string_view text);

struct DError {
  Rational magnitude{0};
  DErrorLabel label = DErrorLabel::Balanced;
  std::vector<std::size_t> key_greater_positions;       // 1-based
  std::vector<std::size_t> response_greater_positions;  // 1-based

  friend bool operator==(const DError&, const DError&) = default;
};

/// Compares the average positions where key classes are bigger against
/// those where response classes are bigger. Bigger response classes near
/// the top mean over-merging (precision); the reverse means recall.
/// Magnitude is |avg(key-greater) - avg(response-greater)| / L.
DError d_error(const SizeDistribution& key, const SizeDistribution& response);

struct ReportCounts {
  std::size_t universe = 0;  // |R| after extension
  std::size_t key_mentions = 0;
  std::size_t response_mentions = 0;
  std::size_t key_classes = 0;
  std::size_t response_classes = 0;
  std::size_t cells = 0;
  std::size_t added_to_key = 0;
  std::size_t added_to_response = 0;

  friend bool operator==(const ReportCounts&, const ReportCounts&) = default;
};

struct EvaluationReport {
  std::string doc_id;
  ReportCounts counts;
  ScoreTriple muc;
  ScoreTriple core;
  ScoreTriple exclusive;
  XpsMode xps_mode = XpsMode::Reconstructed;
  Fraction overlap;
  DError d_error;
  SizeDistribution key_distribution;
  SizeDistribution response_distribution;

  friend bool operator==(const EvaluationReport&,
                         const EvaluationReport&) = default;
};

/// Aligns, tabulates and runs every scorer.
EvaluationReport evaluate(const Partition& key, const Partition& response,
                          XpsMode mode = XpsMode::Reconstructed);
EvaluationReport evaluate(const IntersectionTable& table,
                          const ExtensionStats& stats, XpsMode mode);

/// Scores of the disjoint union of the documents: fractions pool their
/// counts, distributions are merged. Requires at least one report.
EvaluationReport aggregate(std::span<const EvaluationReport> reports,
                           std::string doc_id = "__micro__");

}  // namespace corefeval
