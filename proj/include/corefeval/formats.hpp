#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corefeval/metrics.hpp"
#include "corefeval/partition.hpp"
#include "json.hpp"

namespace corefeval {

enum class SourceFormat { NativeJson, MucSgml };

/// A parsed key or response file.
struct PartitionDocument {
  std::string doc_id;
  std::vector<Mention> mentions;
  std::vector<std::vector<MentionId>> classes;
  SourceFormat source_format = SourceFormat::NativeJson;

  friend bool operator==(const PartitionDocument&,
                         const PartitionDocument&) = default;
};

/// Native format:
///   {"doc_id": "...",
///    "mentions": [{"id": "...", "surface": "...", "span": [start, end]}],
///    "classes": [["id", ...], ...]}
/// Mentions absent from every class are singletons.
///
/// Throws SyntaxError (with byte offset), SchemaError, DuplicateMention,
/// UnknownMention or EmptyClass.
PartitionDocument parse_partition_json(std::string_view bytes);
std::string write_partition_json(const PartitionDocument& doc);

/// MUC-style coreference markup: `<COREF ID="..." REF="...">text</COREF>`
/// elements embedded in running text. Classes are the connected components
/// of the REF links. `doc_id` is used unless the input has a DOCNO element.
///
/// Throws MalformedTag, DuplicateId, DanglingRef or NestingViolation.
PartitionDocument parse_muc_sgml(std::string_view bytes,
                                 std::string doc_id = {});

/// Builds the partition of the document's mentions.
Partition to_partition(const PartitionDocument& doc);

enum class ReportFormat { Text, Csv, Json };

ReportFormat parse_report_format(std::string_view text);

/// Metric families included in emitted reports.
struct MetricSet {
  bool muc = true;
  bool core = true;
  bool exclusive = true;
  bool distributional = true;

  /// Comma-separated subset of muc,core,xcore,dist. Throws UnknownMode.
  static MetricSet parse(std::string_view list);
  friend bool operator==(const MetricSet&, const MetricSet&) = default;
};

std::string csv_header();
std::string csv_row(const EvaluationReport& report,
                    const MetricSet& metrics = {});

nlohmann::ordered_json report_to_json(const EvaluationReport& report,
                                      const MetricSet& metrics = {});
/// Inverse of report_to_json for a report with every family present.
EvaluationReport report_from_json(const nlohmann::ordered_json& json);

std::string emit_report(const EvaluationReport& report, ReportFormat format,
                        const MetricSet& metrics = {});

}  // namespace corefeval
