#include "corefeval/metrics.hpp"

#include <algorithm>
#include <functional>

#include "corefeval/error.hpp"

namespace corefeval {
namespace {

constexpr Rational kRecallIfUndefined{0};
constexpr Rational kPrecisionIfUndefined{1};

std::int64_t as_count(std::size_t n) { return static_cast<std::int64_t>(n); }

Fraction recall_fraction(std::size_t num, std::size_t den) {
  return {as_count(num), as_count(den), kRecallIfUndefined};
}

Fraction precision_fraction(std::size_t num, std::size_t den) {
  return {as_count(num), as_count(den), kPrecisionIfUndefined};
}

std::size_t largest_cell(const IntersectionTable& table, Side side,
                         std::size_t class_index) {
  std::size_t best = 0;
  for (std::size_t c : table.cells_of(side, class_index))
    best = std::max(best, table.cells()[c].size());
  return best;
}

}  // namespace

ScoreTriple muc_scores(const IntersectionTable& table) {
  const std::size_t n = table.mention_count();
  const std::size_t cells = table.cells().size();
  const std::size_t key_classes = table.key().class_count();
  const std::size_t response_classes = table.response().class_count();
  // Σ|π(K)| and Σ|σ(R)| both equal the cell count.
  return make_score(recall_fraction(n - cells, n - key_classes),
                    precision_fraction(n - cells, n - response_classes));
}

ScoreTriple core_scores(const IntersectionTable& table) {
  const std::size_t n = table.mention_count();
  auto side_sum = [&](Side side) {
    std::size_t sum = 0;
    for (std::size_t c = 0; c < table.partition(side).class_count(); ++c)
      sum += largest_cell(table, side, c);
    return sum;
  };
  const std::size_t key_classes = table.key().class_count();
  const std::size_t response_classes = table.response().class_count();
  return make_score(
      recall_fraction(side_sum(Side::Key) - key_classes, n - key_classes),
      precision_fraction(side_sum(Side::Response) - response_classes,
                         n - response_classes));
}

ExclusiveAssignment exclusive_assignment(const IntersectionTable& table) {
  const std::size_t key_classes = table.key().class_count();
  const std::size_t response_classes = table.response().class_count();

  ExclusiveAssignment out;
  out.by_key.assign(key_classes, std::nullopt);
  std::set<std::size_t> taken;
  std::vector<bool> done(key_classes, false);

  // Each round binds the key class with the biggest projection onto a still
  // free response class; ties by key index, then response index.
  for (std::size_t round = 0; round < key_classes; ++round) {
    std::optional<std::size_t> best_key;
    std::optional<ProjectionPick> best_pick;
    for (std::size_t k = 0; k < key_classes; ++k) {
      if (done[k]) continue;
      auto pick = largest_projection(table, Side::Key, k, taken);
      if (!pick) continue;
      if (!best_pick || pick->size > best_pick->size) {
        best_key = k;
        best_pick = pick;
      }
    }
    if (!best_pick) break;
    done[*best_key] = true;
    taken.insert(best_pick->opposite_class);
    out.by_key[*best_key] =
        ExclusiveBinding{best_pick->opposite_class, best_pick->cell};
    out.binding_order.push_back(*best_key);
  }

  for (std::size_t r = 0; r < response_classes; ++r)
    if (!taken.contains(r)) out.unassigned_response_classes.insert(r);
  return out;
}

std::string_view to_string(XpsMode mode) {
  return mode == XpsMode::Printed ? "printed" : "reconstructed";
}

XpsMode parse_xps_mode(std::string_view text) {
  if (text == "reconstructed") return XpsMode::Reconstructed;
  if (text == "printed") return XpsMode::Printed;
  throw Error(ErrorKind::UnknownMode,
              "xps mode must be 'reconstructed' or 'printed', got '" +
                  std::string(text) + "'");
}

ScoreTriple exclusive_scores(const IntersectionTable& table,
                             const ExtensionStats& stats, XpsMode mode) {
  return exclusive_scores(table, exclusive_assignment(table), stats, mode);
}

ScoreTriple exclusive_scores(const IntersectionTable& table,
                             const ExclusiveAssignment& assignment,
                             const ExtensionStats& stats, XpsMode mode) {
  const auto& universe = table.key().universe();
  auto originals_excluding = [&](const std::vector<MentionId>& added) {
    std::vector<bool> original(universe.size(), true);
    for (const auto& id : added)
      if (auto m = table.key().index_of(id)) original[*m] = false;
    return original;
  };
  const auto in_key = originals_excluding(stats.added_key_ids);
  const auto in_response = originals_excluding(stats.added_response_ids);

  std::size_t recalled = 0;
  std::size_t precise = 0;
  std::size_t foreign = 0;
  for (std::size_t k = 0; k < assignment.by_key.size(); ++k) {
    const auto& binding = assignment.by_key[k];
    if (!binding) continue;
    for (auto m : table.cells()[binding->cell].members) {
      if (in_key[m]) ++recalled;
      if (in_response[m]) ++precise;
    }
    for (auto m : table.response().at(binding->response_class))
      if (table.key().owner()[m] != k && in_response[m]) ++foreign;
  }

  const std::size_t key_n = stats.key_mentions;
  const std::size_t resp_n = stats.response_mentions;
  Fraction precision = mode == XpsMode::Reconstructed
                           ? precision_fraction(precise, resp_n)
                           : precision_fraction(resp_n - foreign, resp_n);
  return make_score(recall_fraction(recalled, key_n), precision);
}

SizeDistribution size_distribution(const Partition& p) {
  std::vector<std::size_t> sizes;
  for (const auto& c : p.classes()) sizes.push_back(c.size());
  return size_distribution(std::move(sizes));
}

SizeDistribution size_distribution(std::vector<std::size_t> sizes) {
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  SizeDistribution d{std::move(sizes), 0};
  for (auto s : d.sizes) d.total += s;
  return d;
}

SizeDistribution merge(const SizeDistribution& a, const SizeDistribution& b) {
  std::vector<std::size_t> sizes;
  std::merge(a.sizes.begin(), a.sizes.end(), b.sizes.begin(), b.sizes.end(),
             std::back_inserter(sizes), std::greater<>());
  return {std::move(sizes), a.total + b.total};
}

namespace {

std::size_t padded_at(const SizeDistribution& d, std::size_t i) {
  return i < d.sizes.size() ? d.sizes[i] : 0;
}

}  // namespace

Fraction overlapping(const SizeDistribution& key,
                     const SizeDistribution& response) {
  const std::size_t length = std::max(key.sizes.size(), response.sizes.size());
  std::size_t shared = 0;
  for (std::size_t i = 0; i < length; ++i)
    shared += std::min(padded_at(key, i), padded_at(response, i));
  return {as_count(shared), as_count(std::max(key.total, response.total)),
          Rational(1)};
}

std::string_view to_string(DErrorLabel label) {
  switch (label) {
    case DErrorLabel::Recall: return "recall";
    case DErrorLabel::Precision: return "precision";
    case DErrorLabel::Balanced: return "balanced";
  }
  return "balanced";
}

DErrorLabel parse_derror_label(std::string_view text) {
  if (text == "recall") return DErrorLabel::Recall;
  if (text == "precision") return DErrorLabel::Precision;
  if (text == "balanced") return DErrorLabel::Balanced;
  throw Error(ErrorKind::SchemaError,
              "unknown d-error label '" + std::string(text) + "'");
}

DError d_error(const SizeDistribution& key, const SizeDistribution& response) {
  const std::size_t length = std::max(key.sizes.size(), response.sizes.size());
  DError out;
  for (std::size_t i = 0; i < length; ++i) {
    const auto k = padded_at(key, i);
    const auto r = padded_at(response, i);
    if (k > r) out.key_greater_positions.push_back(i + 1);
    if (r > k) out.response_greater_positions.push_back(i + 1);
  }

  const auto& a = out.key_greater_positions;
  const auto& b = out.response_greater_positions;
  if (a.empty() && b.empty()) return out;
  if (a.empty() || b.empty()) {
    out.label = a.empty() ? DErrorLabel::Precision : DErrorLabel::Recall;
    out.magnitude = 1;
    return out;
  }

  auto average = [](const std::vector<std::size_t>& positions) {
    std::int64_t sum = 0;
    for (auto p : positions) sum += as_count(p);
    return Rational(sum, as_count(positions.size()));
  };
  const Rational avg_key = average(a);
  const Rational avg_response = average(b);
  if (avg_response < avg_key)
    out.label = DErrorLabel::Precision;
  else if (avg_key < avg_response)
    out.label = DErrorLabel::Recall;
  else
    return out;  // equal averages: balanced, magnitude 0

  out.magnitude = boost::abs(avg_key - avg_response) / as_count(length);
  if (out.magnitude > Rational(1)) out.magnitude = 1;
  return out;
}

EvaluationReport evaluate(const Partition& key, const Partition& response,
                          XpsMode mode) {
  auto aligned = align_and_extend(key, response);
  auto table = intersection_table(std::move(aligned.key),
                                  std::move(aligned.response));
  return evaluate(table, aligned.stats, mode);
}

EvaluationReport evaluate(const IntersectionTable& table,
                          const ExtensionStats& stats, XpsMode mode) {
  EvaluationReport report;
  report.counts = {table.mention_count(),
                   stats.key_mentions,
                   stats.response_mentions,
                   table.key().class_count(),
                   table.response().class_count(),
                   table.cells().size(),
                   stats.added_to_key,
                   stats.added_to_response};
  report.muc = muc_scores(table);
  report.core = core_scores(table);
  report.exclusive = exclusive_scores(table, stats, mode);
  report.xps_mode = mode;
  report.key_distribution = size_distribution(table.key());
  report.response_distribution = size_distribution(table.response());
  report.overlap =
      overlapping(report.key_distribution, report.response_distribution);
  report.d_error = d_error(report.key_distribution, report.response_distribution);
  return report;
}

EvaluationReport aggregate(std::span<const EvaluationReport> reports,
                           std::string doc_id) {
  if (reports.empty())
    throw Error(ErrorKind::DomainError, "cannot aggregate zero reports");

  auto pool = [](const ScoreTriple& a, const ScoreTriple& b) {
    return make_score(pooled(a.recall, b.recall),
                      pooled(a.precision, b.precision));
  };

  EvaluationReport out = reports.front();
  out.doc_id = std::move(doc_id);
  for (const auto& r : reports.subspan(1)) {
    out.counts.universe += r.counts.universe;
    out.counts.key_mentions += r.counts.key_mentions;
    out.counts.response_mentions += r.counts.response_mentions;
    out.counts.key_classes += r.counts.key_classes;
    out.counts.response_classes += r.counts.response_classes;
    out.counts.cells += r.counts.cells;
    out.counts.added_to_key += r.counts.added_to_key;
    out.counts.added_to_response += r.counts.added_to_response;
    out.muc = pool(out.muc, r.muc);
    out.core = pool(out.core, r.core);
    out.exclusive = pool(out.exclusive, r.exclusive);
    out.key_distribution = merge(out.key_distribution, r.key_distribution);
    out.response_distribution =
        merge(out.response_distribution, r.response_distribution);
  }
  out.overlap = overlapping(out.key_distribution, out.response_distribution);
  out.d_error = d_error(out.key_distribution, out.response_distribution);
  return out;
}

}  // namespace corefeval
