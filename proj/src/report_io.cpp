#include <sstream>

#include "corefeval/error.hpp"
#include "corefeval/formats.hpp"

namespace corefeval {
namespace {

using ojson = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_positions(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out.empty() ? "-" : out;
}

std::string join_sizes(const SizeDistribution& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.sizes.size(); ++i)
    out += (i ? "," : "") + std::to_string(d.sizes[i]);
  return out + ")";
}

ojson fraction_json(const Fraction& f) {
  return {{"num", f.numerator}, {"den", f.denominator}, {"value", f.value()}};
}

ojson rational_json(const Rational& r) {
  return {{"num", r.numerator()},
          {"den", r.denominator()},
          {"value", boost::rational_cast<double>(r)}};
}

ojson triple_json(const ScoreTriple& s) {
  return {{"recall", fraction_json(s.recall)},
          {"precision", fraction_json(s.precision)},
          {"f", rational_json(s.f)}};
}

template <typename T>
T get(const ojson& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(ErrorKind::SchemaError, std::string("missing field \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError,
                std::string("field \"") + key + "\": " + e.what());
  }
}

const ojson& sub(const ojson& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_object())
    throw Error(ErrorKind::SchemaError, std::string("missing object \"") + key + "\"");
  return *it;
}

// The zero-denominator convention is fixed by the fraction's role.
Fraction fraction_from(const ojson& j, Rational if_undefined) {
  return {get<std::int64_t>(j, "num"), get<std::int64_t>(j, "den"), if_undefined};
}

Rational rational_from(const ojson& j) {
  auto den = get<std::int64_t>(j, "den");
  if (den == 0) throw Error(ErrorKind::SchemaError, "zero denominator");
  return Rational(get<std::int64_t>(j, "num"), den);
}

ScoreTriple triple_from(const ojson& j) {
  return {fraction_from(sub(j, "recall"), Rational(0)),
          fraction_from(sub(j, "precision"), Rational(1)),
          rational_from(sub(j, "f"))};
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw Error(ErrorKind::UnknownMode,
              "format must be text, csv or json, got '" + std::string(text) + "'");
}

MetricSet MetricSet::parse(std::string_view list) {
  MetricSet set{false, false, false, false};
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    auto item = list.substr(start, comma == std::string_view::npos ? list.npos
                                                                  : comma - start);
    if (item == "muc") set.muc = true;
    else if (item == "core") set.core = true;
    else if (item == "xcore") set.exclusive = true;
    else if (item == "dist") set.distributional = true;
    else
      throw Error(ErrorKind::UnknownMode,
                  "unknown metric '" + std::string(item) +
                      "' (expected muc, core, xcore, dist)");
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return set;
}

std::string csv_header() {
  return "doc_id,n_mentions_key,n_mentions_resp,n_classes_key,n_classes_resp,"
         "mrs,mps,mf,crs,cps,cf,xrs,xps,xf,overlap,derror_label,"
         "derror_magnitude\n";
}

std::string csv_row(const EvaluationReport& r, const MetricSet& metrics) {
  auto fixed = [](const Rational& x) { return format_fixed(x, 4); };
  auto triple = [&](bool on, const ScoreTriple& s) -> std::string {
    if (!on) return ",,";
    return fixed(s.recall.exact()) + "," + fixed(s.precision.exact()) + "," +
           fixed(s.f);
  };
  std::ostringstream out;
  out << csv_field(r.doc_id) << ',' << r.counts.key_mentions << ','
      << r.counts.response_mentions << ',' << r.counts.key_classes << ','
      << r.counts.response_classes << ',' << triple(metrics.muc, r.muc) << ','
      << triple(metrics.core, r.core) << ','
      << triple(metrics.exclusive, r.exclusive) << ',';
  if (metrics.distributional)
    out << fixed(r.overlap.exact()) << ',' << to_string(r.d_error.label) << ','
        << fixed(r.d_error.magnitude);
  else
    out << ",,";
  out << '\n';
  return out.str();
}

nlohmann::ordered_json report_to_json(const EvaluationReport& r,
                                      const MetricSet& metrics) {
  ojson j;
  j["doc_id"] = r.doc_id;
  j["counts"] = {{"universe", r.counts.universe},
                 {"mentions_key", r.counts.key_mentions},
                 {"mentions_response", r.counts.response_mentions},
                 {"classes_key", r.counts.key_classes},
                 {"classes_response", r.counts.response_classes},
                 {"cells", r.counts.cells},
                 {"added_to_key", r.counts.added_to_key},
                 {"added_to_response", r.counts.added_to_response}};
  if (metrics.muc) j["muc"] = triple_json(r.muc);
  if (metrics.core) j["core"] = triple_json(r.core);
  if (metrics.exclusive) {
    j["exclusive"] = triple_json(r.exclusive);
    j["exclusive"]["xps_mode"] = std::string(to_string(r.xps_mode));
  }
  if (metrics.distributional) {
    j["distributional"] = {
        {"key_distribution", r.key_distribution.sizes},
        {"response_distribution", r.response_distribution.sizes},
        {"overlap", fraction_json(r.overlap)},
        {"d_error",
         {{"label", std::string(to_string(r.d_error.label))},
          {"magnitude", rational_json(r.d_error.magnitude)},
          {"key_greater_positions", r.d_error.key_greater_positions},
          {"response_greater_positions", r.d_error.response_greater_positions}}}};
  }
  return j;
}

EvaluationReport report_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, "report must be an object");
  EvaluationReport r;
  r.doc_id = get<std::string>(j, "doc_id");
  const auto& c = sub(j, "counts");
  r.counts = {get<std::size_t>(c, "universe"),
              get<std::size_t>(c, "mentions_key"),
              get<std::size_t>(c, "mentions_response"),
              get<std::size_t>(c, "classes_key"),
              get<std::size_t>(c, "classes_response"),
              get<std::size_t>(c, "cells"),
              get<std::size_t>(c, "added_to_key"),
              get<std::size_t>(c, "added_to_response")};
  r.muc = triple_from(sub(j, "muc"));
  r.core = triple_from(sub(j, "core"));
  const auto& x = sub(j, "exclusive");
  r.exclusive = triple_from(x);
  r.xps_mode = parse_xps_mode(get<std::string>(x, "xps_mode"));
  const auto& d = sub(j, "distributional");
  r.key_distribution =
      size_distribution(get<std::vector<std::size_t>>(d, "key_distribution"));
  r.response_distribution =
      size_distribution(get<std::vector<std::size_t>>(d, "response_distribution"));
  r.overlap = fraction_from(sub(d, "overlap"), Rational(1));
  const auto& e = sub(d, "d_error");
  r.d_error.label = parse_derror_label(get<std::string>(e, "label"));
  r.d_error.magnitude = rational_from(sub(e, "magnitude"));
  r.d_error.key_greater_positions =
      get<std::vector<std::size_t>>(e, "key_greater_positions");
  r.d_error.response_greater_positions =
      get<std::vector<std::size_t>>(e, "response_greater_positions");
  return r;
}

std::string emit_report(const EvaluationReport& r, ReportFormat format,
                        const MetricSet& metrics) {
  switch (format) {
    case ReportFormat::Csv:
      return csv_header() + csv_row(r, metrics);
    case ReportFormat::Json:
      return report_to_json(r, metrics).dump(2) + "\n";
    case ReportFormat::Text:
      break;
  }

  std::ostringstream out;
  auto line = [&](const char* name, const Fraction& f) {
    out << name << ' ' << f.str() << ' ' << format_fixed(f.exact(), 2);
  };
  auto f_line = [&](const char* name, const Rational& f) {
    out << name << ' ' << to_string(f) << ' ' << format_fixed(f, 2) << '\n';
  };
  out << "document " << r.doc_id << '\n'
      << "mentions " << r.counts.universe << " (key " << r.counts.key_mentions
      << ", response " << r.counts.response_mentions << ", added to key "
      << r.counts.added_to_key << ", added to response "
      << r.counts.added_to_response << ")\n"
      << "classes key " << r.counts.key_classes << ", response "
      << r.counts.response_classes << ", cells " << r.counts.cells << '\n';
  if (metrics.muc) {
    line("MRS", r.muc.recall);
    out << '\n';
    line("MPS", r.muc.precision);
    out << '\n';
    f_line("MF", r.muc.f);
  }
  if (metrics.core) {
    line("CRS", r.core.recall);
    out << '\n';
    line("CPS", r.core.precision);
    out << '\n';
    f_line("CF", r.core.f);
  }
  if (metrics.exclusive) {
    line("XRS", r.exclusive.recall);
    out << '\n';
    line("XPS", r.exclusive.precision);
    out << ' ' << to_string(r.xps_mode) << '\n';
    f_line("XF", r.exclusive.f);
  }
  if (metrics.distributional) {
    out << "distribution key " << join_sizes(r.key_distribution) << " response "
        << join_sizes(r.response_distribution) << '\n';
    line("overlap", r.overlap);
    out << '\n'
        << "d-error " << to_string(r.d_error.label) << ' '
        << format_fixed(r.d_error.magnitude, 2) << " (key greater at "
        << join_positions(r.d_error.key_greater_positions)
        << "; response greater at "
        << join_positions(r.d_error.response_greater_positions) << ")\n";
  }
  return out.str();
}

}  // namespace corefeval
