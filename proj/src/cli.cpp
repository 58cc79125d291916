#include "corefeval/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "corefeval/bundle.hpp"
#include "corefeval/error.hpp"
#include "corefeval/formats.hpp"
#include "corefeval/server.hpp"

namespace corefeval::cli {
namespace {

namespace fs = std::filesystem;

enum class InputFormat { Auto, Json, Sgml };
enum class MismatchPolicy { Extend, Error };

struct Options {
  std::string key_path;
  std::string response_path;
  std::string manifest_path;
  std::string format = "text";
  std::string metrics = "muc,core,xcore,dist";
  std::string xps_mode_name = "reconstructed";
  std::string mismatch_name = "extend";
  std::string input_format_name = "auto";
  XpsMode xps_mode = XpsMode::Reconstructed;
  MismatchPolicy mismatch = MismatchPolicy::Extend;
  InputFormat input_format = InputFormat::Auto;
  std::string output_path;
  unsigned jobs = 1;
  std::string bundle_path;
  std::optional<int> serve_port;
  std::string host = "127.0.0.1";
  std::string assets;
};

// A failure tied to one input file. The message names the file.
struct InputError {
  std::string message;
};

// Universes differ and the policy forbids extension.
struct MismatchError {
  std::string message;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "read failed");
  return s.str();
}

PartitionDocument load(const fs::path& path, InputFormat format) {
  try {
    auto bytes = read_file(path);
    if (format == InputFormat::Auto) {
      auto first = bytes.find_first_not_of(" \t\r\n");
      format = path.extension() == ".json" ||
                       (first != std::string::npos && bytes[first] == '{')
                   ? InputFormat::Json
                   : InputFormat::Sgml;
    }
    return format == InputFormat::Json
               ? parse_partition_json(bytes)
               : parse_muc_sgml(bytes, path.stem().string());
  } catch (const Error& e) {
    throw InputError{path.string() + ": " + e.what()};
  }
}

struct LoadedPair {
  PartitionDocument key;
  PartitionDocument response;
};

LoadedPair load_pair(const fs::path& key, const fs::path& response,
                     const Options& o) {
  LoadedPair pair{load(key, o.input_format), load(response, o.input_format)};
  if (o.mismatch == MismatchPolicy::Error) {
    auto k = to_partition(pair.key), r = to_partition(pair.response);
    if (k.universe() != r.universe()) {
      auto stats = align_and_extend(k, r).stats;
      throw MismatchError{
          "UniverseMismatch: " + key.string() + " and " + response.string() +
          " differ (" + std::to_string(stats.added_to_key) +
          " mention(s) only in the response, " +
          std::to_string(stats.added_to_response) + " only in the key)"};
    }
  }
  return pair;
}

EvaluationReport score_pair(const LoadedPair& pair, XpsMode mode) {
  auto report = evaluate(to_partition(pair.key), to_partition(pair.response), mode);
  report.doc_id = pair.key.doc_id;
  return report;
}

// Writes to --output when given, else to the report stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw InputError{path + ": IoError: cannot open for writing"};
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

int cmd_score(const Options& o, std::ostream& out) {
  auto format = parse_report_format(o.format);
  auto metrics = MetricSet::parse(o.metrics);
  auto pair = load_pair(o.key_path, o.response_path, o);
  auto report = score_pair(pair, o.xps_mode);
  Sink sink(o.output_path, out);
  sink.stream() << emit_report(report, format, metrics);
  return kOk;
}

struct ManifestRow {
  std::string doc_id;
  fs::path key;
  fs::path response;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::vector<ManifestRow> read_manifest(const fs::path& path) {
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const Error& e) {
    throw InputError{path.string() + ": " + e.what()};
  }
  std::istringstream in(bytes);
  std::string line;
  std::vector<ManifestRow> rows;
  const auto base = path.parent_path();
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (header) {
      if (fields != std::vector<std::string>{"doc_id", "key", "response"})
        throw InputError{path.string() +
                         ": SchemaError: header must be doc_id,key,response"};
      header = false;
      continue;
    }
    if (fields.size() != 3)
      throw InputError{path.string() + ":" + std::to_string(line_no) +
                       ": SchemaError: expected 3 fields, got " +
                       std::to_string(fields.size())};
    auto resolve = [&](const std::string& p) {
      fs::path f(p);
      return f.is_absolute() ? f : base / f;
    };
    rows.push_back({fields[0], resolve(fields[1]), resolve(fields[2])});
  }
  if (header)
    throw InputError{path.string() + ": SchemaError: missing header line"};
  return rows;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return q + "\"";
}

using Outcome = std::variant<EvaluationReport, std::string>;

std::vector<Outcome> score_all(const std::vector<ManifestRow>& rows,
                               const Options& o) {
  std::vector<Outcome> results(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < rows.size();) {
      try {
        auto pair = load_pair(rows[i].key, rows[i].response, o);
        auto report = score_pair(pair, o.xps_mode);
        report.doc_id = rows[i].doc_id;
        results[i] = std::move(report);
      } catch (const InputError& e) {
        results[i] = e.message;
      } catch (const MismatchError& e) {
        results[i] = e.message;
      } catch (const std::exception& e) {
        results[i] = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(o.jobs, rows.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

int cmd_batch(const Options& o, std::ostream& out) {
  auto format = parse_report_format(o.format);
  if (format == ReportFormat::Text)
    throw Error(ErrorKind::UnknownMode, "batch output must be csv or json");
  auto metrics = MetricSet::parse(o.metrics);
  auto rows = read_manifest(o.manifest_path);
  auto results = score_all(rows, o);

  std::vector<EvaluationReport> scored;
  std::size_t failed = 0;
  for (const auto& r : results)
    if (auto* rep = std::get_if<EvaluationReport>(&r)) scored.push_back(*rep);
    else ++failed;
  std::optional<EvaluationReport> total;
  if (!scored.empty()) total = aggregate(scored);

  Sink sink(o.output_path, out);
  auto& s = sink.stream();
  if (format == ReportFormat::Csv) {
    s << csv_header();
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (auto* rep = std::get_if<EvaluationReport>(&results[i]))
        s << csv_row(*rep, metrics);
      else
        s << "#error," << csv_quote(rows[i].doc_id) << ','
          << csv_quote(std::get<std::string>(results[i])) << '\n';
    }
    if (total) s << csv_row(*total, metrics);
  } else {
    nlohmann::ordered_json j;
    j["documents"] = nlohmann::ordered_json::array();
    j["errors"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (auto* rep = std::get_if<EvaluationReport>(&results[i]))
        j["documents"].push_back(report_to_json(*rep, metrics));
      else
        j["errors"].push_back({{"doc_id", rows[i].doc_id},
                               {"message", std::get<std::string>(results[i])}});
    }
    j["aggregate"] = total ? report_to_json(*total, metrics) : nullptr;
    s << j.dump(2) << '\n';
  }
  return failed ? kFailure : kOk;
}

int cmd_inspect(const Options& o, std::ostream& out, std::ostream& err,
                const Hooks& hooks) {
  auto pair = load_pair(o.key_path, o.response_path, o);
  auto bundle = export_inspector_bundle(
      build_inspector_bundle(pair.key, pair.response, o.xps_mode));
  if (!o.bundle_path.empty()) {
    Sink sink(o.bundle_path, out);
    sink.stream() << bundle;
    return kOk;
  }

  std::optional<fs::path> assets;
  if (!o.assets.empty()) assets = o.assets;
  InspectorServer server(std::move(bundle), assets);
  int port = server.bind(o.host, *o.serve_port);
  out << "serving http://" << o.host << ':' << port
      << "/ (bundle at /bundle.json)" << std::endl;
  std::thread hook_thread;
  if (hooks.on_serving)
    hook_thread = std::thread([&] {
      server.wait_until_ready();
      hooks.on_serving(server, port);
    });
  server.serve();
  if (hook_thread.joinable()) hook_thread.join();
  err << "server stopped\n";
  return kOk;
}

void add_pair_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--key", o.key_path, "Key (reference) partition file")->required();
  cmd->add_option("--resp,--response", o.response_path,
                  "Response (system) partition file")->required();
}

void add_common_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--metrics", o.metrics,
                  "Comma-separated subset of muc,core,xcore,dist")
      ->capture_default_str();
  cmd->add_option("--xps-mode", o.xps_mode_name, "Exclusive precision formula")
      ->check(CLI::IsMember({"reconstructed", "printed"}))
      ->capture_default_str();
  cmd->add_option("--on-mismatch", o.mismatch_name,
                  "What to do when key and response mention sets differ")
      ->check(CLI::IsMember({"extend", "error"}))
      ->capture_default_str();
  cmd->add_option("--input-format", o.input_format_name, "Input file format")
      ->check(CLI::IsMember({"auto", "json", "sgml"}))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
  Options o;
  CLI::App app{"Coreference partition scorer: MUC, core, exclusive-core and "
               "distributional comparisons of key and response partitions."};
  app.name("corefeval");
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Score one key/response pair");
  add_pair_options(score, o);
  add_common_options(score, o);
  score->add_option("--format", o.format, "text, csv or json")->capture_default_str();
  score->add_option("-o,--output", o.output_path, "Write the report here");

  auto* batch = app.add_subcommand("batch", "Score every pair of a manifest");
  batch->add_option("--manifest", o.manifest_path,
                    "CSV with header doc_id,key,response; paths relative to it")
      ->required();
  batch->add_option("--jobs", o.jobs, "Documents scored in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common_options(batch, o);
  batch->add_option("--format", o.format, "csv or json")->default_str("csv");
  batch->add_option("-o,--output", o.output_path, "Write the report here");

  auto* inspect = app.add_subcommand("inspect", "Export or serve an inspector bundle");
  add_pair_options(inspect, o);
  add_common_options(inspect, o);
  auto* target = inspect->add_option_group("target", "Where the bundle goes");
  target->add_option("--out", o.bundle_path, "Write the bundle JSON here");
  auto* serve_opt = target->add_option("--serve", o.serve_port,
                                       "Serve the inspector on this port (0 picks one)")
                        ->check(CLI::Range(0, 65535));
  target->require_option(1);
  inspect->add_option("--host", o.host, "Address to serve on")->capture_default_str();
  inspect->add_option("--assets", o.assets, "Directory of inspector UI files")
      ->check(CLI::ExistingDirectory)
      ->needs(serve_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help is a success; every usage error is a plain failure
    return app.exit(e, out, err) == 0 ? kOk : kFailure;
  }
  if (batch->parsed() && batch->count("--format") == 0) o.format = "csv";
  o.xps_mode = parse_xps_mode(o.xps_mode_name);
  o.mismatch = o.mismatch_name == "error" ? MismatchPolicy::Error : MismatchPolicy::Extend;
  o.input_format = o.input_format_name == "json"   ? InputFormat::Json
                   : o.input_format_name == "sgml" ? InputFormat::Sgml
                                                   : InputFormat::Auto;

  try {
    if (score->parsed()) return cmd_score(o, out);
    if (batch->parsed()) return cmd_batch(o, out);
    return cmd_inspect(o, out, err, hooks);
  } catch (const InputError& e) {
    err << "error: " << e.message << '\n';
    return kFailure;
  } catch (const MismatchError& e) {
    err << "error: " << e.message << '\n';
    return kMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace corefeval::cli
