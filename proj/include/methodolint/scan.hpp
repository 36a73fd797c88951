#pragma once

// File discovery, per-file fan-out across patterns, and scan reports.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "methodolint/bundle.hpp"
#include "methodolint/client.hpp"
#include "methodolint/concurrency.hpp"
#include "methodolint/prompt.hpp"
#include "methodolint/registry.hpp"

namespace methodolint {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;
inline constexpr std::string_view kToolName = "methodolint";

struct Finding {
  std::string pattern_id;
  Category category = Category::AiTraining;
  Severity severity = Severity::Medium;
  std::string title;
  std::string file;
  std::vector<int> line_refs;
  std::string issue_summary;
  std::string explanation;
  std::vector<std::string> doc_refs;

  bool operator==(const Finding&) const = default;
};

inline Finding make_finding(const Pattern& p, const std::string& file, const ModelVerdict& v) {
  return {p.id, p.category, p.severity, p.title, file, v.line_refs, v.issue_summary, v.explanation, p.doc_refs};
}

struct SkippedFile {
  std::string path;
  std::string reason;
  bool operator==(const SkippedFile&) const = default;
};

struct ErroredFile {
  std::string path;
  std::string error;
  bool operator==(const ErroredFile&) const = default;
};

struct PatternFailure {
  std::string file;
  std::string pattern_id;
  std::string error;
  bool operator==(const PatternFailure&) const = default;
};

struct ScanConfigEcho {
  std::string model;
  std::string endpoint;
  std::vector<std::string> categories;  // empty means all
  std::vector<std::string> patterns;    // ids actually run
  int max_input_tokens = 0;
  double chars_per_token = 0.0;
  bool operator==(const ScanConfigEcho&) const = default;
};

struct ScanReport {
  std::string started_at;  // UTC, ISO 8601
  double duration_seconds = 0.0;
  ScanConfigEcho config;
  std::vector<Finding> findings;
  std::vector<std::string> files_scanned;
  std::vector<SkippedFile> files_skipped;
  std::vector<ErroredFile> files_errored;
  std::vector<PatternFailure> pattern_errors;

  bool operator==(const ScanReport&) const = default;
};

/// 0 clean, 1 findings, 2 operational trouble (errored files or patterns).
inline int exit_code(const ScanReport& r) {
  if (!r.files_errored.empty() || !r.pattern_errors.empty()) return 2;
  return r.findings.empty() ? 0 : 1;
}

// ---- discovery ---------------------------------------------------------------

/// Glob over '/'-separated relative paths: `*` and `?` stay inside one path
/// segment, `**` crosses segments, and a leading or inner `**/` may match no
/// directories at all.
inline std::regex glob_to_regex(std::string_view glob) {
  std::string re;
  for (std::size_t i = 0; i < glob.size(); ++i) {
    char c = glob[i];
    if (c == '*') {
      if (i + 1 < glob.size() && glob[i + 1] == '*') {
        bool slash = i + 2 < glob.size() && glob[i + 2] == '/';
        re += slash ? "(?:.*/)?" : ".*";
        i += slash ? 2 : 1;
      } else {
        re += "[^/]*";
      }
    } else if (c == '?') {
      re += "[^/]";
    } else if (std::string_view("\\^$.|+()[]{}").find(c) != std::string_view::npos) {
      re += '\\';
      re += c;
    } else {
      re += c;
    }
  }
  return std::regex(re);
}

inline bool glob_match(std::string_view glob, std::string_view path) {
  return std::regex_match(path.begin(), path.end(), glob_to_regex(glob));
}

namespace detail {

inline bool any_glob(const std::vector<std::regex>& globs, const std::string& rel) {
  for (const auto& g : globs) {
    if (std::regex_match(rel, g)) return true;
  }
  return false;
}

inline bool skipped_dir(const fs::path& p) {
  std::string name = p.filename().string();
  return name == "__pycache__" || (name.size() > 1 && name[0] == '.' && name != "..");
}

}  // namespace detail

/// Python files under `paths`, sorted and de-duplicated. Globs are matched
/// against the path relative to the argument it was found under. Hidden
/// directories and __pycache__ are not entered.
inline std::vector<std::string> discover_targets(const std::vector<std::string>& paths,
                                                 const std::vector<std::string>& include_globs = {},
                                                 const std::vector<std::string>& exclude_globs = {}) {
  std::vector<std::regex> inc, exc;
  for (const auto& g : include_globs) inc.push_back(glob_to_regex(g));
  for (const auto& g : exclude_globs) exc.push_back(glob_to_regex(g));
  auto keep = [&](const std::string& rel) {
    if (!inc.empty() && !detail::any_glob(inc, rel)) return false;
    return !detail::any_glob(exc, rel);
  };
  std::set<std::string> out;
  for (const auto& arg : paths) {
    fs::path root(arg);
    std::error_code ec;
    auto st = fs::status(root, ec);
    if (ec || !fs::exists(st)) throw Error("path does not exist: " + arg);
    if (fs::is_regular_file(st)) {
      if (root.extension() == ".py" && keep(root.filename().generic_string())) out.insert(root.generic_string());
      continue;
    }
    if (!fs::is_directory(st)) continue;
    fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
    if (ec) throw Error("cannot read directory " + arg + ": " + ec.message());
    for (auto end = fs::recursive_directory_iterator(); it != end; it.increment(ec)) {
      if (ec) throw Error("cannot read directory under " + arg + ": " + ec.message());
      const auto& entry = *it;
      if (entry.is_directory(ec)) {
        if (detail::skipped_dir(entry.path())) it.disable_recursion_pending();
        continue;
      }
      if (!entry.is_regular_file(ec) || entry.path().extension() != ".py") continue;
      std::string rel = fs::relative(entry.path(), root, ec).generic_string();
      if (ec) rel = entry.path().filename().generic_string();
      if (keep(rel)) out.insert(entry.path().generic_string());
    }
  }
  return {out.begin(), out.end()};
}

// ---- scanning ----------------------------------------------------------------

struct ScanOptions {
  std::set<Category> categories;        // empty means all
  std::vector<std::string> pattern_ids;  // empty means all in the selected categories
  TokenBudget budget;
  PromptTemplate prompt_template = default_prompt_template();
  std::vector<std::string> include_globs;
  std::vector<std::string> exclude_globs;
  int file_parallelism = 1;
  bool preflight = true;
};

struct FileScanResult {
  std::string file;
  std::vector<Finding> findings;
  std::optional<SkippedFile> skipped;
  std::optional<ErroredFile> errored;
  std::vector<PatternFailure> pattern_errors;
};

/// The patterns a scan with `opts` runs, in id order.
inline PatternRegistry select_patterns(const PatternRegistry& reg, const ScanOptions& opts) {
  return filter_by_ids(filter_by_categories(reg, opts.categories), opts.pattern_ids);
}

/// Scans one file's source against every pattern of `patterns`.
inline FileScanResult scan_source(const std::string& file, const std::string& code, const PatternRegistry& patterns,
                                  const InferenceClient& client, const TokenBudget& budget,
                                  const PromptTemplate& tmpl = default_prompt_template()) {
  FileScanResult out;
  out.file = file;
  auto all = patterns.patterns();
  if (all.empty()) return out;
  // The longest question gives the largest prompt.
  const Pattern* widest = *std::max_element(all.begin(), all.end(), [](const Pattern* a, const Pattern* b) {
    return a->detection_question.size() < b->detection_question.size();
  });
  BudgetDecision d = check_budget(code, *widest, budget, file, tmpl);
  if (!d.fits) {
    out.skipped = SkippedFile{file, d.reason};
    return out;
  }
  std::optional<Nonce> nonce;
  try {
    nonce = choose_nonce(code);
  } catch (const NonceCollision& e) {
    out.errored = ErroredFile{file, e.what()};
    return out;
  }
  std::vector<PromptBundle> bundles;
  bundles.reserve(all.size());
  for (const Pattern* p : all) bundles.push_back(build_prompt(code, *p, *nonce, tmpl));
  auto results = client.run_batch(bundles);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (!r.ok()) {
      out.pattern_errors.push_back({file, r.pattern_id, r.error});
    } else if (r.verdict->detected) {
      out.findings.push_back(make_finding(*all[i], file, *r.verdict));
    }
  }
  if (out.pattern_errors.size() == all.size()) {
    out.errored = ErroredFile{file, "every pattern failed; first error: " + out.pattern_errors.front().error};
  }
  return out;
}

/// Reads and scans one file. An unreadable file comes back errored.
inline FileScanResult scan_file(const std::string& file, const PatternRegistry& patterns,
                                const InferenceClient& client, const TokenBudget& budget,
                                const PromptTemplate& tmpl = default_prompt_template()) {
  auto code = read_file(file);
  if (!code) {
    FileScanResult out;
    out.file = file;
    out.errored = ErroredFile{file, "cannot read file"};
    return out;
  }
  return scan_source(file, *code, patterns, client, budget, tmpl);
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ScanConfigEcho make_config_echo(const PatternRegistry& selected, const InferenceClient& client,
                                       const ScanOptions& opts) {
  ScanConfigEcho c;
  c.model = client.config().model_name;
  c.endpoint = client.config().base_url;
  for (Category cat : kAllCategories) {
    if (opts.categories.count(cat)) c.categories.emplace_back(to_string(cat));
  }
  c.patterns = selected.ids();
  c.max_input_tokens = opts.budget.max_input_tokens;
  c.chars_per_token = opts.budget.chars_per_token;
  return c;
}

/// Scans every discovered target. Throws ClientError before touching any
/// file when the endpoint does not answer.
inline ScanReport scan(const std::vector<std::string>& paths, const PatternRegistry& reg,
                       const InferenceClient& client, const ScanOptions& opts = {}) {
  opts.budget.validate();
  if (opts.file_parallelism < 1) throw ConfigError("file_parallelism must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  ScanReport report;
  report.started_at = utc_timestamp(std::chrono::system_clock::now());
  PatternRegistry selected = select_patterns(reg, opts);
  report.config = make_config_echo(selected, client, opts);
  auto targets = discover_targets(paths, opts.include_globs, opts.exclude_globs);
  if (!targets.empty() && !selected.empty() && opts.preflight) {
    std::string err;
    if (!client.ping(&err)) throw ClientError(err, 1, true);
  }
  auto results = parallel_map(targets.size(), static_cast<std::size_t>(opts.file_parallelism), [&](std::size_t i) {
    return scan_file(targets[i], selected, client, opts.budget, opts.prompt_template);
  });
  for (auto& r : results) {
    for (auto& e : r.pattern_errors) report.pattern_errors.push_back(std::move(e));
    if (r.skipped) {
      report.files_skipped.push_back(std::move(*r.skipped));
    } else if (r.errored) {
      report.files_errored.push_back(std::move(*r.errored));
    } else {
      report.files_scanned.push_back(r.file);
      for (auto& f : r.findings) report.findings.push_back(std::move(f));
    }
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.duration_seconds = std::round(secs * 1000.0) / 1000.0;
  return report;
}

// ---- rendering ---------------------------------------------------------------

enum class ReportFormat { Json, Text };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "text") return ReportFormat::Text;
  return std::nullopt;
}

struct RenderOptions {
  bool normalize_timestamps = false;  // fixed started_at and zero duration
};

inline ordered_json to_json(const Finding& f) {
  ordered_json j;
  j["pattern_id"] = f.pattern_id;
  j["category"] = std::string(to_string(f.category));
  j["severity"] = std::string(to_string(f.severity));
  j["title"] = f.title;
  j["file"] = f.file;
  j["line_refs"] = f.line_refs;
  j["issue_summary"] = f.issue_summary;
  j["explanation"] = f.explanation;
  j["doc_refs"] = f.doc_refs;
  return j;
}

inline ordered_json report_json(const ScanReport& r, const RenderOptions& opts = {}) {
  ordered_json j;
  j["report_version"] = kReportVersion;
  j["tool"] = std::string(kToolName);
  j["started_at"] = opts.normalize_timestamps ? std::string("1970-01-01T00:00:00Z") : r.started_at;
  j["duration_seconds"] = opts.normalize_timestamps ? 0.0 : r.duration_seconds;
  ordered_json cfg;
  cfg["model"] = r.config.model;
  cfg["endpoint"] = r.config.endpoint;
  cfg["categories"] = r.config.categories;
  cfg["patterns"] = r.config.patterns;
  cfg["max_input_tokens"] = r.config.max_input_tokens;
  cfg["chars_per_token"] = r.config.chars_per_token;
  j["config"] = std::move(cfg);
  ordered_json summary;
  summary["findings"] = r.findings.size();
  summary["files_scanned"] = r.files_scanned.size();
  summary["files_skipped"] = r.files_skipped.size();
  summary["files_errored"] = r.files_errored.size();
  summary["pattern_errors"] = r.pattern_errors.size();
  summary["exit_code"] = exit_code(r);
  j["summary"] = std::move(summary);
  j["findings"] = ordered_json::array();
  for (const auto& f : r.findings) j["findings"].push_back(to_json(f));
  j["files_scanned"] = r.files_scanned;
  j["files_skipped"] = ordered_json::array();
  for (const auto& s : r.files_skipped) j["files_skipped"].push_back({{"path", s.path}, {"reason", s.reason}});
  j["files_errored"] = ordered_json::array();
  for (const auto& e : r.files_errored) j["files_errored"].push_back({{"path", e.path}, {"error", e.error}});
  j["pattern_errors"] = ordered_json::array();
  for (const auto& e : r.pattern_errors) {
    j["pattern_errors"].push_back({{"file", e.file}, {"pattern_id", e.pattern_id}, {"error", e.error}});
  }
  return j;
}

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace detail

inline std::string report_text(const ScanReport& r) {
  std::string out;
  std::vector<std::string> files = r.files_scanned;
  for (const auto& file : files) {
    std::vector<const Finding*> mine;
    for (const auto& f : r.findings) {
      if (f.file == file) mine.push_back(&f);
    }
    if (mine.empty()) continue;
    out += file + "\n";
    for (const Finding* f : mine) {
      out += "  [" + detail::upper(to_string(f->severity)) + "] " + f->pattern_id + " " + f->title;
      if (!f->line_refs.empty()) {
        out += (f->line_refs.size() == 1 ? " (line " : " (lines ") + detail::join_ints(f->line_refs) + ")";
      }
      out += "\n";
      if (!f->issue_summary.empty()) out += "    " + f->issue_summary + "\n";
      if (!f->explanation.empty()) out += "    " + f->explanation + "\n";
      for (const auto& d : f->doc_refs) out += "    docs: " + d + "\n";
    }
    out += "\n";
  }
  if (!r.files_skipped.empty()) {
    out += "skipped:\n";
    for (const auto& s : r.files_skipped) out += "  " + s.path + ": " + s.reason + "\n";
    out += "\n";
  }
  if (!r.files_errored.empty()) {
    out += "errors:\n";
    for (const auto& e : r.files_errored) out += "  " + e.path + ": " + e.error + "\n";
    out += "\n";
  }
  if (!r.pattern_errors.empty()) {
    out += "pattern errors:\n";
    for (const auto& e : r.pattern_errors) out += "  " + e.file + " " + e.pattern_id + ": " + e.error + "\n";
    out += "\n";
  }
  out += std::to_string(r.findings.size()) + (r.findings.size() == 1 ? " finding" : " findings") + " in " +
         std::to_string(r.files_scanned.size()) + " scanned file" + (r.files_scanned.size() == 1 ? "" : "s") + ", " +
         std::to_string(r.files_skipped.size()) + " skipped, " + std::to_string(r.files_errored.size()) +
         " errored\n";
  return out;
}

inline std::string render_report(const ScanReport& r, ReportFormat format, const RenderOptions& opts = {}) {
  if (format == ReportFormat::Json) return report_json(r, opts).dump(2) + "\n";
  return report_text(r);
}

// ---- reading reports back ------------------------------------------------------

inline Finding finding_from_json(const json& j) {
  Finding f;
  try {
    f.pattern_id = j.at("pattern_id").get<std::string>();
    auto cat = parse_category(j.at("category").get<std::string>());
    auto sev = parse_severity(j.at("severity").get<std::string>());
    if (!cat || !sev) throw Error("finding has an unknown category or severity");
    f.category = *cat;
    f.severity = *sev;
    f.title = j.value("title", "");
    f.file = j.at("file").get<std::string>();
    f.line_refs = j.at("line_refs").get<std::vector<int>>();
    f.issue_summary = j.value("issue_summary", "");
    f.explanation = j.value("explanation", "");
    f.doc_refs = j.value("doc_refs", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw Error(std::string("malformed finding: ") + e.what());
  }
  return f;
}

/// Parses a JSON scan report produced by report_json.
inline ScanReport report_from_json(const json& j) {
  if (!j.is_object() || j.value("report_version", 0) != kReportVersion) {
    throw Error("not a version " + std::to_string(kReportVersion) + " scan report");
  }
  ScanReport r;
  try {
    r.started_at = j.at("started_at").get<std::string>();
    r.duration_seconds = j.at("duration_seconds").get<double>();
    const auto& c = j.at("config");
    r.config.model = c.at("model").get<std::string>();
    r.config.endpoint = c.at("endpoint").get<std::string>();
    r.config.categories = c.at("categories").get<std::vector<std::string>>();
    r.config.patterns = c.at("patterns").get<std::vector<std::string>>();
    r.config.max_input_tokens = c.at("max_input_tokens").get<int>();
    r.config.chars_per_token = c.at("chars_per_token").get<double>();
    for (const auto& f : j.at("findings")) r.findings.push_back(finding_from_json(f));
    r.files_scanned = j.at("files_scanned").get<std::vector<std::string>>();
    for (const auto& s : j.at("files_skipped")) r.files_skipped.push_back({s.at("path"), s.at("reason")});
    for (const auto& e : j.at("files_errored")) r.files_errored.push_back({e.at("path"), e.at("error")});
    for (const auto& e : j.at("pattern_errors")) {
      r.pattern_errors.push_back({e.at("file"), e.at("pattern_id"), e.at("error")});
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed scan report: ") + e.what());
  }
  return r;
}

}  // namespace methodolint
