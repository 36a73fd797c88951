#pragma once

// On-disk pattern bundles: `patterns/<category>/<id>/pattern.toml` plus
// `tests/positive_*.py` and `tests/negative_*.py`. Reading is lenient so that
// the quality gates can report on broken bundles; strict conversion into a
// Pattern lives in registry.hpp.

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <toml.hpp>

#include "methodolint/error.hpp"
#include "methodolint/pattern.hpp"

namespace methodolint {

namespace fs = std::filesystem;

inline constexpr std::string_view kManifestName = "pattern.toml";
inline constexpr std::string_view kTestsDir = "tests";

// Keys of pattern.toml, in the order they are written.
inline constexpr std::array<std::string_view, 9> kManifestKeys = {
    "id",     "category",           "severity", "title",          "description",
    "detection_question", "doc_refs", "positive_tests", "negative_tests"};

inline std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(ss).str();
}

inline void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write " + path.string());
}

// Everything that could be read from one bundle directory, valid or not.
struct RawBundle {
  fs::path dir;
  std::optional<std::string> manifest_text;  // nullopt: missing or unreadable
  std::optional<toml::table> manifest;       // nullopt: missing or not TOML
  std::string manifest_error;

  std::vector<std::string> listed_positive;
  std::vector<std::string> listed_negative;
  std::vector<std::string> disk_tests;  // "tests/<name>.py" present on disk, sorted
  // Source of every listed or on-disk test file; nullopt when unreadable.
  std::map<std::string, std::optional<std::string>> sources;

  std::optional<std::string> string_field(std::string_view key) const {
    if (!manifest) return std::nullopt;
    if (auto v = (*manifest)[key].value<std::string>()) return *v;
    return std::nullopt;
  }

  std::optional<std::vector<std::string>> string_array(std::string_view key) const {
    if (!manifest) return std::nullopt;
    const toml::array* arr = (*manifest)[key].as_array();
    if (!arr) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& node : *arr) {
      auto s = node.value<std::string>();
      if (!s) return std::nullopt;
      out.push_back(*s);
    }
    return out;
  }

  // Name of the category directory the bundle sits in.
  std::string parent_dir_name() const { return dir.parent_path().filename().string(); }
  std::string dir_name() const { return dir.filename().string(); }

  std::string label() const {
    if (auto id = string_field("id")) return *id;
    return dir_name();
  }

  // Listed test files that exist and could be read, in manifest order.
  std::vector<std::pair<std::string, const std::string*>> readable_tests() const {
    std::vector<std::pair<std::string, const std::string*>> out;
    for (const auto* list : {&listed_positive, &listed_negative}) {
      for (const auto& rel : *list) {
        auto it = sources.find(rel);
        if (it != sources.end() && it->second) out.emplace_back(rel, &*it->second);
      }
    }
    return out;
  }
};

inline RawBundle read_bundle(const fs::path& dir) {
  RawBundle b;
  b.dir = dir;
  fs::path manifest_path = dir / kManifestName;
  std::error_code ec;
  if (fs::exists(manifest_path, ec)) {
    b.manifest_text = read_file(manifest_path);
    if (!b.manifest_text) {
      b.manifest_error = "manifest unreadable";
    } else {
      try {
        b.manifest = toml::parse(*b.manifest_text, manifest_path.string());
      } catch (const toml::parse_error& e) {
        std::ostringstream ss;
        ss << "manifest is not valid TOML: " << e.description() << " (line " << e.source().begin.line
           << ")";
        b.manifest_error = ss.str();
      }
    }
  } else {
    b.manifest_error = "missing manifest " + std::string(kManifestName);
  }

  if (b.manifest) {
    if (auto v = b.string_array("positive_tests")) b.listed_positive = *v;
    if (auto v = b.string_array("negative_tests")) b.listed_negative = *v;
  }

  fs::path tests = dir / kTestsDir;
  if (fs::is_directory(tests, ec)) {
    for (const auto& entry : fs::directory_iterator(tests, ec)) {
      if (entry.path().extension() == ".py") {
        b.disk_tests.push_back(std::string(kTestsDir) + "/" + entry.path().filename().string());
      }
    }
    std::sort(b.disk_tests.begin(), b.disk_tests.end());
  }

  auto load = [&](const std::string& rel) {
    if (b.sources.count(rel)) return;
    fs::path p = dir / rel;
    if (rel.empty() || !fs::is_regular_file(p, ec)) {
      b.sources[rel] = std::nullopt;
    } else {
      b.sources[rel] = read_file(p);
    }
  };
  for (const auto& r : b.listed_positive) load(r);
  for (const auto& r : b.listed_negative) load(r);
  for (const auto& r : b.disk_tests) load(r);
  return b;
}

// Bundle directories under `<root>/patterns/<category>/<id>/`, sorted.
inline std::vector<fs::path> discover_bundle_dirs(const fs::path& root) {
  std::vector<fs::path> out;
  std::error_code ec;
  fs::path base = root / "patterns";
  if (!fs::is_directory(base, ec)) return out;
  std::vector<fs::path> cats;
  for (const auto& e : fs::directory_iterator(base, ec)) {
    if (e.is_directory()) cats.push_back(e.path());
  }
  std::sort(cats.begin(), cats.end());
  for (const auto& cat : cats) {
    std::vector<fs::path> ids;
    for (const auto& e : fs::directory_iterator(cat, ec)) {
      if (e.is_directory()) ids.push_back(e.path());
    }
    std::sort(ids.begin(), ids.end());
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

// ---- manifest serialization ----------------------------------------------

namespace detail {

inline std::string toml_basic_string(std::string_view s, bool multiline) {
  std::string out = multiline ? "\"\"\"\n" : "\"";
  int quote_run = 0;
  bool trailing_raw_quote = false;
  for (char c : s) {
    auto uc = static_cast<unsigned char>(c);
    trailing_raw_quote = false;
    if (c == '"') {
      // Break up runs so the multi-line delimiter never appears early.
      if (!multiline || quote_run == 2) {
        out += "\\\"";
        quote_run = 0;
      } else {
        out += '"';
        ++quote_run;
        trailing_raw_quote = true;
      }
      continue;
    }
    quote_run = 0;
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n' && multiline) {
      out += '\n';
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else if (c == '\r') {
      out += "\\r";
    } else if (uc < 0x20 || uc == 0x7f) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", uc);
      out += buf;
    } else {
      out += c;
    }
  }
  if (trailing_raw_quote) {
    // A trailing quote would merge with the closing delimiter.
    out.pop_back();
    out += "\\\"";
  }
  out += multiline ? "\"\"\"" : "\"";
  return out;
}

inline std::string toml_string_array(const std::vector<std::string>& items) {
  if (items.empty()) return "[]";
  std::string out = "[\n";
  for (const auto& s : items) out += "  " + toml_basic_string(s, false) + ",\n";
  out += "]";
  return out;
}

}  // namespace detail

/// Renders the manifest for `p` with keys in canonical order.
inline std::string render_manifest(const Pattern& p) {
  auto paths = [](const std::vector<TestFile>& files) {
    std::vector<std::string> out;
    for (const auto& f : files) out.push_back(f.relative_path);
    return out;
  };
  std::string out;
  out += "id = " + detail::toml_basic_string(p.id, false) + "\n";
  out += "category = " + detail::toml_basic_string(to_string(p.category), false) + "\n";
  out += "severity = " + detail::toml_basic_string(to_string(p.severity), false) + "\n";
  out += "title = " + detail::toml_basic_string(p.title, false) + "\n";
  out += "description = " + detail::toml_basic_string(p.description, true) + "\n";
  out += "detection_question = " + detail::toml_basic_string(p.detection_question, true) + "\n";
  out += "doc_refs = " + detail::toml_string_array(p.doc_refs) + "\n";
  out += "positive_tests = " + detail::toml_string_array(paths(p.positive_tests)) + "\n";
  out += "negative_tests = " + detail::toml_string_array(paths(p.negative_tests)) + "\n";
  return out;
}

/// Writes `p` as a bundle directory `<root>/patterns/<category>/<id>/`.
inline fs::path write_bundle(const Pattern& p, const fs::path& root) {
  fs::path dir = root / "patterns" / std::string(to_string(p.category)) / p.id;
  fs::create_directories(dir / kTestsDir);
  write_file(dir / kManifestName, render_manifest(p));
  for (const auto* list : {&p.positive_tests, &p.negative_tests}) {
    for (const auto& t : *list) {
      fs::path target = dir / t.relative_path;
      fs::create_directories(target.parent_path());
      write_file(target, t.source);
    }
  }
  return dir;
}

}  // namespace methodolint
