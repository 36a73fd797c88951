#pragma once

// Settings shared by the CLI commands. Values come from `.methodolint.toml`,
// then METHODOLINT_* environment variables, then command-line flags; each
// layer overrides the previous one.

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <toml.hpp>

#include "methodolint/bundle.hpp"
#include "methodolint/error.hpp"

namespace methodolint {

inline constexpr std::string_view kConfigFileName = ".methodolint.toml";

struct Settings {
  std::optional<std::string> endpoint;
  std::optional<std::string> model;
  std::optional<std::string> api_key;
  std::optional<std::string> corpus;
  std::optional<std::vector<std::string>> categories;
  std::optional<std::vector<std::string>> patterns;
  std::optional<std::string> format;
  std::optional<int> max_concurrency;
  std::optional<int> max_retries;
  std::optional<int> max_input_tokens;
  std::optional<double> chars_per_token;
  std::optional<double> request_timeout;
  std::optional<int> file_parallelism;
  std::optional<std::vector<std::string>> include;
  std::optional<std::vector<std::string>> exclude;

  /// Fields set in `over` replace those here.
  void overlay(const Settings& over) {
    auto take = [](auto& dst, const auto& src) {
      if (src) dst = src;
    };
    take(endpoint, over.endpoint);
    take(model, over.model);
    take(api_key, over.api_key);
    take(corpus, over.corpus);
    take(categories, over.categories);
    take(patterns, over.patterns);
    take(format, over.format);
    take(max_concurrency, over.max_concurrency);
    take(max_retries, over.max_retries);
    take(max_input_tokens, over.max_input_tokens);
    take(chars_per_token, over.chars_per_token);
    take(request_timeout, over.request_timeout);
    take(file_parallelism, over.file_parallelism);
    take(include, over.include);
    take(exclude, over.exclude);
  }
};

namespace detail {

inline std::optional<std::vector<std::string>> string_list(const toml::table& t, std::string_view key,
                                                           const std::string& where) {
  auto node = t[key];
  if (!node) return std::nullopt;
  // A single string is accepted as a comma-separated list.
  if (auto s = node.value<std::string>()) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s->size()) {
      auto comma = s->find(',', start);
      std::string item = s->substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (!item.empty()) out.push_back(item);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }
  const toml::array* arr = node.as_array();
  if (!arr) throw ConfigError(where + ": '" + std::string(key) + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : *arr) {
    auto s = e.value<std::string>();
    if (!s) throw ConfigError(where + ": '" + std::string(key) + "' must be a list of strings");
    out.push_back(*s);
  }
  return out;
}

}  // namespace detail

inline Settings settings_from_toml(const toml::table& t, const std::string& where) {
  static constexpr std::string_view kKnown[] = {
      "endpoint",        "model",           "api_key",          "corpus",  "categories",
      "patterns",        "format",          "max_concurrency",  "max_retries",
      "max_input_tokens", "chars_per_token", "request_timeout", "file_parallelism",
      "include",         "exclude"};
  for (const auto& [k, v] : t) {
    bool known = false;
    for (auto name : kKnown) known = known || k.str() == name;
    if (!known) throw ConfigError(where + ": unknown key '" + std::string(k.str()) + "'");
  }
  Settings s;
  auto str = [&](std::string_view key, std::optional<std::string>& dst) {
    auto node = t[key];
    if (!node) return;
    auto v = node.value<std::string>();
    if (!v) throw ConfigError(where + ": '" + std::string(key) + "' must be a string");
    dst = *v;
  };
  auto integer = [&](std::string_view key, std::optional<int>& dst) {
    auto node = t[key];
    if (!node) return;
    auto v = node.value<int64_t>();
    if (!v || !node.is_integer()) throw ConfigError(where + ": '" + std::string(key) + "' must be an integer");
    dst = static_cast<int>(*v);
  };
  auto real = [&](std::string_view key, std::optional<double>& dst) {
    auto node = t[key];
    if (!node) return;
    auto v = node.value<double>();
    if (!v) throw ConfigError(where + ": '" + std::string(key) + "' must be a number");
    dst = *v;
  };
  str("endpoint", s.endpoint);
  str("model", s.model);
  str("api_key", s.api_key);
  str("corpus", s.corpus);
  str("format", s.format);
  s.categories = detail::string_list(t, "categories", where);
  s.patterns = detail::string_list(t, "patterns", where);
  s.include = detail::string_list(t, "include", where);
  s.exclude = detail::string_list(t, "exclude", where);
  integer("max_concurrency", s.max_concurrency);
  integer("max_retries", s.max_retries);
  integer("max_input_tokens", s.max_input_tokens);
  integer("file_parallelism", s.file_parallelism);
  real("chars_per_token", s.chars_per_token);
  real("request_timeout", s.request_timeout);
  return s;
}

inline Settings load_settings_file(const fs::path& path) {
  auto text = read_file(path);
  if (!text) throw ConfigError("cannot read " + path.string());
  try {
    return settings_from_toml(toml::parse(*text, path.string()), path.string());
  } catch (const toml::parse_error& e) {
    throw ConfigError(path.string() + ": " + std::string(e.description()));
  }
}

/// Looks for `.methodolint.toml` in `start` and its parents.
inline std::optional<fs::path> find_settings_file(fs::path start) {
  std::error_code ec;
  start = fs::absolute(start, ec);
  for (fs::path dir = start; !dir.empty(); dir = dir.parent_path()) {
    fs::path candidate = dir / kConfigFileName;
    if (fs::is_regular_file(candidate, ec)) return candidate;
    if (dir == dir.parent_path()) break;
  }
  return std::nullopt;
}

/// METHODOLINT_ENDPOINT, METHODOLINT_MODEL, METHODOLINT_API_KEY and
/// METHODOLINT_CORPUS.
inline Settings settings_from_env() {
  Settings s;
  auto get = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  s.endpoint = get("METHODOLINT_ENDPOINT");
  s.model = get("METHODOLINT_MODEL");
  s.api_key = get("METHODOLINT_API_KEY");
  s.corpus = get("METHODOLINT_CORPUS");
  return s;
}

}  // namespace methodolint
