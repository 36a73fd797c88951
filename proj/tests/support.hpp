#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "methodolint/methodolint.hpp"

namespace mltest {

namespace fs = std::filesystem;
using nlohmann::json;

inline fs::path source_dir() { return METHODOLINT_SOURCE_DIR; }
inline fs::path corpus_dir() { return source_dir() / "corpus"; }
inline fs::path fixture(const std::string& name) { return source_dir() / "tests" / "fixtures" / name; }

inline std::string slurp(const fs::path& p) {
  auto s = methodolint::read_file(p);
  if (!s) throw std::runtime_error("cannot read " + p.string());
  return *s;
}

inline json load_json(const fs::path& p) { return json::parse(slurp(p)); }

inline void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("mltest-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline std::string verdict_body(bool detected, std::vector<int> lines = {}, const std::string& summary = "") {
  json j = {{"detected", detected},
            {"issue_summary", detected ? (summary.empty() ? std::string("problem found") : summary) : ""},
            {"explanation", detected ? "the flagged lines show the problem" : "nothing matches the question"},
            {"line_refs", detected ? json(lines) : json::array()}};
  return j.dump();
}

inline methodolint::ScriptRule rule(std::string match, std::string body, int latency_ms = 0) {
  methodolint::ScriptRule r;
  r.match_substring = std::move(match);
  r.response_body = std::move(body);
  r.latency_ms = latency_ms;
  return r;
}

/// A mock endpoint plus a client pointed at it.
struct MockEndpoint {
  methodolint::MockServer server;
  methodolint::InferenceClient client;

  explicit MockEndpoint(methodolint::MockScript script, int concurrency = 8, int retries = 0)
      : server(std::move(script)), client(config_for(server, concurrency, retries)) {}

 private:
  static methodolint::EndpointConfig config_for(methodolint::MockServer& s, int concurrency, int retries) {
    s.start();
    methodolint::EndpointConfig c;
    c.base_url = s.base_url();
    c.model_name = "mock";
    c.max_concurrency = concurrency;
    c.max_retries = retries;
    c.request_timeout = 10.0;
    c.backoff_base = std::chrono::milliseconds(1);
    return c;
  }
};

inline methodolint::MockScript script(std::vector<methodolint::ScriptRule> rules) {
  methodolint::MockScript s;
  s.rules = std::move(rules);
  return s;
}

/// Copies the ml-001 bundle to `<root>/patterns/<category>/<id>/`, rewriting
/// its id. Returns the new bundle directory.
inline fs::path clone_reference_bundle(const fs::path& root, const std::string& id,
                                       const std::string& category = "ai-training") {
  fs::path src = corpus_dir() / "patterns" / "ai-training" / "ml-001";
  fs::path dst = root / "patterns" / category / id;
  fs::create_directories(dst.parent_path());
  fs::copy(src, dst, fs::copy_options::recursive);
  std::string manifest = slurp(dst / "pattern.toml");
  manifest.replace(manifest.find("\"ml-001\""), 8, "\"" + id + "\"");
  spit(dst / "pattern.toml", manifest);
  return dst;
}

inline void replace_in_file(const fs::path& p, const std::string& from, const std::string& to) {
  std::string text = slurp(p);
  auto pos = text.find(from);
  if (pos == std::string::npos) throw std::runtime_error("'" + from + "' not found in " + p.string());
  text.replace(pos, from.size(), to);
  spit(p, text);
}

template <typename F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace mltest
