#pragma once

// Scripted chat-completions stub for offline tests. Rules are tried in
// order against the user message text; the first match answers.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

// httplib's default backlog of 5 drops SYNs under bursts of parallel
// connects, which then stall for a full retransmit timeout.
#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 256
#endif
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "methodolint/bundle.hpp"
#include "methodolint/error.hpp"

namespace methodolint {

using json = nlohmann::json;

struct ScriptRule {
  std::string match_substring;  // empty matches everything
  std::vector<std::string> also_match;  // further substrings that must all occur
  std::string response_body;    // assistant message content
  int latency_ms = 0;
  int fail_times = 0;           // answer fail_status this many times first
  int fail_status = 500;
  int malformed_times = 0;      // then answer unparseable content this many times

  bool catch_all() const { return match_substring.empty() && also_match.empty(); }

  bool matches(std::string_view user_message) const {
    if (user_message.find(match_substring) == std::string_view::npos) return false;
    for (const auto& s : also_match) {
      if (user_message.find(s) == std::string_view::npos) return false;
    }
    return true;
  }
};

struct MockScript {
  std::vector<ScriptRule> rules;
  bool reject_response_format = false;  // answer 400 to requests carrying one

  void validate() const {
    bool has_default = false;
    for (const auto& r : rules) {
      if (r.catch_all()) has_default = true;
      if (r.latency_ms < 0 || r.fail_times < 0 || r.malformed_times < 0) {
        throw ConfigError("mock script: counts and latency must not be negative");
      }
      if (r.fail_status < 100 || r.fail_status > 599) throw ConfigError("mock script: fail_status out of range");
    }
    if (!has_default) throw ConfigError("mock script: a catch-all rule with an empty match_substring is required");
  }
};

inline ScriptRule rule_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("mock script: each rule must be an object");
  ScriptRule r;
  try {
    r.match_substring = j.value("match_substring", "");
    r.also_match = j.value("also_match", std::vector<std::string>{});
    if (!j.contains("response_body")) throw ConfigError("mock script: rule without response_body");
    const json& body = j["response_body"];
    r.response_body = body.is_string() ? body.get<std::string>() : body.dump();
    r.latency_ms = j.value("latency_ms", 0);
    r.fail_times = j.value("fail_times", 0);
    r.fail_status = j.value("fail_status", 500);
    r.malformed_times = j.value("malformed_times", 0);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("mock script: ") + e.what());
  }
  return r;
}

/// Accepts a JSON list of rules, or {"rules": [...], "reject_response_format": bool}.
inline MockScript parse_mock_script(const json& j) {
  MockScript s;
  const json* rules = &j;
  if (j.is_object()) {
    if (!j.contains("rules")) throw ConfigError("mock script: object form needs a 'rules' list");
    rules = &j["rules"];
    s.reject_response_format = j.value("reject_response_format", false);
  }
  if (!rules->is_array()) throw ConfigError("mock script: expected a list of rules");
  for (const auto& r : *rules) s.rules.push_back(rule_from_json(r));
  s.validate();
  return s;
}

inline MockScript load_mock_script(const fs::path& path) {
  auto text = read_file(path);
  if (!text) throw ConfigError("cannot read mock script " + path.string());
  json j = json::parse(*text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("mock script " + path.string() + " is not valid JSON");
  return parse_mock_script(j);
}

struct RequestLogEntry {
  std::chrono::steady_clock::time_point timestamp;  // arrival
  int matched_rule = -1;                            // index into the script, -1 when none
  int in_flight_at_arrival = 0;                     // includes this request
  std::string user_message;
  bool had_response_format = false;
  int status = 0;
};

class MockServer {
 public:
  explicit MockServer(MockScript script) : script_(std::move(script)) {
    script_.validate();
    counts_.assign(script_.rules.size(), 0);
  }

  ~MockServer() { stop(); }
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  /// Binds to `port` (0 picks a free one) and serves in a background thread.
  int start(int port = 0, const std::string& host = "127.0.0.1") {
    server_ = std::make_unique<httplib::Server>();
    server_->new_task_queue = [] { return new httplib::ThreadPool(64); };
    server_->set_tcp_nodelay(true);
    server_->Post("/v1/chat/completions",
                  [this](const httplib::Request& req, httplib::Response& res) { handle(req, res); });
    server_->Get("/v1/models", [this](const httplib::Request&, httplib::Response& res) {
      json j = {{"object", "list"}, {"data", json::array({{{"id", "mock"}, {"object", "model"}}})}};
      res.set_content(j.dump(), "application/json");
    });
    if (port == 0) {
      port_ = server_->bind_to_any_port(host);
      if (port_ < 0) throw Error("mock server: cannot bind " + host);
    } else {
      if (!server_->bind_to_port(host, port)) throw Error("mock server: port " + std::to_string(port) + " unavailable");
      port_ = port;
    }
    host_ = host;
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return port_;
  }

  void stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  /// Blocks until stop() is called from elsewhere.
  void wait() {
    if (thread_.joinable()) thread_.join();
  }

  int port() const noexcept { return port_; }
  std::string base_url() const { return "http://" + host_ + ":" + std::to_string(port_); }

  std::vector<RequestLogEntry> request_log() const {
    std::lock_guard lock(mu_);
    return log_;
  }

  int max_in_flight() const {
    std::lock_guard lock(mu_);
    int m = 0;
    for (const auto& e : log_) m = std::max(m, e.in_flight_at_arrival);
    return m;
  }

  void clear_log() {
    std::lock_guard lock(mu_);
    log_.clear();
  }

 private:
  static std::string user_text(const json& req) {
    std::string out;
    if (!req.contains("messages") || !req["messages"].is_array()) return out;
    for (const auto& m : req["messages"]) {
      if (!m.is_object() || m.value("role", "") != "user") continue;
      const auto it = m.find("content");
      if (it != m.end() && it->is_string()) {
        if (!out.empty()) out += '\n';
        out += it->get<std::string>();
      }
    }
    return out;
  }

  static json envelope(const std::string& content, const std::string& model) {
    return {{"id", "chatcmpl-mock"},
            {"object", "chat.completion"},
            {"created", 0},
            {"model", model},
            {"choices", json::array({{{"index", 0},
                                      {"message", {{"role", "assistant"}, {"content", content}}},
                                      {"finish_reason", "stop"}}})},
            {"usage", {{"prompt_tokens", 0}, {"completion_tokens", 0}, {"total_tokens", 0}}}};
  }

  void handle(const httplib::Request& req, httplib::Response& res) {
    int arrival = ++in_flight_;
    auto now = std::chrono::steady_clock::now();
    json body = json::parse(req.body, nullptr, false);
    RequestLogEntry entry;
    entry.timestamp = now;
    entry.in_flight_at_arrival = arrival;

    enum class Action { BadRequest, RejectFormat, Fail, Malformed, Answer };
    Action action = Action::Answer;
    const ScriptRule* rule = nullptr;
    if (body.is_discarded() || !body.is_object()) {
      action = Action::BadRequest;
    } else {
      entry.user_message = user_text(body);
      entry.had_response_format = body.contains("response_format");
      std::lock_guard lock(mu_);
      for (std::size_t i = 0; i < script_.rules.size(); ++i) {
        const auto& r = script_.rules[i];
        if (r.matches(entry.user_message)) {
          entry.matched_rule = static_cast<int>(i);
          rule = &r;
          break;
        }
      }
      if (script_.reject_response_format && entry.had_response_format) {
        action = Action::RejectFormat;
      } else if (rule) {
        int n = counts_[entry.matched_rule]++;
        if (n < rule->fail_times) {
          action = Action::Fail;
        } else if (n < rule->fail_times + rule->malformed_times) {
          action = Action::Malformed;
        }
      }
    }
    if (rule && rule->latency_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(rule->latency_ms));

    std::string model = body.is_object() ? body.value("model", "mock") : "mock";
    switch (action) {
      case Action::BadRequest:
        res.status = 400;
        res.set_content(R"({"error":{"message":"request body is not a JSON object"}})", "application/json");
        break;
      case Action::RejectFormat:
        res.status = 400;
        res.set_content(R"({"error":{"message":"response_format is not supported"}})", "application/json");
        break;
      case Action::Fail:
        res.status = rule->fail_status;
        res.set_content(R"({"error":{"message":"scripted failure"}})", "application/json");
        break;
      case Action::Malformed:
        res.status = 200;
        res.set_content(envelope("{\"detected\": tru", model).dump(), "application/json");
        break;
      case Action::Answer:
        res.status = 200;
        res.set_content(envelope(rule ? rule->response_body : "", model).dump(), "application/json");
        break;
    }
    entry.status = res.status;
    {
      std::lock_guard lock(mu_);
      log_.push_back(std::move(entry));
    }
    --in_flight_;
  }

  MockScript script_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_ = "127.0.0.1";
  int port_ = -1;
  std::atomic<int> in_flight_{0};
  mutable std::mutex mu_;
  std::vector<int> counts_;
  std::vector<RequestLogEntry> log_;
};

}  // namespace methodolint
