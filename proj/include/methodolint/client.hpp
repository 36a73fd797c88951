#pragma once

// Chat-completions client with schema-constrained answers, retries and a
// shared bound on in-flight requests.

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <regex>
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

#include "methodolint/concurrency.hpp"
#include "methodolint/error.hpp"
#include "methodolint/prompt.hpp"
#include "methodolint/verdict.hpp"

namespace methodolint {

struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8000";
  std::string model_name = "default";
  std::optional<std::string> api_key;
  double request_timeout = 300.0;  // seconds
  int max_retries = 2;
  int max_concurrency = 8;
  std::chrono::milliseconds backoff_base{250};

  void validate() const {
    if (max_concurrency < 1) throw ConfigError("max_concurrency must be at least 1");
    if (max_retries < 0) throw ConfigError("max_retries must not be negative");
    if (!(request_timeout > 0.0)) throw ConfigError("request_timeout must be positive");
    if (backoff_base.count() < 0) throw ConfigError("backoff must not be negative");
  }
};

// scheme://host[:port][/prefix]
struct ParsedUrl {
  std::string origin;  // what httplib::Client takes
  std::string prefix;  // path prefix without trailing slash

  static ParsedUrl parse(const std::string& url) {
    static const std::regex re(R"(^(https?)://([^/\s]+)(/[^\s]*)?$)", std::regex::icase);
    std::smatch m;
    if (!std::regex_match(url, m, re)) throw ConfigError("invalid endpoint URL '" + url + "'");
    ParsedUrl u;
    u.origin = m[1].str() + "://" + m[2].str();
    u.prefix = m[3].matched ? m[3].str() : "";
    while (!u.prefix.empty() && u.prefix.back() == '/') u.prefix.pop_back();
    return u;
  }
};

template <typename T>
struct Answer {
  T value;
  int retries = 0;  // attempts beyond the first
};

// Outcome of one batch element.
struct VerdictResult {
  std::string pattern_id;
  std::optional<ModelVerdict> verdict;
  int retries = 0;
  std::string error;

  bool ok() const { return verdict.has_value(); }
};

class InferenceClient {
 public:
  explicit InferenceClient(EndpointConfig cfg)
      : cfg_(std::move(cfg)), url_(ParsedUrl::parse(cfg_.base_url)) {
    cfg_.validate();
    slots_ = std::make_shared<Semaphore>(cfg_.max_concurrency);
  }

  const EndpointConfig& config() const noexcept { return cfg_; }

  /// Sends one system+user exchange and returns the last JSON object of the
  /// reply after `validate` accepted it. `validate` throws SchemaError to
  /// reject a payload, which counts as a retryable failure. `label` prefixes
  /// error messages.
  template <typename Validate>
  auto request_structured(const std::string& system, const std::string& user, const json& schema,
                          const std::string& schema_name, const std::string& label, Validate&& validate) const
      -> Answer<decltype(validate(std::declval<const json&>()))> {
    using T = decltype(validate(std::declval<const json&>()));
    bool use_response_format = true;
    std::string last_error;
    const int attempts_allowed = cfg_.max_retries + 1;
    for (int attempt = 1; attempt <= attempts_allowed; ++attempt) {
      if (attempt > 1) backoff(attempt - 1);
      Outcome o = post(system, user, schema, schema_name, use_response_format);
      if (o.status && (*o.status == 400 || *o.status == 422) && use_response_format) {
        // Endpoint does not take response_format: move the schema into the
        // system message. Not counted as an attempt.
        use_response_format = false;
        o = post(system, user, schema, schema_name, use_response_format);
      }
      if (!o.status) {
        last_error = "transport failure: " + o.transport_error;
        continue;
      }
      int st = *o.status;
      if (st < 200 || st >= 300) {
        last_error = "HTTP " + std::to_string(st) + body_snippet(o.body);
        if (st >= 500 || st == 408 || st == 429) continue;
        throw ClientError(label + ": " + last_error + " (attempt " + std::to_string(attempt) + ", not retried)",
                          attempt, false);
      }
      try {
        json payload = extract_payload(o.body);
        T value = validate(payload);
        return Answer<T>{std::move(value), attempt - 1};
      } catch (const SchemaError& e) {
        last_error = std::string("invalid response: ") + e.what();
      }
    }
    throw ClientError(label + ": " + last_error + " after " + std::to_string(attempts_allowed) + " attempt" +
                          (attempts_allowed == 1 ? "" : "s"),
                      attempts_allowed, true);
  }

  /// Asks the model for the verdict on one prompt.
  Answer<ModelVerdict> request_verdict(const PromptBundle& bundle) const {
    return request_structured(bundle.system_message, bundle.user_message, verdict_schema(), "model_verdict",
                              "pattern " + bundle.pattern_id, [](const json& j) { return parse_verdict(j); });
  }

  /// Runs every bundle with at most max_concurrency requests in flight.
  /// Results keep the input order; failures stay inside their element.
  std::vector<VerdictResult> run_batch(const std::vector<PromptBundle>& bundles) const {
    return parallel_map(bundles.size(), static_cast<std::size_t>(cfg_.max_concurrency), [&](std::size_t i) {
      VerdictResult r;
      r.pattern_id = bundles[i].pattern_id;
      try {
        auto a = request_verdict(bundles[i]);
        r.verdict = std::move(a.value);
        r.retries = a.retries;
      } catch (const ClientError& e) {
        r.error = e.what();
        r.retries = e.attempts() - 1;
      } catch (const std::exception& e) {
        r.error = "pattern " + bundles[i].pattern_id + ": " + e.what();
      }
      return r;
    });
  }

  /// True when the endpoint answers HTTP at all.
  bool ping(std::string* error = nullptr) const {
    auto cli = make_client();
    cli->set_connection_timeout(std::chrono::seconds(5));
    cli->set_read_timeout(std::chrono::seconds(10));
    auto res = cli->Get(url_.prefix + "/v1/models", headers());
    if (!res) {
      if (error) *error = "cannot reach " + cfg_.base_url + ": " + httplib::to_string(res.error());
      return false;
    }
    return true;
  }

  // Supplies the wording used when the endpoint rejects response_format.
  void set_prompt_template(const PromptTemplate& tmpl) { schema_fallback_ = tmpl.schema_fallback; }

 private:
  struct Outcome {
    std::optional<int> status;
    std::string body;
    std::string transport_error;
  };

  std::unique_ptr<httplib::Client> make_client() const {
    auto cli = std::make_unique<httplib::Client>(url_.origin);
    auto secs = std::chrono::duration<double>(cfg_.request_timeout);
    auto us = std::chrono::duration_cast<std::chrono::microseconds>(secs);
    cli->set_connection_timeout(std::min<std::chrono::microseconds>(us, std::chrono::seconds(30)));
    cli->set_read_timeout(us);
    cli->set_write_timeout(us);
    cli->set_keep_alive(false);
    cli->set_tcp_nodelay(true);
    return cli;
  }

  httplib::Headers headers() const {
    httplib::Headers h;
    if (cfg_.api_key && !cfg_.api_key->empty()) h.emplace("Authorization", "Bearer " + *cfg_.api_key);
    return h;
  }

  Outcome post(const std::string& system, const std::string& user, const json& schema,
               const std::string& schema_name, bool use_response_format) const {
    json body;
    body["model"] = cfg_.model_name;
    std::string sys = system;
    if (!use_response_format) {
      sys += "\n\n";
      sys += detail::replace_all(schema_fallback_, "{schema}", schema.dump());
    }
    body["messages"] = json::array({{{"role", "system"}, {"content", sys}}, {{"role", "user"}, {"content", user}}});
    body["temperature"] = 0;
    if (use_response_format) {
      body["response_format"] = {
          {"type", "json_schema"},
          {"json_schema", {{"name", schema_name}, {"schema", schema}, {"strict", true}}}};
    }
    SemaphoreGuard slot(*slots_);
    auto cli = make_client();
    auto res = cli->Post(url_.prefix + "/v1/chat/completions", headers(), body.dump(), "application/json");
    Outcome o;
    if (!res) {
      o.transport_error = httplib::to_string(res.error());
      return o;
    }
    o.status = res->status;
    o.body = res->body;
    return o;
  }

  static std::string body_snippet(const std::string& body) {
    if (body.empty()) return "";
    std::string s = body.substr(0, 200);
    for (char& c : s) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    return ": " + s;
  }

  // Pulls the final JSON object out of a chat-completions envelope.
  static json extract_payload(const std::string& body) {
    json env = json::parse(body, nullptr, false);
    if (env.is_discarded() || !env.is_object()) throw SchemaError("response is not a JSON object");
    auto choices = env.find("choices");
    if (choices == env.end() || !choices->is_array() || choices->empty()) throw SchemaError("response has no choices");
    const json& msg = (*choices)[0].value("message", json::object());
    auto content = msg.find("content");
    if (content == msg.end() || !content->is_string()) throw SchemaError("response message has no text content");
    auto obj = extract_last_json_object(content->get<std::string>());
    if (!obj) throw SchemaError("no JSON object in model reply");
    return *obj;
  }

  void backoff(int retry) const {
    if (cfg_.backoff_base.count() == 0) return;
    auto d = cfg_.backoff_base * (1LL << std::min(retry - 1, 10));
    std::this_thread::sleep_for(d);
  }

  EndpointConfig cfg_;
  ParsedUrl url_;
  std::shared_ptr<Semaphore> slots_;
  std::string schema_fallback_ = default_prompt_template().schema_fallback;
};

}  // namespace methodolint
