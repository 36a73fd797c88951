#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "methodolint/error.hpp"

namespace methodolint {

using json = nlohmann::json;

class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Finds the JSON object that ends last in `text` (the outermost one when
/// several end at the same brace) and returns it parsed. Reasoning text before
/// the answer is ignored. Returns nullopt when no balanced object parses.
inline std::optional<json> extract_last_json_object(std::string_view text) {
  std::optional<json> best;
  std::size_t best_end = 0;
  for (std::size_t start = 0; start < text.size(); ++start) {
    if (text[start] != '{') continue;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    std::size_t end = std::string_view::npos;
    for (std::size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          end = i;
          break;
        }
      }
    }
    if (end == std::string_view::npos) continue;
    if (best && end + 1 <= best_end) continue;  // ends no later than the current best
    json parsed = json::parse(text.substr(start, end - start + 1), nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded() || !parsed.is_object()) continue;
    best = std::move(parsed);
    best_end = end + 1;
  }
  return best;
}

// ---- model verdict ---------------------------------------------------------

struct ModelVerdict {
  bool detected = false;
  std::string issue_summary;
  std::string explanation;
  std::vector<int> line_refs;

  bool operator==(const ModelVerdict&) const = default;
};

inline json verdict_schema() {
  return json::parse(R"({
  "type": "object",
  "properties": {
    "detected": {"type": "boolean"},
    "issue_summary": {"type": "string"},
    "explanation": {"type": "string"},
    "line_refs": {"type": "array", "items": {"type": "integer", "minimum": 1}}
  },
  "required": ["detected", "issue_summary", "explanation", "line_refs"],
  "additionalProperties": false
})");
}

/// Validates `j` against the verdict schema and its invariants. Throws
/// SchemaError describing the first violation.
inline ModelVerdict parse_verdict(const json& j) {
  if (!j.is_object()) throw SchemaError("verdict must be a JSON object");
  for (const char* key : {"detected", "issue_summary", "explanation", "line_refs"}) {
    if (!j.contains(key)) throw SchemaError(std::string("verdict missing '") + key + "'");
  }
  for (const auto& [k, v] : j.items()) {
    if (k != "detected" && k != "issue_summary" && k != "explanation" && k != "line_refs") {
      throw SchemaError("verdict has unexpected field '" + k + "'");
    }
  }
  if (!j["detected"].is_boolean()) throw SchemaError("'detected' must be a boolean");
  if (!j["issue_summary"].is_string()) throw SchemaError("'issue_summary' must be a string");
  if (!j["explanation"].is_string()) throw SchemaError("'explanation' must be a string");
  if (!j["line_refs"].is_array()) throw SchemaError("'line_refs' must be an array");
  ModelVerdict v;
  v.detected = j["detected"].get<bool>();
  v.issue_summary = j["issue_summary"].get<std::string>();
  v.explanation = j["explanation"].get<std::string>();
  for (const auto& e : j["line_refs"]) {
    if (!e.is_number_integer()) throw SchemaError("'line_refs' entries must be integers");
    auto n = e.get<long long>();
    if (n < 1 || n > 10'000'000) throw SchemaError("'line_refs' entries must be positive line numbers");
    v.line_refs.push_back(static_cast<int>(n));
  }
  if (!v.detected && !v.line_refs.empty()) throw SchemaError("'line_refs' must be empty when detected is false");
  if (v.detected && v.issue_summary.empty()) throw SchemaError("'issue_summary' must be set when detected is true");
  return v;
}

inline json to_json(const ModelVerdict& v) {
  return json{{"detected", v.detected},
              {"issue_summary", v.issue_summary},
              {"explanation", v.explanation},
              {"line_refs", v.line_refs}};
}

}  // namespace methodolint
