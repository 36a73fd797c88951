#pragma once

// The fifteen deterministic bundle checks, D01 through D15. Each check reads a
// RawBundle and never throws; a check whose inputs are missing still reports
// (usually a pass with a note, leaving the failure to the check that owns the
// missing piece).

#include <algorithm>
#include <functional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "methodolint/bundle.hpp"
#include "methodolint/pattern.hpp"
#include "methodolint/prompt.hpp"
#include "methodolint/python/parser.hpp"

namespace methodolint {

enum class CheckStatus { Pass, Fail };

inline std::string_view to_string(CheckStatus s) { return s == CheckStatus::Pass ? "pass" : "fail"; }

struct CheckResult {
  std::string check_id;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;

  bool passed() const { return status == CheckStatus::Pass; }
};

inline constexpr std::size_t kMinTestsPerKind = 3;
inline constexpr std::size_t kMinQuestionChars = 200;
inline constexpr std::size_t kMaxQuestionChars = 4000;
inline constexpr std::size_t kMaxTitleChars = 120;
inline constexpr std::string_view kReservedDelimiter = "<code-";

// ---- hint comments ---------------------------------------------------------

// Words that, opening a comment, give away the expected verdict.
inline constexpr std::array<std::string_view, 7> kHintMarkers = {"BUG",  "FIX", "WRONG", "CORRECT",
                                                                  "LEAK", "bad", "good"};

struct HintComment {
  int line = 0;
  std::string text;
};

inline bool is_hint_comment(std::string_view comment) {
  static const std::regex kHint(R"(^#\s*(bug|fix|wrong|correct|leak|bad|good)(?![A-Za-z0-9_]))",
                                std::regex::icase | std::regex::ECMAScript);
  return std::regex_search(comment.begin(), comment.end(), kHint);
}

/// Comments in `source` that start with a hint marker. Falls back to a
/// line scan for '#' if the source does not tokenize, so broken files are
/// still covered.
inline std::vector<HintComment> find_hint_comments(std::string_view source) {
  std::vector<HintComment> out;
  try {
    for (const auto& t : python::tokenize(source, /*keep_comments=*/true)) {
      if (t.kind == python::TokenKind::Comment && is_hint_comment(t.text)) out.push_back({t.line, t.text});
    }
    return out;
  } catch (const python::SyntaxError&) {
  }
  int line = 1;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view text = source.substr(start, end - start);
    for (std::size_t h = text.find('#'); h != std::string_view::npos; h = text.find('#', h + 1)) {
      if (is_hint_comment(text.substr(h))) {
        out.push_back({line, std::string(text.substr(h))});
        break;
      }
    }
    start = end + 1;
    ++line;
  }
  return out;
}

// ---- check context ---------------------------------------------------------

struct CheckOptions {
  TokenBudget budget;
  PromptTemplate prompt_template = default_prompt_template();
};

namespace checks {

inline CheckResult pass(std::string id, std::string detail = "") {
  return {std::move(id), CheckStatus::Pass, std::move(detail)};
}

inline CheckResult fail(std::string id, std::string detail) {
  if (detail.empty()) detail = "failed";
  return {std::move(id), CheckStatus::Fail, std::move(detail)};
}

inline std::string join(const std::vector<std::string>& items, std::string_view sep = "; ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

inline CheckResult d01_manifest_schema(const RawBundle& b, const CheckOptions&) {
  const char* id = "D01";
  if (!b.manifest) return fail(id, b.manifest_error.empty() ? "manifest unavailable" : b.manifest_error);
  std::vector<std::string> problems;
  static constexpr std::array<std::string_view, 6> kStringKeys = {"id",    "category",    "severity",
                                                                   "title", "description", "detection_question"};
  static constexpr std::array<std::string_view, 3> kArrayKeys = {"doc_refs", "positive_tests", "negative_tests"};
  for (auto key : kStringKeys) {
    auto node = (*b.manifest)[key];
    if (!node) {
      problems.push_back("missing key '" + std::string(key) + "'");
    } else if (!node.is_string()) {
      problems.push_back("key '" + std::string(key) + "' must be a string");
    } else if (node.value<std::string>()->empty()) {
      problems.push_back("key '" + std::string(key) + "' must not be empty");
    }
  }
  for (auto key : kArrayKeys) {
    auto node = (*b.manifest)[key];
    if (!node) {
      problems.push_back("missing key '" + std::string(key) + "'");
    } else if (!b.string_array(key)) {
      problems.push_back("key '" + std::string(key) + "' must be an array of strings");
    }
  }
  for (const auto& [k, v] : *b.manifest) {
    if (std::find(kManifestKeys.begin(), kManifestKeys.end(), k.str()) == kManifestKeys.end()) {
      problems.push_back("unknown key '" + std::string(k.str()) + "'");
    }
  }
  if (auto title = b.string_field("title"); title && utf8_length(*title) > kMaxTitleChars) {
    problems.push_back("title longer than " + std::to_string(kMaxTitleChars) + " characters");
  }
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline CheckResult d02_id_format(const RawBundle& b, const CheckOptions&) {
  const char* id = "D02";
  static const std::regex kIdPattern("^[a-z]{2,5}-[0-9]{3}$");
  auto pid = b.string_field("id");
  if (!pid) return fail(id, "no string 'id' in manifest");
  std::vector<std::string> problems;
  if (!std::regex_match(*pid, kIdPattern)) problems.push_back("id '" + *pid + "' does not match ^[a-z]{2,5}-[0-9]{3}$");
  if (auto cat = b.string_field("category")) {
    if (auto c = parse_category(*cat)) {
      std::string want = std::string(id_prefix(*c)) + "-";
      if (pid->rfind(want, 0) != 0) {
        problems.push_back("id '" + *pid + "' must start with '" + want + "' for category " + *cat);
      }
    }
  }
  if (b.dir_name() != *pid) problems.push_back("directory name '" + b.dir_name() + "' differs from id '" + *pid + "'");
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline CheckResult d03_category(const RawBundle& b, const CheckOptions&) {
  const char* id = "D03";
  auto cat = b.string_field("category");
  if (!cat) return fail(id, "no string 'category' in manifest");
  if (!parse_category(*cat)) return fail(id, "unknown category '" + *cat + "'");
  if (b.parent_dir_name() != *cat) {
    return fail(id, "bundle sits under '" + b.parent_dir_name() + "' but declares category '" + *cat + "'");
  }
  return pass(id);
}

inline CheckResult d04_severity(const RawBundle& b, const CheckOptions&) {
  const char* id = "D04";
  auto sev = b.string_field("severity");
  if (!sev) return fail(id, "no string 'severity' in manifest");
  if (!parse_severity(*sev)) return fail(id, "unknown severity '" + *sev + "' (critical, high, medium)");
  return pass(id);
}

inline CheckResult d05_test_counts(const RawBundle& b, const CheckOptions&) {
  const char* id = "D05";
  std::size_t pos = b.listed_positive.size();
  std::size_t neg = b.listed_negative.size();
  std::string counts = std::to_string(pos) + " positive, " + std::to_string(neg) + " negative";
  if (pos < kMinTestsPerKind || neg < kMinTestsPerKind) {
    return fail(id, counts + "; need at least " + std::to_string(kMinTestsPerKind) + " of each");
  }
  return pass(id, counts);
}

inline CheckResult d06_test_filenames(const RawBundle& b, const CheckOptions&) {
  const char* id = "D06";
  static const std::regex kPositive(R"(^tests/positive_[A-Za-z0-9_]+\.py$)");
  static const std::regex kNegative(R"(^tests/negative_[A-Za-z0-9_]+\.py$)");
  std::vector<std::string> problems;
  std::set<std::string> seen;
  auto scan = [&](const std::vector<std::string>& list, const std::regex& re, std::string_view kind) {
    for (const auto& rel : list) {
      if (!seen.insert(rel).second) problems.push_back("'" + rel + "' listed more than once");
      if (!std::regex_match(rel, re)) {
        problems.push_back("'" + rel + "' is not named tests/" + std::string(kind) + "_<name>.py");
      }
    }
  };
  scan(b.listed_positive, kPositive, "positive");
  scan(b.listed_negative, kNegative, "negative");
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline CheckResult d07_tests_parse(const RawBundle& b, const CheckOptions&) {
  const char* id = "D07";
  std::vector<std::string> problems;
  for (const auto& [rel, src] : b.readable_tests()) {
    if (auto err = python::check_syntax(*src)) problems.push_back(rel + ": " + err->what());
  }
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline CheckResult d08_no_hint_comments(const RawBundle& b, const CheckOptions&) {
  const char* id = "D08";
  std::vector<std::string> problems;
  for (const auto& [rel, src] : b.readable_tests()) {
    for (const auto& h : find_hint_comments(*src)) {
      problems.push_back(rel + ":" + std::to_string(h.line) + ": hint comment '" + h.text + "'");
    }
  }
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline bool has_yes_no_clauses(std::string_view question) {
  static const std::regex kYes(R"(\bYES\s*=)");
  static const std::regex kNo(R"(\bNO\s*=)");
  return std::regex_search(question.begin(), question.end(), kYes) &&
         std::regex_search(question.begin(), question.end(), kNo);
}

inline CheckResult d09_yes_no_contract(const RawBundle& b, const CheckOptions&) {
  const char* id = "D09";
  auto q = b.string_field("detection_question");
  if (!q) return fail(id, "no detection_question in manifest");
  if (!has_yes_no_clauses(*q)) return fail(id, "detection_question lacks a 'YES =' and/or 'NO =' clause");
  return pass(id);
}

inline CheckResult d10_question_length(const RawBundle& b, const CheckOptions&) {
  const char* id = "D10";
  auto q = b.string_field("detection_question");
  if (!q) return fail(id, "no detection_question in manifest");
  std::size_t n = utf8_length(*q);
  if (n < kMinQuestionChars || n > kMaxQuestionChars) {
    return fail(id, "detection_question has " + std::to_string(n) + " characters; allowed " +
                        std::to_string(kMinQuestionChars) + "-" + std::to_string(kMaxQuestionChars));
  }
  return pass(id, std::to_string(n) + " characters");
}

inline bool is_absolute_url(std::string_view s) {
  static const std::regex kUrl(R"(^https?://[A-Za-z0-9.-]+\.[A-Za-z]{2,}(:[0-9]+)?(/[^\s]*)?$)");
  return std::regex_match(s.begin(), s.end(), kUrl);
}

inline CheckResult d11_doc_refs(const RawBundle& b, const CheckOptions&) {
  const char* id = "D11";
  auto refs = b.string_array("doc_refs");
  if (!refs) return fail(id, "no doc_refs array in manifest");
  if (refs->empty()) return fail(id, "doc_refs is empty");
  std::vector<std::string> bad;
  for (const auto& r : *refs) {
    if (!is_absolute_url(r)) bad.push_back("'" + r + "' is not an absolute http(s) URL");
  }
  if (!bad.empty()) return fail(id, join(bad));
  return pass(id);
}

inline CheckResult d12_no_identical_tests(const RawBundle& b, const CheckOptions&) {
  const char* id = "D12";
  auto tests = b.readable_tests();
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    for (std::size_t j = i + 1; j < tests.size(); ++j) {
      if (tests[i].first != tests[j].first && *tests[i].second == *tests[j].second) {
        problems.push_back(tests[i].first + " and " + tests[j].first + " are byte-identical");
      }
    }
  }
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline CheckResult d13_file_sync(const RawBundle& b, const CheckOptions&) {
  const char* id = "D13";
  std::vector<std::string> problems;
  std::set<std::string> listed(b.listed_positive.begin(), b.listed_positive.end());
  listed.insert(b.listed_negative.begin(), b.listed_negative.end());
  for (const auto& rel : listed) {
    auto it = b.sources.find(rel);
    if (it == b.sources.end() || !it->second) problems.push_back(rel + " is listed but missing or unreadable");
  }
  for (const auto& rel : b.disk_tests) {
    if (!listed.count(rel)) problems.push_back(rel + " exists on disk but is not listed in the manifest");
  }
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline CheckResult d14_token_budget(const RawBundle& b, const CheckOptions& opt) {
  const char* id = "D14";
  Pattern probe;
  probe.id = b.label();
  probe.detection_question = b.string_field("detection_question").value_or("");
  std::vector<std::string> problems;
  for (const auto& [rel, src] : b.readable_tests()) {
    auto d = check_budget(*src, probe, opt.budget, rel, opt.prompt_template);
    if (!d.fits) problems.push_back(d.reason);
  }
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

inline CheckResult d15_reserved_delimiter(const RawBundle& b, const CheckOptions&) {
  const char* id = "D15";
  std::vector<std::string> problems;
  if (auto q = b.string_field("detection_question"); q && q->find(kReservedDelimiter) != std::string::npos) {
    problems.push_back("detection_question contains '<code-'");
  }
  for (const auto& [rel, src] : b.readable_tests()) {
    if (src->find(kReservedDelimiter) != std::string::npos) problems.push_back(rel + " contains '<code-'");
  }
  if (!problems.empty()) return fail(id, join(problems));
  return pass(id);
}

}  // namespace checks

using CheckFn = CheckResult (*)(const RawBundle&, const CheckOptions&);

struct CheckDescriptor {
  std::string_view id;
  std::string_view summary;
  CheckFn run;
};

inline constexpr std::array<CheckDescriptor, 15> kDeterministicChecks = {{
    {"D01", "manifest schema", checks::d01_manifest_schema},
    {"D02", "id format and category prefix", checks::d02_id_format},
    {"D03", "category validity", checks::d03_category},
    {"D04", "severity validity", checks::d04_severity},
    {"D05", "at least 3 positive and 3 negative tests", checks::d05_test_counts},
    {"D06", "unique, well-named test files", checks::d06_test_filenames},
    {"D07", "test files parse", checks::d07_tests_parse},
    {"D08", "no hint comments", checks::d08_no_hint_comments},
    {"D09", "YES=/NO= contract clauses", checks::d09_yes_no_contract},
    {"D10", "question length", checks::d10_question_length},
    {"D11", "doc_refs are absolute URLs", checks::d11_doc_refs},
    {"D12", "no byte-identical tests", checks::d12_no_identical_tests},
    {"D13", "manifest and disk in sync", checks::d13_file_sync},
    {"D14", "tests fit the token budget", checks::d14_token_budget},
    {"D15", "no reserved delimiter text", checks::d15_reserved_delimiter},
}};

}  // namespace methodolint
