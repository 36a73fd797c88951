#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace methodolint {

enum class Category {
  AiTraining,
  AiInference,
  ScientificNumerical,
  ScientificPerformance,
  ScientificReproducibility,
};

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::AiTraining, Category::AiInference, Category::ScientificNumerical,
    Category::ScientificPerformance, Category::ScientificReproducibility};

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::AiTraining:
      return "ai-training";
    case Category::AiInference:
      return "ai-inference";
    case Category::ScientificNumerical:
      return "scientific-numerical";
    case Category::ScientificPerformance:
      return "scientific-performance";
    case Category::ScientificReproducibility:
      return "scientific-reproducibility";
  }
  return "";
}

inline std::optional<Category> parse_category(std::string_view s) {
  for (Category c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

// Every pattern id starts with the prefix of its category.
inline std::string_view id_prefix(Category c) {
  switch (c) {
    case Category::AiTraining:
      return "ml";
    case Category::AiInference:
      return "pt";
    case Category::ScientificNumerical:
      return "num";
    case Category::ScientificPerformance:
      return "perf";
    case Category::ScientificReproducibility:
      return "rep";
  }
  return "";
}

enum class Severity { Critical, High, Medium };

inline constexpr std::array<Severity, 3> kAllSeverities = {Severity::Critical, Severity::High,
                                                           Severity::Medium};

inline std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Critical:
      return "critical";
    case Severity::High:
      return "high";
    case Severity::Medium:
      return "medium";
  }
  return "";
}

inline std::optional<Severity> parse_severity(std::string_view s) {
  for (Severity v : kAllSeverities) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

enum class TestKind { Positive, Negative };

inline std::string_view to_string(TestKind k) { return k == TestKind::Positive ? "positive" : "negative"; }

struct TestFile {
  std::string relative_path;  // relative to the pattern directory, e.g. "tests/positive_1.py"
  std::string source;
  TestKind kind = TestKind::Positive;

  bool operator==(const TestFile&) const = default;
};

struct Pattern {
  std::string id;
  Category category = Category::AiTraining;
  Severity severity = Severity::Medium;
  std::string title;
  std::string description;
  std::string detection_question;
  std::vector<std::string> doc_refs;
  std::vector<TestFile> positive_tests;
  std::vector<TestFile> negative_tests;

  bool operator==(const Pattern&) const = default;
};

}  // namespace methodolint
