#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "methodolint/bundle.hpp"
#include "methodolint/checks.hpp"
#include "methodolint/error.hpp"
#include "methodolint/pattern.hpp"

namespace methodolint {

// Checks a bundle must pass to become a Pattern. D10, D11, D14 and D15 are
// release gates, not load-time invariants.
inline constexpr std::array<std::string_view, 11> kLoadInvariantChecks = {
    "D01", "D02", "D03", "D04", "D05", "D06", "D07", "D08", "D09", "D12", "D13"};

/// Converts a raw bundle into a Pattern, enforcing the Pattern and TestFile
/// invariants. Throws PatternError naming the bundle path.
inline Pattern to_pattern(const RawBundle& b) {
  CheckOptions opts;
  for (const auto& check : kDeterministicChecks) {
    if (std::find(kLoadInvariantChecks.begin(), kLoadInvariantChecks.end(), check.id) ==
        kLoadInvariantChecks.end()) {
      continue;
    }
    CheckResult r = check.run(b, opts);
    if (!r.passed()) {
      throw PatternError(b.dir.string() + ": " + std::string(check.id) + " " + std::string(check.summary) +
                         ": " + r.detail);
    }
  }
  Pattern p;
  p.id = *b.string_field("id");
  p.category = *parse_category(*b.string_field("category"));
  p.severity = *parse_severity(*b.string_field("severity"));
  p.title = *b.string_field("title");
  p.description = *b.string_field("description");
  p.detection_question = *b.string_field("detection_question");
  p.doc_refs = *b.string_array("doc_refs");
  for (const auto& rel : b.listed_positive) p.positive_tests.push_back({rel, *b.sources.at(rel), TestKind::Positive});
  for (const auto& rel : b.listed_negative) p.negative_tests.push_back({rel, *b.sources.at(rel), TestKind::Negative});
  return p;
}

/// Immutable, id-indexed set of patterns. Safe to share across threads.
class PatternRegistry {
 public:
  PatternRegistry() = default;

  /// Builds a registry from already-validated patterns; rejects duplicate ids.
  explicit PatternRegistry(std::vector<Pattern> patterns) {
    for (auto& p : patterns) {
      std::string id = p.id;
      if (!patterns_.emplace(id, std::move(p)).second) throw PatternError("duplicate pattern id '" + id + "'");
    }
    for (Category c : kAllCategories) counts_[c] = 0;
    for (const auto& [id, p] : patterns_) ++counts_[p.category];
  }

  std::size_t size() const noexcept { return patterns_.size(); }
  bool empty() const noexcept { return patterns_.empty(); }

  bool contains(std::string_view id) const { return patterns_.find(std::string(id)) != patterns_.end(); }

  const Pattern& get(std::string_view id) const {
    auto it = patterns_.find(std::string(id));
    if (it == patterns_.end()) throw NotFoundError("unknown pattern id '" + std::string(id) + "'");
    return it->second;
  }

  const Pattern* find(std::string_view id) const {
    auto it = patterns_.find(std::string(id));
    return it == patterns_.end() ? nullptr : &it->second;
  }

  // Patterns ordered by id.
  std::vector<const Pattern*> patterns() const {
    std::vector<const Pattern*> out;
    out.reserve(patterns_.size());
    for (const auto& [id, p] : patterns_) out.push_back(&p);
    return out;
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& [id, p] : patterns_) out.push_back(id);
    return out;
  }

  std::size_t category_count(Category c) const {
    auto it = counts_.find(c);
    return it == counts_.end() ? 0 : it->second;
  }

  const std::map<Category, std::size_t>& category_counts() const noexcept { return counts_; }

  bool operator==(const PatternRegistry& other) const { return patterns_ == other.patterns_; }

 private:
  std::map<std::string, Pattern> patterns_;
  std::map<Category, std::size_t> counts_ = {{Category::AiTraining, 0},
                                             {Category::AiInference, 0},
                                             {Category::ScientificNumerical, 0},
                                             {Category::ScientificPerformance, 0},
                                             {Category::ScientificReproducibility, 0}};
};

/// Loads every bundle under `<root>/patterns/<category>/<id>/`. A missing
/// `patterns/` directory yields an empty registry. Any invalid bundle aborts
/// the load with a path-qualified PatternError.
inline PatternRegistry load_registry(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw PatternError(root.string() + ": not a directory");
  std::vector<Pattern> patterns;
  std::map<std::string, fs::path> seen;
  for (const auto& dir : discover_bundle_dirs(root)) {
    Pattern p = to_pattern(read_bundle(dir));
    auto [it, inserted] = seen.emplace(p.id, dir);
    if (!inserted) {
      throw PatternError("duplicate pattern id '" + p.id + "' declared by " + it->second.string() + " and " +
                         dir.string());
    }
    patterns.push_back(std::move(p));
  }
  return PatternRegistry(std::move(patterns));
}

/// Writes every pattern of `reg` under `<root>/patterns/`.
inline void write_registry(const PatternRegistry& reg, const fs::path& root) {
  for (const Pattern* p : reg.patterns()) write_bundle(*p, root);
}

/// Keeps the patterns whose category is in `cats`; an empty set keeps all.
inline PatternRegistry filter_by_categories(const PatternRegistry& reg, const std::set<Category>& cats) {
  std::vector<Pattern> kept;
  for (const Pattern* p : reg.patterns()) {
    if (cats.empty() || cats.count(p->category)) kept.push_back(*p);
  }
  return PatternRegistry(std::move(kept));
}

/// Parses category names; throws ConfigError naming the first unknown one.
inline std::set<Category> parse_categories(const std::vector<std::string>& names) {
  std::set<Category> out;
  for (const auto& n : names) {
    auto c = parse_category(n);
    if (!c) {
      throw ConfigError("unknown category '" + n +
                        "' (expected ai-training, ai-inference, scientific-numerical, "
                        "scientific-performance, scientific-reproducibility)");
    }
    out.insert(*c);
  }
  return out;
}

inline PatternRegistry filter_by_categories(const PatternRegistry& reg, const std::vector<std::string>& names) {
  return filter_by_categories(reg, parse_categories(names));
}

/// Restricts to the listed ids; an empty list keeps all. Unknown ids throw.
inline PatternRegistry filter_by_ids(const PatternRegistry& reg, const std::vector<std::string>& ids) {
  if (ids.empty()) return reg;
  std::vector<Pattern> kept;
  std::set<std::string> unique(ids.begin(), ids.end());
  for (const auto& id : unique) kept.push_back(reg.get(id));
  return PatternRegistry(std::move(kept));
}

inline const Pattern& get_pattern(const PatternRegistry& reg, std::string_view id) { return reg.get(id); }

}  // namespace methodolint
