#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "obqa/error.hpp"

namespace obqa {

using Json = nlohmann::ordered_json;

enum class DatasetFamily { cotemp, marco, babi, custom };

// Dataset identity plus the closed category set its classification step is
// scored against. Category labels are lowercase [a-z0-9-]+ tokens.
class DatasetKind {
 public:
  DatasetKind() = default;  // custom/empty; loaders always overwrite

  static DatasetKind cotemp();
  static DatasetKind marco();
  static DatasetKind babi();
  static DatasetKind custom(std::string name, std::vector<std::string> categories);
  // Accepts "cotemp" | "marco" | "babi"; throws Error otherwise.
  static DatasetKind parse(std::string_view name);

  DatasetFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& categories() const { return categories_; }
  bool has_category(std::string_view label) const;

 private:
  DatasetKind(DatasetFamily family, std::string name, std::vector<std::string> categories)
      : family_(family), name_(std::move(name)), categories_(std::move(categories)) {}

  DatasetFamily family_ = DatasetFamily::custom;
  std::string name_ = "custom";
  std::vector<std::string> categories_;
};

bool is_category_token(std::string_view label);

struct QAInstance {
  std::string id;
  DatasetKind dataset;
  std::vector<std::string> facts;
  std::string question;
  std::vector<std::string> gold_answers;
  std::string gold_category;
  std::set<std::size_t> gold_support;  // indices into facts
  Json metadata = Json::object();      // unknown input keys, preserved on write
};

// Invariant violations as human-readable strings; empty means well-formed.
std::vector<std::string> validate(const QAInstance& inst);

// bAbI task text: numbered story lines, question lines carry answer + support
// ids separated by tabs. Questions are excluded from the fact list; support
// ids are remapped to 0-based indices into it.
std::vector<QAInstance> parse_babi(std::string_view text, const std::string& task_label);

struct LineIssue {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<QAInstance> instances;
  std::vector<LineIssue> skipped;  // populated in lenient mode
};

// Canonical JSONL: one object per line with keys id/facts/question/answers/
// category/support; unknown keys are kept in metadata. strict throws on the
// first bad line, lenient skips and records it.
LoadResult load_jsonl(std::istream& in, const DatasetKind& kind, bool strict = true);

std::string serialize_line(const QAInstance& inst);
void serialize(const std::vector<QAInstance>& instances, std::ostream& out);

}  // namespace obqa
