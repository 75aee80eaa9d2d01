#include "obqa/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>
#include <utility>

namespace obqa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

bool is_category_token(std::string_view label) {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
  });
}

DatasetKind DatasetKind::cotemp() {
  return DatasetKind(DatasetFamily::cotemp, "cotemp", {"equal", "overlap", "during", "mix"});
}

DatasetKind DatasetKind::marco() {
  return DatasetKind(DatasetFamily::marco, "marco",
                     {"description", "numeric", "entity", "location", "person"});
}

DatasetKind DatasetKind::babi() {
  return DatasetKind(DatasetFamily::babi, "babi",
                     {"single-supporting-fact", "two-supporting-facts", "two-arg-relations",
                      "counting", "lists-sets", "conjunction", "time-reasoning",
                      "basic-deduction", "basic-induction", "positional-reasoning",
                      "size-reasoning"});
}

DatasetKind DatasetKind::custom(std::string name, std::vector<std::string> categories) {
  if (name.empty()) throw Error("dataset name must be non-empty");
  std::unordered_set<std::string_view> seen;
  for (const auto& c : categories) {
    if (!is_category_token(c)) throw Error("bad category label '" + c + "'");
    if (!seen.insert(c).second) throw Error("duplicate category label '" + c + "'");
  }
  return DatasetKind(DatasetFamily::custom, std::move(name), std::move(categories));
}

DatasetKind DatasetKind::parse(std::string_view name) {
  if (name == "cotemp") return cotemp();
  if (name == "marco") return marco();
  if (name == "babi") return babi();
  throw Error("unknown dataset kind '" + std::string(name) + "' (expected cotemp|marco|babi)");
}

bool DatasetKind::has_category(std::string_view label) const {
  return std::find(categories_.begin(), categories_.end(), label) != categories_.end();
}

std::vector<std::string> validate(const QAInstance& inst) {
  std::vector<std::string> out;
  if (inst.id.empty()) out.push_back("id is empty");
  if (inst.facts.empty()) out.push_back("facts is empty");
  for (std::size_t i = 0; i < inst.facts.size(); ++i) {
    if (inst.facts[i].empty()) out.push_back("fact " + std::to_string(i) + " is empty");
  }
  if (inst.question.empty()) out.push_back("question is empty");
  if (inst.gold_answers.empty()) out.push_back("answers is empty");
  for (std::size_t i = 0; i < inst.gold_answers.size(); ++i) {
    if (inst.gold_answers[i].empty()) out.push_back("answer " + std::to_string(i) + " is empty");
  }
  if (!is_category_token(inst.gold_category)) {
    out.push_back("category '" + inst.gold_category + "' is not a lowercase token");
  } else if (!inst.dataset.categories().empty() &&
             !inst.dataset.has_category(inst.gold_category)) {
    out.push_back("category '" + inst.gold_category + "' not declared by dataset '" +
                  inst.dataset.name() + "'");
  }
  for (std::size_t idx : inst.gold_support) {
    if (idx >= inst.facts.size()) {
      out.push_back("support index " + std::to_string(idx) + " out of range (" +
                    std::to_string(inst.facts.size()) + " facts)");
    }
  }
  return out;
}

std::vector<QAInstance> parse_babi(std::string_view text, const std::string& task_label) {
  const DatasetKind kind = DatasetKind::babi();
  if (!kind.has_category(task_label)) {
    throw Error("unknown bAbI task label '" + task_label + "'");
  }

  std::vector<QAInstance> out;
  std::vector<std::string> story_facts;
  std::map<long, std::size_t> line_to_fact;  // story line id -> fact index
  std::size_t story_no = 0;
  std::size_t question_no = 0;

  const std::vector<std::string_view> lines = split(text, '\n');
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t lineno = li + 1;
    std::string_view line = lines[li];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (blank(line)) continue;

    std::size_t digits = 0;
    while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits]))) {
      ++digits;
    }
    if (digits == 0 || digits == line.size() || line[digits] != ' ') {
      throw ParseError(lineno, "expected '<number> <text>'");
    }
    const long n = std::stol(std::string(line.substr(0, digits)));
    if (n <= 0) throw ParseError(lineno, "line id must be positive");
    const std::string_view rest = line.substr(digits + 1);

    if (n == 1 || story_no == 0) {
      ++story_no;
      question_no = 0;
      story_facts.clear();
      line_to_fact.clear();
    }

    if (rest.find('\t') == std::string_view::npos) {
      // Fact line.
      if (line_to_fact.count(n)) {
        throw ParseError(lineno, "line id " + std::to_string(n) + " repeats within story");
      }
      const std::string_view fact = trim(rest);
      if (fact.empty()) throw ParseError(lineno, "empty fact");
      line_to_fact[n] = story_facts.size();
      story_facts.emplace_back(fact);
      continue;
    }

    // Question line: question \t answer \t support-ids.
    const auto fields = split(rest, '\t');
    if (fields.size() != 3) {
      throw ParseError(lineno, "expected 3 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    const std::string_view question = trim(fields[0]);
    if (question.empty()) throw ParseError(lineno, "empty question");

    std::vector<std::string> answers;
    for (std::string_view part : split(fields[1], ',')) {
      part = trim(part);
      if (part.empty()) throw ParseError(lineno, "empty answer");
      answers.emplace_back(part);
    }
    if (answers.empty()) throw ParseError(lineno, "empty answer field");

    std::set<std::size_t> support;
    for (std::string_view tok : split(trim(fields[2]), ' ')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      long sid = 0;
      try {
        sid = std::stol(std::string(tok));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad support id '" + std::string(tok) + "'");
      }
      const auto it = line_to_fact.find(sid);
      if (it == line_to_fact.end()) {
        throw ParseError(lineno, "support id " + std::to_string(sid) +
                                     " does not refer to an earlier fact line");
      }
      support.insert(it->second);
    }
    if (support.empty()) throw ParseError(lineno, "question has no support ids");

    ++question_no;
    QAInstance inst;
    inst.id = task_label + "-s" + std::to_string(story_no) + "-q" + std::to_string(question_no);
    inst.dataset = kind;
    inst.facts = story_facts;  // snapshot: only facts seen before this question
    inst.question = std::string(question);
    inst.gold_answers = std::move(answers);
    inst.gold_category = task_label;
    inst.gold_support = std::move(support);
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

// Parses one canonical JSONL object; throws ParseError on any violation.
QAInstance parse_record(const Json& j, std::size_t lineno, const DatasetKind& kind) {
  if (!j.is_object()) throw ParseError(lineno, "not a JSON object");

  QAInstance inst;
  inst.dataset = kind;

  const auto need = [&](const char* key) -> const Json& {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(lineno, std::string("missing field '") + key + "'");
    return *it;
  };

  const Json& id = need("id");
  if (!id.is_string() || id.get_ref<const std::string&>().empty()) {
    throw ParseError(lineno, "field 'id' must be a non-empty string");
  }
  inst.id = id.get<std::string>();

  const Json& facts = need("facts");
  if (!facts.is_array() || facts.empty()) {
    throw ParseError(lineno, "field 'facts' must be a non-empty array");
  }
  for (const Json& f : facts) {
    if (!f.is_string() || f.get_ref<const std::string&>().empty()) {
      throw ParseError(lineno, "field 'facts' must contain non-empty strings");
    }
    inst.facts.push_back(f.get<std::string>());
  }

  const Json& question = need("question");
  if (!question.is_string() || question.get_ref<const std::string&>().empty()) {
    throw ParseError(lineno, "field 'question' must be a non-empty string");
  }
  inst.question = question.get<std::string>();

  const Json& answers = need("answers");
  if (!answers.is_array() || answers.empty()) {
    throw ParseError(lineno, "field 'answers' must be a non-empty array");
  }
  for (const Json& a : answers) {
    if (!a.is_string() || a.get_ref<const std::string&>().empty()) {
      throw ParseError(lineno, "field 'answers' must contain non-empty strings");
    }
    inst.gold_answers.push_back(a.get<std::string>());
  }

  const Json& category = need("category");
  if (!category.is_string()) throw ParseError(lineno, "field 'category' must be a string");
  inst.gold_category = category.get<std::string>();
  if (!is_category_token(inst.gold_category)) {
    throw ParseError(lineno, "category '" + inst.gold_category + "' is not a lowercase token");
  }
  if (!kind.categories().empty() && !kind.has_category(inst.gold_category)) {
    throw ParseError(lineno, "category '" + inst.gold_category + "' not declared by dataset '" +
                                 kind.name() + "'");
  }

  const Json& support = need("support");
  if (!support.is_array()) throw ParseError(lineno, "field 'support' must be an array");
  for (const Json& s : support) {
    if (!s.is_number_integer() || s.get<long long>() < 0) {
      throw ParseError(lineno, "field 'support' must contain non-negative integers");
    }
    const auto idx = static_cast<std::size_t>(s.get<long long>());
    if (idx >= inst.facts.size()) {
      throw ParseError(lineno, "support index " + std::to_string(idx) + " out of range (" +
                                   std::to_string(inst.facts.size()) + " facts)");
    }
    inst.gold_support.insert(idx);
  }

  for (const auto& [key, value] : j.items()) {
    if (key == "id" || key == "facts" || key == "question" || key == "answers" ||
        key == "category" || key == "support") {
      continue;
    }
    inst.metadata[key] = value;
  }
  return inst;
}

}  // namespace

LoadResult load_jsonl(std::istream& in, const DatasetKind& kind, bool strict) {
  LoadResult result;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    try {
      const Json j = Json::parse(line, nullptr, true);
      QAInstance inst = parse_record(j, lineno, kind);
      if (!seen_ids.insert(inst.id).second) {
        throw ParseError(lineno, "duplicate id '" + inst.id + "'");
      }
      result.instances.push_back(std::move(inst));
    } catch (const Json::parse_error& e) {
      ParseError err(lineno, std::string("invalid JSON: ") + e.what());
      if (strict) throw err;
      result.skipped.push_back({lineno, err.what()});
    } catch (const ParseError& e) {
      if (strict) throw;
      result.skipped.push_back({lineno, e.what()});
    }
  }
  return result;
}

std::string serialize_line(const QAInstance& inst) {
  Json j;
  j["id"] = inst.id;
  j["facts"] = inst.facts;
  j["question"] = inst.question;
  j["answers"] = inst.gold_answers;
  j["category"] = inst.gold_category;
  j["support"] = std::vector<std::size_t>(inst.gold_support.begin(), inst.gold_support.end());
  if (inst.metadata.is_object()) {
    for (const auto& [key, value] : inst.metadata.items()) {
      if (!j.contains(key)) j[key] = value;
    }
  }
  return j.dump();
}

void serialize(const std::vector<QAInstance>& instances, std::ostream& out) {
  for (const auto& inst : instances) out << serialize_line(inst) << '\n';
}

}  // namespace obqa
