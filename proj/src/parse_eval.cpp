#include "obqa/parse_eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace obqa {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Python-style list literal: ['a', "b", ...]. Returns nullopt if s does not
// start with a well-formed list; trailing text after ']' is ignored.
std::optional<std::vector<std::string>> parse_quoted_list(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.front() != '[') return std::nullopt;
  std::size_t p = 1;
  std::vector<std::string> items;
  while (true) {
    while (p < s.size() && is_space(s[p])) ++p;
    if (p >= s.size()) return std::nullopt;
    if (s[p] == ']') return items;
    if (!items.empty()) {
      if (s[p] != ',') return std::nullopt;
      ++p;
      while (p < s.size() && is_space(s[p])) ++p;
      if (p >= s.size()) return std::nullopt;
    }
    const char quote = s[p];
    if (quote != '\'' && quote != '"') return std::nullopt;
    ++p;
    std::string item;
    bool closed = false;
    while (p < s.size()) {
      const char c = s[p];
      if (c == '\\' && p + 1 < s.size()) {
        const char next = s[p + 1];
        if (next == '\'' || next == '"' || next == '\\') {
          item += next;
          p += 2;
          continue;
        }
        item += c;
        ++p;
        continue;
      }
      if (c == quote) {
        closed = true;
        ++p;
        break;
      }
      item += c;
      ++p;
    }
    if (!closed) return std::nullopt;
    items.push_back(std::move(item));
  }
}

struct Span {
  std::string_view text;
  bool found = false;
};

Span between(std::string_view s, std::string_view open, std::string_view close) {
  const std::size_t a = s.find(open);
  if (a == std::string_view::npos) return {};
  const std::size_t b = s.find(close, a + open.size());
  if (b == std::string_view::npos) return {};
  return {s.substr(a + open.size(), b - a - open.size()), true};
}

std::string_view pattern_prefix(std::string_view pattern, std::string_view slot) {
  return pattern.substr(0, pattern.find(slot));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

ParsedOutput parse_output(std::string_view completion, const TraceTemplate& tpl) {
  ParsedOutput out;

  const Span think = between(completion, tpl.think_open, tpl.think_close);
  out.flags.missing_think = !think.found;
  out.think_text = std::string(think.text);

  if (think.found) {
    const std::string_view cls_prefix =
        pattern_prefix(tpl.classification_pattern, "{category}");
    const std::size_t cp = think.text.find(cls_prefix);
    if (cp != std::string_view::npos) {
      std::size_t p = cp + cls_prefix.size();
      while (p < think.text.size() && is_space(think.text[p])) ++p;
      std::size_t q = p;
      while (q < think.text.size()) {
        const char c = think.text[q];
        if (is_alnum(c) || c == '-') {
          ++q;
        } else {
          break;
        }
      }
      if (q > p) out.category = to_lower(think.text.substr(p, q - p));
    }

    const std::string_view ir_prefix = pattern_prefix(tpl.ir_pattern, "{facts}");
    const std::size_t ip = think.text.find(ir_prefix);
    if (ip != std::string_view::npos) {
      const std::string_view rest = trim(think.text.substr(ip + ir_prefix.size()));
      if (auto list = parse_quoted_list(rest)) {
        out.facts = std::move(*list);
      } else if (!rest.empty()) {
        out.facts = std::vector<std::string>{std::string(rest)};
      }
    }
  }
  out.flags.category_unparsed = !out.category.has_value();
  out.flags.facts_unparsed = !out.facts.has_value();

  const Span answer = between(completion, tpl.answer_open, tpl.answer_close);
  out.flags.missing_answer = !answer.found;
  const std::string_view answer_text = answer.found ? trim(answer.text) : trim(completion);
  if (auto list = parse_quoted_list(answer_text)) {
    out.answers = std::move(*list);
  } else {
    out.answers = {std::string(answer_text)};
  }
  if (out.answers.empty()) out.answers = {""};  // empty list literal: keep scoreable
  return out;
}

std::string normalize_answer(std::string_view s) {
  std::string_view v = trim(s);
  if (!v.empty() && v.front() == '[') v.remove_prefix(1);
  if (!v.empty() && v.back() == ']') v.remove_suffix(1);
  v = trim(v);
  while (v.size() >= 2 && v.front() == v.back() && (v.front() == '\'' || v.front() == '"')) {
    v.remove_prefix(1);
    v.remove_suffix(1);
    v = trim(v);
  }

  std::string flat;
  flat.reserve(v.size());
  for (char c : v) {
    if (is_ascii_punct(c)) continue;
    flat += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }

  std::string out;
  std::size_t p = 0;
  while (p < flat.size()) {
    while (p < flat.size() && is_space(flat[p])) ++p;
    std::size_t q = p;
    while (q < flat.size() && !is_space(flat[q])) ++q;
    if (q > p) {
      const std::string_view word(flat.data() + p, q - p);
      if (word != "a" && word != "an" && word != "the") {
        if (!out.empty()) out += ' ';
        out.append(word);
      }
    }
    p = q;
  }
  return out;
}

std::vector<std::string> answer_tokens(std::string_view s) {
  const std::string norm = normalize_answer(s);
  std::vector<std::string> tokens;
  std::size_t p = 0;
  while (p < norm.size()) {
    const std::size_t q = norm.find(' ', p);
    if (q == std::string::npos) {
      tokens.push_back(norm.substr(p));
      break;
    }
    tokens.push_back(norm.substr(p, q - p));
    p = q + 1;
  }
  return tokens;
}

namespace {

// SQuAD-style token F1 against one gold alternative.
void token_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold,
              double& p, double& r, double& f1) {
  if (pred.empty() && gold.empty()) {
    p = r = f1 = 1.0;
    return;
  }
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : gold) ++counts[t];
  std::size_t common = 0;
  for (const auto& t : pred) {
    const auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) {
    p = r = f1 = 0.0;
    return;
  }
  p = static_cast<double>(common) / static_cast<double>(pred.size());
  r = static_cast<double>(common) / static_cast<double>(gold.size());
  f1 = 2.0 * p * r / (p + r);
}

}  // namespace

AnswerScore score_answer(const std::vector<std::string>& predicted,
                         const std::vector<std::string>& gold) {
  AnswerScore score;

  std::vector<std::string> pred_norm, gold_norm;
  for (const auto& s : predicted) pred_norm.push_back(normalize_answer(s));
  for (const auto& s : gold) gold_norm.push_back(normalize_answer(s));
  {
    std::vector<std::string> a = pred_norm, b = gold_norm;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    score.em = (a == b);
  }

  std::vector<std::string> pred_tokens;
  for (const auto& s : predicted) {
    auto toks = answer_tokens(s);
    pred_tokens.insert(pred_tokens.end(), toks.begin(), toks.end());
  }

  bool first = true;
  for (const auto& g : gold) {
    double p = 0, r = 0, f1 = 0;
    token_f1(pred_tokens, answer_tokens(g), p, r, f1);
    if (first || f1 > score.f1) {
      score.precision = p;
      score.recall = r;
      score.f1 = f1;
      first = false;
    }
  }
  return score;
}

AnswerScore score_answer(std::string_view predicted, std::string_view gold) {
  return score_answer(std::vector<std::string>{std::string(predicted)},
                      std::vector<std::string>{std::string(gold)});
}

TraceScore score_trace(const ParsedOutput& parsed, const QAInstance& inst) {
  TraceScore score;
  score.classification_correct =
      parsed.category.has_value() && *parsed.category == inst.gold_category;

  if (parsed.facts.has_value()) {
    std::set<std::string> pred, gold;
    for (const auto& f : *parsed.facts) pred.insert(normalize_answer(f));
    for (std::size_t idx : inst.gold_support) {
      if (idx < inst.facts.size()) gold.insert(normalize_answer(inst.facts[idx]));
    }
    score.ir_correct = !gold.empty() && pred == gold;
  }
  score.trace_correct = score.classification_correct && score.ir_correct;
  return score;
}

Confusion& Confusion::operator+=(const Confusion& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  tn += other.tn;
  return *this;
}

double pct(std::size_t part, std::size_t whole) {
  if (whole == 0) return 0.0;
  const double raw = 100.0 * static_cast<double>(part) / static_cast<double>(whole);
  return std::round(raw * 100.0) / 100.0;
}

namespace {

std::size_t count_words(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::size_t count_word_punct_tokens(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    if (is_space(c)) {
      in_word = false;
    } else if (is_alnum(c)) {
      if (!in_word) ++n;
      in_word = true;
    } else {
      ++n;  // each punctuation char is its own token
      in_word = false;
    }
  }
  return n;
}

}  // namespace

RecordEval evaluate_one(const QAInstance& inst, std::string_view completion,
                        const TraceTemplate& tpl, bool expect_trace) {
  RecordEval rec;
  rec.id = inst.id;

  const ParsedOutput parsed = parse_output(completion, tpl);
  rec.flags = parsed.flags;
  rec.answer = score_answer(parsed.answers, inst.gold_answers);
  rec.trace_len_words = count_words(parsed.think_text);
  rec.trace_len_tokens = count_word_punct_tokens(parsed.think_text);

  {
    std::set<std::string> pred;
    for (const auto& a : parsed.answers) pred.insert(normalize_answer(a));
    std::size_t hit = 0;
    for (const auto& g : inst.gold_answers) {
      if (pred.count(normalize_answer(g))) ++hit;
    }
    rec.per_answer_recall = inst.gold_answers.empty()
                                ? 0.0
                                : static_cast<double>(hit) /
                                      static_cast<double>(inst.gold_answers.size());
  }

  if (expect_trace) {
    rec.trace = score_trace(parsed, inst);

    std::set<std::string> pred, gold;
    if (parsed.facts) {
      for (const auto& f : *parsed.facts) pred.insert(normalize_answer(f));
    }
    for (std::size_t idx : inst.gold_support) {
      if (idx < inst.facts.size()) gold.insert(normalize_answer(inst.facts[idx]));
    }
    std::size_t inter = 0;
    for (const auto& f : pred) {
      if (gold.count(f)) ++inter;
    }
    const std::size_t uni = pred.size() + gold.size() - inter;
    rec.ir_overlap = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  return rec;
}

EvalSummary evaluate(const std::vector<QAInstance>& instances,
                     const std::vector<ModelOutput>& outputs, const TraceTemplate& tpl,
                     const EvalOptions& opts) {
  tpl.validate();

  std::unordered_map<std::string, const std::string*> by_id;
  std::unordered_set<std::string> known;
  for (const auto& inst : instances) known.insert(inst.id);
  for (const auto& o : outputs) {
    if (!known.count(o.id)) throw Error("output id '" + o.id + "' not in corpus");
    if (!by_id.emplace(o.id, &o.completion).second) {
      throw Error("duplicate output id '" + o.id + "'");
    }
  }

  EvalSummary sum;
  std::vector<std::string> absent;
  for (const auto& inst : instances) {
    const auto it = by_id.find(inst.id);
    std::string_view completion;
    if (it != by_id.end()) {
      completion = *it->second;
    } else {
      if (!opts.allow_missing) {
        absent.push_back(inst.id);
        continue;
      }
      ++sum.missing;
    }
    sum.records.push_back(evaluate_one(inst, completion, tpl, opts.expect_trace));
  }
  if (!absent.empty()) {
    std::string msg = "no completion for " + std::to_string(absent.size()) + " instance(s):";
    for (std::size_t i = 0; i < absent.size() && i < 5; ++i) msg += " '" + absent[i] + "'";
    if (absent.size() > 5) msg += " ...";
    throw Error(msg);
  }

  const double n = static_cast<double>(sum.records.size());
  if (n == 0) return sum;
  for (const auto& r : sum.records) {
    sum.em_rate += r.answer.em;
    sum.f1_mean += r.answer.f1;
    sum.precision_mean += r.answer.precision;
    sum.recall_mean += r.answer.recall;
    sum.trace_len_words_mean += static_cast<double>(r.trace_len_words);
    sum.trace_len_tokens_mean += static_cast<double>(r.trace_len_tokens);
    sum.per_answer_recall_mean += r.per_answer_recall;
    sum.ir_overlap_mean += r.ir_overlap;
    if (opts.expect_trace) {
      sum.classification_rate += r.trace.classification_correct;
      sum.ir_rate += r.trace.ir_correct;
      sum.trace_rate += r.trace.trace_correct;
      const bool sol = r.answer.em;
      const bool tr = r.trace.trace_correct;
      if (sol && tr) ++sum.confusion.tp;
      if (sol && !tr) ++sum.confusion.fp;
      if (!sol && tr) ++sum.confusion.fn;
      if (!sol && !tr) ++sum.confusion.tn;
    }
  }
  for (double* m : {&sum.em_rate, &sum.f1_mean, &sum.precision_mean, &sum.recall_mean,
                    &sum.classification_rate, &sum.ir_rate, &sum.trace_rate,
                    &sum.trace_len_words_mean, &sum.trace_len_tokens_mean,
                    &sum.per_answer_recall_mean, &sum.ir_overlap_mean}) {
    *m /= n;
  }
  return sum;
}

}  // namespace obqa
