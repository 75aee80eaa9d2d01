#include "obqa/trace.hpp"

#include <algorithm>
#include <ostream>

#include "obqa/rng.hpp"

namespace obqa {

namespace {

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string replace_slot(std::string_view pattern, std::string_view slot,
                         std::string_view value) {
  const std::size_t pos = pattern.find(slot);
  std::string out(pattern.substr(0, pos));
  out.append(value);
  out.append(pattern.substr(pos + slot.size()));
  return out;
}

}  // namespace

TraceTemplate TraceTemplate::cotemp_default() {
  TraceTemplate t;
  t.classification_pattern =
      "The temporal relation between the event in question and the event in context is: "
      "{category}.";
  t.ir_pattern = "I need to use the following facts to answer the question: {facts}";
  return t;
}

TraceTemplate TraceTemplate::generic_default() {
  TraceTemplate t;
  t.classification_pattern = "The category of the question is: {category}.";
  t.ir_pattern = "I need to use the following facts to answer the question: {facts}";
  return t;
}

void TraceTemplate::validate() const {
  const std::string_view delims[] = {think_open, think_close, answer_open, answer_close};
  for (std::string_view d : delims) {
    if (d.empty()) throw Error("trace delimiters must be non-empty");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (delims[i] == delims[j]) {
        throw Error("trace delimiters must be pairwise distinct");
      }
    }
  }
  if (count_occurrences(classification_pattern, "{category}") != 1) {
    throw Error("classification pattern must contain {category} exactly once");
  }
  if (count_occurrences(classification_pattern, "{facts}") != 0) {
    throw Error("classification pattern must not contain {facts}");
  }
  if (count_occurrences(ir_pattern, "{facts}") != 1) {
    throw Error("ir pattern must contain {facts} exactly once");
  }
  if (count_occurrences(ir_pattern, "{category}") != 0) {
    throw Error("ir pattern must not contain {category}");
  }
}

std::string render_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += '\'';
    for (char c : items[i]) {
      if (c == '\\' || c == '\'') out += '\\';
      out += c;
    }
    out += '\'';
  }
  out += ']';
  return out;
}

std::string render_prompt(const QAInstance& inst) {
  std::string out = "Answer the question based on the context: ";
  out += render_list(inst.facts);
  out += " Question: ";
  out += inst.question;
  out += " Only return the answer.";
  return out;
}

namespace {

void reject_delimiters(const TraceTemplate& tpl, std::string_view content, const char* where) {
  const std::string_view delims[] = {tpl.think_open, tpl.think_close, tpl.answer_open,
                                     tpl.answer_close};
  for (std::string_view d : delims) {
    if (content.find(d) != std::string_view::npos) {
      throw Error(std::string(where) + " contains trace delimiter '" + std::string(d) + "'");
    }
  }
}

std::string render_completion(const QAInstance& inst, const std::string& category,
                              const std::vector<std::size_t>& support,
                              const TraceTemplate& tpl) {
  std::vector<std::string> support_facts;
  support_facts.reserve(support.size());
  for (std::size_t idx : support) {
    if (idx >= inst.facts.size()) {
      throw Error("instance '" + inst.id + "': support index " + std::to_string(idx) +
                  " out of range");
    }
    support_facts.push_back(inst.facts[idx]);
  }

  const std::string think = replace_slot(tpl.classification_pattern, "{category}", category) +
                            " " +
                            replace_slot(tpl.ir_pattern, "{facts}", render_list(support_facts));
  const std::string answer = render_list(inst.gold_answers);
  reject_delimiters(tpl, think, "trace body");
  reject_delimiters(tpl, answer, "answer body");

  std::string out = tpl.think_open;
  out += think;
  out += tpl.think_close;
  out += ' ';
  out += tpl.answer_open;
  out += answer;
  out += tpl.answer_close;
  return out;
}

}  // namespace

std::string render_correct(const QAInstance& inst, const TraceSkeleton& sk,
                           const TraceTemplate& tpl) {
  tpl.validate();
  return render_completion(inst, sk.category, sk.support, tpl);
}

CorruptedTrace corrupt(const QAInstance& inst, const TraceSkeleton& sk,
                       const TraceTemplate& tpl, const CorruptionPolicy& policy) {
  tpl.validate();
  if (!policy.corrupt_category && !policy.corrupt_facts) {
    throw Error("corruption policy selects nothing to corrupt");
  }

  SplitMix64 rng(policy.seed ^ fnv1a64(inst.id));

  std::string category = sk.category;
  if (policy.corrupt_category) {
    std::vector<std::string> alternatives;
    for (const std::string& c : inst.dataset.categories()) {
      if (c != sk.category) alternatives.push_back(c);
    }
    if (alternatives.empty()) {
      throw Error("instance '" + inst.id + "': category set has no alternative to '" +
                  sk.category + "'");
    }
    category = alternatives[rng.below(alternatives.size())];
  }

  std::vector<std::size_t> support = sk.support;
  if (policy.corrupt_facts) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < inst.facts.size(); ++i) {
      if (std::find(sk.support.begin(), sk.support.end(), i) == sk.support.end()) {
        pool.push_back(i);
      }
    }
    if (pool.empty()) {
      throw Error("instance '" + inst.id + "': every fact is a support fact, nothing to swap in");
    }
    const std::size_t k = std::min(sk.support.size(), pool.size());
    // Partial Fisher-Yates: draw k distinct indices from the non-gold pool.
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    support.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(support.begin(), support.end());
  }

  CorruptedTrace out;
  out.category = std::move(category);
  out.support = std::move(support);
  out.completion = render_completion(inst, out.category, out.support, tpl);
  return out;
}

std::string_view to_string(SftMode mode) {
  switch (mode) {
    case SftMode::vanilla:
      return "vanilla";
    case SftMode::correct_trace:
      return "correct_trace";
    case SftMode::incorrect_trace:
      return "incorrect_trace";
  }
  return "";
}

SftMode sft_mode_from(std::string_view name) {
  if (name == "vanilla") return SftMode::vanilla;
  if (name == "correct_trace") return SftMode::correct_trace;
  if (name == "incorrect_trace") return SftMode::incorrect_trace;
  throw Error("unknown sft mode '" + std::string(name) +
              "' (expected vanilla|correct_trace|incorrect_trace)");
}

SftRecord build_sft_record(const QAInstance& inst, SftMode mode, const TraceTemplate& tpl,
                           const CorruptionPolicy* policy) {
  SftRecord rec;
  rec.id = inst.id;
  rec.mode = mode;
  rec.prompt = render_prompt(inst);

  switch (mode) {
    case SftMode::vanilla:
      rec.completion = render_list(inst.gold_answers);
      break;
    case SftMode::correct_trace: {
      const TraceSkeleton sk = decompose(inst);
      rec.completion = render_correct(inst, sk, tpl);
      rec.category = sk.category;
      rec.support = sk.support;
      break;
    }
    case SftMode::incorrect_trace: {
      if (!policy) throw Error("incorrect_trace mode requires a corruption policy");
      const TraceSkeleton sk = decompose(inst);
      CorruptedTrace ct = corrupt(inst, sk, tpl, *policy);
      rec.completion = std::move(ct.completion);
      rec.category = std::move(ct.category);
      rec.support = std::move(ct.support);
      break;
    }
  }
  return rec;
}

std::string sft_line(const SftRecord& rec) {
  Json j;
  j["id"] = rec.id;
  j["mode"] = std::string(to_string(rec.mode));
  j["prompt"] = rec.prompt;
  j["completion"] = rec.completion;
  Json meta;
  meta["category"] = rec.category ? Json(*rec.category) : Json(nullptr);
  meta["support"] = rec.support;
  j["meta"] = std::move(meta);
  return j.dump();
}

void export_sft(const std::vector<QAInstance>& instances, SftMode mode,
                const TraceTemplate& tpl, const CorruptionPolicy* policy, std::ostream& out) {
  tpl.validate();
  for (const QAInstance& inst : instances) {
    out << sft_line(build_sft_record(inst, mode, tpl, policy)) << '\n';
  }
}

}  // namespace obqa
