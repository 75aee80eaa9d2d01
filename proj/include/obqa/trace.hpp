#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obqa/corpus.hpp"
#include "obqa/decompose.hpp"

namespace obqa {

// Completion template: a classification sentence, an information-retrieval
// sentence, and the delimiters that carve the trace out of the completion.
struct TraceTemplate {
  std::string think_open = "<think>";
  std::string think_close = "</think>";
  std::string answer_open = "<answer>";
  std::string answer_close = "</answer>";
  std::string classification_pattern;  // contains {category} exactly once
  std::string ir_pattern;              // contains {facts} exactly once

  static TraceTemplate cotemp_default();
  static TraceTemplate generic_default();

  void validate() const;  // throws Error on malformed template
};

// Python-style list literal: single quotes, backslash-escaped ' and \.
std::string render_list(const std::vector<std::string>& items);

std::string render_prompt(const QAInstance& inst);

// Gold trace completion:
//   <think>CLS IR</think> <answer>[answers]</answer>
// Throws Error if any rendered content contains a delimiter (would break the
// parse round-trip).
std::string render_correct(const QAInstance& inst, const TraceSkeleton& sk,
                           const TraceTemplate& tpl);

struct CorruptionPolicy {
  std::uint64_t seed = 0;
  bool corrupt_category = true;
  bool corrupt_facts = true;
};

struct CorruptedTrace {
  std::string category;               // != gold when corrupt_category
  std::vector<std::size_t> support;   // disjoint from gold when corrupt_facts
  std::string completion;             // wrong trace, gold final answer
};

// Deterministic per-record corruption: the RNG stream is keyed by
// policy.seed ^ fnv1a64(id), so records corrupt identically regardless of
// batch order or partitioning. Category is drawn before facts.
CorruptedTrace corrupt(const QAInstance& inst, const TraceSkeleton& sk,
                       const TraceTemplate& tpl, const CorruptionPolicy& policy);

enum class SftMode { vanilla, correct_trace, incorrect_trace };

std::string_view to_string(SftMode mode);
SftMode sft_mode_from(std::string_view name);  // throws Error

struct SftRecord {
  std::string id;
  SftMode mode = SftMode::vanilla;
  std::string prompt;
  std::string completion;
  std::optional<std::string> category;  // trace metadata; unset for vanilla
  std::vector<std::size_t> support;
};

// policy may be null except for incorrect_trace.
SftRecord build_sft_record(const QAInstance& inst, SftMode mode, const TraceTemplate& tpl,
                           const CorruptionPolicy* policy = nullptr);

std::string sft_line(const SftRecord& rec);

void export_sft(const std::vector<QAInstance>& instances, SftMode mode,
                const TraceTemplate& tpl, const CorruptionPolicy* policy, std::ostream& out);

}  // namespace obqa
